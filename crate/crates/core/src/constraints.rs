//! Geometric admissibility filters: the Miyaoka–Reid inequality, the
//! plurigenus inequality gating the chi > 1 search, superadditivity, and the
//! exclusion-rule engine.

use serde::Serialize;

use crate::basket::FormalBasket;
use crate::bounds;
use crate::error::Error;
use crate::rational::{format_rational, int, rat, Rational};

/// Outcome of a single admissibility filter; `holds` iff `margin >= 0`.
#[derive(Clone, Debug, Serialize)]
pub struct FilterVerdict {
    pub name: &'static str,
    pub holds: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub margin: Rational,
    pub detail: String,
}

impl FilterVerdict {
    fn new(name: &'static str, margin: Rational, detail: String) -> Self {
        FilterVerdict {
            holds: margin >= int(0),
            name,
            margin,
            detail,
        }
    }
}

/// `sum_i r_i - 24 chi >= sum_i 1/r_i` on gcd-reduced entries.
pub fn miyaoka_reid(fb: &FormalBasket) -> FilterVerdict {
    let mut r_sum = int(0);
    let mut inv_sum = int(0);
    for (p, c) in fb.basket.entries() {
        r_sum += int(p.r() * *c as i64);
        inv_sum += rat(*c as i64, p.r());
    }
    let margin = r_sum.clone() - int(24 * fb.chi) - inv_sum.clone();
    FilterVerdict::new(
        "miyaoka-reid",
        margin,
        format!(
            "sum r = {}, 24 chi = {}, sum 1/r = {}",
            format_rational(&r_sum),
            24 * fb.chi,
            format_rational(&inv_sum)
        ),
    )
}

/// The plurigenus inequality
/// `2 P5 + 3 P6 + P8 + P10 + P12 >= chi + 10 P2 + 4 P3 + P7 + P11 + P13 + R`,
/// with `R` read off the elementary unpacking of the basket.
pub fn ineq41(fb: &FormalBasket) -> Result<FilterVerdict, Error> {
    let p = |m: i64| fb.plurigenus(m);
    let lhs = int(2) * p(5)? + int(3) * p(6)? + p(8)? + p(10)? + p(12)?;
    let (sigma5, r_term) = elementary_tail_weights(fb);
    let rhs = int(fb.chi + 10 * fb.p2)
        + int(4) * p(3)?
        + p(7)?
        + p(11)?
        + p(13)?
        + int(r_term);
    let margin = lhs - rhs;
    Ok(FilterVerdict::new(
        "ineq-4.1",
        margin,
        format!("sigma5 = {sigma5}, R = {r_term}"),
    ))
}

/// `(sigma5, R)` of the elementary unpacking:
/// `sigma5 = sum_{r>=5} n0_{1,r}` and
/// `R = 2 n5 + 5 n6 + 6 n7 + 8 n8 + 10 n9 + 12 n10 + 13 n11 + 14 sum_{r>=12} nr`.
pub fn elementary_tail_weights(fb: &FormalBasket) -> (i64, i64) {
    let counts = fb.basket.elementary_counts();
    let mut sigma5 = 0i64;
    let mut r_term = 0i64;
    for (&r, &c) in &counts {
        let c = c as i64;
        if r >= 5 {
            sigma5 += c;
        }
        r_term += c * match r {
            ..=4 => 0,
            5 => 2,
            6 => 5,
            7 => 6,
            8 => 8,
            9 => 10,
            10 => 12,
            11 => 13,
            _ => 14,
        };
    }
    (sigma5, r_term)
}

/// First `(m, n)` with `P_{m+n} < P_m P_n`, scanning `2 <= m <= n`,
/// `m + n <= window`, in lexicographic order.
pub fn first_superadditivity_violation(
    fb: &FormalBasket,
    window: i64,
) -> Result<Option<(i64, i64)>, Error> {
    let mut pm = Vec::with_capacity(window as usize + 1);
    pm.push(int(0)); // m = 0 unused
    pm.push(int(0)); // m = 1 unused
    for m in 2..=window {
        pm.push(fb.plurigenus(m)?);
    }
    let at = |m: i64| &pm[(m - 1) as usize];
    for m in 2..=window / 2 {
        for n in m..=(window - m) {
            if *at(m + n) < at(m).clone() * at(n).clone() {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Superadditivity `P_{m+n} >= P_m P_n` over the window; the margin is the
/// minimum slack, and the first violating `(m, n)` is reported.
pub fn superadditivity_check(fb: &FormalBasket, window: i64) -> Result<FilterVerdict, Error> {
    assert!(window >= 4, "superadditivity window must be at least 4");
    let violation = first_superadditivity_violation(fb, window)?;
    let mut margin = int(0);
    let mut first = true;
    for m in 2..=window / 2 {
        for n in m..=(window - m) {
            let slack = fb.plurigenus(m + n)? - fb.plurigenus(m)? * fb.plurigenus(n)?;
            if first || slack < margin {
                margin = slack;
                first = false;
            }
        }
    }
    let detail = match violation {
        Some((m, n)) => format!("first violation at (m, n) = ({m}, {n})"),
        None => "no violation".to_string(),
    };
    Ok(FilterVerdict::new("superadditivity", margin, detail))
}

/// Lower-bound source for `K^3` given `P_m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    /// `11 / (12 m (m+1)^2)`, the closed-form minimum over fibration types.
    ClosedForm,
    /// The optimized table row for `2 <= m <= 12`, closed form elsewhere.
    TableA,
}

impl BoundSource {
    pub fn bound(&self, m: i64) -> Rational {
        match self {
            BoundSource::ClosedForm => closed_form_bound(m),
            BoundSource::TableA => {
                if (2..=12).contains(&m) {
                    bounds::worst_case_volume(m, 2, false, true)
                } else {
                    closed_form_bound(m)
                }
            }
        }
    }
}

fn closed_form_bound(m: i64) -> Rational {
    rat(11, 12 * m * (m + 1) * (m + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExclusionRule {
    NegativePlurigenus { m: i64 },
    SuperadditivityViolation { m: i64, n: i64 },
    VolumeBoundConflict { m: i64, bound: String },
}

/// Exclusion outcome; when `excluded` the rule carries a checkable witness.
#[derive(Clone, Debug, Serialize)]
pub struct ExclusionVerdict {
    pub excluded: bool,
    pub rule: Option<ExclusionRule>,
}

/// Applies the exclusion rules in fixed order:
/// (a) some `P_m < 0` for `m <= 50`;
/// (b) superadditivity violated on window 50;
/// (c) some `m <= 20` with `P_m >= 2` and `K^3` below the bound source.
pub fn exclusion_rules(fb: &FormalBasket, source: BoundSource) -> Result<ExclusionVerdict, Error> {
    for m in 2..=50 {
        if fb.plurigenus(m)? < int(0) {
            return Ok(ExclusionVerdict {
                excluded: true,
                rule: Some(ExclusionRule::NegativePlurigenus { m }),
            });
        }
    }
    if let Some((m, n)) = first_superadditivity_violation(fb, 50)? {
        return Ok(ExclusionVerdict {
            excluded: true,
            rule: Some(ExclusionRule::SuperadditivityViolation { m, n }),
        });
    }
    let volume = fb.volume();
    for m in 2..=20 {
        if fb.plurigenus(m)? >= int(2) {
            let bound = source.bound(m);
            if volume < bound {
                return Ok(ExclusionVerdict {
                    excluded: true,
                    rule: Some(ExclusionRule::VolumeBoundConflict {
                        m,
                        bound: format_rational(&bound),
                    }),
                });
            }
        }
    }
    Ok(ExclusionVerdict {
        excluded: false,
        rule: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::FormalBasket;

    fn fb(s: &str) -> FormalBasket {
        s.parse().unwrap()
    }

    #[test]
    fn miyaoka_reid_examples() {
        // B_{1,1} fails (2.7).
        let v = miyaoka_reid(&fb("{2x(1,2),(3,7),(2,5),2x(1,3),(1,4)};chi=1;p2=0"));
        assert!(!v.holds);
        // B_{2,1} holds.
        let v = miyaoka_reid(&fb("{(6,13),(1,3),(3,10)};chi=1;p2=0"));
        assert!(v.holds);
        // Empty basket: margin is exactly -24 chi.
        let v = miyaoka_reid(&fb("{};chi=1;p2=0"));
        assert!(!v.holds);
        assert_eq!(v.margin, int(-24));
    }

    #[test]
    fn miyaoka_reid_uses_reduced_entries() {
        // (4,8) enters as 4 x (1,2): sum 1/r sees four halves.
        let v = miyaoka_reid(&fb("{(4,8),(3,8),(3,10)};chi=1;p2=0"));
        assert!(!v.holds);
        assert_eq!(v.margin, int(2) - (int(2) + rat(1, 8) + rat(1, 10)));
    }

    #[test]
    fn superadditivity_trivial() {
        // All plurigenera vanish on the window.
        let zero = fb("{};chi=0;p2=0");
        let v = superadditivity_check(&zero, 20).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn exclusion_empty_bound_sources() {
        assert_eq!(BoundSource::ClosedForm.bound(14), rat(11, 37800));
        assert_eq!(BoundSource::ClosedForm.bound(15), rat(11, 46080));
        assert_eq!(BoundSource::ClosedForm.bound(16), rat(11, 55488));
        assert_eq!(BoundSource::ClosedForm.bound(18), rat(11, 77976));
    }
}
