//! The fibration-type bound engine: xi seeding, the refinement step, volume
//! optimization and its published table, per-type closed forms,
//! non-vanishing and birationality thresholds, and chain replays.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Error;
use crate::rational::{ceil_big, floor_plus_one, format_rational, int, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FType {
    III,
    II,
    Iq,
    Ip,
    In,
    I3,
}

impl FType {
    pub fn label(&self) -> &'static str {
        match self {
            FType::III => "III",
            FType::II => "II",
            FType::Iq => "I_q",
            FType::Ip => "I_p",
            FType::In => "I_n",
            FType::I3 => "I_3",
        }
    }
}

/// Parameters of one fibration case feeding the xi machinery.
#[derive(Clone, Debug)]
pub struct FibrationCase {
    pub ftype: FType,
    pub m0: i64,
    pub p: i64,
    pub beta: Rational,
    pub deg_kc: i64,
    pub even_divisor: bool,
}

impl FibrationCase {
    /// Defaults for volume runs: III has p = 1, beta = 1/m0, deg K_C = 6;
    /// II the same with deg K_C = 2; I_p has beta = 1/(2(m0+1)), deg 6;
    /// I_n has beta = 1/(4(m0+1)), deg 18, on an even divisor;
    /// I_3 has p = 2, beta = 1/(2(m0+2)), deg 18, even divisor.
    pub fn volume_case(ftype: FType, m0: i64) -> Self {
        assert!(m0 >= 1);
        match ftype {
            FType::III => FibrationCase {
                ftype,
                m0,
                p: 1,
                beta: rat(1, m0),
                deg_kc: 6,
                even_divisor: false,
            },
            FType::II => FibrationCase {
                ftype,
                m0,
                p: 1,
                beta: rat(1, m0),
                deg_kc: 2,
                even_divisor: false,
            },
            FType::Ip => FibrationCase {
                ftype,
                m0,
                p: 1,
                beta: rat(1, 2 * (m0 + 1)),
                deg_kc: 6,
                even_divisor: false,
            },
            FType::In => FibrationCase {
                ftype,
                m0,
                p: 1,
                beta: rat(1, 4 * (m0 + 1)),
                deg_kc: 18,
                even_divisor: true,
            },
            FType::I3 => FibrationCase {
                ftype,
                m0,
                p: 2,
                beta: rat(1, 2 * (m0 + 2)),
                deg_kc: 18,
                even_divisor: true,
            },
            FType::Iq => panic!("type I_q has constant bounds; no xi case"),
        }
    }

    /// The I_3 birationality configuration: beta = 1/(m0+2), deg K_C = 2.
    pub fn birational_case(ftype: FType, m0: i64) -> Self {
        match ftype {
            FType::I3 => FibrationCase {
                ftype,
                m0,
                p: 2,
                beta: rat(1, m0 + 2),
                deg_kc: 2,
                even_divisor: true,
            },
            _ => Self::volume_case(ftype, m0),
        }
    }

    /// A pencil-style case with explicit slope data (used by chain replays).
    pub fn custom(m0: i64, p: i64, beta: Rational, deg_kc: i64, even_divisor: bool) -> Self {
        FibrationCase {
            ftype: FType::Ip,
            m0,
            p,
            beta,
            deg_kc,
            even_divisor,
        }
    }

    /// `c = 1 + m0/p + 1/beta`; alpha at level m is `(m - c) xi`.
    pub fn slope_offset(&self) -> Rational {
        int(1) + rat(self.m0, self.p) + self.beta.recip()
    }

    pub fn alpha(&self, xi: &Rational, m: i64) -> Rational {
        (int(m) - self.slope_offset()) * xi
    }
}

/// Seed `xi >= deg(K_C) / (1 + m0/p + 1/beta)`.
pub fn seed_xi(case: &FibrationCase) -> Rational {
    int(case.deg_kc) / case.slope_offset()
}

/// One refinement at level m: with `alpha = (m - 1 - m0/p - 1/beta) xi`,
/// returns `(deg K_C + ceil(alpha)) / m` when the admission condition holds
/// (`alpha > 1`, or `alpha > 0` on an even divisor). Callers keep
/// `max(old, new)`. Monotone in xi at fixed m.
pub fn refine_xi(case: &FibrationCase, xi: &Rational, m: i64) -> Option<Rational> {
    if m <= 1 {
        return None;
    }
    let alpha = case.alpha(xi, m);
    let admissible = alpha > int(1) || (case.even_divisor && alpha > int(0));
    if !admissible {
        return None;
    }
    Some(Rational::new(
        BigInt::from(case.deg_kc) + ceil_big(&alpha),
        m.into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct XiStep {
    pub m: i64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub alpha: Rational,
    pub alpha0: i64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub xi: Rational,
}

/// Audited record of a bound run: the seed, every improving refinement, the
/// final xi and the volume bound `(p beta / m0) xi`.
#[derive(Clone, Debug, Serialize)]
pub struct XiTrace {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub seed: Rational,
    pub steps: Vec<XiStep>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub final_xi: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub volume_bound: Rational,
}

/// Iteration schedule for [`optimize_volume_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Repeatedly refine at the smallest level with `alpha > 1`, stopping at
    /// the first non-improving attempt. This is the schedule behind the
    /// published bound table and reproduces its cells exactly.
    FirstAdmissible,
    /// True fixed point: refine at the best level below `m_max` until no
    /// admissible level improves xi. Never weaker than the one-shot
    /// closed-form bounds.
    BestImprovement,
}

pub fn default_m_max(m0: i64) -> i64 {
    12 * m0 + 20
}

/// Volume bound via the published-table schedule.
pub fn optimize_volume(case: &FibrationCase, m_max: i64) -> XiTrace {
    optimize_volume_with(case, m_max, Schedule::FirstAdmissible)
}

pub fn optimize_volume_with(case: &FibrationCase, m_max: i64, schedule: Schedule) -> XiTrace {
    let seed = seed_xi(case);
    let mut xi = seed.clone();
    let mut steps = Vec::new();
    loop {
        let candidate = match schedule {
            Schedule::FirstAdmissible => {
                // Smallest m with alpha > 1, i.e. m > c + 1/xi.
                let m_low = floor_plus_one(&(case.slope_offset() + xi.recip()));
                match i64::try_from(m_low) {
                    Ok(m) if m <= m_max => refine_xi(case, &xi, m).map(|v| (m, v)),
                    _ => None,
                }
            }
            Schedule::BestImprovement => {
                let mut best: Option<(i64, Rational)> = None;
                for m in 2..=m_max {
                    if let Some(v) = refine_xi(case, &xi, m) {
                        match &best {
                            Some((_, cur)) if *cur >= v => {}
                            _ => best = Some((m, v)),
                        }
                    }
                }
                best
            }
        };
        match candidate {
            Some((m, v)) if v > xi => {
                let alpha = case.alpha(&xi, m);
                steps.push(XiStep {
                    m,
                    alpha0: i64::try_from(ceil_big(&alpha)).expect("small alpha"),
                    alpha,
                    xi: v.clone(),
                });
                xi = v;
            }
            _ => break,
        }
    }
    let volume_bound = rat(case.p, case.m0) * case.beta.clone() * xi.clone();
    XiTrace {
        seed,
        steps,
        final_xi: xi,
        volume_bound,
    }
}

/// The per-type one-shot volume bounds.
pub fn closed_form_volume(ftype: FType, m0: i64) -> Rational {
    assert!(m0 >= 1);
    match ftype {
        FType::III => rat(10, (3 * m0 + 2) * m0 * m0),
        FType::II => rat(4, (3 * m0 + 2) * m0 * m0),
        FType::Ip => rat(9, 2 * m0 * (m0 + 1) * (4 * m0 + 5)),
        FType::In => rat(11, 12 * m0 * (m0 + 1) * (m0 + 1)),
        FType::I3 => rat(36, 5 * m0 * (m0 + 2) * (m0 + 2)),
        FType::Iq => rat(1, 22),
    }
}

/// Minimum of the applicable type bounds. `plevel` 3 replaces I_p/I_n by
/// I_3; the `chi_gt1_q0` flag drops I_n (irregular or chi <= 1 otherwise).
pub fn worst_case_volume(m0: i64, plevel: u8, chi_gt1_q0: bool, optimized: bool) -> Rational {
    let types: Vec<FType> = match plevel {
        2 => {
            let mut t = vec![FType::III, FType::II, FType::Ip];
            if !chi_gt1_q0 {
                t.push(FType::In);
            }
            t
        }
        3 => vec![FType::III, FType::II, FType::I3],
        _ => panic!("plevel must be 2 or 3"),
    };
    types
        .into_iter()
        .map(|t| {
            if optimized {
                optimize_volume(&FibrationCase::volume_case(t, m0), default_m_max(m0)).volume_bound
            } else {
                closed_form_volume(t, m0)
            }
        })
        .min()
        .expect("non-empty type list")
}

/// Effective non-vanishing: `P_m >= 2` for all `m` at or above the returned
/// threshold.
pub fn nonvanishing_threshold(ftype: FType, m0: i64) -> Result<i64, Error> {
    Ok(match ftype {
        FType::III | FType::II => 2 * m0,
        FType::Ip => 2 * m0 + 3,
        FType::In => 3 * m0 + 4,
        FType::I3 => 3 * m0 / 2 + 4,
        FType::Iq => return Err(Error::NotApplicable),
    })
}

/// Least m from which the m-canonical map is birational, per type.
pub fn birational_threshold(ftype: FType, m0: i64) -> i64 {
    match ftype {
        FType::III => {
            let a = 3 * m0; // least integer > 3 m0 - 1
            let b = i64::try_from(floor_plus_one(&rat(13 * m0 + 7, 5))).unwrap();
            a.max(b)
        }
        FType::II => i64::try_from(floor_plus_one(&rat(7 * m0 + 4, 2))).unwrap(),
        FType::Ip => 4 * m0 + 5,
        FType::In => 5 * m0 + 6,
        FType::I3 => 3 * m0 + 6,
        FType::Iq => 7,
    }
}

/// The type-free fallback `5 m0 + 6`.
pub fn generic_birational_threshold(m0: i64) -> i64 {
    5 * m0 + 6
}

/// Replays a prescribed refinement chain (each step must be admissible and
/// is kept via max), then returns the least m with `alpha > target_alpha`.
pub fn replay_chain(
    case: &FibrationCase,
    ms: &[i64],
    target_alpha: &Rational,
) -> Result<(XiTrace, i64), Error> {
    assert!(!ms.is_empty(), "empty chain");
    let seed = seed_xi(case);
    let mut xi = seed.clone();
    let mut steps = Vec::new();
    for &m in ms {
        let alpha = case.alpha(&xi, m);
        let refined = refine_xi(case, &xi, m).ok_or_else(|| Error::ChainBroken {
            m,
            alpha: format_rational(&alpha),
        })?;
        if refined > xi {
            xi = refined;
        }
        steps.push(XiStep {
            m,
            alpha0: i64::try_from(ceil_big(&alpha)).expect("small alpha"),
            alpha,
            xi: xi.clone(),
        });
    }
    // Least m with (m - c) xi > target, i.e. m > c + target/xi.
    let least = i64::try_from(floor_plus_one(
        &(case.slope_offset() + target_alpha / xi.clone()),
    ))
    .expect("threshold fits i64");
    let volume_bound = rat(case.p, case.m0) * case.beta.clone() * xi.clone();
    Ok((
        XiTrace {
            seed,
            steps,
            final_xi: xi,
            volume_bound,
        },
        least,
    ))
}

/// The published lower-bound table: rows III, II, `P >= 3`, `P >= 2` over
/// `m0 = 2..=12`.
#[derive(Clone, Debug, Serialize)]
pub struct TableA {
    pub m0: Vec<i64>,
    pub rows: Vec<TableARow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableARow {
    pub label: String,
    pub cells: Vec<String>,
}

pub const TABLE_A_ROWS: [&str; 4] = ["III", "II", "P>=3", "P>=2"];

pub fn table_a() -> TableA {
    let m0: Vec<i64> = (2..=12).collect();
    let cell = |label: &str, m: i64| -> Rational {
        match label {
            "III" => optimize_volume(&FibrationCase::volume_case(FType::III, m), default_m_max(m))
                .volume_bound,
            "II" => optimize_volume(&FibrationCase::volume_case(FType::II, m), default_m_max(m))
                .volume_bound,
            "P>=3" => worst_case_volume(m, 3, false, true),
            "P>=2" => worst_case_volume(m, 2, false, true),
            _ => unreachable!(),
        }
    };
    let rows = TABLE_A_ROWS
        .iter()
        .map(|label| TableARow {
            label: label.to_string(),
            cells: m0
                .iter()
                .map(|&m| format_rational(&cell(label, m)))
                .collect(),
        })
        .collect();
    TableA { m0, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_examples() {
        let c = FibrationCase::volume_case(FType::III, 11);
        assert_eq!(seed_xi(&c), rat(6, 23));
        let c = FibrationCase::volume_case(FType::II, 8);
        assert_eq!(seed_xi(&c), rat(2, 17));
        for m0 in 1..=20 {
            let c = FibrationCase::birational_case(FType::I3, m0);
            assert_eq!(seed_xi(&c), rat(4, 3 * (m0 + 2)));
        }
    }

    #[test]
    fn refine_examples() {
        let c = FibrationCase::volume_case(FType::III, 11);
        assert_eq!(refine_xi(&c, &rat(6, 23), 27), Some(rat(8, 27)));
        // alpha = 0 at m = 23: inadmissible.
        assert_eq!(refine_xi(&c, &rat(6, 23), 23), None);

        let c = FibrationCase::volume_case(FType::II, 8);
        assert_eq!(refine_xi(&c, &rat(2, 13), 24), Some(rat(1, 6)));
    }

    #[test]
    fn optimize_small_cases() {
        let t = optimize_volume(&FibrationCase::volume_case(FType::III, 2), default_m_max(2));
        assert_eq!(t.volume_bound, rat(1, 3));

        let t = optimize_volume(&FibrationCase::volume_case(FType::II, 8), default_m_max(8));
        assert_eq!(t.volume_bound, rat(1, 384));
        assert_eq!(t.seed, rat(2, 17));

        // Spot check of the cross-derived I_n cell: seed 6/5, one step at
        // m = 16 gives xi = 5/4 and bound (1/24)(5/4) = 5/96.
        let t = optimize_volume(&FibrationCase::volume_case(FType::In, 2), default_m_max(2));
        assert_eq!(t.final_xi, rat(5, 4));
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].m, 16);
        assert_eq!(t.volume_bound, rat(5, 96));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_volume(FType::III, 2), rat(5, 16));
        assert_eq!(closed_form_volume(FType::In, 7), rat(11, 12 * 7 * 64));
        assert_eq!(closed_form_volume(FType::Iq, 5), rat(1, 22));
    }

    #[test]
    fn worst_case_closed_form_is_type_in() {
        for m0 in 2..=24 {
            assert_eq!(
                worst_case_volume(m0, 2, false, false),
                rat(11, 12 * m0 * (m0 + 1) * (m0 + 1))
            );
        }
    }

    #[test]
    fn worst_case_optimized_examples() {
        assert_eq!(worst_case_volume(7, 2, false, true), rat(5, 2408));
        assert_eq!(worst_case_volume(3, 3, false, true), rat(2, 45));
    }

    #[test]
    fn thresholds_per_type() {
        assert_eq!(nonvanishing_threshold(FType::Ip, 10).unwrap(), 23);
        assert_eq!(nonvanishing_threshold(FType::II, 9).unwrap(), 18);
        assert_eq!(nonvanishing_threshold(FType::I3, 4).unwrap(), 10);
        assert!(nonvanishing_threshold(FType::Iq, 3).is_err());

        assert_eq!(birational_threshold(FType::III, 2), 7);
        assert_eq!(birational_threshold(FType::II, 10), 38);
        assert_eq!(generic_birational_threshold(4), 26);
    }

    #[test]
    fn replay_breaks_at_inadmissible_step() {
        let c = FibrationCase::volume_case(FType::III, 5);
        let r = replay_chain(&c, &[5], &int(2));
        assert!(matches!(r, Err(Error::ChainBroken { m: 5, .. })));
    }
}
