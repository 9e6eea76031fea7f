//! Exact depth-first enumeration of chain-supported count vectors under
//! plurigenus window constraints and strict volume positivity.
//!
//! Everything runs in scaled i128 arithmetic: with D the lcm of 12 and the
//! denominators 2r over the slots, both the weight `w = b(r-b)/r` and the
//! plurigenus slot coefficients become integers after multiplication by D,
//! so every constraint is an integer comparison.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::pair::Pair;
use crate::rational::{rat, Rational};

/// Inclusive window `lo <= P_m <= hi` (`hi = None` means unbounded above).
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub lo: i64,
    pub hi: Option<i64>,
}

pub const M_LO: i64 = 3;
pub const M_HI: i64 = 13;

pub struct Kernel {
    slots: Vec<Pair>,
    scale: i128,
    weight: Vec<i128>,
    /// coeff[slot][m - M_LO] = D * (m(m-1)(2m-1)/12 * w_p - l_p(m));
    /// P_m * D = const[m - M_LO] - sum_p c_p * coeff[p][m].
    coeff: Vec<Vec<i128>>,
    /// Suffix extremes of coeff/weight as exact fractions, for pruning.
    suffix_min: Vec<Vec<(i128, i128)>>,
    suffix_max: Vec<Vec<(i128, i128)>>,
}

const M_COUNT: usize = (M_HI - M_LO + 1) as usize;

impl Kernel {
    pub fn new(slots: Vec<Pair>) -> Self {
        let mut scale: i128 = 12;
        for p in &slots {
            scale = scale.lcm(&(2 * p.r() as i128));
        }
        let to_scaled = |q: &Rational| -> i128 {
            let scaled = q * Rational::new(scale.into(), 1.into());
            debug_assert!(crate::rational::is_integer(&scaled));
            scaled
                .to_integer()
                .to_i128()
                .expect("scaled coefficient fits i128")
        };
        let weight: Vec<i128> = slots.iter().map(|p| to_scaled(&p.reid_weight())).collect();
        let coeff: Vec<Vec<i128>> = slots
            .iter()
            .map(|p| {
                (M_LO..=M_HI)
                    .map(|m| {
                        let c = rat(m * (m - 1) * (2 * m - 1), 12) * p.reid_weight()
                            - p.local_contribution(m).expect("m >= 1");
                        to_scaled(&c)
                    })
                    .collect()
            })
            .collect();

        // suffix_min[i][k] / suffix_max[i][k]: extreme of coeff/weight over
        // slots i.. (fractions with positive denominators).
        let n = slots.len();
        let mut suffix_min = vec![vec![(0i128, 1i128); M_COUNT]; n + 1];
        let mut suffix_max = vec![vec![(0i128, 1i128); M_COUNT]; n + 1];
        for k in 0..M_COUNT {
            suffix_min[n][k] = (i128::MAX, 1);
            suffix_max[n][k] = (i128::MIN, 1);
        }
        for i in (0..n).rev() {
            for k in 0..M_COUNT {
                let cur = (coeff[i][k], weight[i]);
                let lt = |a: (i128, i128), b: (i128, i128)| {
                    if a.0 == i128::MIN || b.0 == i128::MAX {
                        return true;
                    }
                    if a.0 == i128::MAX || b.0 == i128::MIN {
                        return false;
                    }
                    a.0 * b.1 < b.0 * a.1
                };
                suffix_min[i][k] = if lt(cur, suffix_min[i + 1][k]) {
                    cur
                } else {
                    suffix_min[i + 1][k]
                };
                suffix_max[i][k] = if lt(suffix_max[i + 1][k], cur) {
                    cur
                } else {
                    suffix_max[i + 1][k]
                };
            }
        }
        Kernel {
            slots,
            scale,
            weight,
            coeff,
            suffix_min,
            suffix_max,
        }
    }

    pub fn slots(&self) -> &[Pair] {
        &self.slots
    }

    /// All count vectors with `K^3 > 0` and every `P_m` (`3 <= m <= 13`)
    /// inside its window, for the formal basket `(counts, chi, 0)`.
    pub fn enumerate(&self, chi: i64, windows: &[Window; M_COUNT]) -> Vec<Vec<u64>> {
        // K^3 > 0 <=> sum c w <= 6 chi D - 1.
        let budget = 6 * chi as i128 * self.scale - 1;
        let consts: Vec<i128> = (M_LO..=M_HI)
            .map(|m| {
                // chi * (m(m-1)(2m-1)/2 + 1 - 2m) * D
                let v = m * (m - 1) * (2 * m - 1) / 2 + 1 - 2 * m;
                chi as i128 * v as i128 * self.scale
            })
            .collect();
        let mut out = Vec::new();
        let mut counts = vec![0u64; self.slots.len()];
        let mut acc = [0i128; M_COUNT];
        self.dfs(0, budget, &consts, windows, &mut counts, &mut acc, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        i: usize,
        remaining: i128,
        consts: &[i128],
        windows: &[Window; M_COUNT],
        counts: &mut Vec<u64>,
        acc: &mut [i128; M_COUNT],
        out: &mut Vec<Vec<u64>>,
    ) {
        if !self.feasible(i, remaining, consts, windows, acc) {
            return;
        }
        if i == self.slots.len() {
            out.push(counts.clone());
            return;
        }
        let cap = remaining / self.weight[i];
        for c in 0..=cap {
            counts[i] = c as u64;
            if c > 0 {
                for k in 0..M_COUNT {
                    acc[k] += self.coeff[i][k];
                }
            }
            self.dfs(
                i + 1,
                remaining - c * self.weight[i],
                consts,
                windows,
                counts,
                acc,
                out,
            );
        }
        for k in 0..M_COUNT {
            acc[k] -= cap * self.coeff[i][k];
        }
        counts[i] = 0;
    }

    /// Interval check: can the suffix still land every P_m in its window?
    /// Future contribution to `sum c f` lies in
    /// `[min(0, R * minratio), max(0, R * maxratio)]`.
    fn feasible(
        &self,
        i: usize,
        remaining: i128,
        consts: &[i128],
        windows: &[Window; M_COUNT],
        acc: &[i128; M_COUNT],
    ) -> bool {
        for k in 0..M_COUNT {
            let base = consts[k] - acc[k];
            // Highest reachable P_m * D is base - min_future.
            let (mn, md) = self.suffix_min[i][k];
            let min_future_num = if i == self.slots.len() || mn >= 0 {
                0
            } else {
                remaining * mn
            };
            let min_future_den = if min_future_num == 0 { 1 } else { md };
            // Lowest reachable is base - max_future.
            let (xn, xd) = self.suffix_max[i][k];
            let max_future_num = if i == self.slots.len() || xn <= 0 {
                0
            } else {
                remaining * xn
            };
            let max_future_den = if max_future_num == 0 { 1 } else { xd };

            let lo_target = windows[k].lo as i128 * self.scale;
            // base - min_future >= lo  <=>  (base - lo) * den >= min_num
            if (base - lo_target) * min_future_den < min_future_num {
                return false;
            }
            if let Some(hi) = windows[k].hi {
                let hi_target = hi as i128 * self.scale;
                // base - max_future <= hi  <=>  (base - hi) * den <= max_num
                if (base - hi_target) * max_future_den > max_future_num {
                    return false;
                }
            }
        }
        true
    }

    /// Exact `P_m` of a count vector as a rational (for cross-checking).
    pub fn plurigenus_of(&self, chi: i64, counts: &[u64], m: i64) -> Rational {
        debug_assert!((M_LO..=M_HI).contains(&m));
        let k = (m - M_LO) as usize;
        let c = m * (m - 1) * (2 * m - 1) / 2 + 1 - 2 * m;
        let mut v = chi as i128 * c as i128 * self.scale;
        for (i, &cnt) in counts.iter().enumerate() {
            v -= cnt as i128 * self.coeff[i][k];
        }
        Rational::new(v.into(), self.scale.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::{Basket, FormalBasket};
    use crate::chain::canonical_chain;

    /// The kernel's scaled plurigenus must agree with the formal-basket
    /// formula on arbitrary count vectors.
    #[test]
    fn kernel_matches_formal_basket() {
        let slots: Vec<Pair> = canonical_chain(12, 11).iter().map(|c| c.pair).collect();
        let kernel = Kernel::new(slots.clone());
        let counts: Vec<u64> = (0..slots.len() as u64).map(|i| (i * 7 + 3) % 4).collect();
        let basket =
            Basket::from_counts(slots.iter().cloned().zip(counts.iter().cloned()));
        let fb = FormalBasket::new(basket, 3, 0);
        for m in M_LO..=M_HI {
            assert_eq!(
                kernel.plurigenus_of(3, &counts, m),
                fb.plurigenus(m).unwrap(),
                "m = {m}"
            );
        }
    }
}
