//! Constrained enumerations reproducing the chi = 1 case list and the
//! chi > 1 table, plus plurigenus threshold scans.

pub mod chi1;
pub mod kernel;
pub mod tablec;

pub use chi1::{classify_chi1, enumerate_chi1, Chi1Caps, Chi1Report, PatternChi1, CHI1_PATTERNS};
pub use tablec::{classify_chi_gt1, enumerate_chi_gt1, TableCCaps, TableCReport, TableCRow};

use serde::Serialize;

use crate::basket::FormalBasket;
use crate::error::Error;
use crate::rational::int;

/// Threshold summary of a formal basket: `mu_i` is the least `m >= 2` with
/// `P_m > i`; `all_positive_from` is the least index from which `P_m > 0`
/// holds through the scan limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub mu0: Option<i64>,
    pub mu1: Option<i64>,
    pub mu2: Option<i64>,
    pub mu3: Option<i64>,
    pub all_positive_from: Option<i64>,
}

pub fn thresholds(fb: &FormalBasket, scan_limit: i64) -> Result<Thresholds, Error> {
    assert!(scan_limit >= 48, "scan limit must be at least 48");
    let mut mus = [None; 4];
    let mut all_positive_from = None;
    for m in (2..=scan_limit).rev() {
        let p = fb.plurigenus(m)?;
        for (i, slot) in mus.iter_mut().enumerate() {
            if p > int(i as i64) {
                *slot = Some(m);
            }
        }
        if p > int(0) {
            all_positive_from = Some(m);
        } else {
            all_positive_from = None;
        }
    }
    // A threshold found only at the very end may continue past the scan;
    // the caller chose the limit, so report what the window certifies.
    Ok(Thresholds {
        mu0: mus[0],
        mu1: mus[1],
        mu2: mus[2],
        mu3: mus[3],
        all_positive_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_of_known_minimal_baskets() {
        // P5 = 1 first for this pattern-III basket.
        let fb: FormalBasket = "{(9,22),(1,3)};chi=1;p2=0".parse().unwrap();
        let t = thresholds(&fb, 60).unwrap();
        assert_eq!(t.mu0, Some(5));
        assert_eq!(t.mu1, Some(9));
    }
}
