//! The chi > 1 classification: enumeration of step-12 baskets under the
//! plurigenus-pattern assumption, per-row minimal positive baskets, the
//! exclusion engine, and the global volume minimum over admissible
//! candidates including packing-chain intermediates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::basket::{Basket, FormalBasket};
use crate::chain::canonical_chain;
use crate::classifier::kernel::{Kernel, Window, M_HI, M_LO};
use crate::constraints::{self, BoundSource, ExclusionVerdict};
use crate::error::Error;
use crate::packing;
use crate::pair::Pair;
use crate::rational::{int, Rational};

#[derive(Clone, Debug)]
pub struct TableCCaps {
    /// Elementary tail of the enumeration chain; the published table needs
    /// nothing above (1,5), which the run asserts post hoc.
    pub r_elem_cap: i64,
    pub chi_max: i64,
    pub state_cap: usize,
    pub superadditivity_window: i64,
}

impl Default for TableCCaps {
    fn default() -> Self {
        TableCCaps {
            r_elem_cap: 11,
            chi_max: 8,
            state_cap: packing::DEFAULT_STATE_CAP,
            superadditivity_window: 13,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalRow {
    pub basket: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub p18: i64,
    pub p24: i64,
    pub mu1: Option<i64>,
}

/// One enumeration outcome: a step-12 basket with chi, its plurigenus data
/// and all minimal positive baskets it dominates.
#[derive(Clone, Debug, Serialize)]
pub struct TableCRow {
    pub chi: i64,
    pub basket: String,
    /// Counts over the 15-slot step-12 chain (tail capped at (1,5)).
    pub counts: Vec<u64>,
    pub p_vector: [i64; 9],
    pub p18: i64,
    pub p24: i64,
    pub mu1: Option<i64>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub minimal: Vec<MinimalRow>,
}

impl TableCRow {
    pub fn basket_value(&self) -> Basket {
        self.basket.parse().expect("row basket round-trips")
    }
}

/// The 15 printed chain slots, in table order.
pub fn printed_slots() -> Vec<Pair> {
    canonical_chain(12, 5).iter().map(|c| c.pair).collect()
}

fn plurigenus_i64(fb: &FormalBasket, m: i64) -> Result<i64, Error> {
    Ok(i64::try_from(fb.plurigenus_integer(m)?).expect("plurigenus fits i64"))
}

fn mu(fb: &FormalBasket, level: i64, scan: i64) -> Result<Option<i64>, Error> {
    for m in 2..=scan {
        if fb.plurigenus(m)? > int(level) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn make_minimal_row(fb: &FormalBasket) -> Result<MinimalRow, Error> {
    Ok(MinimalRow {
        basket: fb.basket.to_string(),
        k3: fb.volume(),
        p18: plurigenus_i64(fb, 18)?,
        p24: plurigenus_i64(fb, 24)?,
        mu1: mu(fb, 1, 60)?,
    })
}

/// Enumerates every formal basket with chi in `2..=chi_max`, P2 = 0,
/// `P_m` in {0,1} for `3 <= m <= 12`, non-negative `P_13`, superadditivity
/// on the window, the plurigenus inequality, and positive volume. Rows are
/// sorted by (p-vector, chi, counts) and carry their minimal descendants.
pub fn enumerate_chi_gt1(caps: &TableCCaps) -> Result<Vec<TableCRow>, Error> {
    let slots: Vec<Pair> = canonical_chain(12, caps.r_elem_cap)
        .iter()
        .map(|c| c.pair)
        .collect();
    let kernel = Kernel::new(slots.clone());
    let mut windows = [Window { lo: 0, hi: Some(1) }; (M_HI - M_LO + 1) as usize];
    windows[(13 - M_LO) as usize] = Window { lo: 0, hi: None };

    let mut rows = Vec::new();
    for chi in 2..=caps.chi_max {
        for counts in kernel.enumerate(chi, &windows) {
            let basket = Basket::from_counts(slots.iter().cloned().zip(counts));
            let fb = FormalBasket::new(basket, chi, 0);
            if !constraints::superadditivity_check(&fb, caps.superadditivity_window)?.holds {
                continue;
            }
            if !constraints::ineq41(&fb)?.holds {
                continue;
            }
            rows.push(build_row(fb, caps)?);
        }
    }
    rows.sort_by(|a, b| {
        (a.p_vector, a.chi, &a.counts).cmp(&(b.p_vector, b.chi, &b.counts))
    });
    Ok(rows)
}

fn build_row(fb: FormalBasket, caps: &TableCCaps) -> Result<TableCRow, Error> {
    let mut p_vector = [0i64; 9];
    for (i, m) in (3..=11).enumerate() {
        p_vector[i] = plurigenus_i64(&fb, m)?;
    }
    let printed = printed_slots();
    let counts: Vec<u64> = printed.iter().map(|p| fb.basket.count_of(p)).collect();
    // The elementary tail above (1,5) must be inert; any use would make the
    // printed 15-slot projection lossy.
    let projected: u64 = counts.iter().sum();
    if projected != fb.basket.size() {
        return Err(Error::Cap(format!(
            "enumerated basket {} uses pairs outside the printed chain",
            fb.basket
        )));
    }
    let minimal = packing::minimal_positive_descendants_capped(&fb, caps.state_cap)?
        .into_iter()
        .map(|b| make_minimal_row(&fb.with_basket(b)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableCRow {
        chi: fb.chi,
        basket: fb.basket.to_string(),
        counts,
        p_vector,
        p18: plurigenus_i64(&fb, 18)?,
        p24: plurigenus_i64(&fb, 24)?,
        mu1: mu(&fb, 1, 60)?,
        k3: fb.volume(),
        minimal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedEntry {
    pub chi: i64,
    pub basket: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub verdict: ExclusionVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCReport {
    pub rows: Vec<TableCRow>,
    /// Minimal baskets flagged by the exclusion engine (closed-form bound
    /// source), over all rows.
    pub excluded: Vec<ExcludedEntry>,
    /// Global minimum volume over non-excluded candidates: row baskets,
    /// minimal descendants, and every packing-chain intermediate.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub min_volume: Rational,
    pub attaining: Vec<ExtremalEntry>,
    pub mu1_max: i64,
    pub survivor_p24_min: i64,
    pub survivors_positive_24_to_47: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtremalEntry {
    pub chi: i64,
    pub basket: String,
}

/// Runs the enumeration and the exclusion analysis; the volume minimum
/// ranges over every positive basket dominated by some row (the full
/// descendant closures), with excluded formal baskets removed.
pub fn classify_chi_gt1(caps: &TableCCaps) -> Result<TableCReport, Error> {
    let rows = enumerate_chi_gt1(caps)?;

    let mut excluded = Vec::new();
    let mut excluded_set: BTreeSet<(i64, Basket)> = BTreeSet::new();
    for row in &rows {
        for min in &row.minimal {
            let basket: Basket = min.basket.parse()?;
            let key = (row.chi, basket.clone());
            if excluded_set.contains(&key) {
                continue;
            }
            let fb = FormalBasket::new(basket.clone(), row.chi, 0);
            let verdict = constraints::exclusion_rules(&fb, BoundSource::ClosedForm)?;
            if verdict.excluded {
                excluded_set.insert(key);
                excluded.push(ExcludedEntry {
                    chi: row.chi,
                    basket: min.basket.clone(),
                    k3: fb.volume(),
                    verdict,
                });
            }
        }
    }

    let mut min_volume: Option<Rational> = None;
    let mut attaining: BTreeSet<ExtremalEntry> = BTreeSet::new();
    let mut mu1_max = 0i64;
    let mut survivor_p24_min: Option<i64> = None;
    let mut survivors_positive = true;

    for row in &rows {
        mu1_max = mu1_max.max(row.mu1.expect("every row reaches P_m >= 2"));
        let fb = FormalBasket::new(row.basket_value(), row.chi, 0);
        for (node, _) in packing::descendant_closure(&fb, false, caps.state_cap)? {
            let nfb = fb.with_basket(node.clone());
            let verdict = constraints::exclusion_rules(&nfb, BoundSource::ClosedForm)?;
            if verdict.excluded {
                continue;
            }
            let v = nfb.volume();
            match &min_volume {
                Some(cur) if *cur < v => {}
                Some(cur) if *cur == v => {
                    attaining.insert(ExtremalEntry {
                        chi: row.chi,
                        basket: node.to_string(),
                    });
                }
                _ => {
                    min_volume = Some(v);
                    attaining.clear();
                    attaining.insert(ExtremalEntry {
                        chi: row.chi,
                        basket: node.to_string(),
                    });
                }
            }
        }
        for min in &row.minimal {
            let basket: Basket = min.basket.parse()?;
            if excluded_set.contains(&(row.chi, basket.clone())) {
                continue;
            }
            let mfb = FormalBasket::new(basket, row.chi, 0);
            survivor_p24_min = Some(match survivor_p24_min {
                Some(cur) => cur.min(min.p24),
                None => min.p24,
            });
            for m in 24..=47 {
                if mfb.plurigenus(m)? <= int(0) {
                    survivors_positive = false;
                }
            }
        }
    }

    Ok(TableCReport {
        rows,
        excluded,
        min_volume: min_volume.expect("admissible candidates exist"),
        attaining: attaining.into_iter().collect(),
        mu1_max,
        survivor_p24_min: survivor_p24_min.expect("survivors exist"),
        survivors_positive_24_to_47: survivors_positive,
    })
}
