//! The chi = 1 classification: pattern-wise candidate enumeration on the
//! step-5 chain, minimal positive baskets, admissibility filtering, and the
//! volume-minimum replay.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::basket::{Basket, FormalBasket};
use crate::chain::canonical_chain;
use crate::classifier::kernel::{Kernel, Window, M_HI, M_LO};
use crate::constraints::{self, BoundSource, ExclusionRule, FilterVerdict};
use crate::error::Error;
use crate::packing;
use crate::rational::{int, Rational};

/// One of the eight admissible `(P3, P4, P5, P6)` tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatternChi1(pub [u8; 4]);

pub const CHI1_PATTERNS: [PatternChi1; 8] = [
    PatternChi1([0, 0, 0, 0]),
    PatternChi1([0, 0, 0, 1]),
    PatternChi1([0, 0, 1, 0]),
    PatternChi1([0, 0, 1, 1]),
    PatternChi1([0, 1, 0, 1]),
    PatternChi1([0, 1, 1, 1]),
    PatternChi1([1, 0, 1, 1]),
    PatternChi1([1, 1, 1, 1]),
];

#[derive(Clone, Debug)]
pub struct Chi1Caps {
    pub r_elem_cap: i64,
    pub state_cap: usize,
}

impl Default for Chi1Caps {
    fn default() -> Self {
        Chi1Caps {
            r_elem_cap: 30,
            state_cap: packing::DEFAULT_STATE_CAP,
        }
    }
}

/// All candidate baskets supported on the step-5 chain with chi = 1,
/// P2 = 0, the given `(P3..P6)` pattern, non-negative integral plurigenera
/// through m = 13, and positive volume. Deterministic order.
pub fn enumerate_chi1(pattern: PatternChi1, caps: &Chi1Caps) -> Result<Vec<Basket>, Error> {
    let slots: Vec<_> = canonical_chain(5, caps.r_elem_cap)
        .iter()
        .map(|c| c.pair)
        .collect();
    let kernel = Kernel::new(slots.clone());
    let mut windows = [Window { lo: 0, hi: None }; (M_HI - M_LO + 1) as usize];
    for (i, &v) in pattern.0.iter().enumerate() {
        windows[i] = Window {
            lo: v as i64,
            hi: Some(v as i64),
        };
    }
    let mut baskets: Vec<Basket> = kernel
        .enumerate(1, &windows)
        .into_iter()
        .map(|counts| Basket::from_counts(slots.iter().cloned().zip(counts)))
        .collect();
    baskets.sort();
    for b in &baskets {
        let fb = FormalBasket::new(b.clone(), 1, 0);
        for m in 2..=13 {
            fb.plurigenus_integer(m)?;
        }
    }
    Ok(baskets)
}

#[derive(Clone, Debug, Serialize)]
pub struct Chi1Minimal {
    pub basket: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub miyaoka_reid: FilterVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chi1Candidate {
    pub basket: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub minimal: Vec<Chi1Minimal>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chi1Case {
    pub pattern: [u8; 4],
    pub candidates: Vec<Chi1Candidate>,
}

/// A minimal basket thrown out by a volume bound, together with the
/// one-step unpacking sources that replace it in the survivor pool.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeExclusion {
    pub basket: String,
    pub witness_m: i64,
    pub bound: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub replacement_sources: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chi1Survivor {
    pub basket: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub k3: Rational,
    pub p10: i64,
    pub p5_plus_p6: i64,
    pub positive_7_to_20: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Chi1Report {
    pub cases: Vec<Chi1Case>,
    pub volume_exclusions: Vec<VolumeExclusion>,
    pub survivors: Vec<Chi1Survivor>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub min_volume: Rational,
    pub attaining: Vec<String>,
}

fn fb1(basket: &Basket) -> FormalBasket {
    FormalBasket::new(basket.clone(), 1, 0)
}

/// Runs the whole chi = 1 classification: per-pattern candidates and their
/// minimal positive baskets, the Miyaoka-Reid filter, the volume-bound
/// exclusion replay with unpacking sources, and the survivor summary.
pub fn classify_chi1(caps: &Chi1Caps) -> Result<Chi1Report, Error> {
    let mut cases = Vec::new();
    let mut pool: BTreeSet<Basket> = BTreeSet::new();
    let mut passing: BTreeSet<Basket> = BTreeSet::new();
    // Closures per candidate, for the exclusion-replay source search.
    let mut closures: Vec<Vec<(Basket, packing::PackingChain)>> = Vec::new();

    for pattern in CHI1_PATTERNS {
        let mut candidates = Vec::new();
        for basket in enumerate_chi1(pattern, caps)? {
            let fb = fb1(&basket);
            let minimal = packing::minimal_positive_descendants_capped(&fb, caps.state_cap)?;
            closures.push(packing::descendant_closure(&fb, false, caps.state_cap)?);
            let mut rows = Vec::new();
            for m in minimal {
                let mfb = fb1(&m);
                let verdict = constraints::miyaoka_reid(&mfb);
                pool.insert(m.clone());
                if verdict.holds {
                    passing.insert(m.clone());
                }
                rows.push(Chi1Minimal {
                    basket: m.to_string(),
                    k3: mfb.volume(),
                    miyaoka_reid: verdict,
                });
            }
            candidates.push(Chi1Candidate {
                basket: basket.to_string(),
                k3: fb.volume(),
                minimal: rows,
            });
        }
        cases.push(Chi1Case {
            pattern: pattern.0,
            candidates,
        });
    }

    // Replay of the volume-bound exclusions: a minimal basket with some
    // P_m >= 2 but K^3 below the optimized table bound cannot be the basket
    // itself, so it is replaced by its one-step unpacking sources.
    let mut survivors: BTreeSet<Basket> = BTreeSet::new();
    let mut volume_exclusions = Vec::new();
    for b in &passing {
        let fb = fb1(b);
        let verdict = constraints::exclusion_rules(&fb, BoundSource::TableA)?;
        match verdict.rule {
            Some(ExclusionRule::VolumeBoundConflict { m, bound }) => {
                let mut sources: BTreeSet<Basket> = BTreeSet::new();
                for closure in &closures {
                    for src in packing::one_step_sources(closure, b) {
                        sources.insert(src.clone());
                    }
                }
                for src in &sources {
                    survivors.insert(src.clone());
                }
                volume_exclusions.push(VolumeExclusion {
                    basket: b.to_string(),
                    witness_m: m,
                    bound,
                    k3: fb.volume(),
                    replacement_sources: sources.iter().map(|s| s.to_string()).collect(),
                });
            }
            Some(_) => unreachable!("chi = 1 minimal baskets pass rules (a) and (b)"),
            None => {
                survivors.insert(b.clone());
            }
        }
    }

    let mut min_volume: Option<Rational> = None;
    for b in &survivors {
        let v = fb1(b).volume();
        if min_volume.as_ref().map_or(true, |m| v < *m) {
            min_volume = Some(v);
        }
    }
    let min_volume = min_volume.expect("non-empty survivor set");
    let attaining: Vec<String> = survivors
        .iter()
        .filter(|b| fb1(b).volume() == min_volume)
        .map(|b| b.to_string())
        .collect();

    let mut survivor_rows = Vec::new();
    for b in &survivors {
        let fb = fb1(b);
        let p = |m: i64| -> Result<i64, Error> {
            Ok(i64::try_from(fb.plurigenus_integer(m)?).expect("small plurigenus"))
        };
        let positive = (7..=20).try_fold(true, |ok, m| {
            Ok::<_, Error>(ok && fb.plurigenus(m)? > int(0))
        })?;
        survivor_rows.push(Chi1Survivor {
            basket: b.to_string(),
            k3: fb.volume(),
            p10: p(10)?,
            p5_plus_p6: p(5)? + p(6)?,
            positive_7_to_20: positive,
        });
    }

    Ok(Chi1Report {
        cases,
        volume_exclusions,
        survivors: survivor_rows,
        min_volume,
        attaining,
    })
}
