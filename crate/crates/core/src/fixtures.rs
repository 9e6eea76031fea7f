//! Transcribed table fixtures and diffing against computed reports.
//!
//! The fixture files under `fixtures/paper/` hold the published tables,
//! typed once by hand; they are never regenerated from code. Verification
//! recomputes everything from baskets and diffs exactly.

use std::collections::BTreeSet;
use std::env;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basket::{Basket, FormalBasket};
use crate::bounds;
use crate::chain;
use crate::classifier::chi1::Chi1Report;
use crate::classifier::tablec::{printed_slots, TableCRow};
use crate::error::Error;
use crate::pair::Pair;

pub const FIXTURES_ENV: &str = "BASKETFORGE_FIXTURES";

/// Fixture directory resolution: explicit flag, then the environment
/// variable, then `fixtures/paper` relative to the working directory.
pub fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Ok(p) = env::var(FIXTURES_ENV) {
        return PathBuf::from(p);
    }
    PathBuf::from("fixtures/paper")
}

fn load<T: for<'de> Deserialize<'de>>(dir: &Path, name: &str) -> Result<T, Error> {
    let path = dir.join(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

// ---------------------------------------------------------------------------
// Table A
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableAFixture {
    pub m0: Vec<i64>,
    pub rows: Vec<TableARowFixture>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableARowFixture {
    pub label: String,
    pub cells: Vec<String>,
}

pub fn load_table_a(dir: &Path) -> Result<TableAFixture, Error> {
    load(dir, "tablea.json")
}

/// Cell-by-cell diff of the computed table against the fixture.
pub fn diff_table_a(computed: &bounds::TableA, fixture: &TableAFixture) -> Vec<String> {
    let mut diffs = Vec::new();
    if computed.m0 != fixture.m0 {
        diffs.push(format!(
            "m0 range mismatch: computed {:?}, fixture {:?}",
            computed.m0, fixture.m0
        ));
        return diffs;
    }
    for (crow, frow) in computed.rows.iter().zip(&fixture.rows) {
        if crow.label != frow.label {
            diffs.push(format!(
                "row label mismatch: computed {}, fixture {}",
                crow.label, frow.label
            ));
            continue;
        }
        for (i, (c, f)) in crow.cells.iter().zip(&frow.cells).enumerate() {
            if c != f {
                diffs.push(format!(
                    "cell ({}, m0 = {}): computed {}, fixture {}",
                    crow.label, computed.m0[i], c, f
                ));
            }
        }
    }
    if computed.rows.len() != fixture.rows.len() {
        diffs.push(format!(
            "row count mismatch: computed {}, fixture {}",
            computed.rows.len(),
            fixture.rows.len()
        ));
    }
    diffs
}

// ---------------------------------------------------------------------------
// Table C
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableCFixture {
    /// The 15 chain slots, in printed order.
    pub slots: Vec<(i64, i64)>,
    pub rows: Vec<TableCRowFixture>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableCRowFixture {
    pub no: u32,
    pub p: [i64; 9],
    pub p18: i64,
    pub p24: i64,
    pub mu1: i64,
    pub chi: i64,
    pub counts: Vec<u64>,
    pub k3: String,
    #[serde(default)]
    pub subs: Vec<TableCSubFixture>,
}

/// A minimal positive basket below a row, printed as the off-chain pairs it
/// features; the consumed chain pairs are their step-12 unpackings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableCSubFixture {
    pub label: String,
    pub featured: Vec<(i64, i64)>,
    pub p18: i64,
    pub p24: i64,
    pub mu1: i64,
    pub k3: String,
}

pub fn load_table_c(dir: &Path) -> Result<TableCFixture, Error> {
    load(dir, "tablec.json")
}

impl TableCRowFixture {
    pub fn basket(&self, slots: &[Pair]) -> Basket {
        Basket::from_counts(slots.iter().cloned().zip(self.counts.iter().cloned()))
    }

    /// Reconstructs a sub-row basket: remove the chain unpacking of each
    /// featured pair, insert the featured pair.
    pub fn sub_basket(&self, slots: &[Pair], sub: &TableCSubFixture) -> Result<Basket, Error> {
        let chain = chain::canonical_chain(12, 5);
        let mut basket = self.basket(slots);
        for &(b, r) in &sub.featured {
            let p = Pair::new(b, r)?;
            let consumed: Vec<Pair> = chain::unpack_pair(&p, &chain, 12, 5)?
                .into_iter()
                .flat_map(|(q, c)| std::iter::repeat(q).take(c as usize))
                .collect();
            basket = basket.replace(&consumed, &[p]).ok_or_else(|| {
                Error::Parse(format!(
                    "row {} sub {}: consumed pairs missing for {p}",
                    self.no, sub.label
                ))
            })?;
        }
        Ok(basket)
    }
}

/// Diffs the enumerated rows against the fixture: exact set equality of
/// (chi, basket), then field equality per row, then exact minimal-basket
/// sets per row.
pub fn diff_table_c(rows: &[TableCRow], fixture: &TableCFixture) -> Vec<String> {
    let mut diffs = Vec::new();
    let slots = printed_slots();
    let fslots: Vec<(i64, i64)> = slots.iter().map(|p| (p.b(), p.r())).collect();
    if fixture.slots != fslots {
        diffs.push(format!(
            "slot order mismatch: fixture {:?}, chain {:?}",
            fixture.slots, fslots
        ));
        return diffs;
    }

    let computed_keys: BTreeSet<(i64, String)> = rows
        .iter()
        .map(|r| (r.chi, r.basket.clone()))
        .collect();
    let fixture_keys: BTreeSet<(i64, String)> = fixture
        .rows
        .iter()
        .map(|r| (r.chi, r.basket(&slots).to_string()))
        .collect();
    for extra in computed_keys.difference(&fixture_keys) {
        diffs.push(format!("surplus row (chi = {}): {}", extra.0, extra.1));
    }
    for missing in fixture_keys.difference(&computed_keys) {
        diffs.push(format!(
            "missing row no.? (chi = {}): {}",
            missing.0, missing.1
        ));
    }
    if !diffs.is_empty() {
        return diffs;
    }

    for frow in &fixture.rows {
        let basket = frow.basket(&slots).to_string();
        let row = rows
            .iter()
            .find(|r| r.chi == frow.chi && r.basket == basket)
            .expect("matched above");
        let mut field = |name: &str, computed: String, fixture: String| {
            if computed != fixture {
                diffs.push(format!(
                    "row {} {}: computed {}, fixture {}",
                    frow.no, name, computed, fixture
                ));
            }
        };
        field("p-vector", format!("{:?}", row.p_vector), format!("{:?}", frow.p));
        field("P18", row.p18.to_string(), frow.p18.to_string());
        field("P24", row.p24.to_string(), frow.p24.to_string());
        field(
            "mu1",
            row.mu1.map_or("-".into(), |m| m.to_string()),
            frow.mu1.to_string(),
        );
        field(
            "K3",
            crate::rational::format_rational(&row.k3),
            frow.k3.clone(),
        );
        field(
            "counts",
            format!("{:?}", row.counts),
            format!("{:?}", frow.counts),
        );

        // Minimal positive baskets: the sub-rows when present, otherwise
        // the row basket itself.
        let expected: Result<BTreeSet<String>, Error> = if frow.subs.is_empty() {
            Ok([basket.clone()].into_iter().collect())
        } else {
            frow.subs
                .iter()
                .map(|s| frow.sub_basket(&slots, s).map(|b| b.to_string()))
                .collect()
        };
        match expected {
            Ok(expected) => {
                let got: BTreeSet<String> =
                    row.minimal.iter().map(|m| m.basket.clone()).collect();
                if got != expected {
                    diffs.push(format!(
                        "row {} minimal baskets: computed {:?}, fixture {:?}",
                        frow.no, got, expected
                    ));
                } else if !frow.subs.is_empty() {
                    for sub in &frow.subs {
                        let sb = frow
                            .sub_basket(&slots, sub)
                            .expect("validated above")
                            .to_string();
                        let m = row
                            .minimal
                            .iter()
                            .find(|m| m.basket == sb)
                            .expect("matched above");
                        let mut sub_field = |name: &str, computed: String, fixture: String| {
                            if computed != fixture {
                                diffs.push(format!(
                                    "row {} sub {} {}: computed {}, fixture {}",
                                    frow.no, sub.label, name, computed, fixture
                                ));
                            }
                        };
                        sub_field("P18", m.p18.to_string(), sub.p18.to_string());
                        sub_field("P24", m.p24.to_string(), sub.p24.to_string());
                        sub_field(
                            "mu1",
                            m.mu1.map_or("-".into(), |v| v.to_string()),
                            sub.mu1.to_string(),
                        );
                        sub_field(
                            "K3",
                            crate::rational::format_rational(&m.k3),
                            sub.k3.clone(),
                        );
                    }
                }
            }
            Err(e) => diffs.push(format!("row {}: {e}", frow.no)),
        }
    }
    diffs
}

// ---------------------------------------------------------------------------
// chi = 1 case list
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chi1Fixture {
    pub cases: Vec<Chi1CaseFixture>,
    /// The unpacking source replacing the volume-excluded minimal basket.
    pub b210: Chi1BasketFixture,
    pub min_volume: String,
    pub attaining: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chi1CaseFixture {
    pub pattern: [u8; 4],
    pub b5: Vec<Chi1BasketFixture>,
    pub minimal: Vec<Chi1MinimalFixture>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chi1BasketFixture {
    pub basket: String,
    pub k3: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Chi1MinimalFixture {
    pub name: String,
    pub basket: String,
    pub k3: String,
    pub mr_holds: bool,
}

pub fn load_chi1(dir: &Path) -> Result<Chi1Fixture, Error> {
    load(dir, "chi1_cases.json")
}

fn canonical(s: &str) -> Result<String, Error> {
    Ok(s.parse::<Basket>()?.to_string())
}

pub fn diff_chi1(report: &Chi1Report, fixture: &Chi1Fixture) -> Vec<String> {
    let mut diffs = Vec::new();
    for fcase in &fixture.cases {
        let Some(case) = report.cases.iter().find(|c| c.pattern == fcase.pattern) else {
            diffs.push(format!("pattern {:?} missing from report", fcase.pattern));
            continue;
        };
        let got: BTreeSet<String> = case
            .candidates
            .iter()
            .map(|c| c.basket.clone())
            .collect();
        let want: Result<BTreeSet<String>, Error> =
            fcase.b5.iter().map(|b| canonical(&b.basket)).collect();
        let want = match want {
            Ok(w) => w,
            Err(e) => {
                diffs.push(format!("pattern {:?}: {e}", fcase.pattern));
                continue;
            }
        };
        if got != want {
            diffs.push(format!(
                "pattern {:?} candidate baskets: computed {:?}, fixture {:?}",
                fcase.pattern, got, want
            ));
            continue;
        }
        for fb5 in &fcase.b5 {
            let key = canonical(&fb5.basket).expect("validated");
            let cand = case
                .candidates
                .iter()
                .find(|c| c.basket == key)
                .expect("matched above");
            let k3 = crate::rational::format_rational(&cand.k3);
            if k3 != fb5.k3 {
                diffs.push(format!(
                    "pattern {:?} candidate {} K3: computed {}, fixture {}",
                    fcase.pattern, key, k3, fb5.k3
                ));
            }
        }
        // Minimal baskets per pattern (union over the pattern's candidates).
        let got: BTreeSet<String> = case
            .candidates
            .iter()
            .flat_map(|c| c.minimal.iter().map(|m| m.basket.clone()))
            .collect();
        let want: BTreeSet<String> = fcase
            .minimal
            .iter()
            .map(|m| canonical(&m.basket).expect("fixture basket parses"))
            .collect();
        if got != want {
            diffs.push(format!(
                "pattern {:?} minimal baskets: computed {:?}, fixture {:?}",
                fcase.pattern, got, want
            ));
            continue;
        }
        for fmin in &fcase.minimal {
            let key = canonical(&fmin.basket).expect("validated");
            let m = case
                .candidates
                .iter()
                .flat_map(|c| c.minimal.iter())
                .find(|m| m.basket == key)
                .expect("matched above");
            let k3 = crate::rational::format_rational(&m.k3);
            if k3 != fmin.k3 {
                diffs.push(format!(
                    "{} K3: computed {}, fixture {}",
                    fmin.name, k3, fmin.k3
                ));
            }
            if m.miyaoka_reid.holds != fmin.mr_holds {
                diffs.push(format!(
                    "{} Miyaoka-Reid: computed {}, fixture {}",
                    fmin.name, m.miyaoka_reid.holds, fmin.mr_holds
                ));
            }
        }
    }
    let min_volume = crate::rational::format_rational(&report.min_volume);
    if min_volume != fixture.min_volume {
        diffs.push(format!(
            "minimum volume: computed {}, fixture {}",
            min_volume, fixture.min_volume
        ));
    }
    let got: BTreeSet<String> = report.attaining.iter().cloned().collect();
    let want: BTreeSet<String> = fixture
        .attaining
        .iter()
        .map(|s| canonical(s).expect("fixture basket parses"))
        .collect();
    if got != want {
        diffs.push(format!(
            "attaining baskets: computed {:?}, fixture {:?}",
            got, want
        ));
    }
    // The replacement of the volume-excluded minimal basket.
    let b210 = canonical(&fixture.b210.basket).expect("fixture basket parses");
    let found = report
        .volume_exclusions
        .iter()
        .any(|e| e.replacement_sources.contains(&b210));
    if !found {
        diffs.push(format!(
            "expected unpacking source {b210} among volume exclusions"
        ));
    }
    let survivor_set: BTreeSet<String> =
        report.survivors.iter().map(|s| s.basket.clone()).collect();
    if !survivor_set.contains(&b210) {
        diffs.push(format!("expected {b210} among survivors"));
    }
    diffs
}

/// Sanity used by tests: a fixture basket string round-trips through the
/// canonical form.
pub fn parse_formal(s: &str, chi: i64) -> Result<FormalBasket, Error> {
    Ok(FormalBasket::new(s.parse()?, chi, 0))
}
