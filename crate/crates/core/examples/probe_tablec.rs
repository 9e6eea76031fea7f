use basketforge_core::classifier::{enumerate_chi_gt1, TableCCaps};
use basketforge_core::rational::format_rational;
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let rows = enumerate_chi_gt1(&TableCCaps::default()).unwrap();
    println!("{} rows in {:?}", rows.len(), t.elapsed());
    for (i, r) in rows.iter().enumerate() {
        println!(
            "{:>2}: p={:?} chi={} P18={} P24={} mu1={:?} K3={} counts={:?}",
            i + 1, r.p_vector, r.chi, r.p18, r.p24, r.mu1, format_rational(&r.k3), r.counts
        );
        for m in &r.minimal {
            println!("      min: {}  K3={} P18={} P24={} mu1={:?}", m.basket, format_rational(&m.k3), m.p18, m.p24, m.mu1);
        }
    }
}
