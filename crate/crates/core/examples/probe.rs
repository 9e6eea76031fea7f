use basketforge_core::classifier::{enumerate_chi1, Chi1Caps, CHI1_PATTERNS};
use std::time::Instant;

fn main() {
    let caps = Chi1Caps::default();
    for pattern in CHI1_PATTERNS {
        let t = Instant::now();
        let baskets = enumerate_chi1(pattern, &caps).unwrap();
        println!("pattern {:?} -> {} candidates ({:?})", pattern.0, baskets.len(), t.elapsed());
        for b in &baskets {
            let fb = basketforge_core::FormalBasket::new(b.clone(), 1, 0);
            println!("    {}   K3 = {}", b, basketforge_core::rational::format_rational(&fb.volume()));
        }
    }
}
