//! Canonical Farey chains of pairs and the step-n unpacking B^(n).

use std::collections::BTreeSet;

use crate::basket::Basket;
use crate::error::Error;
use crate::pair::Pair;

/// A pair together with its position on a canonical step-n chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainPair {
    pub pair: Pair,
    pub position: usize,
}

/// The canonical step-n chain: every coprime canonical pair with `r <= n` and
/// slope at least `1/r_elem_cap`, together with the elementary pairs `(1, k)`
/// for `k <= r_elem_cap`, sorted by decreasing slope.
///
/// Adjacent members satisfy the unimodular condition `b1 r2 - b2 r1 = 1`.
pub fn canonical_chain(n: i64, r_elem_cap: i64) -> Vec<ChainPair> {
    assert!(r_elem_cap >= 2, "elementary tail cap must be at least 2");
    let mut set: BTreeSet<Pair> = BTreeSet::new();
    for r in 2..=n.max(0) {
        for b in 1..=r / 2 {
            if let Ok(p) = Pair::new(b, r) {
                // slope floor 1/r_elem_cap
                if p.b() * r_elem_cap >= p.r() {
                    set.insert(p);
                }
            }
        }
    }
    for k in 2..=r_elem_cap {
        set.insert(Pair::new(1, k).expect("elementary pair"));
    }
    set.into_iter()
        .enumerate()
        .map(|(position, pair)| ChainPair { pair, position })
        .collect()
}

/// Expresses every basket entry over the step-n chain: a pair strictly
/// between adjacent chain pairs L, R splits as `x L + y R` with the unique
/// non-negative integers solving the unimodular 2x2 system. B-sums and
/// r-sums are preserved; chain-supported baskets are fixed points.
pub fn step_unpack(basket: &Basket, n: i64, r_elem_cap: i64) -> Result<Basket, Error> {
    let chain = canonical_chain(n, r_elem_cap);
    let mut out: Vec<(Pair, u64)> = Vec::new();
    for (p, c) in basket.entries() {
        for (q, d) in unpack_pair(p, &chain, n, r_elem_cap)? {
            out.push((q, d * c));
        }
    }
    Ok(Basket::from_counts(out))
}

/// Chain decomposition of a single pair (multiplicity 1).
pub fn unpack_pair(
    p: &Pair,
    chain: &[ChainPair],
    n: i64,
    r_elem_cap: i64,
) -> Result<Vec<(Pair, u64)>, Error> {
    debug_assert!(!chain.is_empty());
    if chain.iter().any(|cp| cp.pair == *p) {
        return Ok(vec![(*p, 1)]);
    }
    let below_floor = |q: &Pair| q.b() * r_elem_cap < q.r();
    if below_floor(p) {
        return Err(Error::UnpackRange {
            b: p.b(),
            r: p.r(),
            n,
            cap: r_elem_cap,
        });
    }
    // Find the bracketing adjacent chain pairs by slope.
    let idx = chain
        .windows(2)
        .position(|w| {
            w[0].pair.cmp_slope(p).is_gt() && p.cmp_slope(&w[1].pair).is_gt()
        })
        .ok_or(Error::UnpackRange {
            b: p.b(),
            r: p.r(),
            n,
            cap: r_elem_cap,
        })?;
    let l = chain[idx].pair;
    let r = chain[idx + 1].pair;
    debug_assert_eq!(l.b() * r.r() - r.b() * l.r(), 1, "chain adjacency");
    let x = p.b() * r.r() - r.b() * p.r();
    let y = l.b() * p.r() - p.b() * l.r();
    debug_assert!(x > 0 && y > 0);
    debug_assert_eq!(x * l.b() + y * r.b(), p.b());
    debug_assert_eq!(x * l.r() + y * r.r(), p.r());
    Ok(vec![(l, x as u64), (r, y as u64)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(chain: &[ChainPair]) -> Vec<(i64, i64)> {
        chain.iter().map(|c| (c.pair.b(), c.pair.r())).collect()
    }

    #[test]
    fn step12_chain_matches_known_order() {
        let chain = canonical_chain(12, 5);
        assert_eq!(
            pairs(&chain),
            vec![
                (1, 2),
                (5, 11),
                (4, 9),
                (3, 7),
                (5, 12),
                (2, 5),
                (3, 8),
                (4, 11),
                (1, 3),
                (3, 10),
                (2, 7),
                (3, 11),
                (1, 4),
                (2, 9),
                (1, 5),
            ]
        );
        for w in chain.windows(2) {
            let (l, r) = (w[0].pair, w[1].pair);
            assert_eq!(l.b() * r.r() - r.b() * l.r(), 1);
        }
    }

    #[test]
    fn step5_chain_and_elementary_only_chain() {
        assert_eq!(
            pairs(&canonical_chain(5, 5)),
            vec![(1, 2), (2, 5), (1, 3), (1, 4), (1, 5)]
        );
        assert_eq!(pairs(&canonical_chain(0, 4)), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn adjacency_determinants_up_to_20() {
        for n in 0..=20 {
            for cap in [5, 12, 30] {
                let chain = canonical_chain(n, cap);
                for w in chain.windows(2) {
                    let (l, r) = (w[0].pair, w[1].pair);
                    assert_eq!(
                        l.b() * r.r() - r.b() * l.r(),
                        1,
                        "n={n} cap={cap} at {l} {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn unpack_examples() {
        let b: Basket = "{(9,22),(1,3)}".parse().unwrap();
        let u = step_unpack(&b, 5, 30).unwrap();
        assert_eq!(u.to_string(), "{(1,2),4x(2,5),(1,3)}");

        let b: Basket = "{(5,13)}".parse().unwrap();
        let u = step_unpack(&b, 12, 5).unwrap();
        assert_eq!(u.to_string(), "{(2,5),(3,8)}");
    }

    #[test]
    fn unpack_is_idempotent_and_preserves_sums() {
        let b: Basket = "{3x(1,2),2x(2,5),2x(1,3),(1,4)}".parse().unwrap();
        let u = step_unpack(&b, 5, 30).unwrap();
        assert_eq!(u, b);

        let b: Basket = "{(9,22),(7,19),(5,14)}".parse().unwrap();
        let u = step_unpack(&b, 12, 11).unwrap();
        assert_eq!(u.b_sum(), b.b_sum());
        assert_eq!(u.r_sum(), b.r_sum());
    }

    #[test]
    fn unpack_rejects_below_floor() {
        let b: Basket = "{(1,9)}".parse().unwrap();
        assert!(matches!(
            step_unpack(&b, 5, 6),
            Err(Error::UnpackRange { r: 9, .. })
        ));
    }
}
