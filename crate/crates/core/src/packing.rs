//! Prime packings and the domination lattice: successors, descendant
//! closures, minimal positive baskets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::basket::{Basket, FormalBasket};
use crate::error::Error;
use crate::pair::Pair;
use crate::rational::{format_rational, int};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// One prime packing: two pairs with `b1 r2 - b2 r1 = 1` (ordered by slope)
/// merge into their component-wise sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackingMove {
    pub consumed: (Pair, Pair),
    pub produced: Pair,
}

/// A witnessing chain of prime packings from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingChain {
    pub start: Basket,
    pub moves: Vec<PackingMove>,
    pub end: Basket,
}

impl PackingChain {
    /// Replays the moves from `start`; true iff the result equals `end`.
    pub fn replay(&self) -> bool {
        let mut cur = self.start.clone();
        for mv in &self.moves {
            match cur.replace(&[mv.consumed.0, mv.consumed.1], &[mv.produced]) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        cur == self.end
    }
}

/// Merges two canonical pairs when the unimodular condition holds; `None`
/// otherwise. The mediant of Farey neighbours is automatically canonical.
pub fn prime_packing(p1: Pair, p2: Pair) -> Option<Pair> {
    let (hi, lo) = match p1.cmp_slope(&p2) {
        std::cmp::Ordering::Greater => (p1, p2),
        std::cmp::Ordering::Less => (p2, p1),
        std::cmp::Ordering::Equal => return None,
    };
    if hi.b() * lo.r() - lo.b() * hi.r() != 1 {
        return None;
    }
    let p = Pair::new(hi.b() + lo.b(), hi.r() + lo.r()).expect("mediant is canonical");
    debug_assert_eq!(p.b(), hi.b() + lo.b());
    Some(p)
}

/// All one-step packings of the basket, canonicalized and deduplicated,
/// in deterministic order.
pub fn successors(basket: &Basket) -> Vec<(PackingMove, Basket)> {
    let entries = basket.entries();
    let mut out = Vec::new();
    for i in 0..entries.len() {
        // Two copies of the same pair have determinant 0, so only distinct
        // entry types can pack.
        for j in i + 1..entries.len() {
            let (pi, pj) = (entries[i].0, entries[j].0);
            if let Some(produced) = prime_packing(pi, pj) {
                let mv = PackingMove {
                    consumed: (pi, pj),
                    produced,
                };
                let next = basket
                    .replace(&[pi, pj], &[produced])
                    .expect("consumed pairs present");
                out.push((mv, next));
            }
        }
    }
    out
}

/// All minimal positive baskets dominated by the formal basket: positive
/// descendants none of whose successors stay positive. Depth-first search
/// with canonical-form memoization.
pub fn minimal_positive_descendants(fb: &FormalBasket) -> Result<BTreeSet<Basket>, Error> {
    minimal_positive_descendants_capped(fb, DEFAULT_STATE_CAP)
}

pub fn minimal_positive_descendants_capped(
    fb: &FormalBasket,
    cap: usize,
) -> Result<BTreeSet<Basket>, Error> {
    if !fb.is_positive() {
        return Err(Error::NonPositiveVolume {
            k3: format_rational(&fb.volume()),
        });
    }
    let mut seen: HashSet<Basket> = HashSet::new();
    let mut minimal = BTreeSet::new();
    let mut stack = vec![fb.basket.clone()];
    seen.insert(fb.basket.clone());
    while let Some(b) = stack.pop() {
        if seen.len() > cap {
            return Err(Error::SearchCap {
                cap,
                frontier: stack.len(),
            });
        }
        let mut has_positive_successor = false;
        for (_, next) in successors(&b) {
            if fb.with_basket(next.clone()).volume() > int(0) {
                has_positive_successor = true;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        if !has_positive_successor {
            minimal.insert(b);
        }
    }
    Ok(minimal)
}

/// Every basket dominated by the formal basket (optionally positive-volume
/// only), each with one witnessing packing chain. Breadth-first, so the
/// witness chains are shortest.
pub fn descendant_closure(
    fb: &FormalBasket,
    keep_nonpositive: bool,
    cap: usize,
) -> Result<Vec<(Basket, PackingChain)>, Error> {
    let positive_only = !keep_nonpositive;
    if positive_only && !fb.is_positive() {
        return Err(Error::NonPositiveVolume {
            k3: format_rational(&fb.volume()),
        });
    }
    let mut paths: HashMap<Basket, Vec<PackingMove>> = HashMap::new();
    let mut order: Vec<Basket> = Vec::new();
    let mut queue = VecDeque::new();
    paths.insert(fb.basket.clone(), Vec::new());
    order.push(fb.basket.clone());
    queue.push_back(fb.basket.clone());
    while let Some(b) = queue.pop_front() {
        if paths.len() > cap {
            return Err(Error::SearchCap {
                cap,
                frontier: queue.len(),
            });
        }
        let prefix = paths[&b].clone();
        for (mv, next) in successors(&b) {
            if positive_only && fb.with_basket(next.clone()).volume() <= int(0) {
                continue;
            }
            if !paths.contains_key(&next) {
                let mut chain = prefix.clone();
                chain.push(mv);
                paths.insert(next.clone(), chain);
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order.sort();
    Ok(order
        .into_iter()
        .map(|b| {
            let chain = PackingChain {
                start: fb.basket.clone(),
                moves: paths[&b].clone(),
                end: b.clone(),
            };
            debug_assert!(chain.replay());
            (b, chain)
        })
        .collect())
}

/// Baskets of the closure that reach `target` by a single prime packing.
pub fn one_step_sources<'a>(
    closure: &'a [(Basket, PackingChain)],
    target: &Basket,
) -> Vec<&'a Basket> {
    closure
        .iter()
        .filter(|(b, _)| successors(b).iter().any(|(_, next)| next == target))
        .map(|(b, _)| b)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn b(s: &str) -> Basket {
        s.parse().unwrap()
    }

    fn fb(s: &str) -> FormalBasket {
        s.parse().unwrap()
    }

    #[test]
    fn prime_packing_examples() {
        let p = |x, y| Pair::new(x, y).unwrap();
        assert_eq!(prime_packing(p(1, 2), p(2, 5)), Some(p(3, 7)));
        assert_eq!(prime_packing(p(2, 5), p(1, 2)), Some(p(3, 7)));
        assert_eq!(prime_packing(p(1, 3), p(1, 3)), None);
        assert_eq!(prime_packing(p(2, 5), p(3, 8)), Some(p(5, 13)));
        // determinant 2
        assert_eq!(prime_packing(p(1, 2), p(1, 4)), None);
    }

    #[test]
    fn successors_example() {
        // Brute-force oracle over all entry pairs of {(1,2),(2,5),(1,3)}.
        let got: BTreeSet<String> = successors(&b("{(1,2),(2,5),(1,3)}"))
            .into_iter()
            .map(|(_, nb)| nb.to_string())
            .collect();
        let want: BTreeSet<String> = [
            "{(3,7),(1,3)}",
            "{(1,2),(3,8)}",
            "{2x(2,5)}",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(got, want);

        assert!(successors(&b("{(1,2)}")).is_empty());
        assert!(successors(&b("{2x(1,3)}")).is_empty());
    }

    #[test]
    fn minimal_descendants_of_case_one() {
        let fb = fb("{3x(1,2),2x(2,5),2x(1,3),(1,4)};chi=1;p2=0");
        assert_eq!(fb.volume(), rat(1, 60));
        let minimal = minimal_positive_descendants(&fb).unwrap();
        let got: BTreeSet<String> = minimal.iter().map(|m| m.to_string()).collect();
        let want: BTreeSet<String> = [
            "{2x(1,2),(3,7),(2,5),2x(1,3),(1,4)}",
            "{3x(1,2),(2,5),(4,11),(1,4)}",
            "{3x(1,2),(5,13),(1,3),(1,4)}",
            "{3x(1,2),2x(2,5),(1,3),(2,7)}",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn minimal_descendants_trivial_and_errors() {
        let m = minimal_positive_descendants(&fb("{(1,2)};chi=1;p2=0")).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.contains(&b("{(1,2)}")));

        let negative = fb("{12x(1,2)};chi=1;p2=0");
        assert!(matches!(
            minimal_positive_descendants(&negative),
            Err(Error::NonPositiveVolume { .. })
        ));
    }

    #[test]
    fn closure_examples() {
        let closure = descendant_closure(&fb("{(1,2),(2,5)};chi=1;p2=0"), false, 1000).unwrap();
        let got: Vec<String> = closure.iter().map(|(b, _)| b.to_string()).collect();
        assert_eq!(got, vec!["{(1,2),(2,5)}", "{(3,7)}"]);
        for (_, chain) in &closure {
            assert!(chain.replay());
        }

        let closure = descendant_closure(&fb("{(1,4)};chi=1;p2=0"), false, 1000).unwrap();
        assert_eq!(closure.len(), 1);
    }

    #[test]
    fn volume_strictly_decreases_and_sums_preserved_along_moves() {
        let fb = fb("{3x(1,2),2x(2,5),2x(1,3),(1,4)};chi=1;p2=0");
        for (mv, next) in successors(&fb.basket) {
            assert!(fb.with_basket(next.clone()).volume() < fb.volume());
            assert_eq!(next.b_sum(), fb.basket.b_sum());
            assert_eq!(next.r_sum(), fb.basket.r_sum());
            let (c1, c2) = mv.consumed;
            assert_eq!(mv.produced.b(), c1.b() + c2.b());
            assert_eq!(mv.produced.r(), c1.r() + c2.r());
        }
    }
}
