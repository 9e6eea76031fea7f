//! Quotient-singularity markers `(b, r)` for the cyclic type (1/r)(1, -1, b)
//! and their Reid local contributions.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::rational::{rat, Rational};

/// A canonical pair: `0 < b`, `gcd(b, r) = 1`, `2b <= r`.
///
/// The l-function is invariant under `b <-> r - b`, so every pair is stored on
/// the `2b <= r` side; non-primitive inputs such as `(4,8)` are accepted by
/// [`reduce_pair`] and split into gcd-many primitive copies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Pair {
    b: i64,
    r: i64,
}

impl Pair {
    /// Canonicalizes a primitive pair. Errors unless `0 < b < r` and
    /// `gcd(b, r) = 1`.
    pub fn new(b: i64, r: i64) -> Result<Self, Error> {
        if b <= 0 || r <= 0 || b >= r {
            return Err(Error::InvalidPair { b, r });
        }
        if b.gcd(&r) != 1 {
            return Err(Error::InvalidPair { b, r });
        }
        let b = b.min(r - b);
        Ok(Pair { b, r })
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Slope `b/r` comparison without constructing rationals.
    pub fn cmp_slope(&self, other: &Pair) -> Ordering {
        let lhs = (self.b as i128) * (other.r as i128);
        let rhs = (other.b as i128) * (self.r as i128);
        lhs.cmp(&rhs)
    }

    /// Reid correction weight `b(r - b)/r` entering the volume formula.
    pub fn reid_weight(&self) -> Rational {
        rat(self.b * (self.r - self.b), self.r)
    }

    /// Reid's local l-function
    /// `l(m) = sum_{j=1}^{m-1} jb_bar (r - jb_bar) / (2r)`
    /// with `jb_bar` the residue of `jb` mod `r`.
    pub fn local_contribution(&self, m: i64) -> Result<Rational, Error> {
        if m < 1 {
            return Err(Error::PlurigenusDomain { m });
        }
        let r = self.r as i128;
        let b = self.b as i128;
        let mut acc: i128 = 0;
        let mut res: i128 = 0;
        for _ in 1..m {
            res = (res + b) % r;
            acc += res * (r - res);
        }
        Ok(Rational::new(acc.into(), (2 * r).into()))
    }

    /// Splits the pair into elementary pairs of shape `(1, k)`:
    /// with `k = floor(r/b)`, `(k+1)b - r` copies of `(1, k)` and
    /// `r - kb` copies of `(1, k+1)`. Both the b-sum and the r-sum are
    /// preserved; elementary pairs are fixed points.
    pub fn elementary_decomposition(&self) -> Vec<(Pair, u64)> {
        let k = self.r / self.b;
        let lo = (k + 1) * self.b - self.r;
        let hi = self.r - k * self.b;
        let mut out = Vec::new();
        if lo > 0 {
            out.push((Pair { b: 1, r: k }, lo as u64));
        }
        if hi > 0 {
            out.push((Pair { b: 1, r: k + 1 }, hi as u64));
        }
        out
    }

    pub fn is_elementary(&self) -> bool {
        self.b == 1
    }
}

/// Canonical ordering: decreasing slope `b/r`, then increasing `r`.
impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_slope(other)
            .reverse()
            .then_with(|| self.r.cmp(&other.r))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.r)
    }
}

/// Accepts a raw pair, gcd-reduces it and flips to the `2b <= r` side.
/// Returns the canonical pair together with its multiplicity, so `(4,8)`
/// becomes four copies of `(1,2)`. The total l-contribution is preserved.
pub fn reduce_pair(b: i64, r: i64) -> Result<(Pair, u64), Error> {
    if b <= 0 || r <= 0 || b >= r {
        return Err(Error::InvalidPair { b, r });
    }
    let d = b.gcd(&r);
    Ok((Pair::new(b / d, r / d)?, d as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reduce_keeps_canonical_pairs() {
        let (p, d) = reduce_pair(3, 7).unwrap();
        assert_eq!((p.b(), p.r(), d), (3, 7, 1));
    }

    #[test]
    fn reduce_splits_non_primitive() {
        // (4,8) -> 4 x (1,2); oracle: l(m) of the raw pair equals 4 * l(m) of
        // (1,2) for m <= 50, by direct summation over the unreduced residues.
        let (p, d) = reduce_pair(4, 8).unwrap();
        assert_eq!((p.b(), p.r(), d), (1, 2, 4));
        for m in 1..=50 {
            let raw = brute_l(4, 8, m);
            let reduced = p.local_contribution(m).unwrap() * int(d as i64);
            assert_eq!(raw, reduced, "m = {m}");
        }
    }

    #[test]
    fn reduce_flips_large_b() {
        // (5,7) -> (2,7); oracle: l-function symmetry under b <-> r - b.
        let (p, d) = reduce_pair(5, 7).unwrap();
        assert_eq!((p.b(), p.r(), d), (2, 7, 1));
        for m in 1..=50 {
            assert_eq!(brute_l(5, 7, m), brute_l(2, 7, m), "m = {m}");
        }
    }

    #[test]
    fn reduce_rejects_invalid() {
        assert!(reduce_pair(0, 4).is_err());
        assert!(reduce_pair(3, 3).is_err());
        assert!(reduce_pair(5, 3).is_err());
        assert!(reduce_pair(-1, 4).is_err());
    }

    /// Independent l-function oracle working on raw (possibly non-canonical)
    /// pairs by direct residue summation.
    fn brute_l(b: i64, r: i64, m: i64) -> Rational {
        let mut acc = 0i128;
        for j in 1..m {
            let x = ((j as i128) * (b as i128)).rem_euclid(r as i128);
            acc += x * ((r as i128) - x);
        }
        Rational::new(acc.into(), (2 * r as i128).into())
    }

    #[test]
    fn local_contribution_examples() {
        let p12 = Pair::new(1, 2).unwrap();
        assert_eq!(p12.local_contribution(2).unwrap(), rat(1, 4));
        assert_eq!(p12.local_contribution(1).unwrap(), int(0));
        let p25 = Pair::new(2, 5).unwrap();
        assert_eq!(p25.local_contribution(3).unwrap(), int(1));
    }

    #[test]
    fn l_is_non_decreasing() {
        let p = Pair::new(3, 11).unwrap();
        let mut prev = int(0);
        for m in 1..=40 {
            let cur = p.local_contribution(m).unwrap();
            assert!(cur >= prev);
            prev = cur;
        }
    }

    #[test]
    fn elementary_decomposition_examples() {
        let dec = |b, r| {
            Pair::new(b, r)
                .unwrap()
                .elementary_decomposition()
                .iter()
                .map(|(p, c)| (p.b(), p.r(), *c))
                .collect::<Vec<_>>()
        };
        assert_eq!(dec(2, 5), vec![(1, 2, 1), (1, 3, 1)]);
        assert_eq!(dec(1, 7), vec![(1, 7, 1)]);
        assert_eq!(dec(9, 22), vec![(1, 2, 5), (1, 3, 4)]);
    }

    #[test]
    fn elementary_decomposition_preserves_sums() {
        for r in 2..=40 {
            for b in 1..r {
                let Ok(p) = Pair::new(b, r) else { continue };
                let dec = p.elementary_decomposition();
                let bs: i64 = dec.iter().map(|(q, c)| q.b() * *c as i64).sum();
                let rs: i64 = dec.iter().map(|(q, c)| q.r() * *c as i64).sum();
                assert_eq!((bs, rs), (p.b(), p.r()));
            }
        }
    }

    #[test]
    fn ordering_is_slope_descending() {
        let mut v = vec![
            Pair::new(1, 3).unwrap(),
            Pair::new(1, 2).unwrap(),
            Pair::new(2, 5).unwrap(),
            Pair::new(3, 7).unwrap(),
        ];
        v.sort();
        let got: Vec<_> = v.iter().map(|p| (p.b(), p.r())).collect();
        assert_eq!(got, vec![(1, 2), (3, 7), (2, 5), (1, 3)]);
    }
}
