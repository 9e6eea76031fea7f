//! Baskets (multisets of canonical pairs) and formal baskets, with the Reid
//! plurigenus and volume formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::Error;
use crate::pair::{reduce_pair, Pair};
use crate::rational::{int, rat, Rational};

/// Finite multiset of canonical pairs, stored as a sorted `(pair, count)`
/// list (decreasing slope, then increasing r), so equal baskets compare equal
/// bit for bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Basket {
    entries: Vec<(Pair, u64)>,
}

impl Basket {
    pub fn empty() -> Self {
        Basket::default()
    }

    /// Builds a basket from raw pairs, canonicalizing each through
    /// [`reduce_pair`].
    pub fn from_raw<I: IntoIterator<Item = (i64, i64)>>(raw: I) -> Result<Self, Error> {
        let mut map: BTreeMap<Pair, u64> = BTreeMap::new();
        for (b, r) in raw {
            let (p, d) = reduce_pair(b, r)?;
            *map.entry(p).or_insert(0) += d;
        }
        Ok(Basket {
            entries: map.into_iter().collect(),
        })
    }

    pub fn from_counts<I: IntoIterator<Item = (Pair, u64)>>(counts: I) -> Self {
        let mut map: BTreeMap<Pair, u64> = BTreeMap::new();
        for (p, c) in counts {
            if c > 0 {
                *map.entry(p).or_insert(0) += c;
            }
        }
        Basket {
            entries: map.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(Pair, u64)] {
        &self.entries
    }

    pub fn count_of(&self, p: &Pair) -> u64 {
        self.entries
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Total number of pairs, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn b_sum(&self) -> i64 {
        self.entries
            .iter()
            .map(|(p, c)| p.b() * *c as i64)
            .sum()
    }

    pub fn r_sum(&self) -> i64 {
        self.entries
            .iter()
            .map(|(p, c)| p.r() * *c as i64)
            .sum()
    }

    /// Sum of the local l-functions over the basket.
    pub fn local_contribution(&self, m: i64) -> Result<Rational, Error> {
        let mut acc = int(0);
        for (p, c) in &self.entries {
            acc += p.local_contribution(m)? * int(*c as i64);
        }
        Ok(acc)
    }

    /// `sum_i b_i (r_i - b_i) / r_i`, the correction term of the volume
    /// formula.
    pub fn reid_correction(&self) -> Rational {
        let mut acc = int(0);
        for (p, c) in &self.entries {
            acc += p.reid_weight() * int(*c as i64);
        }
        acc
    }

    /// The full unpacking into elementary pairs (the B^(0) of the basket).
    pub fn elementary(&self) -> Basket {
        let mut map: BTreeMap<Pair, u64> = BTreeMap::new();
        for (p, c) in &self.entries {
            for (q, d) in p.elementary_decomposition() {
                *map.entry(q).or_insert(0) += d * c;
            }
        }
        Basket {
            entries: map.into_iter().collect(),
        }
    }

    /// Counts `n^0_{1,r}` of the elementary unpacking, keyed by `r`.
    pub fn elementary_counts(&self) -> BTreeMap<i64, u64> {
        self.elementary()
            .entries
            .iter()
            .map(|(p, c)| (p.r(), *c))
            .collect()
    }

    /// Basket with one copy of each of `consumed` removed and `produced`
    /// added. Returns `None` if a consumed pair is missing.
    pub fn replace(&self, consumed: &[Pair], produced: &[Pair]) -> Option<Basket> {
        let mut map: BTreeMap<Pair, u64> = self.entries.iter().cloned().collect();
        for p in consumed {
            match map.get_mut(p) {
                Some(c) if *c > 0 => {
                    *c -= 1;
                    if *c == 0 {
                        map.remove(p);
                    }
                }
                _ => return None,
            }
        }
        for p in produced {
            *map.entry(*p).or_insert(0) += 1;
        }
        Some(Basket {
            entries: map.into_iter().collect(),
        })
    }
}

impl fmt::Display for Basket {
    /// Text syntax: `{3x(1,2),2x(2,5),(1,4)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *c == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{c}x{p}")?;
            }
        }
        write!(f, "}}")
    }
}

impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("basket must be braced: `{s}`")))?;
        let mut raw = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            // Each item is `(b,r)` or `<count>x(b,r)`.
            let (count, tail) = match rest.split_once('(') {
                Some((head, tail)) => {
                    let head = head.trim();
                    let count = if head.is_empty() {
                        1u64
                    } else {
                        let head = head
                            .strip_suffix('x')
                            .or_else(|| head.strip_suffix('X'))
                            .ok_or_else(|| Error::Parse(format!("bad multiplicity `{head}`")))?;
                        head.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad multiplicity `{head}`")))?
                    };
                    (count, tail)
                }
                None => return Err(Error::Parse(format!("expected `(` in `{rest}`"))),
            };
            let (body, after) = tail
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unclosed pair in `{tail}`")))?;
            let (bs, rs) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("pair needs two components: `{body}`")))?;
            let b: i64 = bs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{bs}`")))?;
            let r: i64 = rs
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{rs}`")))?;
            for _ in 0..count {
                raw.push((b, r));
            }
            rest = after.trim().strip_prefix(',').unwrap_or(after.trim()).trim();
        }
        Basket::from_raw(raw)
    }
}

/// Triple (basket, chi, P2) from which the volume and every plurigenus are
/// computed formally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalBasket {
    pub basket: Basket,
    pub chi: i64,
    pub p2: i64,
}

impl FormalBasket {
    pub fn new(basket: Basket, chi: i64, p2: i64) -> Self {
        FormalBasket { basket, chi, p2 }
    }

    /// `K^3 = 2 P_2 + 6 chi - sum_i b_i (r_i - b_i) / r_i`.
    pub fn volume(&self) -> Rational {
        int(2 * self.p2 + 6 * self.chi) - self.basket.reid_correction()
    }

    pub fn is_positive(&self) -> bool {
        self.volume() > int(0)
    }

    /// `P_m = m(m-1)(2m-1)/12 K^3 + (1 - 2m) chi + l(m)` for `m >= 2`.
    pub fn plurigenus(&self, m: i64) -> Result<Rational, Error> {
        if m < 2 {
            return Err(Error::PlurigenusDomain { m });
        }
        let coeff = rat(m * (m - 1) * (2 * m - 1), 12);
        Ok(coeff * self.volume() + int((1 - 2 * m) * self.chi) + self.basket.local_contribution(m)?)
    }

    /// Plurigenus as an exact integer; errors if the formula does not give
    /// one (it always does on genuine baskets).
    pub fn plurigenus_integer(&self, m: i64) -> Result<BigInt, Error> {
        let q = self.plurigenus(m)?;
        if crate::rational::is_integer(&q) {
            Ok(q.numer().clone())
        } else {
            Err(Error::NonIntegralPlurigenus {
                m,
                value: crate::rational::format_rational(&q),
            })
        }
    }

    pub fn with_basket(&self, basket: Basket) -> FormalBasket {
        FormalBasket {
            basket,
            chi: self.chi,
            p2: self.p2,
        }
    }
}

impl fmt::Display for FormalBasket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};chi={};p2={}", self.basket, self.chi, self.p2)
    }
}

impl FromStr for FormalBasket {
    /// Text syntax: `{...};chi=1;p2=0`.
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = s.split(';');
        let basket: Basket = parts
            .next()
            .ok_or_else(|| Error::Parse("empty formal basket".into()))?
            .parse()?;
        let mut chi = None;
        let mut p2 = None;
        for part in parts {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("chi=") {
                chi = Some(
                    v.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad chi `{v}`")))?,
                );
            } else if let Some(v) = part.strip_prefix("p2=") {
                p2 = Some(
                    v.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad p2 `{v}`")))?,
                );
            } else {
                return Err(Error::Parse(format!("unknown field `{part}`")));
            }
        }
        Ok(FormalBasket {
            basket,
            chi: chi.ok_or_else(|| Error::Parse("missing chi".into()))?,
            p2: p2.unwrap_or(0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fb(s: &str) -> FormalBasket {
        s.parse().unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        let b: Basket = "{3x(1,2),2x(2,5),(1,4)}".parse().unwrap();
        assert_eq!(b.to_string(), "{3x(1,2),2x(2,5),(1,4)}");
        assert_eq!(b.size(), 6);
        // Non-canonical input is reduced on entry.
        let b: Basket = "{(4,8),(3,8),(3,10)}".parse().unwrap();
        assert_eq!(b.to_string(), "{4x(1,2),(3,8),(3,10)}");
    }

    #[test]
    fn volume_examples() {
        // The unique chi = 1 volume minimizer.
        let x = fb("{(3,6),(3,7),(2,5),(1,4),(1,6)};chi=1;p2=0");
        assert_eq!(x.volume(), rat(1, 420));
        // Empty basket.
        let x = fb("{};chi=1;p2=0");
        assert_eq!(x.volume(), int(6));
        // The chi = 2 volume minimizer.
        let x = fb("{2x(1,2),2x(3,7),2x(2,5),(7,19),(1,4)};chi=2;p2=0");
        assert_eq!(x.volume(), rat(1, 2660));
    }

    #[test]
    fn plurigenus_examples() {
        let x = fb("{(9,22),(1,3)};chi=1;p2=0");
        assert_eq!(x.volume(), rat(1, 66));
        assert_eq!(x.plurigenus(9).unwrap(), int(2));
        assert_eq!(x.plurigenus(10).unwrap(), int(3));

        let zero = fb("{};chi=0;p2=0");
        for m in 2..=20 {
            assert_eq!(zero.plurigenus(m).unwrap(), int(0));
        }

        assert!(fb("{(1,2)};chi=1;p2=0").plurigenus(1).is_err());
    }

    #[test]
    fn plurigenus_is_consistent_with_p2() {
        for s in [
            "{(9,22),(1,3)};chi=1;p2=0",
            "{2x(1,2),2x(3,7),2x(2,5),(7,19),(1,4)};chi=2;p2=0",
            "{3x(1,2),(5,13),(1,3),(1,4)};chi=1;p2=0",
        ] {
            let x = fb(s);
            assert_eq!(x.plurigenus(2).unwrap(), int(x.p2));
        }
    }

    #[test]
    fn elementary_counts_of_basket() {
        let b: Basket = "{(2,5),(9,22)}".parse().unwrap();
        let counts = b.elementary_counts();
        assert_eq!(counts.get(&2), Some(&6));
        assert_eq!(counts.get(&3), Some(&5));
    }
}
