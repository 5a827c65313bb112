//! Sorted index subsets of `[n]`, stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// Largest supported ground set.
pub const MAX_N: u8 = 31;

/// A strictly increasing tuple of indices in `1..=31`, ordered lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlueckerIndex(u32);

impl PlueckerIndex {
    /// Builds an index set, rejecting repeats and out-of-range entries.
    pub fn new(indices: &[u8]) -> Result<Self, AlgebraError> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > MAX_N {
                return Err(AlgebraError::InvalidIndex(format!("{i} out of range")));
            }
            if mask & (1 << i) != 0 {
                return Err(AlgebraError::InvalidIndex(format!("{i} repeated")));
            }
            mask |= 1 << i;
        }
        Ok(PlueckerIndex(mask))
    }

    /// Like [`PlueckerIndex::new`] for indices known to be valid.
    pub fn of(indices: &[u8]) -> Self {
        Self::new(indices).expect("valid index set")
    }

    pub fn from_mask(mask: u32) -> Self {
        PlueckerIndex(mask & !1)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: u8) -> bool {
        i <= MAX_N && self.0 & (1 << i) != 0
    }

    pub fn largest(self) -> Option<u8> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as u8)
    }

    pub fn iter(self) -> impl Iterator<Item = u8> + Clone {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as u8;
                m &= m - 1;
                i
            })
        })
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn union(self, o: Self) -> Self {
        PlueckerIndex(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        PlueckerIndex(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        PlueckerIndex(self.0 & !o.0)
    }

    pub fn with(self, i: u8) -> Self {
        PlueckerIndex(self.0 | (1 << i))
    }

    pub fn without(self, i: u8) -> Self {
        PlueckerIndex(self.0 & !(1 << i))
    }

    /// Checks size and range against `Gr(k, n)`.
    pub fn check(self, k: usize, n: usize) -> Result<(), AlgebraError> {
        if self.len() != k {
            return Err(AlgebraError::ArityMismatch { expected: k, found: self.len() });
        }
        match self.largest() {
            Some(m) if m as usize > n => {
                Err(AlgebraError::InvalidIndex(format!("{m} exceeds n = {n}")))
            }
            _ => Ok(()),
        }
    }

    /// Image under an index map, re-sorted.
    pub fn map(self, f: impl Fn(u8) -> u8) -> Self {
        PlueckerIndex(self.iter().fold(0, |m, i| m | (1 << f(i))))
    }

    /// Circularly consecutive in `[n]`.
    pub fn is_frozen(self, n: usize) -> bool {
        let k = self.len();
        (1..=n as u8).any(|a| (0..k as u8).all(|t| self.contains((a - 1 + t) % n as u8 + 1)))
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<PlueckerIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<PlueckerIndex>) {
            if cur.len() == k {
                out.push(PlueckerIndex::of(cur));
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, n as u8, k, &mut cur, &mut out);
        out
    }
}

impl Ord for PlueckerIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.iter().cmp(o.iter())
    }
}

impl PartialOrd for PlueckerIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for PlueckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.largest().is_some_and(|m| m >= 10);
        let sep = if wide { "," } else { "" };
        let body: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        // a lone wide entry keeps a trailing comma so it cannot read as digits
        let tail = if wide && body.len() == 1 { "," } else { "" };
        write!(f, "({}{tail})", body.join(sep))
    }
}

impl fmt::Debug for PlueckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PlueckerIndex {
    type Err = AlgebraError;

    /// Accepts `(134)`, `134`, `(1,10,12)`, `(12,)` and `1,3,4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').map_or(Ok(t), |r| {
            r.strip_suffix(')').ok_or_else(|| AlgebraError::parse("index set", s))
        })?;
        let t = t.trim();
        if t.is_empty() {
            return Err(AlgebraError::parse("index set", s));
        }
        let parts: Vec<u8> = if t.contains(',') {
            t.trim_end_matches(',')
                .split(',')
                .map(|p| p.trim().parse::<u8>().map_err(|_| AlgebraError::parse("index set", s)))
                .collect::<Result<_, _>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as u8).ok_or_else(|| AlgebraError::parse("index set", s))
                })
                .collect::<Result<_, _>>()?
        };
        PlueckerIndex::new(&parts)
    }
}

impl Serialize for PlueckerIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PlueckerIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_parse() {
        let j = PlueckerIndex::of(&[4, 1, 3]);
        assert_eq!(j.to_string(), "(134)");
        assert_eq!("(134)".parse::<PlueckerIndex>().unwrap(), j);
        assert_eq!("1,3,4".parse::<PlueckerIndex>().unwrap(), j);
        let w = PlueckerIndex::of(&[1, 10, 12]);
        assert_eq!(w.to_string(), "(1,10,12)");
        assert_eq!(w.to_string().parse::<PlueckerIndex>().unwrap(), w);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(PlueckerIndex::new(&[1, 1, 2]), Err(AlgebraError::InvalidIndex(_))));
        assert!(PlueckerIndex::new(&[0, 1]).is_err());
        assert!("(1a3)".parse::<PlueckerIndex>().is_err());
        assert!("()".parse::<PlueckerIndex>().is_err());
        assert!("(12".parse::<PlueckerIndex>().is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut v = PlueckerIndex::all(3, 5);
        assert_eq!(v.len(), 10);
        let sorted = v.clone();
        v.reverse();
        v.sort();
        assert_eq!(v, sorted);
        assert!(PlueckerIndex::of(&[1, 4, 5]) < PlueckerIndex::of(&[2, 3, 4]));
    }

    #[test]
    fn frozen_sets() {
        assert!(PlueckerIndex::of(&[1, 6, 7]).is_frozen(7));
        assert!(PlueckerIndex::of(&[1, 2, 7]).is_frozen(7));
        assert!(!PlueckerIndex::of(&[1, 2, 6]).is_frozen(7));
        let frozen = PlueckerIndex::all(3, 8).into_iter().filter(|j| j.is_frozen(8)).count();
        assert_eq!(frozen, 8);
    }

    proptest! {
        #[test]
        fn parse_roundtrip(v in proptest::collection::btree_set(1u8..=31, 1..8)) {
            let v: Vec<u8> = v.into_iter().collect();
            let j = PlueckerIndex::of(&v);
            prop_assert_eq!(j.to_vec(), v);
            prop_assert_eq!(j.to_string().parse::<PlueckerIndex>().unwrap(), j);
        }
    }
}
