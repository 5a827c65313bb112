//! Two-row tableaux and the matching bijection.

use std::fmt;
use std::str::FromStr;

use super::{NonCrossingMatching, WebError};

/// A Young tableau in English notation: `rows[0]` is the longest row and
/// holds 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Checks rows weakly shrink, entries are `1..=N` once each, and rows
    /// and columns increase.
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Tableau, WebError> {
        let bad = |m: &str| Err(WebError::InvalidTableau(m.to_string()));
        if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
            return bad("empty row");
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("rows must weakly shrink");
        }
        let mut all: Vec<u8> = rows.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &x)| x as usize != i + 1) {
            return bad("entries must be 1..N once each");
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] >= w[1])) {
            return bad("rows must increase");
        }
        if rows.windows(2).any(|w| w[1].iter().zip(&w[0]).any(|(lo, hi)| lo <= hi)) {
            return bad("columns must increase");
        }
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn transpose(&self) -> Tableau {
        let cols = self.rows[0].len();
        let rows = (0..cols).map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect();
        Tableau { rows }
    }

    /// All standard tableaux of a two-row shape `[a, b]` with `a >= b`.
    pub fn all_two_row(a: usize, b: usize) -> Vec<Tableau> {
        let mut out = Vec::new();
        let mut first = Vec::new();
        let mut second = Vec::new();
        fn rec(next: u8, total: u8, a: usize, b: usize, first: &mut Vec<u8>, second: &mut Vec<u8>, out: &mut Vec<Tableau>) {
            if next > total {
                out.push(Tableau { rows: if second.is_empty() { vec![first.clone()] } else { vec![first.clone(), second.clone()] } });
                return;
            }
            if first.len() < a {
                first.push(next);
                rec(next + 1, total, a, b, first, second, out);
                first.pop();
            }
            if second.len() < b && second.len() < first.len() {
                second.push(next);
                rec(next + 1, total, a, b, first, second, out);
                second.pop();
            }
        }
        rec(1, (a + b) as u8, a, b, &mut first, &mut second, &mut out);
        out
    }
}

impl fmt::Display for Tableau {
    /// Longest row last, as the rows are drawn bottom-up.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().rev().map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")).collect();
        f.write_str(&rows.join(" / "))
    }
}

impl FromStr for Tableau {
    type Err = WebError;

    /// Rows separated by `/`, top (shortest) row first, e.g. `"2 5 6 / 1 3 4"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows: Vec<Vec<u8>> = s
            .split('/')
            .map(|r| {
                r.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u8>().map_err(|_| WebError::InvalidTableau(format!("entry {t:?}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        rows.reverse();
        Tableau::new(rows)
    }
}

/// Reads the upper row left to right and matches each entry `j` to the
/// largest unmatched `i < j` in the row below.
pub fn kk_two_row(t: &Tableau) -> Result<NonCrossingMatching, WebError> {
    let [lower, upper] = t.rows() else {
        return Err(WebError::InvalidTableau(format!("expected two rows, got shape {:?}", t.shape())));
    };
    let mut free: Vec<u8> = lower.clone();
    let mut pairs = Vec::with_capacity(upper.len());
    for &j in upper {
        let pos = free.iter().rposition(|&i| i < j).ok_or_else(|| WebError::InvalidTableau(format!("{j} has no partner")))?;
        pairs.push((free.remove(pos), j));
    }
    pairs.sort_unstable();
    Ok(NonCrossingMatching { pairs, cycles: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u8, u8)]) -> NonCrossingMatching {
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        NonCrossingMatching { pairs, cycles: 0 }
    }

    #[test]
    fn listed_examples() {
        let cases = [
            ("4 5 6 / 1 2 3", m(&[(3, 4), (2, 5), (1, 6)])),
            ("2 5 6 / 1 3 4", m(&[(1, 2), (4, 5), (3, 6)])),
            ("3 4 6 / 1 2 5", m(&[(2, 3), (1, 4), (5, 6)])),
            ("3 5 6 / 1 2 4", m(&[(2, 3), (4, 5), (1, 6)])),
            ("2 4 6 / 1 3 5", m(&[(1, 2), (3, 4), (5, 6)])),
        ];
        for (t, want) in cases {
            assert_eq!(kk_two_row(&t.parse().unwrap()).unwrap(), want, "{t}");
        }
    }

    #[test]
    fn five_tableaux_give_five_matchings() {
        let all = Tableau::all_two_row(3, 3);
        assert_eq!(all.len(), 5);
        let mut ms: Vec<_> = all.iter().map(|t| kk_two_row(t).unwrap()).collect();
        ms.sort();
        ms.dedup();
        assert_eq!(ms.len(), 5);
    }

    #[test]
    fn rejects_non_standard() {
        assert!("1 5 6 / 2 3 4".parse::<Tableau>().is_err());
        assert!("2 6 5 / 1 3 4".parse::<Tableau>().is_err());
        assert!("2 5 7 / 1 3 4".parse::<Tableau>().is_err());
        let three = Tableau::new(vec![vec![1, 2, 4], vec![3, 5, 7], vec![6, 8, 9]]).unwrap();
        assert!(kk_two_row(&three).is_err());
        assert_eq!(three.transpose().rows()[0], vec![1, 3, 6]);
    }

    #[test]
    fn matchings_do_not_cross() {
        for (a, b) in [(3, 3), (4, 4), (5, 5), (5, 3)] {
            for t in Tableau::all_two_row(a, b) {
                let p = kk_two_row(&t).unwrap().pairs;
                for &(a1, b1) in &p {
                    for &(a2, b2) in &p {
                        assert!(!(a1 < a2 && a2 < b1 && b1 < b2), "{t}");
                    }
                }
            }
        }
    }
}
