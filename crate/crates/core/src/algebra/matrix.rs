//! k-by-n matrices standing for points of the Grassmannian.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{AlgebraError, Modulus, PlueckerEvaluation, PlueckerIndex, Scalar};

/// Determinant by Gaussian elimination over a field.
/// `m` is indexed `m[col][row]`.
pub(crate) fn det<S: Scalar>(mut m: Vec<Vec<S>>, zero: &S) -> S {
    let k = m.len();
    let mut acc = zero.one_like();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return zero.zero_like();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc = acc * pivot.clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() * inv.clone();
            for j in c..k {
                let t = m[c][j].clone() * f.clone();
                m[r][j] = m[r][j].clone() - t;
            }
        }
    }
    acc
}

/// Generalized cross product of `k - 1` vectors of length `k`:
/// the vector `v` with `v . w = det(v_1, ..., v_{k-1}, w)` for every `w`.
pub fn cross<S: Scalar>(vs: &[Vec<S>]) -> Result<Vec<S>, AlgebraError> {
    let k = vs.len() + 1;
    let Some(first) = vs.first().and_then(|v| v.first()) else {
        return Err(AlgebraError::ArityMismatch { expected: 2, found: 0 });
    };
    if let Some(bad) = vs.iter().find(|v| v.len() != k) {
        return Err(AlgebraError::ArityMismatch { expected: k, found: bad.len() });
    }
    let zero = first.zero_like();
    Ok((0..k)
        .map(|j| {
            // rows are matrix rows; determinant is transpose-invariant
            let rows: Vec<Vec<S>> = vs
                .iter()
                .cloned()
                .chain(std::iter::once(
                    (0..k).map(|r| if r == j { zero.one_like() } else { zero.clone() }).collect(),
                ))
                .collect();
            det(rows, &zero)
        })
        .collect())
}

/// A full-rank `k x n` matrix, stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannPoint<S> {
    k: usize,
    columns: Vec<Vec<S>>,
}

impl<S: Scalar> GrassmannPoint<S> {
    pub fn from_columns(columns: Vec<Vec<S>>) -> Result<Self, AlgebraError> {
        let k = columns.first().map_or(0, Vec::len);
        if k == 0 || columns.len() <= k {
            return Err(AlgebraError::ArityMismatch { expected: k + 1, found: columns.len() });
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != k) {
            return Err(AlgebraError::ArityMismatch { expected: k, found: bad.len() });
        }
        Ok(GrassmannPoint { k, columns })
    }

    /// Builds from rows, as matrices are usually written.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, AlgebraError> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AlgebraError::ArityMismatch { expected: n, found: bad.len() });
        }
        let cols = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Self::from_columns(cols)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Column `i`, 1-based.
    pub fn column(&self, i: usize) -> &[S] {
        &self.columns[i - 1]
    }

    pub fn columns(&self) -> &[Vec<S>] {
        &self.columns
    }

    fn zero(&self) -> S {
        self.columns[0][0].zero_like()
    }

    /// Maximal minor on the column set `j`.
    pub fn pluecker(&self, j: PlueckerIndex) -> Result<S, AlgebraError> {
        j.check(self.k, self.n())?;
        Ok(self.minor_unchecked(j.iter().map(usize::from)))
    }

    /// Minor on columns in the given order, so transpositions flip the sign.
    pub fn pluecker_ordered(&self, cols: &[usize]) -> Result<S, AlgebraError> {
        if cols.len() != self.k {
            return Err(AlgebraError::ArityMismatch { expected: self.k, found: cols.len() });
        }
        let mut seen = 0u64;
        for &c in cols {
            if c == 0 || c > self.n() || seen & (1 << c) != 0 {
                return Err(AlgebraError::InvalidIndex(format!("{c} in {cols:?}")));
            }
            seen |= 1 << c;
        }
        Ok(self.minor_unchecked(cols.iter().copied()))
    }

    fn minor_unchecked(&self, cols: impl Iterator<Item = usize>) -> S {
        let m: Vec<Vec<S>> = cols.map(|c| self.columns[c - 1].clone()).collect();
        det(m, &self.zero())
    }

    /// All maximal minors.
    pub fn evaluation(&self) -> PlueckerEvaluation<S> {
        let mut ev = PlueckerEvaluation::new(self.k, self.n());
        for j in PlueckerIndex::all(self.k, self.n()) {
            ev.insert(j, self.minor_unchecked(j.iter().map(usize::from)));
        }
        ev
    }

    pub fn scale(&self, lambda: &S) -> Self {
        GrassmannPoint {
            k: self.k,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|x| x.clone() * lambda.clone()).collect())
                .collect(),
        }
    }

    /// The right twist. Column `i` is a signed cross product of the `k - 1`
    /// columns following `i`, read cyclically; wrapped columns are listed
    /// first and carry the sign `(-1)^(k - n + i - 1)`.
    pub fn right_twist(&self) -> Self {
        let (k, n) = (self.k, self.n());
        let columns = (1..=n)
            .map(|i| {
                let (idx, negative): (Vec<usize>, bool) = if i + k - 1 <= n {
                    ((i + 1..i + k).collect(), false)
                } else {
                    let wrapped = (1..i + k - n).chain(i + 1..=n).collect();
                    // (-1)^(k - n + i - 1), exponent taken as an integer
                    let e = k as i64 - n as i64 + i as i64 - 1;
                    (wrapped, e.rem_euclid(2) == 1)
                };
                let vs: Vec<Vec<S>> = idx.iter().map(|&c| self.columns[c - 1].clone()).collect();
                let v = cross(&vs).expect("k - 1 columns of length k");
                if negative {
                    v.into_iter().map(|x| -x).collect()
                } else {
                    v
                }
            })
            .collect();
        GrassmannPoint { k, columns }
    }

    fn all_minors_nonzero(&self) -> bool {
        PlueckerIndex::all(self.k, self.n())
            .into_iter()
            .all(|j| !self.minor_unchecked(j.iter().map(usize::from)).is_zero())
    }
}

impl GrassmannPoint<crate::algebra::Fp> {
    /// Uniform random point over `F_p` with every maximal minor nonzero.
    pub fn random_modular<R: Rng + ?Sized>(k: usize, n: usize, p: Modulus, rng: &mut R) -> Self {
        loop {
            let cols = (0..n)
                .map(|_| (0..k).map(|_| p.element(rng.gen_range(0..p.get()))).collect())
                .collect();
            let pt = GrassmannPoint::from_columns(cols).expect("shape");
            if pt.all_minors_nonzero() {
                return pt;
            }
        }
    }
}

impl GrassmannPoint<BigRational> {
    /// Random integer point with entries in `[-bound, bound]` and every
    /// maximal minor nonzero.
    pub fn random_rational<R: Rng + ?Sized>(k: usize, n: usize, bound: i64, rng: &mut R) -> Self {
        let bound = bound.max(1);
        loop {
            let cols = (0..n)
                .map(|_| {
                    (0..k)
                        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                        .collect()
                })
                .collect();
            let pt = GrassmannPoint::from_columns(cols).expect("shape");
            if pt.all_minors_nonzero() {
                return pt;
            }
        }
    }
}
