//! Face and edge weights of (multi)dimers and the twisted partition function.

use num_bigint::BigInt;

use super::{Dimer, DimerError, DimerModel, MultiDimer};
use crate::algebra::{PlueckerEvaluation, PlueckerIndex, Scalar};
use crate::laurent::{LaurentExpr, Monomial};
use crate::plabic::Color;

/// Face label values and their inverses at one point, in model order.
#[derive(Clone, Debug)]
pub struct FaceTable<S> {
    values: Vec<S>,
    inverses: Vec<S>,
}

impl<S: Scalar> FaceTable<S> {
    /// Product of face values raised to the given exponents.
    pub fn monomial(&self, exponents: &[i32]) -> S {
        let mut acc = self.values[0].one_like();
        for (i, &e) in exponents.iter().enumerate() {
            let base = if e < 0 { &self.inverses[i] } else { &self.values[i] };
            for _ in 0..e.unsigned_abs() {
                acc = acc * base.clone();
            }
        }
        acc
    }
}

impl DimerModel {
    /// Exponent `m W_f - D_f - m` of each inner face label, where `W_f`
    /// counts white corners of `f` and `D_f` counts dimer edges on the
    /// boundary of `f` that avoid boundary vertices.
    pub fn face_exponents(&self, d: &MultiDimer) -> Vec<i32> {
        let m = i32::from(d.fold());
        let mut ex: Vec<i32> = self.white.iter().map(|w| m * w - m).collect();
        for (e, mult) in d.support() {
            if self.touches_boundary[e] {
                continue;
            }
            ex[self.dart_face[2 * e]] -= i32::from(mult);
            ex[self.dart_face[2 * e + 1]] -= i32::from(mult);
        }
        ex
    }

    fn to_monomial(&self, exponents: &[i32]) -> Monomial {
        Monomial::from_exponents(self.labels.iter().copied().zip(exponents.iter().copied()))
    }

    /// Face weight of an m-fold dimer.
    pub fn face_weight(&self, d: &MultiDimer) -> Monomial {
        self.to_monomial(&self.face_exponents(d))
    }

    /// Face weight of a single dimer.
    pub fn dimer_weight(&self, d: &Dimer) -> Monomial {
        self.face_weight(&MultiDimer::overlay(self.edge_count(), &[d]))
    }

    pub fn face_table<S: Scalar>(&self, ev: &PlueckerEvaluation<S>) -> Result<FaceTable<S>, DimerError> {
        let values: Vec<S> = self.labels.iter().map(|&j| ev.get(j).cloned().ok_or(DimerError::Pole(j))).collect::<Result<_, _>>()?;
        let inverses = values
            .iter()
            .zip(&self.labels)
            .map(|(v, &j)| v.inv().ok_or(DimerError::Pole(j)))
            .collect::<Result<_, _>>()?;
        Ok(FaceTable { values, inverses })
    }

    /// Sum of face weights over all dimers with boundary `j`, symbolically.
    pub fn twist_partition(&self, j: PlueckerIndex) -> Result<LaurentExpr, DimerError> {
        Ok(self
            .dimers(j)?
            .iter()
            .map(|d| LaurentExpr::monomial(BigInt::from(1), self.dimer_weight(d)))
            .sum())
    }

    /// Numeric value of the twisted partition function for `j`.
    pub fn twist_value<S: Scalar>(&self, j: PlueckerIndex, table: &FaceTable<S>) -> Result<S, DimerError> {
        let zero = table.values[0].zero_like();
        Ok(self.dimers(j)?.iter().fold(zero, |acc, d| {
            acc + table.monomial(&self.face_exponents(&MultiDimer::overlay(self.edge_count(), &[d])))
        }))
    }

    /// Labels of the faces around a vertex, one per incident edge.
    fn faces_around(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let g = self.graph();
        g.rotation(v).iter().map(move |&e| self.dart_face[g.dart_from(e, v).0])
    }

    /// Edge weight: labels of faces at the black endpoint over the labels of
    /// the two faces along the edge. Edges at boundary vertices weigh 1.
    pub fn edge_weight(&self, e: usize) -> Monomial {
        if self.touches_boundary[e] {
            return Monomial::one();
        }
        let g = self.graph();
        let (a, b) = g.edges()[e];
        let black = if g.color(a) == Color::Black { a } else { b };
        let up = self.faces_around(black).map(|f| (self.labels[f], 1));
        let down = [self.dart_face[2 * e], self.dart_face[2 * e + 1]].map(|f| (self.labels[f], -1));
        Monomial::from_exponents(up.chain(down))
    }

    /// Product of edge weights with multiplicity.
    pub fn edge_weight_product(&self, d: &MultiDimer) -> Monomial {
        d.support().fold(Monomial::one(), |acc, (e, m)| acc.mul(&self.edge_weight(e).pow(i32::from(m))))
    }

    /// Does the edge weight, divided by the `m`-th power of the labels of
    /// faces away from the boundary circle, equal the face weight?
    pub fn translate_check(&self, d: &MultiDimer) -> bool {
        let g = self.graph();
        let interior = self.inner.iter().zip(&self.labels).filter(|(&f, _)| !g.is_boundary_face(f));
        let all = Monomial::from_exponents(interior.map(|(_, &j)| (j, 1)));
        self.edge_weight_product(d).mul(&all.pow(-i32::from(d.fold()))) == self.face_weight(d)
    }
}
