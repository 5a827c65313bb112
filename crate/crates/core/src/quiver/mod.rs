//! Quivers, seed mutation and breadth-first exploration of finite mutation
//! classes, with identification of cluster variables by exact evaluation.

mod explore;

pub use explore::{Guard, MutationClass, Variable, DEFAULT_SEED_LIMIT};

use std::fmt;

use thiserror::Error;

use crate::algebra::{Fp, PlueckerEvaluation, PlueckerIndex, Scalar};
use crate::laurent::{LaurentError, LaurentExpr};
use crate::plabic::{Color, PlabicError, PlabicGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("cluster value at vertex {0} vanishes; resample the point")]
    DegeneratePoint(usize),
    #[error("exploration exceeded the guard of {limit} seeds")]
    Budget { limit: usize },
    #[error(transparent)]
    Plabic(#[from] PlabicError),
    #[error("Laurent tracking failed: {0}")]
    Laurent(#[from] LaurentError),
}

/// Neighbouring vertices with arrow multiplicities.
pub type Arrows = Vec<(usize, u32)>;

/// Exchange matrix with frozen flags. Entry `b[i][j]` counts arrows `i -> j`
/// minus arrows `j -> i`; arrows between frozen vertices are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<String>,
    frozen: Vec<bool>,
    b: Vec<Vec<i32>>,
}

impl Quiver {
    /// Builds from an arrow list; opposite arrows cancel.
    pub fn new(labels: Vec<String>, frozen: Vec<bool>, arrows: &[(usize, usize)]) -> Result<Quiver, QuiverError> {
        let n = labels.len();
        if frozen.len() != n {
            return Err(QuiverError::NoSuchVertex(frozen.len()));
        }
        let mut b = vec![vec![0i32; n]; n];
        for &(s, t) in arrows {
            if s >= n || t >= n {
                return Err(QuiverError::NoSuchVertex(s.max(t)));
            }
            if s != t && !(frozen[s] && frozen[t]) {
                b[s][t] += 1;
                b[t][s] -= 1;
            }
        }
        Ok(Quiver { labels, frozen, b })
    }

    /// Planar dual of a plabic graph: one arrow per edge, crossing it with the
    /// black end on the left, between the faces on either side.
    pub fn from_plabic(g: &PlabicGraph) -> Result<(Quiver, Vec<PlueckerIndex>), QuiverError> {
        let g = g.contract_bivalent();
        let labels = g.face_labels()?;
        let faces: Vec<usize> = g.inner_faces().collect();
        let mut slot = vec![usize::MAX; labels.len()];
        for (i, &f) in faces.iter().enumerate() {
            slot[f] = i;
        }
        let arrows: Vec<(usize, usize)> = (0..g.edges().len())
            .filter_map(|e| {
                let (a, b) = g.edges()[e];
                let black = if g.color(a) == Color::Black { a } else { b };
                let d = g.dart_from(e, black);
                let (l, r) = (g.face_left(d), g.face_left(d.reverse()));
                (slot[l] != usize::MAX && slot[r] != usize::MAX).then(|| (slot[l], slot[r]))
            })
            .collect();
        let idx: Vec<PlueckerIndex> = faces.iter().map(|&f| labels[f].expect("inner faces are labeled")).collect();
        let frozen = faces.iter().map(|&f| g.is_boundary_face(f)).collect();
        let q = Quiver::new(idx.iter().map(|j| j.to_string()).collect(), frozen, &arrows)?;
        Ok((q, idx))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn mutable(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| !self.frozen[v])
    }

    /// Signed arrow count from `i` to `j`.
    pub fn arrows(&self, i: usize, j: usize) -> i32 {
        self.b[i][j]
    }

    /// Number of arrows at `v`, ignoring direction.
    pub fn degree(&self, v: usize) -> u32 {
        self.b[v].iter().map(|x| x.unsigned_abs()).sum()
    }

    /// Sources of arrows into `r` and targets of arrows out of `r`, with multiplicity.
    pub fn neighbours(&self, r: usize) -> (Arrows, Arrows) {
        let into = (0..self.len()).filter(|&i| self.b[i][r] > 0).map(|i| (i, self.b[i][r] as u32)).collect();
        let out = (0..self.len()).filter(|&j| self.b[r][j] > 0).map(|j| (j, self.b[r][j] as u32)).collect();
        (into, out)
    }

    /// Mutation at a mutable vertex: compose paths through `r`, reverse the
    /// arrows at `r`, cancel 2-cycles.
    pub fn mutate(&self, r: usize) -> Result<Quiver, QuiverError> {
        if r >= self.len() {
            return Err(QuiverError::NoSuchVertex(r));
        }
        if self.frozen[r] {
            return Err(QuiverError::FrozenVertex(r));
        }
        let n = self.len();
        let b = &self.b;
        let nb = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == r || j == r {
                            -b[i][j]
                        } else if self.frozen[i] && self.frozen[j] {
                            0
                        } else {
                            b[i][j] + (b[i][r].abs() * b[r][j] + b[i][r] * b[r][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Quiver { labels: self.labels.clone(), frozen: self.frozen.clone(), b: nb })
    }
}

impl fmt::Display for Quiver {
    /// One line per arrow such as `(124) -> (134) x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let m = self.b[i][j];
                if m > 0 {
                    write!(f, "{} -> {}", self.labels[i], self.labels[j])?;
                    if m > 1 {
                        write!(f, " x{m}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

/// A quiver with one cluster value per vertex at each of several points, and
/// optionally the Laurent expansion of each value in the initial cluster.
#[derive(Clone, Debug)]
pub struct Seed<S> {
    quiver: Quiver,
    values: Vec<Vec<S>>,
    laurent: Option<Vec<LaurentExpr>>,
}

impl<S: Scalar> Seed<S> {
    /// `values[p][v]` is the value of vertex `v` at point `p`.
    pub fn new(quiver: Quiver, values: Vec<Vec<S>>) -> Seed<S> {
        assert!(values.iter().all(|vs| vs.len() == quiver.len()), "one value per vertex");
        Seed { quiver, values, laurent: None }
    }

    /// The seed of a plabic graph, valued by its face labels at each point.
    pub fn from_plabic(g: &PlabicGraph, points: &[PlueckerEvaluation<S>]) -> Result<Seed<S>, QuiverError> {
        let (quiver, labels) = Quiver::from_plabic(g)?;
        let values = points.iter().map(|ev| labels.iter().map(|&j| ev.at(j)).collect()).collect();
        Ok(Seed { quiver, values, laurent: None })
    }

    /// Turns on Laurent tracking, taking the current values as the initial cluster.
    pub fn track_laurent(mut self, initial: &[PlueckerIndex]) -> Seed<S> {
        self.laurent = Some(initial.iter().map(|&j| LaurentExpr::var(j)).collect());
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn values(&self, point: usize) -> &[S] {
        &self.values[point]
    }

    pub fn point_count(&self) -> usize {
        self.values.len()
    }

    pub fn laurent(&self) -> Option<&[LaurentExpr]> {
        self.laurent.as_deref()
    }

    /// Mutation with the exchange relation `x_r x_r' = prod(in) + prod(out)`.
    pub fn mutate(&self, r: usize) -> Result<Seed<S>, QuiverError> {
        let quiver = self.quiver.mutate(r)?;
        let (into, out) = self.quiver.neighbours(r);
        let values = self
            .values
            .iter()
            .map(|vs| {
                let prod = |side: &[(usize, u32)]| {
                    side.iter().fold(vs[r].one_like(), |acc, &(i, m)| {
                        acc * vs[i].pow_i64(i64::from(m)).expect("nonnegative power")
                    })
                };
                let inv = vs[r].inv().ok_or(QuiverError::DegeneratePoint(r))?;
                let mut next = vs.clone();
                next[r] = (prod(&into) + prod(&out)) * inv;
                Ok(next)
            })
            .collect::<Result<Vec<_>, QuiverError>>()?;
        let laurent = match &self.laurent {
            None => None,
            Some(ls) => {
                let prod = |side: &[(usize, u32)]| {
                    side.iter().fold(LaurentExpr::one(), |acc, &(i, m)| {
                        (0..m).fold(acc, |a, _| &a * &ls[i])
                    })
                };
                let mut next = ls.clone();
                next[r] = (&prod(&into) + &prod(&out)).div_exact(&ls[r])?;
                Some(next)
            }
        };
        Ok(Seed { quiver, values, laurent })
    }
}

/// Mutable values at every point as raw residues, sorted: the seed's identity
/// for deduplication.
pub(crate) fn value_key(seed: &Seed<Fp>) -> Vec<Vec<u64>> {
    let q = seed.quiver();
    let mut rows: Vec<Vec<u64>> =
        q.mutable().map(|v| (0..seed.point_count()).map(|p| seed.values(p)[v].value()).collect()).collect();
    rows.sort_unstable();
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GrassmannPoint, Modulus};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn points(k: usize, n: usize, count: u64) -> Vec<PlueckerEvaluation<Fp>> {
        (0..count)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(100 + s);
                GrassmannPoint::random_modular(k, n, Modulus::default(), &mut rng).evaluation()
            })
            .collect()
    }

    fn idx(s: &str) -> PlueckerIndex {
        s.parse().unwrap()
    }

    #[test]
    fn top_cell_quiver_shape() {
        for (k, n) in [(2, 5), (3, 6), (3, 7), (3, 8)] {
            let (q, labels) = Quiver::from_plabic(&PlabicGraph::top_cell(k, n)).unwrap();
            assert_eq!(q.len(), k * (n - k) + 1);
            assert_eq!(q.mutable().count(), k * (n - k) + 1 - n);
            assert_eq!(labels.iter().filter(|j| j.is_frozen(n)).count(), n);
            for i in 0..q.len() {
                for j in 0..q.len() {
                    assert_eq!(q.arrows(i, j), -q.arrows(j, i));
                }
            }
        }
    }

    #[test]
    fn gr25_exchange_flips_a_diagonal() {
        let g = PlabicGraph::top_cell(2, 5);
        let evs = points(2, 5, 2);
        let seed = Seed::from_plabic(&g, &evs).unwrap();
        let (_, labels) = Quiver::from_plabic(&g).unwrap();
        // the exchange (24)(35) = (23)(45) + (25)(34)
        let r = labels.iter().position(|&j| j == idx("(35)")).unwrap();
        let next = seed.mutate(r).unwrap();
        for (p, ev) in evs.iter().enumerate() {
            assert_eq!(next.values(p)[r], ev.at(idx("(24)")));
        }
    }

    #[test]
    fn mutation_is_an_involution() {
        let g = PlabicGraph::top_cell(3, 7);
        let seed = Seed::from_plabic(&g, &points(3, 7, 1)).unwrap();
        for r in seed.quiver().mutable() {
            let back = seed.mutate(r).unwrap().mutate(r).unwrap();
            assert_eq!(back.quiver(), seed.quiver());
            assert_eq!(back.values(0), seed.values(0));
        }
    }

    #[test]
    fn frozen_vertices_do_not_mutate() {
        let g = PlabicGraph::top_cell(3, 6);
        let seed = Seed::from_plabic(&g, &points(3, 6, 1)).unwrap();
        let f = (0..seed.quiver().len()).find(|&v| seed.quiver().is_frozen(v)).unwrap();
        assert_eq!(seed.mutate(f).err(), Some(QuiverError::FrozenVertex(f)));
    }

    #[test]
    fn square_moves_match_mutation() {
        for (k, n) in [(3, 6), (3, 7), (3, 8)] {
            let g = PlabicGraph::top_cell(k, n);
            let evs = points(k, n, 1);
            let (q, labels) = Quiver::from_plabic(&g).unwrap();
            let seed = Seed::from_plabic(&g, &evs).unwrap();
            for j in g.square_faces() {
                let r = labels.iter().position(|&l| l == j).unwrap();
                assert_eq!(q.degree(r), 4);
                let moved = g.square_move(j).unwrap();
                let (mq, mlabels) = Quiver::from_plabic(&moved).unwrap();
                let mu = seed.mutate(r).unwrap();
                // relabeling: the new face label is the mutated value
                let new: Vec<PlueckerIndex> = mlabels.iter().filter(|l| !labels.contains(l)).copied().collect();
                assert_eq!(new.len(), 1);
                assert_eq!(mu.values(0)[r], evs[0].at(new[0]));
                // quivers agree once vertices are matched by label
                let pos = |l: PlueckerIndex| mlabels.iter().position(|&m| m == l).unwrap();
                let relabel: Vec<usize> =
                    labels.iter().enumerate().map(|(i, &l)| if i == r { pos(new[0]) } else { pos(l) }).collect();
                for a in 0..q.len() {
                    for b in 0..q.len() {
                        assert_eq!(mu.quiver().arrows(a, b), mq.arrows(relabel[a], relabel[b]), "{j}");
                    }
                }
            }
        }
    }
}
