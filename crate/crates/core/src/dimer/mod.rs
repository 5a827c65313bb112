//! Single and m-fold dimer configurations on plabic graphs, with face
//! weights realizing the twist.

mod enumerate;
mod measurement;
mod weights;

pub use measurement::{boundary_measurement, three_term_relations_hold};
pub use weights::FaceTable;

use std::fmt;

use thiserror::Error;

use crate::algebra::PlueckerIndex;
use crate::plabic::{PlabicError, PlabicGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    #[error(transparent)]
    Plabic(#[from] PlabicError),
    #[error("expected a {expected}-fold dimer, found {found}-fold")]
    Fold { expected: u8, found: u8 },
    #[error("not a dimer: {0}")]
    Invalid(String),
    #[error("face label {0} vanishes at the evaluation point")]
    Pole(PlueckerIndex),
    #[error("boundary condition {0} does not have size k")]
    BoundarySize(PlueckerIndex),
}

/// An almost perfect matching: every internal vertex covered once.
/// Edge ids are kept sorted, which fixes the canonical order of dimers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimer(Vec<usize>);

impl Dimer {
    pub fn edges(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Dimer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", ids.join(","))
    }
}

/// Superposition of `fold` dimers: an edge multiplicity vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDimer {
    fold: u8,
    mult: Vec<u8>,
}

impl MultiDimer {
    pub fn overlay(edge_count: usize, parts: &[&Dimer]) -> MultiDimer {
        let mut mult = vec![0u8; edge_count];
        for d in parts {
            for &e in d.edges() {
                mult[e] += 1;
            }
        }
        MultiDimer { fold: parts.len() as u8, mult }
    }

    pub fn from_multiplicities(fold: u8, mult: Vec<u8>) -> MultiDimer {
        MultiDimer { fold, mult }
    }

    pub fn fold(&self) -> u8 {
        self.fold
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.mult
    }

    pub fn multiplicity(&self, e: usize) -> u8 {
        self.mult[e]
    }

    /// Reads the display form `[3,5x2,7]` for a graph with `edge_count`
    /// edges. Coverage is not checked here; see [`DimerModel::validate`].
    pub fn parse(text: &str, fold: u8, edge_count: usize) -> Result<MultiDimer, DimerError> {
        let bad = |why: String| DimerError::Invalid(format!("{text:?}: {why}"));
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| bad("expected [..]".into()))?;
        let mut mult = vec![0u8; edge_count];
        for item in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (e, m) = item.split_once('x').unwrap_or((item, "1"));
            let e: usize = e.parse().map_err(|_| bad(format!("edge {e:?}")))?;
            let m: u8 = m.parse().map_err(|_| bad(format!("multiplicity {m:?}")))?;
            let slot = mult.get_mut(e).ok_or_else(|| bad(format!("edge {e} out of range")))?;
            *slot = slot.checked_add(m).filter(|&x| x <= fold).ok_or_else(|| bad(format!("edge {e} exceeds fold {fold}")))?;
        }
        Ok(MultiDimer { fold, mult })
    }

    /// Edges with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.mult.iter().enumerate().filter(|(_, &m)| m > 0).map(|(e, &m)| (e, m))
    }
}

impl fmt::Display for MultiDimer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self
            .support()
            .map(|(e, m)| if m == 1 { e.to_string() } else { format!("{e}x{m}") })
            .collect();
        write!(f, "[{}]", ids.join(","))
    }
}

/// A plabic graph with its face data precomputed for dimer work.
#[derive(Clone, Debug)]
pub struct DimerModel {
    graph: PlabicGraph,
    /// Inner faces in a fixed order, with labels and white counts.
    inner: Vec<usize>,
    labels: Vec<PlueckerIndex>,
    white: Vec<i32>,
    /// Position in `inner` of the face left of each graph dart.
    dart_face: Vec<usize>,
    touches_boundary: Vec<bool>,
}

impl DimerModel {
    pub fn new(graph: PlabicGraph) -> Result<DimerModel, DimerError> {
        let all = graph.face_labels()?;
        let inner: Vec<usize> = graph.inner_faces().collect();
        let mut slot = vec![usize::MAX; all.len()];
        for (i, &f) in inner.iter().enumerate() {
            slot[f] = i;
        }
        let labels = inner.iter().map(|&f| all[f].expect("inner faces are labeled")).collect();
        let white = inner.iter().map(|&f| graph.white_count(f) as i32).collect();
        let dart_face = (0..2 * graph.edges().len())
            .map(|d| slot[graph.face_left(crate::plabic::Dart(d))])
            .collect();
        let touches_boundary =
            graph.edges().iter().map(|&(a, b)| graph.is_boundary(a) || graph.is_boundary(b)).collect();
        Ok(DimerModel { graph, inner, labels, white, dart_face, touches_boundary })
    }

    pub fn top_cell(k: usize, n: usize) -> DimerModel {
        DimerModel::new(PlabicGraph::top_cell(k, n)).expect("top cell is reduced")
    }

    pub fn graph(&self) -> &PlabicGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edges().len()
    }

    /// Labels of the inner faces, in model order.
    pub fn face_labels(&self) -> &[PlueckerIndex] {
        &self.labels
    }

    pub fn inner_faces(&self) -> &[usize] {
        &self.inner
    }

    /// Boundary labels covered by a dimer.
    pub fn boundary_of(&self, d: &Dimer) -> PlueckerIndex {
        self.boundary_multiset(&MultiDimer::overlay(self.edge_count(), &[d]))
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(PlueckerIndex::from_mask(0), |acc, (i, _)| acc.with(i as u8 + 1))
    }

    /// Coverage count of each boundary label `1..=n`, at index `label - 1`.
    pub fn boundary_multiset(&self, d: &MultiDimer) -> Vec<u8> {
        (1..=self.n() as u8)
            .map(|i| {
                let b = self.graph.boundary_vertex(i);
                self.graph.rotation(b).iter().map(|&e| d.multiplicity(e)).sum()
            })
            .collect()
    }

    /// Checks that every internal vertex is covered exactly `fold` times.
    pub fn validate(&self, d: &MultiDimer) -> Result<(), DimerError> {
        if d.mult.len() != self.edge_count() {
            return Err(DimerError::Invalid(format!("{} multiplicities for {} edges", d.mult.len(), self.edge_count())));
        }
        for v in 0..self.graph.vertices().len() {
            let cover: u32 = self.graph.rotation(v).iter().map(|&e| d.mult[e] as u32).sum();
            let internal = !self.graph.is_boundary(v);
            if (internal && cover != d.fold as u32) || cover > d.fold as u32 {
                return Err(DimerError::Invalid(format!(
                    "vertex {:?} covered {cover} times",
                    self.graph.vertices()[v].id
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlays_are_valid_multidimers() {
        let m = DimerModel::top_cell(3, 6);
        let i: PlueckerIndex = "134".parse().unwrap();
        let j: PlueckerIndex = "256".parse().unwrap();
        let (di, dj) = (m.dimers(i).unwrap(), m.dimers(j).unwrap());
        for a in &di {
            for b in &dj {
                let d = MultiDimer::overlay(m.edge_count(), &[a, b]);
                m.validate(&d).unwrap();
                assert_eq!(m.boundary_multiset(&d), vec![1; 6]);
            }
        }
    }

    #[test]
    fn display_form_parses_back() {
        let m = DimerModel::top_cell(3, 6);
        let d = m.all_dimers();
        let triple = MultiDimer::overlay(m.edge_count(), &[&d[0], &d[0], &d[3]]);
        assert_eq!(MultiDimer::parse(&triple.to_string(), 3, m.edge_count()).unwrap(), triple);
        assert!(MultiDimer::parse("[1x4]", 3, m.edge_count()).is_err());
        assert!(MultiDimer::parse("1,2", 3, m.edge_count()).is_err());
        assert!(MultiDimer::parse("[999]", 3, m.edge_count()).is_err());
    }

    #[test]
    fn validate_rejects_undercover() {
        let m = DimerModel::top_cell(2, 4);
        let d = MultiDimer::from_multiplicities(1, vec![0; m.edge_count()]);
        assert!(matches!(m.validate(&d), Err(DimerError::Invalid(_))));
    }
}
