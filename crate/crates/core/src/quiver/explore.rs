//! Breadth-first search over seeds up to equality of cluster values.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{value_key, QuiverError, Seed};
use crate::algebra::{ClusterExpression, ExpressionKind, Fp, PlueckerEvaluation, PlueckerIndex};
use crate::laurent::LaurentExpr;

pub const DEFAULT_SEED_LIMIT: usize = 500_000;

/// Limits on an exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_seeds: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_seeds: DEFAULT_SEED_LIMIT }
    }
}

/// A cluster variable met during exploration.
#[derive(Clone, Debug)]
pub struct Variable {
    /// Value at each evaluation point.
    pub values: Vec<Fp>,
    pub frozen: bool,
    /// Matching named expression, and whether the value is its negative.
    pub identity: Option<(ClusterExpression, bool)>,
    pub laurent: Option<LaurentExpr>,
}

impl Variable {
    pub fn is_pluecker(&self) -> bool {
        matches!(&self.identity, Some((e, _)) if e.kind() == ExpressionKind::Pluecker)
    }
}

/// Result of exploring a mutation class.
#[derive(Clone, Debug)]
pub struct MutationClass {
    pub seeds: usize,
    /// Variables in discovery order, frozen ones first.
    pub variables: Vec<Variable>,
}

impl MutationClass {
    /// Explores every seed reachable from `start`, in parallel frontier batches
    /// merged in a fixed order.
    pub fn explore(start: &Seed<Fp>, guard: Guard) -> Result<MutationClass, QuiverError> {
        let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
        let mut vars: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut variables = Vec::new();
        let mut record = |seed: &Seed<Fp>, v: usize, variables: &mut Vec<Variable>| {
            let values: Vec<Fp> = (0..seed.point_count()).map(|p| seed.values(p)[v]).collect();
            let key: Vec<u64> = values.iter().map(|x| x.value()).collect();
            vars.entry(key).or_insert_with(|| {
                variables.push(Variable {
                    values,
                    frozen: seed.quiver().is_frozen(v),
                    identity: None,
                    laurent: seed.laurent().map(|ls| ls[v].clone()),
                });
                variables.len() - 1
            });
        };
        let q = start.quiver();
        for v in (0..q.len()).filter(|&v| q.is_frozen(v)).chain(q.mutable()) {
            record(start, v, &mut variables);
        }
        seen.insert(value_key(start));
        let mut frontier = vec![start.clone()];
        while !frontier.is_empty() {
            let children: Vec<Vec<Seed<Fp>>> = frontier
                .par_iter()
                .map(|s| s.quiver().mutable().map(|r| s.mutate(r)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?;
            let mut next = Vec::new();
            for child in children.into_iter().flatten() {
                if seen.insert(value_key(&child)) {
                    if seen.len() > guard.max_seeds {
                        return Err(QuiverError::Budget { limit: guard.max_seeds });
                    }
                    for v in child.quiver().mutable() {
                        record(&child, v, &mut variables);
                    }
                    next.push(child);
                }
            }
            frontier = next;
        }
        Ok(MutationClass { seeds: seen.len(), variables })
    }

    pub fn mutable_count(&self) -> usize {
        self.variables.iter().filter(|v| !v.frozen).count()
    }

    pub fn frozen_count(&self) -> usize {
        self.variables.iter().filter(|v| v.frozen).count()
    }

    /// Matches every variable against Plücker coordinates and the dihedral
    /// images of X, Y, A, B, C, Z on every support inside `1..=n`, up to sign.
    /// `points` must be the evaluations the seed was valued at. Only `k = 3`
    /// has named expressions; other ranks leave every identity empty.
    pub fn identify(&mut self, points: &[PlueckerEvaluation<Fp>]) {
        let table = candidates(points);
        for var in &mut self.variables {
            let key = var.values[0].value();
            let hit = table.get(&key).and_then(|cs| {
                cs.iter().find_map(|(e, vals)| {
                    if vals == &var.values {
                        Some((e.clone(), false))
                    } else if vals.iter().zip(&var.values).all(|(a, b)| *a == -*b) {
                        Some((e.clone(), true))
                    } else {
                        None
                    }
                })
            });
            var.identity = hit;
        }
    }
}

/// Candidate expressions keyed by both signs of their first value.
fn candidates(points: &[PlueckerEvaluation<Fp>]) -> HashMap<u64, Vec<(ClusterExpression, Vec<Fp>)>> {
    let (k, n) = (points[0].k(), points[0].n());
    if k != 3 {
        return HashMap::new();
    }
    let mut exprs: Vec<ClusterExpression> = PlueckerIndex::all(k, n)
        .into_iter()
        .map(|j| ClusterExpression::pluecker(j).expect("k-subset"))
        .collect();
    for kind in ExpressionKind::ALL.into_iter().filter(|&t| t != ExpressionKind::Pluecker && t.arity() <= n) {
        for support in PlueckerIndex::all(kind.arity(), n) {
            exprs.extend(ClusterExpression::orbit(kind, support));
        }
    }
    // undecorated names win over dihedral images of another kind
    exprs.sort_by_key(|e| e.dihedral() != crate::algebra::Dihedral::IDENTITY);
    let mut table: HashMap<u64, Vec<(ClusterExpression, Vec<Fp>)>> = HashMap::new();
    for e in exprs {
        let vals: Vec<Fp> = points.iter().map(|ev| e.evaluate(ev).expect("support fits")).collect();
        for key in [vals[0].value(), (-vals[0]).value()] {
            table.entry(key).or_default().push((e.clone(), vals.clone()));
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::super::tests::points;
    use super::*;
    use crate::plabic::PlabicGraph;
    use crate::quiver::Quiver;

    fn class(k: usize, n: usize, laurent: bool) -> MutationClass {
        let g = PlabicGraph::top_cell(k, n);
        let evs = points(k, n, 2);
        let mut seed = Seed::from_plabic(&g, &evs).unwrap();
        if laurent {
            let (_, labels) = Quiver::from_plabic(&g).unwrap();
            seed = seed.track_laurent(&labels);
        }
        let mut c = MutationClass::explore(&seed, Guard::default()).unwrap();
        c.identify(&evs);
        c
    }

    #[test]
    fn gr25_is_type_a2() {
        let c = class(2, 5, false);
        assert_eq!((c.seeds, c.mutable_count(), c.frozen_count()), (5, 5, 5));
        let evs = points(2, 5, 2);
        let pl: Vec<Fp> = PlueckerIndex::all(2, 5).into_iter().map(|j| evs[0].at(j)).collect();
        assert!(c.variables.iter().all(|v| pl.contains(&v.values[0])));
    }

    #[test]
    fn gr36_has_x_and_y() {
        let c = class(3, 6, true);
        assert_eq!(c.seeds, 50);
        assert_eq!(c.variables.len(), 22);
        let kinds: Vec<ExpressionKind> =
            c.variables.iter().map(|v| v.identity.as_ref().expect("identified").0.kind()).collect();
        assert!(kinds.contains(&ExpressionKind::X) && kinds.contains(&ExpressionKind::Y));
        assert_eq!(kinds.iter().filter(|&&t| t == ExpressionKind::Pluecker).count(), 20);
        let evs = points(3, 6, 2);
        let one = evs[0].at("(123)".parse().unwrap()).modulus().element(1);
        for v in &c.variables {
            let l = v.laurent.as_ref().unwrap();
            assert_eq!(l.evaluate(&evs[0], &one).unwrap(), v.values[0]);
        }
    }

    #[test]
    fn guard_stops_infinite_type() {
        let g = PlabicGraph::top_cell(3, 9);
        let seed = Seed::from_plabic(&g, &points(3, 9, 1)).unwrap();
        let err = MutationClass::explore(&seed, Guard { max_seeds: 2000 }).unwrap_err();
        assert_eq!(err, QuiverError::Budget { limit: 2000 });
    }
}
