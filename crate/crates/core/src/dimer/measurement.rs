//! Boundary measurement: edge-weighted dimer sums are Plücker coordinates.

use std::collections::HashMap;

use super::DimerModel;
use crate::algebra::{PlueckerIndex, Scalar};

/// `Delta_J = sum over dimers with boundary J of the product of edge weights`.
pub fn boundary_measurement<S: Scalar>(model: &DimerModel, weights: &[S]) -> HashMap<PlueckerIndex, S> {
    let zero = weights[0].zero_like();
    model
        .dimers_by_boundary()
        .into_iter()
        .map(|(j, ds)| {
            let v = ds.iter().fold(zero.clone(), |acc, d| {
                acc + d.edges().iter().fold(zero.one_like(), |p, &e| p * weights[e].clone())
            });
            (j, v)
        })
        .collect()
}

/// Do all three-term relations
/// `D(Sac) D(Sbd) = D(Sab) D(Scd) + D(Sad) D(Sbc)` hold, for `a < b < c < d`
/// outside a `(k-2)`-set `S`?
pub fn three_term_relations_hold<S: Scalar>(k: usize, n: usize, delta: &HashMap<PlueckerIndex, S>) -> bool {
    if k < 2 || n < 4 {
        return true;
    }
    PlueckerIndex::all(k - 2, n).into_iter().all(|s| {
        let rest: Vec<u8> = (1..=n as u8).filter(|&i| !s.contains(i)).collect();
        let d = |x: u8, y: u8| delta[&s.with(x).with(y)].clone();
        let ok = quadruples(&rest).all(|[a, b, c, e]| d(a, c) * d(b, e) == d(a, b) * d(c, e) + d(a, e) * d(b, c));
        ok
    })
}

fn quadruples(v: &[u8]) -> impl Iterator<Item = [u8; 4]> + '_ {
    let n = v.len();
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| {
            (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [v[a], v[b], v[c], v[d]]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Modulus;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_weightings_give_pluecker_vectors() {
        let p = Modulus::default();
        for (k, n) in [(2, 5), (3, 6)] {
            let m = DimerModel::top_cell(k, n);
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..20 {
                let w: Vec<_> = (0..m.edge_count()).map(|_| p.from_i64(rng.gen_range(1..1000))).collect();
                assert!(three_term_relations_hold(k, n, &boundary_measurement(&m, &w)));
            }
        }
    }

    #[test]
    fn unit_and_zero_weights_still_satisfy_relations() {
        let p = Modulus::default();
        let m = DimerModel::top_cell(3, 6);
        let ones = vec![p.from_i64(1); m.edge_count()];
        assert!(three_term_relations_hold(3, 6, &boundary_measurement(&m, &ones)));
        let mut zeroed = ones.clone();
        zeroed[0] = p.from_i64(0);
        zeroed[m.edge_count() / 2] = p.from_i64(0);
        assert!(three_term_relations_hold(3, 6, &boundary_measurement(&m, &zeroed)));
    }

    #[test]
    fn broken_vector_fails() {
        let p = Modulus::default();
        let m = DimerModel::top_cell(2, 4);
        let ones = vec![p.from_i64(1); m.edge_count()];
        let mut delta = boundary_measurement(&m, &ones);
        *delta.get_mut(&"13".parse().unwrap()).unwrap() = p.from_i64(7);
        assert!(!three_term_relations_hold(2, 4, &delta));
    }
}
