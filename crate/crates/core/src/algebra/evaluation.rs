//! A table of Plücker coordinate values.

use std::collections::HashMap;

use super::{PlueckerIndex, Scalar};

/// Map from index sets to scalars, usually all maximal minors of one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PlueckerEvaluation<S> {
    k: usize,
    n: usize,
    values: HashMap<PlueckerIndex, S>,
}

impl<S: Scalar> PlueckerEvaluation<S> {
    pub fn new(k: usize, n: usize) -> Self {
        PlueckerEvaluation { k, n, values: HashMap::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, j: PlueckerIndex, v: S) {
        self.values.insert(j, v);
    }

    pub fn get(&self, j: PlueckerIndex) -> Option<&S> {
        self.values.get(&j)
    }

    /// Value of `j`, panicking when absent. For tables built from a point.
    pub fn at(&self, j: PlueckerIndex) -> S {
        self.values.get(&j).cloned().unwrap_or_else(|| panic!("no value for {j}"))
    }

    /// Product of the listed coordinates.
    pub fn product(&self, js: &[PlueckerIndex]) -> S {
        let one = self.values.values().next().expect("nonempty evaluation").one_like();
        js.iter().fold(one, |acc, &j| acc * self.at(j))
    }

    /// Product of coordinates given in shorthand such as `"(123)(456)"`.
    pub fn product_of(&self, s: &str) -> S {
        let js: Vec<PlueckerIndex> = s
            .split(')')
            .filter(|p| !p.trim().is_empty())
            .map(|p| format!("{p})").trim().parse().expect("index shorthand"))
            .collect();
        self.product(&js)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::{GrassmannPoint, Modulus};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shorthand_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = GrassmannPoint::random_modular(3, 7, Modulus::default(), &mut rng);
        let ev = m.evaluation();
        assert_eq!(ev.len(), 35);
        let a = ev.at("(456)".parse().unwrap()) * ev.at("(157)".parse().unwrap());
        assert_eq!(ev.product_of("(456)(157)"), a);
    }
}
