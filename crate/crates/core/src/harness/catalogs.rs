//! Compatible non-elliptic webs for each triple product of a cubic
//! expression, and the cancellation that isolates one web.

use super::{failed, CheckResult, HarnessError};
use crate::algebra::{ClusterExpression, ExpressionKind, PlueckerIndex};
use crate::web::{boundary_for_product, enumerate_nonelliptic, Web};

/// Compatible webs of one signed triple product, with coloring counts.
#[derive(Clone, Debug)]
pub struct TermCatalog {
    pub coefficient: i64,
    pub factors: [PlueckerIndex; 3],
    pub webs: Vec<(Web, u64)>,
}

/// Catalogs of every term of an expression.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub expression: ClusterExpression,
    /// Non-elliptic webs with the expression's boundary coloring.
    pub candidates: usize,
    pub terms: Vec<TermCatalog>,
    /// Webs whose signed compatibility sum is nonzero, with that sum.
    pub survivors: Vec<(Web, i64)>,
}

impl Catalog {
    /// The single surviving web, when it survives with coefficient 1.
    pub fn target(&self) -> Option<&Web> {
        match self.survivors.as_slice() {
            [(w, 1)] => Some(w),
            _ => None,
        }
    }

    pub fn all_unique(&self) -> bool {
        self.terms.iter().all(|t| t.webs.iter().all(|(_, a)| *a == 1))
    }

    /// Webs of the leading term minus those of the other terms.
    pub fn leading_difference(&self) -> Vec<&Web> {
        let (first, rest) = self.terms.split_first().expect("nonempty expression");
        first.webs.iter().map(|(w, _)| w).filter(|w| rest.iter().all(|t| t.webs.iter().all(|(v, _)| v != *w))).collect()
    }

    /// Every web of a later term is also compatible with the leading term.
    pub fn others_inside_leading(&self) -> bool {
        let (first, rest) = self.terms.split_first().expect("nonempty expression");
        rest.iter().all(|t| t.webs.iter().all(|(w, _)| first.webs.iter().any(|(v, _)| v == w)))
    }
}

/// Expected number of compatible webs per term, for the standard A, B, C, Z.
pub const CATALOG_EXPECTATIONS: [(ExpressionKind, &str, &[usize]); 4] = [
    (ExpressionKind::A, "batwing", &[3, 1, 1]),
    (ExpressionKind::B, "octopus", &[4, 1, 2]),
    (ExpressionKind::C, "hexa-crab", &[4, 1, 2, 2]),
    (ExpressionKind::Z, "tri-crab", &[7, 4, 1, 1]),
];

/// Builds the catalogs of `expr` read on `n` boundary points.
pub fn catalog(expr: &ClusterExpression, n: usize) -> Result<Catalog, HarnessError> {
    let poly = expr.polynomial();
    let products: Vec<(i64, [PlueckerIndex; 3])> = poly
        .terms
        .iter()
        .map(|(c, js)| {
            let f: [PlueckerIndex; 3] = js.clone().try_into().map_err(|_| HarnessError::Fixture {
                name: expr.to_string(),
                problem: "terms must be triple products".into(),
            })?;
            Ok((*c, f))
        })
        .collect::<Result<_, HarnessError>>()?;
    let boundary = boundary_for_product(n, &products[0].1).boundary;
    let webs = enumerate_nonelliptic(&boundary)?;
    let mut terms = Vec::new();
    for (c, f) in &products {
        let compat = boundary_for_product(n, f);
        let mut found = Vec::new();
        for w in &webs {
            // a term with different boundary colors has no compatible web here
            let a = w.coloring_count(&compat).unwrap_or(0);
            if a > 0 {
                found.push((w.clone(), a));
            }
        }
        terms.push(TermCatalog { coefficient: *c, factors: *f, webs: found });
    }
    let survivors = webs
        .iter()
        .filter_map(|w| {
            let s: i64 = terms
                .iter()
                .map(|t| t.coefficient * t.webs.iter().find(|(v, _)| v == w).map_or(0, |(_, a)| *a as i64))
                .sum();
            (s != 0).then(|| (w.clone(), s))
        })
        .collect();
    Ok(Catalog { expression: expr.clone(), candidates: webs.len(), terms, survivors })
}

fn catalog_check(kind: ExpressionKind, name: &str, expected: &[usize]) -> Result<Vec<CheckResult>, HarnessError> {
    let e = ClusterExpression::standard(kind, Default::default());
    let cat = catalog(&e, kind.arity())?;
    let sizes: Vec<usize> = cat.terms.iter().map(|t| t.webs.len()).collect();
    let letter = kind.letter();
    let describe = |ws: &[&Web]| ws.iter().map(|w| w.describe()).collect::<Vec<_>>().join(" | ");
    let diff = cat.leading_difference();
    let target = cat.target();
    Ok(vec![
        CheckResult::check(
            format!("catalogs/{letter}/sizes"),
            format!("{e} over {} non-elliptic webs", cat.candidates),
            sizes == expected,
            format!("compatible webs per term {sizes:?}, expected {expected:?}"),
        ),
        CheckResult::check(
            format!("catalogs/{letter}/unique"),
            e.to_string(),
            cat.all_unique(),
            "every compatible web has exactly one coloring",
        ),
        CheckResult::check(
            format!("catalogs/{letter}/cancellation"),
            e.to_string(),
            cat.others_inside_leading() && diff.len() == 1 && target.is_some_and(|t| diff[0] == t),
            format!("leading minus others leaves {} web(s); {name}: {}", diff.len(), describe(&diff)),
        )
        .with_witness((diff.len() != 1).then(|| describe(&diff))),
    ])
}

pub(crate) fn checks() -> Vec<CheckResult> {
    CATALOG_EXPECTATIONS
        .iter()
        .flat_map(|&(kind, name, expected)| {
            catalog_check(kind, name, expected).unwrap_or_else(|e| vec![failed(format!("catalogs/{}", kind.letter()), name, e)])
        })
        .collect()
}
