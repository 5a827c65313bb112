//! Data files compiled into the library: seed graphs, twist tables and
//! transcribed Laurent expansions.

use crate::algebra::{AlgebraError, ClusterExpression, PlueckerEvaluation, PlueckerIndex, Scalar};
use crate::dimer::DimerModel;
use crate::plabic::PlabicGraph;

use super::HarnessError;

/// Every fixture file by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("gr36_top.json", include_str!("../../fixtures/gr36_top.json")),
    ("gr37_top.json", include_str!("../../fixtures/gr37_top.json")),
    ("gr38_seed.json", include_str!("../../fixtures/gr38_seed.json")),
    ("gr37_twists.txt", include_str!("../../fixtures/gr37_twists.txt")),
    ("twist_relations.txt", include_str!("../../fixtures/twist_relations.txt")),
    ("expansion_sigma2_A.txt", include_str!("../../fixtures/expansion_sigma2_A.txt")),
    ("expansion_sigma7_B.txt", include_str!("../../fixtures/expansion_sigma7_B.txt")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub(crate) fn require(name: &str) -> Result<&'static str, HarnessError> {
    fixture(name).ok_or_else(|| HarnessError::Fixture { name: name.into(), problem: "missing".into() })
}

pub(crate) fn model(name: &str) -> Result<DimerModel, HarnessError> {
    Ok(DimerModel::new(PlabicGraph::from_json(require(name)?)?)?)
}

/// Parses a product such as `(127)(234) X@S=1,3,4,5,6,7`: runs of Plücker
/// indices and whitespace-separated named expressions.
pub fn parse_product(s: &str) -> Result<Vec<ClusterExpression>, AlgebraError> {
    let mut out = Vec::new();
    for token in s.split_whitespace() {
        if token.starts_with('(') {
            for part in token.split_inclusive(')') {
                let j: PlueckerIndex = part.parse()?;
                out.push(ClusterExpression::pluecker(j)?);
            }
        } else {
            out.push(token.parse()?);
        }
    }
    if out.is_empty() {
        return Err(AlgebraError::Parse { what: "product", input: s.into() });
    }
    Ok(out)
}

/// Value of a product of expressions.
pub(crate) fn product_value<S: Scalar>(
    factors: &[ClusterExpression],
    ev: &PlueckerEvaluation<S>,
) -> Result<S, AlgebraError> {
    let mut it = factors.iter();
    let first = it.next().ok_or(AlgebraError::Parse { what: "product", input: String::new() })?.evaluate(ev)?;
    it.try_fold(first, |acc, f| Ok(acc * f.evaluate(ev)?))
}

/// One line `lhs = rhs` of a twist table: the twist of `lhs` equals the product `rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRow {
    pub line: usize,
    pub lhs: ClusterExpression,
    pub rhs: Vec<ClusterExpression>,
}

pub(crate) fn twist_rows(name: &str) -> Result<Vec<TwistRow>, HarnessError> {
    let text = require(name)?;
    let bad = |line: usize, e: String| HarnessError::Fixture { name: name.into(), problem: format!("line {line}: {e}") };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            // " = " separates the sides; "S=" inside names has no spaces
            let (a, b) = l.split_once(" = ").ok_or_else(|| bad(i + 1, "no ' = '".into()))?;
            let lhs: ClusterExpression = a.trim().parse().map_err(|e: AlgebraError| bad(i + 1, e.to_string()))?;
            let rhs = parse_product(b).map_err(|e| bad(i + 1, e.to_string()))?;
            Ok(TwistRow { line: i + 1, lhs, rhs })
        })
        .collect()
}

/// The 49 rows of the Gr(3,7) twist table.
pub fn gr37_table() -> Result<Vec<TwistRow>, HarnessError> {
    twist_rows("gr37_twists.txt")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_parse() {
        let p = parse_product("(127)(234) X@S=1,3,4,5,6,7").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[2].to_string(), "X@S=1,3,4,5,6,7");
        assert!(parse_product("").is_err());
        assert!(parse_product("(12").is_err());
    }

    #[test]
    fn table_has_49_rows() {
        let rows = gr37_table().unwrap();
        assert_eq!(rows.len(), 49);
        assert_eq!(rows.iter().filter(|r| r.lhs.kind() == crate::algebra::ExpressionKind::Pluecker).count(), 35);
    }

    #[test]
    fn graphs_load() {
        for name in ["gr36_top.json", "gr37_top.json", "gr38_seed.json"] {
            model(name).unwrap();
        }
    }
}
