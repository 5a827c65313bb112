//! Transcribed Laurent expansions of two Gr(3,8) twists, the twist relations
//! for A and B, and the per-dimer comparison on the seed graph.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::cubic::cubic_partition;
use super::fixtures::{model, parse_product, product_value, require, twist_rows, TwistRow};
use super::{failed, CheckResult, Config, HarnessError, Verdict};
use crate::algebra::{ClusterExpression, Fp, PlueckerIndex, Scalar};
use crate::laurent::{LaurentError, LaurentExpr, Monomial};

/// A displayed expansion `prefactor * bracket / denominator`, kept both as
/// printed and with its misprints corrected.
#[derive(Clone, Debug)]
pub struct ExpansionFixture {
    pub name: &'static str,
    pub expression: ClusterExpression,
    /// Closed form of the twist as a product of expressions.
    pub twist: Vec<ClusterExpression>,
    pub prefactor: LaurentExpr,
    pub denominator: LaurentExpr,
    pub verbatim: Result<LaurentExpr, LaurentError>,
    pub corrected: LaurentExpr,
}

impl ExpansionFixture {
    fn parse(name: &'static str) -> Result<ExpansionFixture, HarnessError> {
        let text = require(name)?;
        let bad = |problem: String| HarnessError::Fixture { name: name.into(), problem };
        let fields: BTreeMap<&str, &str> = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
            .filter_map(|l| l.split_once(": "))
            .collect();
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(format!("missing {k}")));
        let laurent = |k: &str| -> Result<LaurentExpr, HarnessError> { Ok(get(k)?.parse()?) };
        Ok(ExpansionFixture {
            name,
            expression: get("expression")?.parse()?,
            twist: parse_product(get("twist")?)?,
            prefactor: laurent("prefactor")?,
            denominator: laurent("denominator")?,
            verbatim: get("verbatim")?.parse(),
            corrected: laurent("corrected")?,
        })
    }

    /// The full Laurent polynomial for a bracket.
    pub fn expansion(&self, bracket: &LaurentExpr) -> Result<LaurentExpr, HarnessError> {
        Ok((&self.prefactor * bracket).div_by_monomial(&self.denominator)?)
    }

    /// Bracket term matching a full-expansion term.
    fn bracket_term(&self, coefficient: i64, weight: &Monomial) -> Result<LaurentExpr, HarnessError> {
        let term = LaurentExpr::monomial(BigInt::from(coefficient), weight.clone());
        Ok((&term * &self.denominator).div_by_monomial(&self.prefactor)?)
    }
}

pub const EXPANSION_FIXTURES: [&str; 2] = ["expansion_sigma2_A.txt", "expansion_sigma7_B.txt"];

pub fn displayed_expansions() -> Result<Vec<ExpansionFixture>, HarnessError> {
    EXPANSION_FIXTURES.iter().map(|n| ExpansionFixture::parse(n)).collect()
}

/// Twists of A and of B with both readings of B's rotation.
pub fn twist_relations() -> Result<Vec<TwistRow>, HarnessError> {
    twist_rows("twist_relations.txt")
}

/// Bracket terms from contributing dimers against the displayed bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerDimerComparison {
    pub dimers: usize,
    pub matched: usize,
    /// Displayed terms no dimer produced.
    pub missing: Vec<String>,
    /// Dimer terms absent from the display.
    pub extra: Vec<String>,
}

fn per_dimer(f: &ExpansionFixture) -> Result<PerDimerComparison, HarnessError> {
    let m = model("gr38_seed.json")?;
    let out = cubic_partition(&m, &f.expression)?;
    let mut display: Vec<String> = f.corrected.terms().map(|(mo, c)| LaurentExpr::monomial(c.clone(), mo.clone()).to_string()).collect();
    let mut extra = Vec::new();
    let mut matched = 0;
    for (d, c) in &out.contributing {
        let t = f.bracket_term(*c, &m.face_weight(d))?.to_string();
        match display.iter().position(|x| *x == t) {
            Some(i) => {
                display.remove(i);
                matched += 1;
            }
            None => extra.push(t),
        }
    }
    Ok(PerDimerComparison { dimers: out.contributing.len(), matched, missing: display, extra })
}

fn fixture_checks(cfg: &Config, f: &ExpansionFixture) -> Result<Vec<CheckResult>, HarnessError> {
    let samples = cfg.samples(3, 8, &format!("expansions/{}", f.name));
    let corrected = f.expansion(&f.corrected)?;
    let verbatim = f.verbatim.as_ref().map_err(Clone::clone).and_then(|b| (&f.prefactor * b).div_by_monomial(&f.denominator));
    let mut corrected_ok = true;
    let mut verbatim_equal = 0;
    for s in &samples {
        let one = s.plain.at(PlueckerIndex::of(&[1, 2, 3])).one_like();
        let closed = product_value(&f.twist, &s.plain)?;
        let twisted = f.expression.evaluate(&s.twisted)?;
        corrected_ok &= corrected.evaluate(&s.plain, &one)? == closed && closed == twisted;
        if let Ok(v) = &verbatim {
            verbatim_equal += usize::from(v.evaluate(&s.plain, &one)? == closed);
        }
    }
    let closed: Vec<String> = f.twist.iter().map(|e| e.to_string()).collect();
    let mut out = vec![
        CheckResult::check(
            format!("expansions/{}/corrected", f.expression),
            f.name,
            corrected_ok,
            format!("expansion = {} = T*{} at {} points", closed.join(" "), f.expression, samples.len()),
        ),
        CheckResult::check(
            format!("expansions/{}/verbatim", f.expression),
            f.name,
            verbatim_equal == 0,
            format!(
                "printed text {} the twist ({} of {} points equal); misprints are corrected in the fixture",
                if verbatim_equal == 0 { "differs from" } else { "matches" },
                verbatim_equal,
                samples.len()
            ),
        ),
    ];
    let cmp = per_dimer(f)?;
    let exact = cmp.missing.is_empty() && cmp.extra.is_empty();
    out.push(
        CheckResult::new(
            format!("expansions/{}/per-dimer", f.expression),
            format!("{} on gr38_seed.json", f.name),
            if exact { Verdict::Pass } else { Verdict::Skipped },
            format!("{} dimers, {} displayed terms matched, {} missing, {} extra", cmp.dimers, cmp.matched, cmp.missing.len(), cmp.extra.len()),
        )
        .with_witness((!exact).then(|| format!("missing {:?} extra {:?}", cmp.missing, cmp.extra))),
    );
    Ok(out)
}

fn relation_checks(cfg: &Config) -> Result<Vec<CheckResult>, HarnessError> {
    let rows = twist_relations()?;
    let samples = cfg.samples(3, 8, "expansions/relations");
    let holds = |r: &TwistRow| -> Result<bool, HarnessError> {
        for s in &samples {
            if r.lhs.evaluate(&s.twisted)? != product_value::<Fp>(&r.rhs, &s.plain)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut out = Vec::new();
    let mut b_matches = Vec::new();
    for r in &rows {
        let ok = holds(r)?;
        let rhs: Vec<String> = r.rhs.iter().map(|e| e.to_string()).collect();
        let text = format!("T*{} = {}", r.lhs, rhs.join(" "));
        if r.lhs.kind() == crate::algebra::ExpressionKind::B {
            if ok {
                b_matches.push(text);
            }
        } else {
            out.push(CheckResult::check(format!("expansions/relation/{}", r.lhs), text, ok, format!("{} points", samples.len())));
        }
    }
    out.push(CheckResult::check(
        "expansions/relation/B",
        "T*B against sigma^4 rho and sigma^5 rho readings",
        b_matches.len() == 1,
        match b_matches.as_slice() {
            [one] => format!("only {one} holds"),
            more => format!("{} readings hold", more.len()),
        },
    ));
    Ok(out)
}

pub(crate) fn checks(cfg: &Config) -> Vec<CheckResult> {
    let mut out = match relation_checks(cfg) {
        Ok(r) => r,
        Err(e) => vec![failed("expansions/relation", "twist_relations.txt", e)],
    };
    match displayed_expansions() {
        Ok(fs) => {
            for f in &fs {
                out.extend(fixture_checks(cfg, f).unwrap_or_else(|e| vec![failed(format!("expansions/{}", f.name), f.name, e)]));
            }
        }
        Err(e) => out.push(failed("expansions/fixtures", "displayed expansions", e)),
    }
    out
}
