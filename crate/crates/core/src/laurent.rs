//! Sparse Laurent polynomials in Plücker indeterminates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{PlueckerEvaluation, PlueckerIndex, PlueckerPolynomial, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("divisor is not a unit monomial")]
    NotAMonomial,
    #[error("{0} vanishes at the point but appears with a negative exponent")]
    PoleAtPoint(PlueckerIndex),
    #[error("no value for {0}")]
    UnboundSymbol(PlueckerIndex),
    #[error("division does not leave a Laurent polynomial")]
    NotDivisible,
    #[error("cannot parse Laurent expression at byte {at}: {input:?}")]
    Parse { at: usize, input: String },
}

/// A product of indeterminates with nonzero integer exponents, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(PlueckerIndex, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(j: PlueckerIndex) -> Self {
        Monomial(vec![(j, 1)])
    }

    /// Builds from arbitrary `(index, exponent)` pairs, merging repeats.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (PlueckerIndex, i32)>) -> Self {
        let mut m: BTreeMap<PlueckerIndex, i32> = BTreeMap::new();
        for (j, e) in pairs {
            *m.entry(j).or_default() += e;
        }
        Monomial(m.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn exponents(&self) -> &[(PlueckerIndex, i32)] {
        &self.0
    }

    pub fn exponent(&self, j: PlueckerIndex) -> i32 {
        self.0.iter().find(|(i, _)| *i == j).map_or(0, |(_, e)| *e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree, counting negative exponents negatively.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| i64::from(*e)).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::from_exponents(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(j, e)| (*j, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|(j, e)| (*j, e * k)))
    }

    pub fn evaluate<S: Scalar>(&self, pt: &PlueckerEvaluation<S>, one: &S) -> Result<S, LaurentError> {
        self.0.iter().try_fold(one.clone(), |acc, (j, e)| {
            let v = pt.get(*j).ok_or(LaurentError::UnboundSymbol(*j))?;
            let p = v.pow_i64(i64::from(*e)).ok_or(LaurentError::PoleAtPoint(*j))?;
            Ok(acc * p)
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, e) in &self.0 {
            write!(f, "{j}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite sum of integer multiples of distinct monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentExpr {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentExpr {
    pub fn zero() -> Self {
        LaurentExpr::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), Monomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), Monomial::one())
    }

    pub fn var(j: PlueckerIndex) -> Self {
        Self::monomial(BigInt::one(), Monomial::var(j))
    }

    pub fn monomial(c: BigInt, m: Monomial) -> Self {
        let mut e = LaurentExpr::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_polynomial(p: &PlueckerPolynomial) -> Self {
        p.terms.iter().fold(LaurentExpr::zero(), |mut acc, (c, js)| {
            acc.add_term(Monomial::from_exponents(js.iter().map(|&j| (j, 1))), BigInt::from(*c));
            acc
        })
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The single term, when there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    /// Divides by a single term with coefficient `+1` or `-1`.
    pub fn div_by_monomial(&self, d: &LaurentExpr) -> Result<LaurentExpr, LaurentError> {
        let (m, c) = d.as_monomial().ok_or(LaurentError::NotAMonomial)?;
        if c.abs() != BigInt::one() {
            return Err(LaurentError::NotAMonomial);
        }
        let inv = m.inverse();
        Ok(LaurentExpr {
            terms: self.terms.iter().map(|(t, k)| (t.mul(&inv), k * c)).collect(),
        })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentExpr {
        LaurentExpr { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentExpr {
        let mut out = LaurentExpr::zero();
        for (t, k) in &self.terms {
            out.add_term(t.clone(), k * c);
        }
        out
    }

    /// Substitutes values with exact field arithmetic.
    pub fn evaluate<S: Scalar>(&self, pt: &PlueckerEvaluation<S>, one: &S) -> Result<S, LaurentError> {
        self.terms.iter().try_fold(one.zero_like(), |acc, (m, c)| {
            Ok(acc + one.from_bigint_like(c) * m.evaluate(pt, one)?)
        })
    }

    /// Per-variable minimum exponent over all terms.
    fn floor_monomial(&self) -> Monomial {
        let mut low: BTreeMap<PlueckerIndex, i32> = BTreeMap::new();
        let vars: std::collections::BTreeSet<PlueckerIndex> =
            self.terms.keys().flat_map(|m| m.exponents().iter().map(|(j, _)| *j)).collect();
        for j in vars {
            let e = self.terms.keys().map(|m| m.exponent(j)).min().unwrap_or(0);
            low.insert(j, e);
        }
        Monomial::from_exponents(low)
    }

    /// Leading term in lexicographic order with smaller indices weighing more.
    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0))
    }

    /// Exact quotient by a Laurent polynomial, failing when the quotient is not
    /// itself a Laurent polynomial.
    pub fn div_exact(&self, d: &LaurentExpr) -> Result<LaurentExpr, LaurentError> {
        if d.is_zero() {
            return Err(LaurentError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentExpr::zero());
        }
        let (mn, md) = (self.floor_monomial(), d.floor_monomial());
        let mut rem = self.mul_monomial(&mn.inverse());
        let den = d.mul_monomial(&md.inverse());
        let (lm, lc) = den.leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let mut quot = LaurentExpr::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = rm.mul(&lm.inverse());
            if t.exponents().iter().any(|(_, e)| *e < 0) || !(&rc % &lc).is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let step = LaurentExpr::monomial(&rc / &lc, t);
            rem = &rem - &(&step * &den);
            quot = &quot + &step;
        }
        Ok(quot.mul_monomial(&mn.mul(&md.inverse())))
    }

    /// Largest denominators, as a monomial dividing every term into a polynomial.
    pub fn common_denominator(&self) -> Monomial {
        let mut worst: BTreeMap<PlueckerIndex, i32> = BTreeMap::new();
        for m in self.terms.keys() {
            for &(j, e) in m.exponents() {
                if e < 0 {
                    let w = worst.entry(j).or_default();
                    *w = (*w).max(-e);
                }
            }
        }
        Monomial::from_exponents(worst)
    }
}

/// Lexicographic monomial order: the first index where exponents differ decides.
fn lex_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let (mut x, mut y) = (a.exponents().iter().peekable(), b.exponents().iter().peekable());
    loop {
        let ord = match (x.peek(), y.peek()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (Some((_, e)), None) => e.cmp(&0),
            (None, Some((_, e))) => 0.cmp(e),
            (Some((i, e)), Some((j, f))) => match i.cmp(j) {
                std::cmp::Ordering::Less => e.cmp(&0),
                std::cmp::Ordering::Greater => 0.cmp(f),
                std::cmp::Ordering::Equal => e.cmp(f),
            },
        };
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
        match (x.peek(), y.peek()) {
            (Some((i, _)), Some((j, _))) if i < j => {
                x.next();
            }
            (Some((i, _)), Some((j, _))) if i > j => {
                y.next();
            }
            _ => {
                x.next();
                y.next();
            }
        }
    }
}

impl Add for &LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, o: &LaurentExpr) -> LaurentExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, o: LaurentExpr) -> LaurentExpr {
        &self + &o
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        LaurentExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        -&self
    }
}

impl Sub for &LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, o: &LaurentExpr) -> LaurentExpr {
        self + &(-o)
    }
}

impl Sub for LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, o: LaurentExpr) -> LaurentExpr {
        &self - &o
    }
}

impl Mul for &LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, o: &LaurentExpr) -> LaurentExpr {
        let mut out = LaurentExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, o: LaurentExpr) -> LaurentExpr {
        &self * &o
    }
}

impl std::iter::Sum for LaurentExpr {
    fn sum<I: Iterator<Item = LaurentExpr>>(iter: I) -> Self {
        iter.fold(LaurentExpr::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for LaurentExpr {
    /// Signed sum such as `2·(123)^2(456)^-1 - (124)`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}·{m}")?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self) -> LaurentError {
        LaurentError::Parse { at: self.pos, input: self.s.chars().take(80).collect() }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r.bytes().take_while(u8::is_ascii_digit).count();
        (len > 0).then(|| {
            self.pos += len;
            &r[..len]
        })
    }

    fn signed_int(&mut self) -> Result<i32, LaurentError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let d = self.digits().ok_or_else(|| self.err())?;
        let v: i32 = d.parse().map_err(|_| self.err())?;
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Option<(PlueckerIndex, i32)>, LaurentError> {
        if !self.eat('(') {
            return Ok(None);
        }
        let start = self.pos;
        let close = self.rest().find(')').ok_or_else(|| self.err())?;
        let inner = &self.s[start..start + close];
        let j: PlueckerIndex = format!("({inner})").parse().map_err(|_| self.err())?;
        self.pos = start + close + 1;
        let e = if self.eat('^') { self.signed_int()? } else { 1 };
        Ok(Some((j, e)))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), LaurentError> {
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().map_err(|_| self.err())?;
                if !(self.eat('·') || self.eat('*')) {
                    self.skip_ws();
                }
                Some(c)
            }
            None => None,
        };
        let mut pairs = Vec::new();
        while let Some(p) = self.factor()? {
            pairs.push(p);
            let _ = self.eat('*') || self.eat('·');
        }
        if coeff.is_none() && pairs.is_empty() {
            return Err(self.err());
        }
        Ok((Monomial::from_exponents(pairs), coeff.unwrap_or_else(BigInt::one)))
    }
}

impl FromStr for LaurentExpr {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { s, pos: 0 };
        let mut out = LaurentExpr::zero();
        let mut first = true;
        loop {
            cur.skip_ws();
            if cur.rest().is_empty() {
                if first {
                    return Err(cur.err());
                }
                break;
            }
            let neg = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                return Err(cur.err());
            };
            let (m, c) = cur.term()?;
            out.add_term(m, if neg { -c } else { c });
            first = false;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, GrassmannPoint, Modulus};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ev(n: usize, seed: u64) -> PlueckerEvaluation<Fp> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GrassmannPoint::random_modular(3, n, Modulus::default(), &mut rng).evaluation()
    }

    fn one() -> Fp {
        Modulus::default().element(1)
    }

    #[test]
    fn inverse_monomial_cancels() {
        let x = LaurentExpr::var("(123)".parse().unwrap());
        let xi: LaurentExpr = "(123)^-1".parse().unwrap();
        assert_eq!(&x * &xi, LaurentExpr::one());
    }

    #[test]
    fn weight_display_matches_expected_form() {
        let w: LaurentExpr = "(456)*(167)*(457)*(467)^-1".parse().unwrap();
        assert_eq!(w.to_string(), "(167)(456)(457)(467)^-1");
        let d = LaurentExpr::var("(467)".parse().unwrap());
        let num: LaurentExpr = "(456)(167)(457)".parse().unwrap();
        assert_eq!(num.div_by_monomial(&d).unwrap(), w);
    }

    #[test]
    fn div_requires_unit_monomial() {
        let a: LaurentExpr = "(123) + (124)".parse().unwrap();
        assert_eq!(a.div_by_monomial(&a), Err(LaurentError::NotAMonomial));
        let two: LaurentExpr = "2·(123)".parse().unwrap();
        assert_eq!(a.div_by_monomial(&two), Err(LaurentError::NotAMonomial));
        let neg: LaurentExpr = "-(123)".parse().unwrap();
        assert_eq!(a.div_by_monomial(&neg).unwrap().to_string(), "-1 - (123)^-1(124)");
    }

    #[test]
    fn exact_division_rejects_remainders() {
        let a: LaurentExpr = "(123) + (124)".parse().unwrap();
        let b: LaurentExpr = "(123) - (124)".parse().unwrap();
        assert_eq!(a.div_exact(&b), Err(LaurentError::NotDivisible));
        assert_eq!(a.div_exact(&LaurentExpr::zero()), Err(LaurentError::NotDivisible));
        let sq: LaurentExpr = "(123)^2 - (124)^2".parse().unwrap();
        assert_eq!(sq.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_errors() {
        let e: LaurentExpr = "(123)^-1".parse().unwrap();
        let empty = PlueckerEvaluation::<Fp>::new(3, 6);
        assert_eq!(
            e.evaluate(&empty, &one()),
            Err(LaurentError::UnboundSymbol("(123)".parse().unwrap()))
        );
        let mut zero = PlueckerEvaluation::new(3, 6);
        zero.insert("(123)".parse().unwrap(), one().zero_like());
        assert_eq!(e.evaluate(&zero, &one()), Err(LaurentError::PoleAtPoint("(123)".parse().unwrap())));
        assert_eq!(LaurentExpr::one().evaluate(&empty, &one()), Ok(one()));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "+", "(12", "(123)^", "2··(123)", "(123) (124) +", "(1a3)", "x"] {
            assert!(s.parse::<LaurentExpr>().is_err(), "{s:?}");
        }
    }

    fn arb_expr() -> impl Strategy<Value = LaurentExpr> {
        let idx = proptest::sample::select(PlueckerIndex::all(3, 6));
        let mono = proptest::collection::vec((idx, -3i32..=3), 0..4);
        proptest::collection::vec((mono, -5i64..=5), 0..5).prop_map(|ts| {
            let mut e = LaurentExpr::zero();
            for (m, c) in ts {
                e.add_term(Monomial::from_exponents(m), BigInt::from(c));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn exact_division_inverts_multiplication(a in arb_expr(), b in arb_expr()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn text_roundtrip(e in arb_expr()) {
            let s = e.to_string();
            prop_assert_eq!(s.parse::<LaurentExpr>().unwrap(), e);
        }

        #[test]
        fn evaluation_is_ring_homomorphism(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
            let pt = ev(6, 9);
            let o = one();
            let v = |x: &LaurentExpr| x.evaluate(&pt, &o).unwrap();
            prop_assert_eq!(v(&(&a + &b)), v(&a) + v(&b));
            prop_assert_eq!(v(&(&a * &b)), v(&a) * v(&b));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
