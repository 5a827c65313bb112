//! The named cluster expressions X, Y, A, B, C, Z and their dihedral images.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraError, GrassmannPoint, Modulus, PlueckerEvaluation, PlueckerIndex, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExpressionKind {
    Pluecker,
    X,
    Y,
    A,
    B,
    C,
    Z,
}

type Term = (i64, &'static [[u8; 3]]);

const X_TERMS: &[Term] = &[(1, &[[1, 3, 4], [2, 5, 6]]), (-1, &[[1, 5, 6], [2, 3, 4]])];
const Y_TERMS: &[Term] = &[(1, &[[1, 4, 5], [2, 3, 6]]), (-1, &[[1, 2, 3], [4, 5, 6]])];
const A_TERMS: &[Term] = &[
    (1, &[[1, 3, 4], [2, 5, 8], [1, 6, 7]]),
    (-1, &[[1, 3, 4], [1, 2, 5], [6, 7, 8]]),
    (-1, &[[1, 5, 8], [2, 3, 4], [1, 6, 7]]),
];
const B_TERMS: &[Term] = &[
    (1, &[[2, 5, 8], [1, 3, 4], [2, 6, 7]]),
    (-1, &[[2, 3, 4], [1, 2, 8], [5, 6, 7]]),
    (-1, &[[2, 3, 4], [2, 5, 8], [1, 6, 7]]),
];
const C_TERMS: &[Term] = &[
    (1, &[[1, 2, 4], [3, 5, 7], [6, 8, 9]]),
    (1, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]]),
    (-1, &[[1, 2, 4], [3, 5, 6], [7, 8, 9]]),
    (-1, &[[1, 2, 3], [4, 5, 7], [6, 8, 9]]),
];
const Z_TERMS: &[Term] = &[
    (1, &[[1, 4, 5], [2, 7, 8], [3, 6, 9]]),
    (-1, &[[2, 4, 5], [1, 7, 8], [3, 6, 9]]),
    (-1, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]]),
    (-1, &[[1, 2, 9], [3, 4, 5], [6, 7, 8]]),
];
const P_TERMS: &[Term] = &[(1, &[[1, 2, 3]])];

impl ExpressionKind {
    pub const ALL: [ExpressionKind; 7] = [
        ExpressionKind::Pluecker,
        ExpressionKind::X,
        ExpressionKind::Y,
        ExpressionKind::A,
        ExpressionKind::B,
        ExpressionKind::C,
        ExpressionKind::Z,
    ];

    /// Number of columns the expression is written on.
    pub fn arity(self) -> usize {
        match self {
            ExpressionKind::Pluecker => 3,
            ExpressionKind::X | ExpressionKind::Y => 6,
            ExpressionKind::A | ExpressionKind::B => 8,
            ExpressionKind::C | ExpressionKind::Z => 9,
        }
    }

    /// Signed triple products on positions `1..=arity`.
    pub fn base_terms(self) -> &'static [Term] {
        match self {
            ExpressionKind::Pluecker => P_TERMS,
            ExpressionKind::X => X_TERMS,
            ExpressionKind::Y => Y_TERMS,
            ExpressionKind::A => A_TERMS,
            ExpressionKind::B => B_TERMS,
            ExpressionKind::C => C_TERMS,
            ExpressionKind::Z => Z_TERMS,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            ExpressionKind::Pluecker => "P",
            ExpressionKind::X => "X",
            ExpressionKind::Y => "Y",
            ExpressionKind::A => "A",
            ExpressionKind::B => "B",
            ExpressionKind::C => "C",
            ExpressionKind::Z => "Z",
        }
    }

    fn from_letter(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.letter() == s)
    }
}

/// Element `sigma^rotation * rho^reflected` of the dihedral group; the
/// reflection `i -> m + 1 - i` acts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dihedral {
    pub rotation: u8,
    pub reflected: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral { rotation: 0, reflected: false };

    pub fn rotation(r: u8) -> Self {
        Dihedral { rotation: r, reflected: false }
    }

    /// Image of position `i` in `1..=m`.
    pub fn apply(self, i: u8, m: u8) -> u8 {
        let i = if self.reflected { m + 1 - i } else { i };
        (i - 1 + self.rotation % m) % m + 1
    }

    /// All `2m` elements, rotations first.
    pub fn all(m: u8) -> impl Iterator<Item = Dihedral> {
        [false, true]
            .into_iter()
            .flat_map(move |f| (0..m).map(move |r| Dihedral { rotation: r, reflected: f }))
    }

    fn normalized(self, m: u8) -> Self {
        Dihedral { rotation: self.rotation % m, reflected: self.reflected }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rotation, self.reflected) {
            (0, false) => write!(f, "id"),
            (0, true) => write!(f, "rho"),
            (1, r) => write!(f, "sigma{}", if r { "*rho" } else { "" }),
            (k, r) => write!(f, "sigma^{k}{}", if r { "*rho" } else { "" }),
        }
    }
}

impl FromStr for Dihedral {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "id" {
            return Ok(Dihedral::IDENTITY);
        }
        let (rot, refl) = match t.strip_suffix("*rho") {
            Some(r) => (r, true),
            None if t == "rho" => ("", true),
            None => (t, false),
        };
        let rotation = match rot {
            "" => 0,
            "sigma" => 1,
            r => r
                .strip_prefix("sigma^")
                .and_then(|e| e.parse::<u8>().ok())
                .ok_or_else(|| AlgebraError::parse("dihedral element", s))?,
        };
        Ok(Dihedral { rotation, reflected: refl })
    }
}

/// Integer combination of products of Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerPolynomial {
    pub terms: Vec<(i64, Vec<PlueckerIndex>)>,
}

impl PlueckerPolynomial {
    pub fn evaluate<S: Scalar>(&self, ev: &PlueckerEvaluation<S>) -> S {
        let zero = ev.at(self.terms[0].1[0]).zero_like();
        self.terms.iter().fold(zero, |acc, (c, js)| {
            let p = js.iter().fold(acc.from_i64_like(*c), |p, &j| p * ev.at(j));
            acc + p
        })
    }
}

impl fmt::Display for PlueckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, js)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if i > 0 {
                write!(f, " ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            for j in js {
                write!(f, "{j}")?;
            }
        }
        Ok(())
    }
}

/// A named expression placed on a support set and moved by a dihedral element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterExpression {
    kind: ExpressionKind,
    dihedral: Dihedral,
    support: PlueckerIndex,
}

impl ClusterExpression {
    pub fn new(
        kind: ExpressionKind,
        dihedral: Dihedral,
        support: PlueckerIndex,
    ) -> Result<Self, AlgebraError> {
        if support.len() != kind.arity() {
            return Err(AlgebraError::ArityMismatch { expected: kind.arity(), found: support.len() });
        }
        let m = kind.arity() as u8;
        let dihedral =
            if kind == ExpressionKind::Pluecker { Dihedral::IDENTITY } else { dihedral.normalized(m) };
        Ok(ClusterExpression { kind, dihedral, support })
    }

    /// The expression on its standard support `1..=arity`.
    pub fn standard(kind: ExpressionKind, dihedral: Dihedral) -> Self {
        let s: Vec<u8> = (1..=kind.arity() as u8).collect();
        Self::new(kind, dihedral, PlueckerIndex::of(&s)).expect("standard support")
    }

    pub fn pluecker(j: PlueckerIndex) -> Result<Self, AlgebraError> {
        Self::new(ExpressionKind::Pluecker, Dihedral::IDENTITY, j)
    }

    pub fn kind(&self) -> ExpressionKind {
        self.kind
    }

    pub fn dihedral(&self) -> Dihedral {
        self.dihedral
    }

    pub fn support(&self) -> PlueckerIndex {
        self.support
    }

    /// Composite map from positions to labels in the support.
    fn position_map(&self) -> impl Fn(u8) -> u8 {
        let m = self.kind.arity() as u8;
        let s = self.support.to_vec();
        let d = self.dihedral;
        move |i| s[d.apply(i, m) as usize - 1]
    }

    /// The defining polynomial with indices re-sorted increasing.
    pub fn polynomial(&self) -> PlueckerPolynomial {
        let g = self.position_map();
        PlueckerPolynomial {
            terms: self
                .kind
                .base_terms()
                .iter()
                .map(|(c, ts)| (*c, ts.iter().map(|t| PlueckerIndex::of(&t.map(&g))).collect()))
                .collect(),
        }
    }

    /// Value at a table of Plücker coordinates.
    pub fn evaluate<S: Scalar>(&self, ev: &PlueckerEvaluation<S>) -> Result<S, AlgebraError> {
        if let Some(m) = self.support.largest() {
            if m as usize > ev.n() {
                return Err(AlgebraError::ArityMismatch { expected: m as usize, found: ev.n() });
            }
        }
        Ok(self.polynomial().evaluate(ev))
    }

    /// Value of the twisted expression, i.e. the expression at the twisted point.
    pub fn evaluate_twisted<S: Scalar>(
        &self,
        twisted: &PlueckerEvaluation<S>,
    ) -> Result<S, AlgebraError> {
        self.evaluate(twisted)
    }

    /// Same expression under a further dihedral element, composed on the left.
    pub fn act(&self, g: Dihedral) -> Self {
        let m = self.kind.arity() as u8;
        // g(h(i)) with h = sigma^r rho^f and g = sigma^s rho^e
        let h = self.dihedral;
        let composed = if g.reflected {
            // rho sigma^r = sigma^{-r} rho
            Dihedral {
                rotation: (g.rotation + m - h.rotation % m) % m,
                reflected: !h.reflected,
            }
        } else {
            Dihedral { rotation: (g.rotation + h.rotation) % m, reflected: h.reflected }
        };
        Self::new(self.kind, composed, self.support).expect("same support")
    }

    /// Values of all dihedral images at two fixed points, for stabilizer tests.
    fn fingerprints(kind: ExpressionKind, support: PlueckerIndex) -> Vec<(Dihedral, [u64; 2])> {
        let n = support.largest().unwrap_or(3) as usize;
        let p = Modulus::default();
        let evs: Vec<_> = (0..2u64)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + s);
                GrassmannPoint::random_modular(3, n.max(4), p, &mut rng).evaluation()
            })
            .collect();
        Dihedral::all(kind.arity() as u8)
            .map(|d| {
                let e = ClusterExpression::new(kind, d, support).expect("support");
                let fp = [0, 1].map(|i| {
                    let v = e.evaluate(&evs[i]).expect("fits").value();
                    // identify up to sign
                    v.min(if v == 0 { 0 } else { p.get() - v })
                });
                (d, fp)
            })
            .collect()
    }

    /// Least dihedral representative with the same value up to sign.
    pub fn canonical(&self) -> Self {
        if self.kind == ExpressionKind::Pluecker {
            return self.clone();
        }
        let fps = Self::fingerprints(self.kind, self.support);
        let mine = fps.iter().find(|(d, _)| *d == self.dihedral).expect("present").1;
        let d = fps.iter().filter(|(_, f)| *f == mine).map(|(d, _)| *d).min().expect("self");
        Self::new(self.kind, d, self.support).expect("support")
    }

    /// Distinct dihedral images of the expression on a fixed support.
    pub fn orbit(kind: ExpressionKind, support: PlueckerIndex) -> Vec<ClusterExpression> {
        if kind == ExpressionKind::Pluecker {
            return vec![Self::new(kind, Dihedral::IDENTITY, support).expect("support")];
        }
        let fps = Self::fingerprints(kind, support);
        let mut seen: Vec<[u64; 2]> = Vec::new();
        let mut out = Vec::new();
        for (d, f) in fps {
            if !seen.contains(&f) {
                seen.push(f);
                out.push(Self::new(kind, d, support).expect("support"));
            }
        }
        out
    }
}

impl fmt::Display for ClusterExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == ExpressionKind::Pluecker {
            return write!(f, "{}", self.support);
        }
        write!(f, "{}", self.kind.letter())?;
        if self.dihedral != Dihedral::IDENTITY {
            write!(f, "@{}", self.dihedral)?;
        }
        let s = self.support.to_vec();
        let contiguous = s.windows(2).all(|w| w[1] == w[0] + 1);
        if contiguous {
            write!(f, "@S={}..{}", s[0], s[s.len() - 1])
        } else {
            let body: Vec<String> = s.iter().map(u8::to_string).collect();
            write!(f, "@S={}", body.join(","))
        }
    }
}

fn parse_support(s: &str, full: &str) -> Result<PlueckerIndex, AlgebraError> {
    let err = || AlgebraError::parse("support", full);
    let v: Vec<u8> = if let Some((a, b)) = s.split_once("..") {
        let a: u8 = a.trim().parse().map_err(|_| err())?;
        let b: u8 = b.trim().parse().map_err(|_| err())?;
        if a == 0 || b < a {
            return Err(err());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(|p| p.trim().parse::<u8>().map_err(|_| err())).collect::<Result<_, _>>()?
    };
    PlueckerIndex::new(&v)
}

impl FromStr for ClusterExpression {
    type Err = AlgebraError;

    /// Accepts `(134)`, `X@S=1,2,3,4,5,6`, `A@sigma^2@S=1..8`,
    /// `B@sigma^3*rho` (standard support) and similar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.starts_with('(') {
            return ClusterExpression::pluecker(t.parse()?);
        }
        let mut parts = t.split('@');
        let kind = parts
            .next()
            .and_then(|k| ExpressionKind::from_letter(k.trim()))
            .filter(|k| *k != ExpressionKind::Pluecker)
            .ok_or_else(|| AlgebraError::parse("expression kind", s))?;
        let mut dihedral = Dihedral::IDENTITY;
        let mut support = None;
        for p in parts {
            let p = p.trim();
            if let Some(rest) = p.strip_prefix("S=") {
                if support.is_some() {
                    return Err(AlgebraError::parse("expression", s));
                }
                support = Some(parse_support(rest, s)?);
            } else if support.is_none() && dihedral == Dihedral::IDENTITY {
                dihedral = p.parse()?;
            } else {
                return Err(AlgebraError::parse("expression", s));
            }
        }
        match support {
            Some(sup) => ClusterExpression::new(kind, dihedral, sup),
            None => Ok(ClusterExpression::standard(kind, dihedral)),
        }
    }
}

/// Rearranged form of the C identity:
/// `(124)(357)(689) = (124)(356)(789) + (123)((457)(689) - (456)(789)) + C`.
pub fn c_identity_holds<S: Scalar>(ev: &PlueckerEvaluation<S>) -> bool {
    let c = ClusterExpression::standard(ExpressionKind::C, Dihedral::IDENTITY);
    let cv = c.evaluate(ev).expect("n = 9");
    let lhs = ev.product_of("(124)(357)(689)");
    let rhs = ev.product_of("(124)(356)(789)")
        + ev.at(PlueckerIndex::of(&[1, 2, 3]))
            * (ev.product_of("(457)(689)") - ev.product_of("(456)(789)"))
        + cv;
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Modulus};

    fn points(n: usize, count: u64) -> Vec<PlueckerEvaluation<Fp>> {
        (0..count)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(100 + s);
                GrassmannPoint::random_modular(3, n, Modulus::default(), &mut rng).evaluation()
            })
            .collect()
    }

    #[test]
    fn three_forms_of_x_and_y_agree() {
        let x = ClusterExpression::standard(ExpressionKind::X, Dihedral::IDENTITY);
        let y = ClusterExpression::standard(ExpressionKind::Y, Dihedral::IDENTITY);
        for ev in points(6, 20) {
            let xv = x.evaluate(&ev).unwrap();
            assert_eq!(xv, ev.product_of("(124)(356)") - ev.product_of("(123)(456)"));
            assert_eq!(xv, ev.product_of("(125)(346)") - ev.product_of("(126)(345)"));
            let yv = y.evaluate(&ev).unwrap();
            assert_eq!(yv, ev.product_of("(145)(236)") - ev.product_of("(123)(456)"));
        }
    }

    #[test]
    fn stabilizers_match_stated_relations() {
        let ev = &points(9, 1)[0];
        let e = |s: &str| s.parse::<ClusterExpression>().unwrap().evaluate(ev).unwrap();
        assert_eq!(e("A@rho"), e("A@sigma^7"));
        assert_eq!(e("Z@sigma^3"), e("Z"));
        assert_eq!(e("C@rho"), e("C"));
    }

    #[test]
    fn orbit_sizes() {
        let size = |k: ExpressionKind| {
            let s: Vec<u8> = (1..=k.arity() as u8).collect();
            ClusterExpression::orbit(k, PlueckerIndex::of(&s)).len()
        };
        assert_eq!(size(ExpressionKind::A), 8);
        assert_eq!(size(ExpressionKind::B), 16);
        assert_eq!(size(ExpressionKind::C), 9);
        assert_eq!(size(ExpressionKind::Z), 3);
    }

    #[test]
    fn string_roundtrip() {
        for s in ["A@sigma^2@S=1..8", "B@sigma^3*rho@S=1..8", "X@S=1,2,3,5,6,7", "(134)", "Z@rho@S=1..9"]
        {
            let e: ClusterExpression = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!("A@sigma^2".parse::<ClusterExpression>().unwrap().to_string(), "A@sigma^2@S=1..8");
        assert!("A@S=1..7".parse::<ClusterExpression>().is_err());
        assert!("Q@S=1..8".parse::<ClusterExpression>().is_err());
        assert!("A@sigma^x".parse::<ClusterExpression>().is_err());
    }

    #[test]
    fn act_composes_left() {
        let ev = &points(8, 1)[0];
        let b = ClusterExpression::standard(ExpressionKind::B, Dihedral::IDENTITY);
        for g in Dihedral::all(8) {
            for h in Dihedral::all(8) {
                let gh = b.act(h).act(g);
                let direct = {
                    let s = b.support().to_vec();
                    let hm = |i: u8| g.apply(h.apply(i, 8), 8);
                    let _ = s;
                    PlueckerPolynomial {
                        terms: ExpressionKind::B
                            .base_terms()
                            .iter()
                            .map(|(c, ts)| (*c, ts.iter().map(|t| PlueckerIndex::of(&t.map(hm))).collect()))
                            .collect(),
                    }
                };
                assert_eq!(gh.evaluate(ev).unwrap(), direct.evaluate(ev));
            }
        }
    }

    #[test]
    fn c_identity_and_negative_control() {
        for ev in points(9, 20) {
            assert!(c_identity_holds(&ev));
        }
        let ev = &points(9, 1)[0];
        let flipped = PlueckerPolynomial {
            terms: vec![
                (1, vec!["124".parse().unwrap(), "357".parse().unwrap(), "689".parse().unwrap()]),
                (1, vec!["123".parse().unwrap(), "456".parse().unwrap(), "789".parse().unwrap()]),
                (-1, vec!["124".parse().unwrap(), "356".parse().unwrap(), "789".parse().unwrap()]),
                (1, vec!["123".parse().unwrap(), "457".parse().unwrap(), "689".parse().unwrap()]),
            ],
        };
        let c = ClusterExpression::standard(ExpressionKind::C, Dihedral::IDENTITY);
        assert_ne!(flipped.evaluate(ev), c.evaluate(ev).unwrap());
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            ClusterExpression::new(ExpressionKind::A, Dihedral::IDENTITY, PlueckerIndex::of(&[1, 2, 3])),
            Err(AlgebraError::ArityMismatch { expected: 8, found: 3 })
        ));
        let ev = &points(7, 1)[0];
        let a = ClusterExpression::standard(ExpressionKind::A, Dihedral::IDENTITY);
        assert!(a.evaluate(ev).is_err());
    }
}
