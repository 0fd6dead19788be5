//! The graded ring Q[η, γ, θ, c1, c2, c3] / (η², ηγ, γ² + 2ηθ).
//!
//! η and γ live on the curve factor C, θ is the theta divisor pulled back from
//! the Picard variety, and c1, c2, c3 are Chern classes of the rank-3 bundle
//! on the Brill-Noether locus W. Normal form keeps η and γ to exponent at most
//! one and never both at once.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A normal-form monomial η^eta γ^gamma θ^theta c1^c[0] c2^c[1] c3^c[2].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub eta: u8,
    pub gamma: u8,
    pub theta: u32,
    pub c: [u32; 3],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { eta: 0, gamma: 0, theta: 0, c: [0; 3] };

    pub fn degree(&self) -> u32 {
        self.eta as u32 + self.gamma as u32 + self.theta + self.c[0] + 2 * self.c[1] + 3 * self.c[2]
    }

    /// Weighted degree of the Chern part alone.
    pub fn chern_degree(&self) -> u32 {
        self.c[0] + 2 * self.c[1] + 3 * self.c[2]
    }
}

/// Exponent vector before reduction; η and γ may be arbitrary here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RawMonomial {
    pub eta: u32,
    pub gamma: u32,
    pub theta: u32,
    pub c: [u32; 3],
}

impl RawMonomial {
    /// Applies γ² = −2ηθ, η² = 0, ηγ = 0. Returns the normal-form monomial and
    /// the scalar picked up, or `None` when the monomial vanishes.
    pub fn reduce(self) -> Option<(Monomial, i64)> {
        let m = self.gamma / 2;
        let r = self.gamma % 2;
        let eta = self.eta + m;
        if eta >= 2 || (eta == 1 && r == 1) {
            return None;
        }
        let factor = if m == 0 { 1 } else { -2 };
        Some((
            Monomial { eta: eta as u8, gamma: r as u8, theta: self.theta + m, c: self.c },
            factor,
        ))
    }
}

impl From<Monomial> for RawMonomial {
    fn from(m: Monomial) -> Self {
        RawMonomial { eta: m.eta as u32, gamma: m.gamma as u32, theta: m.theta, c: m.c }
    }
}

/// An element of the ring, stored as a sparse map in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::monomial(Monomial::ONE, q)
    }

    pub fn monomial(m: Monomial, q: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, q);
        out
    }

    pub fn eta() -> Self {
        Self::monomial(Monomial { eta: 1, ..Monomial::ONE }, Rational::one())
    }

    pub fn gamma() -> Self {
        Self::monomial(Monomial { gamma: 1, ..Monomial::ONE }, Rational::one())
    }

    pub fn theta() -> Self {
        Self::monomial(Monomial { theta: 1, ..Monomial::ONE }, Rational::one())
    }

    /// The Chern class c_i, `i` in 1..=3.
    pub fn c(i: usize) -> Self {
        assert!((1..=3).contains(&i), "c{i} is not a generator");
        let mut c = [0; 3];
        c[i - 1] = 1;
        Self::monomial(Monomial { c, ..Monomial::ONE }, Rational::one())
    }

    /// Builds an element from unreduced terms.
    pub fn normal_form(terms: impl IntoIterator<Item = (RawMonomial, Rational)>) -> Self {
        let mut out = Self::zero();
        for (raw, q) in terms {
            if let Some((m, f)) = raw.reduce() {
                out.add_term(m, q * int(f));
            }
        }
        out
    }

    /// Reduces the stored terms again. Identity on anything built through the
    /// public constructors.
    pub fn renormalize(&self) -> Self {
        Self::normal_form(self.terms.iter().map(|(m, q)| (RawMonomial::from(*m), q.clone())))
    }

    fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
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

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * q);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The homogeneous component of degree `k`.
    pub fn degree_part(&self, k: u32) -> Self {
        Self {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, q)| (*m, q.clone())).collect(),
        }
    }

    /// `Some(k)` when every term has degree `k`; `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Replaces c1, c2, c3 by the given elements.
    pub fn substitute_chern(&self, c: [&RingElement; 3]) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            let base = Monomial { c: [0; 3], ..*m };
            let mut t = Self::monomial(base, q.clone());
            for (i, ci) in c.iter().enumerate() {
                t = &t * &ci.pow(m.c[i]);
            }
            out += &t;
        }
        out
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for (m, q) in &rhs.terms {
            self.add_term(*m, q.clone());
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                let raw = RawMonomial {
                    eta: (a.eta + b.eta) as u32,
                    gamma: (a.gamma + b.gamma) as u32,
                    theta: a.theta + b.theta,
                    c: [a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]],
                };
                if let Some((m, f)) = raw.reduce() {
                    out.add_term(m, p * q * int(f));
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RingElement {
            type Output = RingElement;
            fn $f(self, rhs: RingElement) -> RingElement { (&self).$f(&rhs) }
        }
        impl $tr<&RingElement> for RingElement {
            type Output = RingElement;
            fn $f(self, rhs: &RingElement) -> RingElement { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl From<Rational> for RingElement {
    fn from(q: Rational) -> Self {
        Self::constant(q)
    }
}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        Self::constant(int(n))
    }
}

fn fmt_monomial(m: &Monomial) -> Vec<String> {
    let mut parts = Vec::new();
    let mut push = |name: &str, e: u32| match e {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{name}^{e}")),
    };
    push("eta", m.eta as u32);
    push("gamma", m.gamma as u32);
    push("theta", m.theta);
    push("c1", m.c[0]);
    push("c2", m.c[1]);
    push("c3", m.c[2]);
    parts
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (i, (m, q)) in terms.into_iter().enumerate() {
            let neg = q.is_negative();
            let abs = q.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars = fmt_monomial(m);
            if vars.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Parses expressions such as `17/2*theta^2 - 3*(eta + gamma)*c1`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected {:?} in ring expression", p.tokens[p.pos])));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Op(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {ch:?} in ring expression")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc * rhs;
            } else {
                let q = match (rhs.homogeneous_degree(), rhs.terms.get(&Monomial::ONE)) {
                    (Some(0), Some(q)) => q.clone(),
                    _ => return Err(Error::Parse("division is only allowed by a nonzero constant".into())),
                };
                acc = acc.scale(&(Rational::one() / q));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElement> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingElement> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(n)) => Ok(RingElement::constant(parse_rational(&n)?)),
            Some(Token::Ident(name)) => match name.as_str() {
                "eta" | "η" => Ok(RingElement::eta()),
                "gamma" | "γ" => Ok(RingElement::gamma()),
                "theta" | "θ" => Ok(RingElement::theta()),
                "c1" => Ok(RingElement::c(1)),
                "c2" => Ok(RingElement::c(2)),
                "c3" => Ok(RingElement::c(3)),
                _ => Err(Error::Parse(format!("unknown generator {name:?}"))),
            },
            Some(Token::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected {other:?} in ring expression"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn e(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn relations() {
        let (eta, gamma, theta) = (RingElement::eta(), RingElement::gamma(), RingElement::theta());
        assert!((&eta * &eta).is_zero());
        assert!((&eta * &gamma).is_zero());
        assert_eq!(&gamma * &gamma, (&eta * &theta).scale(&int(-2)));
        assert!(gamma.pow(3).is_zero());
    }

    #[test]
    fn raw_reduction() {
        let raw = RawMonomial { gamma: 2, theta: 1, ..Default::default() };
        let (m, f) = raw.reduce().unwrap();
        assert_eq!((m.eta, m.gamma, m.theta, f), (1, 0, 2, -2));
        assert!(RawMonomial { eta: 1, gamma: 2, ..Default::default() }.reduce().is_none());
        assert!(RawMonomial { gamma: 4, ..Default::default() }.reduce().is_none());
    }

    #[test]
    fn parse_and_display() {
        let x = e("17/2*theta^2 - 3*(eta + gamma)*c1 + 2");
        assert_eq!(x.coeff(&Monomial { theta: 2, ..Monomial::ONE }), rat(17, 2));
        assert_eq!(x.coeff(&Monomial { eta: 1, c: [1, 0, 0], ..Monomial::ONE }), int(-3));
        assert_eq!(e(&x.to_string()), x);
        assert_eq!(e("(gamma + eta)^2"), e("-2*eta*theta"));
        assert_eq!(e("theta/4"), e("1/4*theta"));
        assert!("theta/eta".parse::<RingElement>().is_err());
        assert!("zeta".parse::<RingElement>().is_err());
        assert_eq!(RingElement::zero().to_string(), "0");
    }

    #[test]
    fn degrees() {
        assert_eq!(e("eta*c3").homogeneous_degree(), Some(4));
        assert_eq!(e("theta + c2").homogeneous_degree(), None);
        assert_eq!(e("theta + c2").degree_part(2), e("c2"));
        assert_eq!(RingElement::zero().homogeneous_degree(), None);
    }

    #[test]
    fn chern_substitution() {
        let x = e("c1^2 + eta*c2");
        let s = x.substitute_chern([&e("theta + gamma"), &e("theta^2"), &e("0")]);
        assert_eq!(s, e("theta^2 + 2*gamma*theta - 2*eta*theta + eta*theta^2"));
    }
}
