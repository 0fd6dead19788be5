//! Divisor classes on the moduli space of stable curves of genus g, written
//! in the basis λ, δ0, …, δ_{⌊g/2⌋}, together with slopes and test curves.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big, binom, fmt_rational, int, rat, serde_rational, Rational};
use crate::error::{domain, Error, Result};
use crate::linalg::solve_dense;
use crate::tautring::{solve_d22, PushforwardTable, D22_GENUS};

/// Coefficients of λ and δ_j. For classes whose higher boundary coefficients
/// are only bounded, `delta_is_bound[j]` marks δ_j: the true b_j (the negated
/// coefficient) is at least the stored one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DivisorClassJson", into = "DivisorClassJson")]
pub struct DivisorClass {
    genus: u32,
    lambda: Rational,
    delta: Vec<Rational>,
    delta_is_bound: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DivisorClassJson {
    genus: u32,
    #[serde(with = "serde_rational")]
    lambda: Rational,
    #[serde(with = "serde_rational::vec")]
    delta: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    delta_lower_bound: Vec<bool>,
}

impl TryFrom<DivisorClassJson> for DivisorClass {
    type Error = Error;
    fn try_from(j: DivisorClassJson) -> Result<Self> {
        let mut d = DivisorClass::new(j.genus, j.lambda, j.delta)?;
        if !j.delta_lower_bound.is_empty() {
            if j.delta_lower_bound.len() != d.delta.len() {
                return domain("delta_lower_bound must have one flag per boundary class");
            }
            d.delta_is_bound = j.delta_lower_bound;
        }
        Ok(d)
    }
}

impl From<DivisorClass> for DivisorClassJson {
    fn from(d: DivisorClass) -> Self {
        let flags = if d.delta_is_bound.iter().any(|&b| b) { d.delta_is_bound } else { Vec::new() };
        DivisorClassJson { genus: d.genus, lambda: d.lambda, delta: d.delta, delta_lower_bound: flags }
    }
}

/// Number of boundary classes δ0, …, δ_{⌊g/2⌋}.
pub fn boundary_count(g: u32) -> usize {
    (g / 2) as usize + 1
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return domain(format!("divisor classes need genus >= 2, got {g}"));
    }
    Ok(())
}

impl DivisorClass {
    pub fn new(genus: u32, lambda: Rational, delta: Vec<Rational>) -> Result<Self> {
        check_genus(genus)?;
        if delta.len() != boundary_count(genus) {
            return domain(format!(
                "genus {genus} has {} boundary classes, got {} coefficients",
                boundary_count(genus),
                delta.len()
            ));
        }
        let n = delta.len();
        Ok(DivisorClass { genus, lambda, delta, delta_is_bound: vec![false; n] })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(genus: u32, lambda: i64, delta: &[i64]) -> Result<Self> {
        Self::new(genus, int(lambda), delta.iter().map(|&d| int(d)).collect())
    }

    pub fn zero(genus: u32) -> Result<Self> {
        Self::new(genus, Rational::zero(), vec![Rational::zero(); boundary_count(genus)])
    }

    pub fn lambda(genus: u32) -> Result<Self> {
        let mut d = Self::zero(genus)?;
        d.lambda = Rational::one();
        Ok(d)
    }

    pub fn delta(genus: u32, j: usize) -> Result<Self> {
        let mut d = Self::zero(genus)?;
        if j >= d.delta.len() {
            return domain(format!("δ{j} does not exist in genus {genus}"));
        }
        d.delta[j] = Rational::one();
        Ok(d)
    }

    /// δ = Σ δ_j.
    pub fn total_delta(genus: u32) -> Result<Self> {
        Self::new(genus, Rational::zero(), vec![Rational::one(); boundary_count(genus)])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn lambda_coeff(&self) -> &Rational {
        &self.lambda
    }

    pub fn delta_coeffs(&self) -> &[Rational] {
        &self.delta
    }

    pub fn delta_coeff(&self, j: usize) -> Rational {
        self.delta.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_lower_bound(&self, j: usize) -> bool {
        self.delta_is_bound.get(j).copied().unwrap_or(false)
    }

    /// Marks δ_j (for every j in `js`) as only bounded.
    pub fn with_lower_bounds(mut self, js: impl IntoIterator<Item = usize>) -> Self {
        for j in js {
            if j < self.delta_is_bound.len() {
                self.delta_is_bound[j] = true;
            }
        }
        self
    }

    /// b_j = −(coefficient of δ_j).
    pub fn b(&self, j: usize) -> Rational {
        -self.delta_coeff(j)
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.delta.iter().all(Zero::is_zero)
    }

    fn same_genus(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_genus(other)?;
        Ok(DivisorClass {
            genus: self.genus,
            lambda: &self.lambda + &other.lambda,
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a + b).collect(),
            delta_is_bound: self.delta_is_bound.iter().zip(&other.delta_is_bound).map(|(a, b)| *a || *b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        DivisorClass {
            genus: self.genus,
            lambda: &self.lambda * q,
            delta: self.delta.iter().map(|d| d * q).collect(),
            delta_is_bound: self.delta_is_bound.clone(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, q: &Rational, name: String| -> fmt::Result {
            if q.is_zero() {
                return Ok(());
            }
            let sign = if q.is_negative() { "-" } else { "+" };
            match (first, q.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            first = false;
            if q.abs().is_one() {
                write!(f, "{name}")
            } else {
                write!(f, "{}{name}", fmt_rational(&q.abs()))
            }
        };
        term(f, &self.lambda, "λ".into())?;
        for (j, d) in self.delta.iter().enumerate() {
            term(f, d, format!("δ{j}"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The canonical class of the coarse moduli space: 13λ − 2δ0 − 3δ1 − 2δ2 − …
/// for g ≥ 4 and 4λ − δ0 for g = 3.
pub fn canonical_coarse(g: u32) -> Result<DivisorClass> {
    if g < 3 {
        return domain(format!("the coarse canonical class is defined here for g >= 3, got {g}"));
    }
    if g == 3 {
        let mut delta = vec![Rational::zero(); boundary_count(3)];
        delta[0] = int(-1);
        return DivisorClass::new(3, int(4), delta);
    }
    let mut delta = vec![int(-2); boundary_count(g)];
    delta[1] = int(-3);
    DivisorClass::new(g, int(13), delta)
}

/// The canonical class of the moduli stack, 13λ − 2δ.
pub fn canonical_stack(g: u32) -> Result<DivisorClass> {
    DivisorClass::new(g, int(13), vec![int(-2); boundary_count(g)])
}

/// κ1 = 12λ − δ.
pub fn kappa1(g: u32) -> Result<DivisorClass> {
    DivisorClass::new(g, int(12), vec![int(-1); boundary_count(g)])
}

/// c1 of the Hodge-type bundle E_n: λ + C(n,2) κ1.
pub fn lambda_chern_n(g: u32, n: u32) -> Result<DivisorClass> {
    if n == 0 {
        return domain("lambda_chern_n needs n >= 1");
    }
    let c = big(binom(n as i64, 2));
    DivisorClass::lambda(g)?.checked_add(&kappa1(g)?.scale(&c))
}

/// Either a finite rational slope or ∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(q) => Some(q),
            Slope::Infinite => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => f.write_str(&fmt_rational(q)),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// s(D) = a / min_j b_j for D = aλ − Σ b_j δ_j with a ≥ 0 and every b_j > 0,
/// ∞ otherwise; the zero class has slope 0.
pub fn slope(d: &DivisorClass) -> Slope {
    if d.is_zero() {
        return Slope::Finite(Rational::zero());
    }
    let a = d.lambda_coeff();
    let bs: Vec<Rational> = (0..d.delta.len()).map(|j| d.b(j)).collect();
    if a.is_negative() || bs.iter().any(Signed::is_negative) {
        return Slope::Infinite;
    }
    let min = bs.iter().min().expect("at least one boundary class");
    if min.is_zero() {
        return Slope::Infinite;
    }
    Slope::Finite(a / min)
}

/// 6 + 12/(g+1), the slope of the Brill-Noether divisors.
pub fn brill_noether_slope(g: u32) -> Rational {
    int(6) + rat(12, g as i64 + 1)
}

/// The four standard test curves in the boundary of the moduli space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestCurveKind {
    /// A fixed genus-(g−1) curve with a point moving and glued to a fixed
    /// elliptic tail.
    C0,
    /// A fixed genus-(g−1) curve with two points identified, one moving.
    C1,
    /// A pencil of plane cubics attached at a base point.
    R,
    /// Double covers of a pencil: a family of hyperelliptic curves.
    B,
}

impl FromStr for TestCurveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C0" => Ok(TestCurveKind::C0),
            "C1" => Ok(TestCurveKind::C1),
            "R" => Ok(TestCurveKind::R),
            "B" => Ok(TestCurveKind::B),
            _ => domain(format!("unknown test curve {s:?}; expected C0, C1, R or B")),
        }
    }
}

/// Intersection numbers of a test curve with λ and the δ_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveNumbers {
    pub genus: u32,
    pub lambda: Rational,
    pub delta: Vec<Rational>,
}

pub fn test_curve(kind: TestCurveKind, g: u32) -> Result<CurveNumbers> {
    if g < 3 {
        return domain(format!("test curves are defined here for g >= 3, got {g}"));
    }
    let gi = g as i64;
    let mut delta = vec![Rational::zero(); boundary_count(g)];
    let lambda = match kind {
        TestCurveKind::C0 => {
            delta[0] = int(-2 * gi + 2);
            delta[1] = int(1);
            int(0)
        }
        TestCurveKind::C1 => {
            delta[1] = int(-2 * gi + 4);
            int(0)
        }
        TestCurveKind::R => {
            delta[0] = int(12);
            delta[1] = int(-1);
            int(1)
        }
        TestCurveKind::B => {
            delta[0] = int(6 * gi + 18);
            int(gi + 1)
        }
    };
    Ok(CurveNumbers { genus: g, lambda, delta })
}

/// Intersection number of a test curve with a divisor class.
pub fn pair(c: &CurveNumbers, d: &DivisorClass) -> Result<Rational> {
    if c.genus != d.genus {
        return Err(Error::GenusMismatch(c.genus, d.genus));
    }
    Ok(&c.lambda * &d.lambda + c.delta.iter().zip(&d.delta).map(|(x, y)| x * y).sum::<Rational>())
}

/// Finds D = aλ − b0 δ0 − b1 δ1 from its intersection numbers with C^0 and C^1
/// and the relation R·D = 0 that holds for the Koszul-type divisors.
pub fn solve_from_test_curves(g: u32, c0_value: &Rational, c1_value: &Rational) -> Result<DivisorClass> {
    let curves = [TestCurveKind::C0, TestCurveKind::C1, TestCurveKind::R]
        .into_iter()
        .map(|k| test_curve(k, g))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<Rational>> = curves
        .iter()
        .map(|c| vec![c.lambda.clone(), c.delta[0].clone(), c.delta[1].clone()])
        .collect();
    let rhs = vec![c0_value.clone(), c1_value.clone(), Rational::zero()];
    let x = solve_dense(&rows, &rhs)?;
    let mut delta = vec![Rational::zero(); boundary_count(g)];
    delta[0] = x[1].clone();
    delta[1] = x[2].clone();
    DivisorClass::new(g, x[0].clone(), delta)
}

/// The class of the Koszul divisor Z_{g,i} for odd genus g = 2i + 3, obtained
/// from its test-curve intersections and checked against the closed form
/// (1/(i+2)) C(2i,i) (6(i+3)λ − (i+2)δ0 − 6(i+1)δ1). Higher boundary
/// coefficients are only known to satisfy b_j ≥ b0 and are stored as b0
/// lower bounds.
pub fn koszul_odd_class(i: u32) -> Result<DivisorClass> {
    let g = 2 * i + 3;
    let ii = i as i64;
    let base = big(binom(2 * ii + 2, ii)) * int(ii + 1);
    let n = boundary_count(g);
    let mut solved = solve_from_test_curves(g, &base, &(&base * int(6)))?;
    for j in 2..n {
        solved.delta[j] = solved.delta[0].clone();
    }
    let solved = solved.with_lower_bounds(2..n);

    let c = big(binom(2 * ii, ii)) / int(ii + 2);
    let mut delta = vec![Rational::zero(); boundary_count(g)];
    delta[0] = -(&c * int(ii + 2));
    delta[1] = -(&c * int(6 * (ii + 1)));
    for j in 2..n {
        delta[j] = delta[0].clone();
    }
    let closed = DivisorClass::new(g, &c * int(6 * (ii + 3)), delta)?.with_lower_bounds(2..n);
    if solved != closed {
        return Err(Error::Internal(format!(
            "Koszul class for i = {i}: test curves give {solved}, closed form gives {closed}"
        )));
    }
    Ok(solved)
}

/// Slope of the Koszul divisor in even genus g = 2i + 6:
/// 3(4i+7)(6i²+19i+12) / ((i+2)(12i²+31i+18)).
pub fn koszul_even_slope(i: u32) -> Rational {
    let i = i as i64;
    rat(
        3 * (4 * i + 7) * (6 * i * i + 19 * i + 12),
        (i + 2) * (12 * i * i + 31 * i + 18),
    )
}

/// Slope of the Gieseker-Petri divisor for g = rs + s.
pub fn gieseker_petri_slope(r: u32, s: u32) -> Result<Rational> {
    if r < 1 || s < 1 {
        return domain("gieseker_petri_slope needs r, s >= 1");
    }
    let (r, s) = (r as i64, s as i64);
    let g = r * s + s;
    let correction = rat(
        6 * (s + r + 1) * (g - 2) * (g - 1),
        s * (s + 1) * (r + 1) * (r + 2) * (g + 4) * (g + 1),
    );
    Ok(brill_noether_slope(g as u32) + correction)
}

/// The genus-22 divisor class produced by the degeneracy computation. The
/// coefficients of δ2, …, δ11 are recorded as lower bounds equal to b0.
pub fn d22_class(table: &PushforwardTable) -> Result<DivisorClass> {
    let sol = solve_d22(table)?;
    let n = boundary_count(D22_GENUS);
    let mut delta = vec![-big(sol.b0.clone()); n];
    delta[1] = -big(sol.b1.clone());
    Ok(DivisorClass::new(D22_GENUS, big(sol.a), delta)?.with_lower_bounds(2..n))
}

/// Sufficient condition for K = 13λ − 2δ0 − 3δ1 − 2δ2 − … to be big, given an
/// effective D = aλ − Σ b_j δ_j on genus g ≥ 4:
/// a/b0 < 13/2, a/b1 ≤ 13/3 and a/b_j ≤ 13/2 for j ≥ 2.
pub fn general_type_witness(d: &DivisorClass) -> Result<bool> {
    if d.genus < 4 {
        return domain(format!("general_type_witness needs genus >= 4, got {}", d.genus));
    }
    let a = d.lambda_coeff();
    if !a.is_positive() {
        return Ok(false);
    }
    let bound = |j: usize, limit: Rational, strict: bool| {
        let b = d.b(j);
        if !b.is_positive() {
            return false;
        }
        let s = a / b;
        if strict {
            s < limit
        } else {
            s <= limit
        }
    };
    Ok(bound(0, rat(13, 2), true)
        && bound(1, rat(13, 3), false)
        && (2..d.delta.len()).all(|j| bound(j, rat(13, 2), false)))
}

/// True when D has slope below 6 + 12/(g+1), which rules out the general
/// curve lying on a K3 surface. When b0 is the smallest boundary coefficient
/// this is the same as B·D < 0 for the hyperelliptic test curve B.
pub fn k3_obstruction(d: &DivisorClass) -> Result<bool> {
    let by_slope = match slope(d) {
        Slope::Finite(s) => s < brill_noether_slope(d.genus),
        Slope::Infinite => false,
    };
    let b0 = d.b(0);
    let b0_is_min = b0.is_positive() && (1..d.delta.len()).all(|j| d.b(j) >= b0) && !d.lambda.is_negative();
    if b0_is_min && d.genus >= 3 {
        let by_pencil = pair(&test_curve(TestCurveKind::B, d.genus)?, d)?.is_negative();
        if by_pencil != by_slope {
            return Err(Error::Internal(format!(
                "slope test ({by_slope}) and hyperelliptic pencil test ({by_pencil}) disagree for {d}"
            )));
        }
    }
    Ok(by_slope)
}
