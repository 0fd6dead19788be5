//! Chern data of bundles on the degeneracy surfaces X and Y inside C × W.
//!
//! On those surfaces the kernel line bundle (U on X, V on Y) has a first Chern
//! class ℓ that is not a ring element. Classes are therefore polynomials in ℓ
//! of degree at most two with ring coefficients; integrating against the
//! surface replaces ℓ by its pairing expression and ℓ² by its stored square.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::ring::RingElement;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};

/// `parts[k]` is the coefficient of ℓ^k.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceClass {
    pub parts: [RingElement; 3],
}

impl SurfaceClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The kernel-line class ℓ itself.
    pub fn ell() -> Self {
        let mut s = Self::zero();
        s.parts[1] = RingElement::one();
        s
    }

    pub fn is_ambient(&self) -> bool {
        self.parts[1].is_zero() && self.parts[2].is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        SurfaceClass { parts: [self.parts[0].scale(q), self.parts[1].scale(q), self.parts[2].scale(q)] }
    }

    /// Product; fails if ℓ would appear cubically, since only ℓ and ℓ² have
    /// substitution rules.
    pub fn try_mul(&self, rhs: &SurfaceClass) -> Result<SurfaceClass> {
        let mut out = SurfaceClass::zero();
        for i in 0..3 {
            for j in 0..3 {
                let p = &self.parts[i] * &rhs.parts[j];
                if p.is_zero() {
                    continue;
                }
                if i + j > 2 {
                    return Err(Error::Degree(format!(
                        "kernel-line class appears to power {}; only linear and quadratic terms can be evaluated",
                        i + j
                    )));
                }
                out.parts[i + j] = &out.parts[i + j] + &p;
            }
        }
        Ok(out)
    }
}

impl From<RingElement> for SurfaceClass {
    fn from(r: RingElement) -> Self {
        let mut s = SurfaceClass::zero();
        s.parts[0] = r;
        s
    }
}

impl Add for &SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: &SurfaceClass) -> SurfaceClass {
        SurfaceClass {
            parts: [&self.parts[0] + &rhs.parts[0], &self.parts[1] + &rhs.parts[1], &self.parts[2] + &rhs.parts[2]],
        }
    }
}

impl Sub for &SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: &SurfaceClass) -> SurfaceClass {
        self + &(-rhs)
    }
}

impl Neg for &SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        self.scale(&-Rational::one())
    }
}

/// Multiplication by an ambient ring element never raises the ℓ-degree.
impl Mul<&RingElement> for &SurfaceClass {
    type Output = SurfaceClass;
    fn mul(self, rhs: &RingElement) -> SurfaceClass {
        SurfaceClass { parts: [&self.parts[0] * rhs, &self.parts[1] * rhs, &self.parts[2] * rhs] }
    }
}

/// Rank and first two Chern classes of a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub rank: u32,
    pub c1: SurfaceClass,
    pub c2: SurfaceClass,
}

impl ChernData {
    pub fn ambient(rank: u32, c1: RingElement, c2: RingElement) -> Self {
        ChernData { rank, c1: c1.into(), c2: c2.into() }
    }

    pub fn line(c1: SurfaceClass) -> Self {
        ChernData { rank: 1, c1, c2: SurfaceClass::zero() }
    }

    /// Middle term of 0 → A → E → B → 0 (Whitney sum formula).
    pub fn extension(a: &ChernData, b: &ChernData) -> Result<Self> {
        Ok(ChernData {
            rank: a.rank + b.rank,
            c1: &a.c1 + &b.c1,
            c2: &(&a.c2 + &b.c2) + &a.c1.try_mul(&b.c1)?,
        })
    }

    /// The dual bundle.
    pub fn dual(&self) -> Self {
        ChernData { rank: self.rank, c1: -&self.c1, c2: self.c2.clone() }
    }
}

/// Chern data of Sym² of a rank-7 bundle: c1 = 8 c1, c2 = 27 c1² + 9 c2.
pub fn chern_of_sym2(e: &ChernData) -> Result<ChernData> {
    if e.rank != 7 {
        return Err(Error::Domain(format!("chern_of_sym2 is implemented for rank 7 only, got rank {}", e.rank)));
    }
    let c1sq = e.c1.try_mul(&e.c1)?;
    Ok(ChernData {
        rank: 28,
        c1: e.c1.scale(&int(8)),
        c2: &c1sq.scale(&int(27)) + &e.c2.scale(&int(9)),
    })
}

/// Second Chern class of the virtual bundle F − S:
/// c2(F) − c1(F) c1(S) + c1(S)² − c2(S).
pub fn virtual_c2(f: &ChernData, s: &ChernData) -> Result<SurfaceClass> {
    let cross = f.c1.try_mul(&s.c1)?;
    let ssq = s.c1.try_mul(&s.c1)?;
    Ok(&(&(&f.c2 - &cross) + &ssq) - &s.c2)
}

/// How the kernel-line class ℓ integrates against a degeneracy surface ξ:
/// ℓ·ξ = `pairing` and ℓ²·ξ = `square`, both as ambient classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLine {
    pub pairing: RingElement,
    pub square: RingElement,
}

/// A degeneracy surface ξ ⊂ C × W together with its kernel line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracySurface {
    pub class: RingElement,
    pub kernel: KernelLine,
}

impl DegeneracySurface {
    /// Pushes a surface class into the ambient ring as a class on C × W.
    pub fn push(&self, s: &SurfaceClass) -> RingElement {
        &(&(&s.parts[0] * &self.class) + &(&s.parts[1] * &self.kernel.pairing)) + &(&s.parts[2] * &self.kernel.square)
    }

    /// Surface where a map π*M^∨ → J^∨ drops rank, computed from the inverse
    /// total Chern class `s` of the target: with c = c(π*M^∨)·s, the surface is
    /// c2, the kernel pairing is −c3 and the kernel square is c4.
    pub fn from_inverse_chern(s: &RingElement) -> Self {
        let m = &(&(&RingElement::one() + &RingElement::c(1)) + &RingElement::c(2)) + &RingElement::c(3);
        let c = &m * s;
        DegeneracySurface {
            class: c.degree_part(2),
            kernel: KernelLine { pairing: -c.degree_part(3), square: c.degree_part(4) },
        }
    }
}

/// Σ_k x^k for a nilpotent class x, i.e. the inverse of 1 − x.
pub fn geometric_inverse(x: &RingElement) -> Result<RingElement> {
    if x.terms().any(|(m, _)| m.degree() == 0) {
        return Err(Error::Domain("geometric inverse needs a class without constant term".into()));
    }
    let mut acc = RingElement::one();
    let mut power = RingElement::one();
    for _ in 0..64 {
        power = &power * x;
        if power.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &power;
    }
    Err(Error::Internal("geometric series did not terminate".into()))
}
