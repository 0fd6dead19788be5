//! The genus-22 degeneracy computation on the test curves C^0 and C^1.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::chern::{chern_of_sym2, virtual_c2, ChernData, DegeneracySurface, KernelLine, SurfaceClass};
use super::ring::RingElement;
use super::table::PushforwardTable;
use super::{integrate_over_c, integrate_over_w};
use crate::arith::{big, exact_div_int, int, Rational};
use crate::error::{Error, Result};

/// Genus of the curves parametrized by the divisor.
pub const D22_GENUS: u32 = 22;

fn parse(s: &str) -> RingElement {
    s.parse().expect("library expression parses")
}

/// Names accepted by [`bundle_library`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleName {
    A2,
    B2,
    U,
    V,
    EOnX,
    EOnY,
    FOnX,
    FOnY,
    ClassX,
    ClassY,
}

impl BundleName {
    pub const ALL: [BundleName; 10] = [
        BundleName::A2,
        BundleName::B2,
        BundleName::U,
        BundleName::V,
        BundleName::EOnX,
        BundleName::EOnY,
        BundleName::FOnX,
        BundleName::FOnY,
        BundleName::ClassX,
        BundleName::ClassY,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BundleName::A2 => "A2",
            BundleName::B2 => "B2",
            BundleName::U => "U",
            BundleName::V => "V",
            BundleName::EOnX => "E_on_X",
            BundleName::EOnY => "E_on_Y",
            BundleName::FOnX => "F_on_X",
            BundleName::FOnY => "F_on_Y",
            BundleName::ClassX => "class_X",
            BundleName::ClassY => "class_Y",
        }
    }
}

impl fmt::Display for BundleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BundleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BundleName::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown bundle {s:?}")))
    }
}

/// What a library name resolves to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LibraryEntry {
    Bundle(ChernData),
    Kernel(KernelLine),
    Class(RingElement),
}

/// Dual of the tautological subbundle R restricted to a degeneracy surface:
/// c1 = −θ + c1, c2 = θ²/2 + c2 − θ c1.
fn r_dual() -> ChernData {
    ChernData::ambient(6, parse("-theta + c1"), parse("1/2*theta^2 + c2 - theta*c1"))
}

pub fn bundle_library(name: BundleName) -> LibraryEntry {
    let with_kernel = |base: ChernData| {
        ChernData::extension(&base, &ChernData::line(SurfaceClass::ell())).expect("ℓ appears linearly")
    };
    let with_kernel_square = |base: ChernData| {
        ChernData::extension(&base, &ChernData::line(SurfaceClass::ell().scale(&int(2)))).expect("ℓ appears linearly")
    };
    match name {
        BundleName::A2 => LibraryEntry::Bundle(a2()),
        BundleName::B2 => LibraryEntry::Bundle(b2()),
        BundleName::U => LibraryEntry::Kernel(surface_x().kernel),
        BundleName::V => LibraryEntry::Kernel(surface_y().kernel),
        BundleName::EOnX | BundleName::EOnY => LibraryEntry::Bundle(with_kernel(r_dual())),
        BundleName::FOnX => LibraryEntry::Bundle(with_kernel_square(a2())),
        BundleName::FOnY => LibraryEntry::Bundle(with_kernel_square(b2())),
        BundleName::ClassX => LibraryEntry::Class(surface_x().class),
        BundleName::ClassY => LibraryEntry::Class(surface_y().class),
    }
}

fn a2() -> ChernData {
    ChernData::ambient(27, parse("-4*theta - 4*gamma - 28*eta"), parse("8*theta^2 + 104*eta*theta + 16*gamma*theta"))
}

fn b2() -> ChernData {
    ChernData::ambient(27, parse("-4*theta + 7*eta - 2*gamma"), parse("8*theta^2 - 28*eta*theta + 8*theta*gamma"))
}

/// Surface X over C^1, with kernel line U.
pub fn surface_x() -> DegeneracySurface {
    DegeneracySurface {
        class: parse("c2 - 6*eta*theta + (74*eta + 2*gamma)*c1"),
        kernel: KernelLine {
            pairing: parse("-(c3 - 6*eta*theta*c1 + (74*eta + 2*gamma)*c2)"),
            square: parse("c3*(74*eta + 2*gamma) - 6*c2*eta*theta"),
        },
    }
}

/// Surface Y over C^0, with kernel line V.
pub fn surface_y() -> DegeneracySurface {
    DegeneracySurface {
        class: parse("c2 - 2*eta*theta + (16*eta + gamma)*c1"),
        kernel: KernelLine {
            pairing: parse("-(c3 + c2*(16*eta + gamma) - 2*c1*eta*theta)"),
            square: parse("c3*(16*eta + gamma) - 2*c2*eta*theta"),
        },
    }
}

/// Which test curve a degeneracy computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegeneracyCurve {
    C0,
    C1,
}

impl FromStr for DegeneracyCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C0" => Ok(DegeneracyCurve::C0),
            "C1" => Ok(DegeneracyCurve::C1),
            _ => Err(Error::Domain(format!("degeneracy curve must be C0 or C1, got {s:?}"))),
        }
    }
}

/// The class of the degeneracy locus pushed down to W, as a polynomial in
/// θ, c1, c2, c3 of degree 3.
pub fn degeneracy_class(curve: DegeneracyCurve) -> Result<RingElement> {
    let (surface, e_name, f_name) = match curve {
        DegeneracyCurve::C1 => (surface_x(), BundleName::EOnX, BundleName::FOnX),
        DegeneracyCurve::C0 => (surface_y(), BundleName::EOnY, BundleName::FOnY),
    };
    let bundle = |n| match bundle_library(n) {
        LibraryEntry::Bundle(b) => b,
        _ => unreachable!("{n} is a bundle"),
    };
    let sym = chern_of_sym2(&bundle(e_name))?;
    let v = virtual_c2(&bundle(f_name), &sym)?;
    let on_cw = surface.push(&v);
    match on_cw.homogeneous_degree() {
        Some(4) | None => {}
        Some(d) => return Err(Error::Degree(format!("degeneracy class on C x W has degree {d}, expected 4"))),
    }
    integrate_over_c(&on_cw)
}

/// Intersection number of the test curve with the divisor.
pub fn degeneracy_total(curve: DegeneracyCurve, table: &PushforwardTable) -> Result<BigInt> {
    let v = integrate_over_w(&degeneracy_class(curve)?, table)?;
    if !v.is_integer() {
        return Err(Error::Inexact(format!("degeneracy total over {curve:?} is not an integer")));
    }
    Ok(v.to_integer())
}

/// Coefficients of D = aλ − b0 δ0 − b1 δ1 − … on the genus-22 moduli space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D22Solution {
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub total_c1: BigInt,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub total_c0: BigInt,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub b0: BigInt,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub b1: BigInt,
}

impl D22Solution {
    pub fn slope(&self) -> Rational {
        Rational::new(self.a.clone(), self.b0.clone())
    }
}

/// Solves C^1·D = (2g−4) b1, C^0·D = (2g−2) b0 − b1 and a − 12 b0 + b1 = 0
/// with all divisions required to be exact.
pub fn solve_d22(table: &PushforwardTable) -> Result<D22Solution> {
    let g = D22_GENUS as i64;
    let total_c1 = degeneracy_total(DegeneracyCurve::C1, table)?;
    let total_c0 = degeneracy_total(DegeneracyCurve::C0, table)?;
    let b1 = exact_div_int(&big(total_c1.clone()), &int(2 * g - 4), "b1 = (C1 . D)/(2g-4)")?;
    let b0 = exact_div_int(&big(&total_c0 + &b1), &int(2 * g - 2), "b0 = (C0 . D + b1)/(2g-2)")?;
    let a = BigInt::from(12) * &b0 - &b1;
    for (name, v) in [("a", &a), ("b0", &b0), ("b1", &b1)] {
        if !v.is_positive() {
            return Err(Error::Internal(format!("{name} = {v} is not a positive integer")));
        }
    }
    Ok(D22Solution { total_c1, total_c0, a, b0, b1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_names_round_trip() {
        for b in BundleName::ALL {
            assert_eq!(b.as_str().parse::<BundleName>().unwrap(), b);
        }
        assert!("W".parse::<BundleName>().is_err());
    }

    #[test]
    fn e_restrictions_carry_kernel_terms() {
        let LibraryEntry::Bundle(e) = bundle_library(BundleName::EOnX) else { panic!() };
        assert_eq!(e.rank, 7);
        assert_eq!(e.c1.parts[0], parse("-theta + c1"));
        assert_eq!(e.c1.parts[1], RingElement::one());
        assert_eq!(e.c2.parts[1], parse("-theta + c1"));
    }
}
