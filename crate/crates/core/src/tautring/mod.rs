//! Intersection theory on C × W for the genus-22 divisor computation.

mod chern;
mod d22;
mod ring;
mod table;

pub use chern::{
    chern_of_sym2, geometric_inverse, virtual_c2, ChernData, DegeneracySurface, KernelLine, SurfaceClass,
};
pub use d22::{
    bundle_library, degeneracy_class, degeneracy_total, solve_d22, surface_x, surface_y, BundleName, D22Solution,
    DegeneracyCurve, LibraryEntry, D22_GENUS,
};
pub use ring::{Monomial, RawMonomial, RingElement};
pub use table::{expand_in_roots, IdentityCheck, PushforwardTable, RootPolynomial, BUILTIN_TABLE_JSON};

use num_traits::Zero;

use crate::arith::{big, factorial, fmt_rational, Rational};
use crate::error::{Error, Result};

/// Pushforward along C × W → W: the coefficient of η, the point class of C.
pub fn integrate_over_c(a: &RingElement) -> Result<RingElement> {
    let mut out = RingElement::zero();
    for (m, q) in a.terms() {
        if m.eta == 1 {
            out += &RingElement::monomial(Monomial { eta: 0, ..*m }, q.clone());
        }
    }
    Ok(out)
}

/// Degree of a top-degree class on W, via the pushforward table and
/// ∫ θ^g = g! on the Picard variety. Every monomial is an integral class, so
/// each contribution must be an integer.
pub fn integrate_over_w(p: &RingElement, table: &PushforwardTable) -> Result<Rational> {
    let g_fact = big(factorial(table.picard_genus as u64));
    let mut total = Rational::zero();
    for (m, q) in p.terms() {
        let name = RingElement::monomial(*m, Rational::from_integer(1.into())).to_string();
        if m.eta != 0 || m.gamma != 0 {
            return Err(Error::Degree(format!("{name} is not a class on W")));
        }
        if m.theta + m.chern_degree() != table.dimension {
            return Err(Error::Degree(format!(
                "{name} has degree {}, not the dimension {} of W",
                m.degree(),
                table.dimension
            )));
        }
        let value = table.push_chern_monomial(m.c)? * &g_fact;
        if !value.is_integer() {
            return Err(Error::Inexact(format!("{name} integrates to {}", fmt_rational(&value))));
        }
        total += value * q;
    }
    Ok(total)
}
