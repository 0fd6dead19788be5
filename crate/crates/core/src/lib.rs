//! Exact computations on moduli spaces of curves: divisor classes and their
//! slopes, intersection numbers of ψ classes, Brill-Noether numerics,
//! Koszul cohomology of graded modules, and the tautological-ring calculus
//! behind the class of a divisor on the genus-22 moduli space.
//!
//! Every number is an exact rational; nothing is computed in floating point.
//!
//! ```
//! use mgbar::divclass::{canonical_coarse, slope, Slope};
//! use mgbar::arith::rat;
//!
//! assert_eq!(slope(&canonical_coarse(22)?), Slope::Finite(rat(13, 2)));
//! # Ok::<(), mgbar::Error>(())
//! ```

pub mod arith;
pub mod bn;
pub mod divclass;
mod error;
pub mod koszul;
pub mod linalg;
pub mod psi;
pub mod tautring;

pub use arith::Rational;
pub use error::{Error, Result};

/// The guide chapters in `book/src`, compiled as doctests so their snippets
/// stay in step with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/divisors.md")]
    mod divisors {}
    #[doc = include_str!("../../../book/src/psi.md")]
    mod psi {}
    #[doc = include_str!("../../../book/src/brill_noether.md")]
    mod brill_noether {}
    #[doc = include_str!("../../../book/src/koszul.md")]
    mod koszul {}
    #[doc = include_str!("../../../book/src/genus22.md")]
    mod genus22 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
