//! Exact computer algebra for deciding when an affine surface cannot be
//! parametrized birationally and surjectively by the plane, plus explicit
//! surjective parametrizations for Veronese surfaces.

pub mod error;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{Coeff, Monomial, MultiPoly};
pub mod curve;
pub mod factor;
pub mod grobner;
pub mod linalg;
pub mod numfield;
pub mod obstruction;
pub mod parse;
pub mod univariate;
pub mod veronese;
pub mod zassenhaus;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/obstruction.md")]
    mod obstruction {}
    #[doc = include_str!("../../../book/src/veronese.md")]
    mod veronese {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
