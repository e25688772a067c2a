//! Kottwitz-Rapoport strata of the Siegel local model with Iwahori level:
//! affine Weyl group arithmetic, permissible and admissible sets, p-ranks,
//! R-polynomials and a finite-field model of the special fiber.

pub mod alcove;
pub mod error;
pub mod local_model;
pub mod poly;
pub mod prank;
pub mod rpoly;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use weyl::{AffinePermutation, Coweight, Group, GspElement, WeylGroup};
