//! Exact arithmetic in the extended affine Weyl groups of `GL(d)` and
//! `GSp(2n)`.

pub mod group;
pub mod gsp;
pub mod oracle;
pub mod perm;

pub use group::{Group, OmegaComponent, WeylGroup};
pub use gsp::GspElement;
pub use perm::{AffinePermutation, Coweight};
