//! The special fiber of the local model over small prime fields.

pub mod chain;
pub mod field;
pub mod iwahori;

pub use chain::{enumerate_points, SubspaceChain};
pub use field::{Fq, Subspace};
pub use iwahori::{iwahori_act, random_iwahori, IwahoriElement};
