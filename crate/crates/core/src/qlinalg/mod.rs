//! Exact rational linear algebra: matrices, canonical subspaces, compatible inner
//! product families with their duals, and circuits of linear forms.

mod circuit;
pub(crate) mod matrix;
mod inner;
mod subspace;

pub use circuit::{find_circuit, find_circuit_of, Circuit};
pub use inner::InnerProductFamily;
pub use matrix::MatQ;
pub use subspace::Subspace;
