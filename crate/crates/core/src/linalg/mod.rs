//! Exact linear algebra over a field of scalars.

mod matrix;
mod poly;
pub mod snf;
mod subspace;

pub use matrix::{Echelon, Matrix};
pub use poly::Poly;
pub use subspace::SubspaceBasis;
