//! Constants of the Weitzenböck derivation whose Jordan blocks all have
//! size 3, acting on `K[x_1, y_1, z_1, ..., x_n, y_n, z_n]` by
//! `x_i -> 0`, `y_i -> x_i`, `z_i -> y_i`.
//!
//! The algebra of constants is generated by
//! `f(i) = x_i`, `f(i,j) = x_i y_j - x_j y_i`,
//! `g(i,j) = x_i z_j - y_i y_j + z_i x_j` and the determinants `g(i,j,k)`.
//! [`decompose::decompose`] rewrites any constant explicitly in these
//! generators by polarizing, reducing against a basis of multilinear
//! constants indexed by lattice paths, and restituting.

pub mod checks;
pub mod decompose;
pub mod derivation;
mod error;
pub mod exactpoly;
pub mod jordan;
pub mod matrix;
pub mod pathgraph;
pub mod polar;
pub mod slbasis;

pub use error::{Error, Result};
