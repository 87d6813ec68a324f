//! Dense complex linear algebra: tensor products, partial traces and transposes,
//! Hermitian eigensystems and entropies.
//!
//! Everything is stored row-major and multipartite indices put the first
//! subsystem in the most significant position (see [`ComplexMatrix`]).

mod block;
mod density;
mod linalg;
mod matrix;
pub mod random;

pub use block::{Block, BlockDiagonal};
pub use density::{entropy_of_spectrum, spectral_entropy, von_neumann_entropy, DensityMatrix, ENTROPY_CLIP};
pub use linalg::{hermitian_eigensystem, EigenSystem, Svd, HERMITIAN_TOL};
pub use matrix::{conjugate, partial_trace, partial_transpose, tensor_product, ComplexMatrix, MAX_ENTRIES};

pub use num_complex::Complex64;
