//! Dense complex linear algebra: matrices, Hermitian eigenproblems,
//! spectral exponentials.

mod eig;
mod matrix;

pub use eig::{expm_hermitian, hermitian_eig, Spectrum};
pub use matrix::{ComplexMatrix, I, ONE, ZERO};
