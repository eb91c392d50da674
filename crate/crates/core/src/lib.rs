//! Subspace distances and eigenvector / singular-vector perturbation bounds for dense real
//! matrices.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix the
//! double-precision types used by the harness and the command-line tool.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod matrix_core;
pub mod scalar;
mod serde_ext;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix_core::{DenseMatrix, SpectralDecomposition, SvdFactorization, SymmetricMatrix};
pub use scalar::{Scalar, Tolerances};

pub type Matrix = DenseMatrix<f64>;
pub type SymMatrix = SymmetricMatrix<f64>;
pub type Matrix32 = DenseMatrix<f32>;
pub type SymMatrix32 = SymmetricMatrix<f32>;
