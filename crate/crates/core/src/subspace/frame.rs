use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix_core::{norm2, DenseMatrix};
use crate::scalar::Scalar;

/// A `p×d` block with orthonormal columns spanning a `d`-dimensional subspace of `ℝ^p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SubspaceFrame<T: Scalar> {
    basis: DenseMatrix<T>,
}

impl<T: Scalar> SubspaceFrame<T> {
    pub fn new(basis: DenseMatrix<T>) -> Result<Self> {
        if basis.cols() > basis.rows() {
            return Err(Error::DimensionMismatch {
                op: "SubspaceFrame::new",
                detail: format!(
                    "{} columns exceed ambient dimension {}",
                    basis.cols(),
                    basis.rows()
                ),
            });
        }
        let residual = basis.orthonormality_residual();
        if residual > T::tol_frame() {
            return Err(Error::NotOrthonormal {
                residual: residual.as_f64(),
            });
        }
        Ok(Self { basis })
    }

    /// Frame spanned by a single vector, normalized.
    pub fn from_vector(v: &[T]) -> Result<Self> {
        let n = norm2(v);
        if n == T::zero() {
            return Err(Error::ZeroVector);
        }
        let unit: Vec<T> = v.iter().map(|&x| x / n).collect();
        Self::new(DenseMatrix::from_columns(&[unit])?)
    }

    /// Wraps a block without re-checking orthonormality.
    pub(crate) fn from_trusted(basis: DenseMatrix<T>) -> Self {
        Self { basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn block_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &DenseMatrix<T> {
        &self.basis
    }

    pub fn into_basis(self) -> DenseMatrix<T> {
        self.basis
    }

    /// `V·R` for a `d×d` orthogonal `R`; spans the same subspace.
    pub fn rotate(&self, r: &DenseMatrix<T>) -> Result<Self> {
        Self::new(self.basis.matmul(r)?)
    }
}
