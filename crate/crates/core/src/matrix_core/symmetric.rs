use std::ops::Deref;

use serde::Serialize;

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square matrix that is symmetric to within the relative symmetry tolerance.
///
/// Construction symmetrizes the stored entries as `(A + Aᵀ)/2`, so downstream code can
/// rely on exact symmetry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymmetricMatrix<T: Scalar>(DenseMatrix<T>);

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn new(m: DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                op: "SymmetricMatrix::new",
                detail: format!("{}x{} is not square", m.rows(), m.cols()),
            });
        }
        let asymmetry = m.max_asymmetry();
        let tolerance = T::tol_symmetry() * T::one().max(m.frobenius_norm());
        if asymmetry > tolerance {
            return Err(Error::NotSymmetric {
                asymmetry: asymmetry.as_f64(),
                tolerance: tolerance.as_f64(),
            });
        }
        let half = T::lit(0.5);
        let sym = DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            if i == j {
                m[(i, i)]
            } else {
                half * (m[(i, j)] + m[(j, i)])
            }
        });
        Ok(Self(sym))
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        Self::new(DenseMatrix::from_rows(rows)?)
    }

    pub fn from_diag(diag: &[T]) -> Self {
        Self(DenseMatrix::from_diag(diag))
    }

    /// `Q · diag(values) · Qᵀ`, symmetrized.
    pub fn from_spectrum(q: &DenseMatrix<T>, values: &[T]) -> Result<Self> {
        if q.cols() != values.len() {
            return Err(Error::DimensionMismatch {
                op: "SymmetricMatrix::from_spectrum",
                detail: format!("{} columns vs {} eigenvalues", q.cols(), values.len()),
            });
        }
        let scaled = DenseMatrix::from_fn(q.rows(), q.cols(), |i, j| q[(i, j)] * values[j]);
        let full = scaled.matmul(&q.transpose())?;
        let half = T::lit(0.5);
        Ok(Self(DenseMatrix::from_fn(
            full.rows(),
            full.cols(),
            |i, j| half * (full[(i, j)] + full[(j, i)]),
        )))
    }

    /// Dimension `p` of the `p×p` matrix.
    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_dense(&self) -> &DenseMatrix<T> {
        &self.0
    }

    pub fn into_dense(self) -> DenseMatrix<T> {
        self.0
    }

    pub fn scale(&self, factor: T) -> Self {
        Self(self.0.scale(factor))
    }

    /// Difference of two symmetric matrices, which is itself symmetric.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_sub(&other.0)?))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_add(&other.0)?))
    }
}

impl<T: Scalar> Deref for SymmetricMatrix<T> {
    type Target = DenseMatrix<T>;

    fn deref(&self) -> &DenseMatrix<T> {
        &self.0
    }
}

impl<T: Scalar> TryFrom<DenseMatrix<T>> for SymmetricMatrix<T> {
    type Error = Error;

    fn try_from(m: DenseMatrix<T>) -> Result<Self> {
        Self::new(m)
    }
}
