use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Kronecker product with block layout `(a_ij · B)`.
pub fn kron<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let rows = a.rows().checked_mul(b.rows());
    let cols = a.cols().checked_mul(b.cols());
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r.checked_mul(c).is_some() => (r, c),
        _ => {
            return Err(Error::SizeOverflow {
                rows: a.rows().saturating_mul(b.rows()),
                cols: a.cols().saturating_mul(b.cols()),
            })
        }
    };
    let (br, bc) = b.shape();
    Ok(DenseMatrix::from_fn(rows, cols, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    }))
}

/// Column-stacking vectorization.
pub fn vec<T: Scalar>(a: &DenseMatrix<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(a.rows() * a.cols());
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            out.push(a[(i, j)]);
        }
    }
    out
}

/// Inverse of [`vec`] for a `rows×cols` target.
pub fn unvec<T: Scalar>(x: &[T], rows: usize, cols: usize) -> Result<DenseMatrix<T>> {
    if rows.checked_mul(cols) != Some(x.len()) {
        return Err(Error::DimensionMismatch {
            op: "unvec",
            detail: format!("{} entries into {rows}x{cols}", x.len()),
        });
    }
    Ok(DenseMatrix::from_fn(rows, cols, |i, j| x[j * rows + i]))
}
