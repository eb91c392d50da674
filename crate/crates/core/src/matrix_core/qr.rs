use super::{norm2, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Thin Householder QR of a `m×n` matrix with `m ≥ n`: `A = Q·R`, `Q` is `m×n` with
/// orthonormal columns and `R` is `n×n` upper triangular.
pub fn qr<T: Scalar>(a: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::DimensionMismatch {
            op: "qr",
            detail: format!("{m}x{n} has fewer rows than columns"),
        });
    }
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<T>> = Vec::with_capacity(n);

    for k in 0..n {
        let x: Vec<T> = (k..m).map(|i| r[(i, k)]).collect();
        let alpha = norm2(&x);
        let mut v = x;
        if alpha == T::zero() {
            reflectors.push(vec![T::zero(); m - k]);
            continue;
        }
        let sign = if v[0] < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        v[0] += sign * alpha;
        let vn = norm2(&v);
        for x in v.iter_mut() {
            *x /= vn;
        }
        for j in k..n {
            let s: T = (k..m).map(|i| v[i - k] * r[(i, j)]).sum();
            let two_s = s + s;
            for i in k..m {
                r[(i, j)] -= two_s * v[i - k];
            }
        }
        reflectors.push(v);
    }

    let mut q = DenseMatrix::zeros(m, n);
    for j in 0..n {
        q[(j, j)] = T::one();
    }
    for k in (0..n).rev() {
        let v = &reflectors[k];
        for j in 0..n {
            let s: T = (k..m).map(|i| v[i - k] * q[(i, j)]).sum();
            let two_s = s + s;
            for i in k..m {
                q[(i, j)] -= two_s * v[i - k];
            }
        }
    }
    let r = DenseMatrix::from_fn(n, n, |i, j| if i <= j { r[(i, j)] } else { T::zero() });
    Ok((q, r))
}

/// Orthogonal factor of `A` with the signs of `R`'s diagonal folded in, so that the
/// diagonal of the implied `R` is nonnegative. Applied to a square Gaussian matrix this
/// yields a Haar-distributed orthogonal matrix.
pub fn orthogonal_factor<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let (mut q, r) = qr(a)?;
    for j in 0..q.cols() {
        if r[(j, j)] < T::zero() {
            for i in 0..q.rows() {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_and_is_orthonormal() {
        let a = DenseMatrix::<f64>::from_rows(&[
            [12.0, -51.0, 4.0],
            [6.0, 167.0, -68.0],
            [-4.0, 24.0, -41.0],
        ])
        .unwrap();
        let (q, r) = qr(&a).unwrap();
        assert!(q.orthonormality_residual() < 1e-14);
        assert!((&(&q * &r) - &a).frobenius_norm() < 1e-12);
        assert!((r[(0, 0)].abs() - 14.0).abs() < 1e-12);
    }

    #[test]
    fn sign_folding_gives_positive_diagonal() {
        let a = DenseMatrix::<f64>::from_rows(&[[-2.0, 1.0], [0.0, -3.0], [0.0, 0.0]]).unwrap();
        let q = orthogonal_factor(&a).unwrap();
        let r = q.tr_matmul(&a).unwrap();
        assert!(r[(0, 0)] > 0.0 && r[(1, 1)] > 0.0);
    }

    #[test]
    fn wide_input_rejected() {
        assert!(qr(&DenseMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
