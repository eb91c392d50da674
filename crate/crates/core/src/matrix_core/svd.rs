//! One-sided (Hestenes) Jacobi singular value decomposition.

use serde::{Deserialize, Serialize};

use super::{canonical_sign, complete_orthonormal_basis, dot, norm2, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Thin SVD `A = U·diag(σ)·Vᵀ` with `m = min(p, q)` singular triplets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SvdFactorization<T: Scalar> {
    /// `p×m`, orthonormal columns.
    pub left: DenseMatrix<T>,
    /// Nonincreasing and nonnegative.
    pub singular_values: Vec<T>,
    /// `q×m`, orthonormal columns.
    pub right: DenseMatrix<T>,
}

impl<T: Scalar> SvdFactorization<T> {
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let u = &self.left;
        let scaled = DenseMatrix::from_fn(u.rows(), u.cols(), |i, j| {
            u[(i, j)] * self.singular_values[j]
        });
        scaled
            .matmul(&self.right.transpose())
            .expect("thin factors conform")
    }

    /// Number of singular values above `rel_tol · σ₁`.
    pub fn rank(&self, rel_tol: T) -> usize {
        let top = self
            .singular_values
            .first()
            .copied()
            .unwrap_or_else(T::zero);
        if top == T::zero() {
            return 0;
        }
        self.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * top)
            .count()
    }
}

/// Thin SVD of an arbitrary dense matrix.
///
/// Wide inputs are handled by factoring the transpose. Left vectors follow the same sign
/// convention as [`sym_eig`](super::sym_eig) (largest-magnitude entry positive) and the
/// matching right vector is flipped with it. Left vectors belonging to zero singular values
/// are completed deterministically to an orthonormal set.
pub fn svd<T: Scalar>(a: &DenseMatrix<T>) -> Result<SvdFactorization<T>> {
    if a.rows() < a.cols() {
        let t = svd(&a.transpose())?;
        let mut out = SvdFactorization {
            left: t.right,
            singular_values: t.singular_values,
            right: t.left,
        };
        orient(&mut out);
        return Ok(out);
    }
    let mut out = tall_svd(a)?;
    orient(&mut out);
    Ok(out)
}

/// Largest singular value.
pub fn operator_norm<T: Scalar>(a: &DenseMatrix<T>) -> Result<T> {
    Ok(svd(a)?.singular_values[0])
}

fn tall_svd<T: Scalar>(a: &DenseMatrix<T>) -> Result<SvdFactorization<T>> {
    let (p, q) = a.shape();
    // column-major working copies
    let mut w: Vec<Vec<T>> = (0..q).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<T>> = (0..q)
        .map(|j| {
            (0..q)
                .map(|i| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let tol = T::tol_convergence();
    let max_sweeps = T::TOLERANCES.max_sweeps;
    // columns this small are rounding noise and count as zero singular values
    let negligible = T::lit(4.0) * T::epsilon() * a.frobenius_norm();

    let mut converged = q == 1;
    let mut worst = T::zero();
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        worst = T::zero();
        for i in 0..q {
            for j in (i + 1)..q {
                let alpha = norm2(&w[i]);
                let beta = norm2(&w[j]);
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(&w[i], &w[j]);
                let cosine = gamma.abs() / (alpha * beta);
                worst = worst.max(cosine);
                if cosine <= tol {
                    continue;
                }
                rotated = true;
                let (c, s) = jacobi_pair(alpha * alpha, beta * beta, gamma);
                rotate_columns(&mut w, i, j, c, s);
                rotate_columns(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            solver: "one-sided Jacobi SVD",
            sweeps: max_sweeps,
            residual: worst.as_f64(),
        });
    }

    let sigma: Vec<T> = w.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&i, &j| {
        sigma[j]
            .partial_cmp(&sigma[i])
            .expect("finite singular values")
    });

    let mut left = DenseMatrix::zeros(p, q);
    let mut right = DenseMatrix::zeros(q, q);
    let mut singular_values = Vec::with_capacity(q);
    let mut defined = 0;
    for (k, &idx) in order.iter().enumerate() {
        let s = sigma[idx];
        singular_values.push(s);
        right.set_column(k, &v[idx]);
        if s > negligible {
            let u: Vec<T> = w[idx].iter().map(|&x| x / s).collect();
            left.set_column(k, &u);
            defined += 1;
        }
    }
    if defined < q {
        // left vectors for (numerically) zero singular values
        let known = left.column_block(0, defined);
        let extra = complete_orthonormal_basis(&known, defined, q - defined);
        for k in 0..(q - defined) {
            left.set_column(defined + k, &extra.column(k));
        }
    }
    Ok(SvdFactorization {
        left,
        singular_values,
        right,
    })
}

/// Rotation `(c, s)` orthogonalizing two columns with squared norms `alpha`, `beta` and inner
/// product `gamma`.
fn jacobi_pair<T: Scalar>(alpha: T, beta: T, gamma: T) -> (T, T) {
    let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
    let t = if zeta.abs() > T::one() / T::epsilon() {
        T::one() / (T::lit(2.0) * zeta)
    } else {
        let sign = if zeta < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, c * t)
}

fn rotate_columns<T: Scalar>(cols: &mut [Vec<T>], i: usize, j: usize, c: T, s: T) {
    let (head, tail) = cols.split_at_mut(j);
    let (ci, cj) = (&mut head[i], &mut tail[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let xi = *x;
        let yj = *y;
        *x = c * xi - s * yj;
        *y = s * xi + c * yj;
    }
}

fn orient<T: Scalar>(f: &mut SvdFactorization<T>) {
    for k in 0..f.singular_values.len() {
        let mut u = f.left.column(k);
        if canonical_sign(&mut u) {
            f.left.set_column(k, &u);
            let v: Vec<T> = f.right.column(k).into_iter().map(|x| -x).collect();
            f.right.set_column(k, &v);
        }
    }
}
