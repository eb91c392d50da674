//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use serde::{Deserialize, Serialize};

use super::{canonical_sign, DenseMatrix, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigenvalues in nonincreasing order with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpectralDecomposition<T: Scalar> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: DenseMatrix<T>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector columns `r..=s` (1-based, inclusive).
    pub fn block(&self, r: usize, s: usize) -> DenseMatrix<T> {
        self.eigenvectors.column_block(r - 1, s)
    }

    /// Eigenvector columns outside `r..=s` (1-based), in ascending index order.
    pub fn complement_block(&self, r: usize, s: usize) -> DenseMatrix<T> {
        let idx: Vec<usize> = (0..self.dim())
            .filter(|&j| j + 1 < r || j + 1 > s)
            .collect();
        self.eigenvectors.select_columns(&idx)
    }

    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let q = &self.eigenvectors;
        let scaled =
            DenseMatrix::from_fn(q.rows(), q.cols(), |i, j| q[(i, j)] * self.eigenvalues[j]);
        scaled.matmul(&q.transpose()).expect("square factors")
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps visit pairs `(p, q)` in row-cyclic order until the off-diagonal Frobenius mass is
/// at most the convergence tolerance times `‖m‖_F`. Eigenvalues are returned in nonincreasing
/// order (ties keep their diagonal position) and each eigenvector has its largest-magnitude
/// entry positive.
pub fn sym_eig<T: Scalar>(m: &SymmetricMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let n = m.dim();
    let mut a = m.as_dense().clone();
    let mut v = DenseMatrix::identity(n);
    let target = T::tol_convergence() * m.frobenius_norm();
    let max_sweeps = T::TOLERANCES.max_sweeps;

    let mut converged = false;
    for _ in 0..=max_sweeps {
        let off = off_diagonal_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            solver: "symmetric Jacobi",
            sweeps: max_sweeps,
            residual: off_diagonal_norm(&a).as_f64(),
        });
    }

    let diag = a.diagonal();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep their original index order
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = v.select_columns(&order);
    for j in 0..n {
        let mut col = eigenvectors.column(j);
        canonical_sign(&mut col);
        eigenvectors.set_column(j, &col);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, in nonincreasing order.
pub fn sym_eigenvalues<T: Scalar>(m: &SymmetricMatrix<T>) -> Result<Vec<T>> {
    Ok(sym_eig(m)?.eigenvalues)
}

fn off_diagonal_norm<T: Scalar>(a: &DenseMatrix<T>) -> T {
    let n = a.rows();
    let mut off = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off.push(a[(i, j)]);
            }
        }
    }
    super::norm2(&off)
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate<T: Scalar>(a: &mut DenseMatrix<T>, v: &mut DenseMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == T::zero() {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    // negligible relative to both diagonal entries: drop without rotating
    let eps = T::epsilon();
    if apq.abs() <= eps * eps * app.abs().min(aqq.abs()) {
        a[(p, q)] = T::zero();
        a[(q, p)] = T::zero();
        return;
    }

    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * apq);
    let t = if theta.abs() > T::one() / eps {
        // theta² would lose everything; first-order expansion
        T::one() / (two * theta)
    } else {
        let sign = if theta < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let n = a.rows();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &SymmetricMatrix<f64>, e: &SpectralDecomposition<f64>) -> f64 {
        (&e.reconstruct() - m.as_dense()).frobenius_norm()
    }

    #[test]
    fn diagonal_input() {
        let m = SymmetricMatrix::<f64>::from_diag(&[3.0, 1.0]);
        let e = sym_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(e.eigenvectors, DenseMatrix::identity(2));
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymmetricMatrix::<f64>::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let e = sym_eig(&m).unwrap();
        assert!((e.eigenvalues[0] - 3.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = &e.eigenvectors;
        // (1,1)/√2 and (1,-1)/√2: tie on magnitude resolved towards the lowest index
        for (got, want) in [
            (q[(0, 0)], h),
            (q[(1, 0)], h),
            (q[(0, 1)], h),
            (q[(1, 1)], -h),
        ] {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn ascending_diagonal_is_reordered() {
        let m = SymmetricMatrix::<f64>::from_diag(&[1.9, 1.9, 2.0, 2.0]);
        let e = sym_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![2.0, 2.0, 1.9, 1.9]);
        assert_eq!(e.block(1, 2), DenseMatrix::identity(4).column_block(2, 4));
    }

    #[test]
    fn zero_matrix() {
        let m = SymmetricMatrix::<f64>::from_diag(&[0.0; 3]);
        let e = sym_eig(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn dense_three_by_three() {
        let m =
            SymmetricMatrix::<f64>::from_rows(&[[1.0, 2.0, 3.0], [2.0, 3.0, 2.0], [3.0, 2.0, 2.0]])
                .unwrap();
        let e = sym_eig(&m).unwrap();
        assert!(residual(&m, &e) < 1e-13);
        assert!(e.eigenvectors.orthonormality_residual() < 1e-14);
        let want = [
            6.695_373_904_044_595,
            0.862_725_343_814_443_7,
            -1.558_099_247_859_037_8,
        ];
        for (g, w) in e.eigenvalues.iter().zip(want) {
            assert!((g - w).abs() < 1e-13);
        }
    }

    #[test]
    fn single_precision() {
        let m =
            SymmetricMatrix::<f32>::from_rows(&[[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 1.0]])
                .unwrap();
        let e = sym_eig(&m).unwrap();
        let res = (&e.reconstruct() - m.as_dense()).frobenius_norm();
        assert!(res < 1e-5, "{res}");
        assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}
