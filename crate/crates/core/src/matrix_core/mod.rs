//! Dense matrix arithmetic, decompositions and spectral comparison utilities.

mod complement;
mod dense;
mod eigen;
mod inequalities;
mod kron;
mod qr;
mod svd;
mod symmetric;

pub(crate) use complement::complete_orthonormal_basis;
pub use complement::orthonormal_complement;
pub use dense::{dot, norm2, DenseMatrix};
pub use eigen::{sym_eig, sym_eigenvalues, SpectralDecomposition};
pub use inequalities::{weyl_check, wielandt_hoffman_check, InequalityCheck};
pub use kron::{kron, unvec, vec};
pub use qr::{orthogonal_factor, qr};
pub use svd::{operator_norm, svd, SvdFactorization};
pub use symmetric::SymmetricMatrix;

use crate::scalar::Scalar;

/// Flips `x` so its largest-magnitude entry is positive. Entries within a few ulps of the
/// maximum count as tied and the lowest index wins. Returns whether the sign was flipped.
pub(crate) fn canonical_sign<T: Scalar>(x: &mut [T]) -> bool {
    let max = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if max == T::zero() {
        return false;
    }
    let slack = max * T::lit(8.0) * T::epsilon();
    let pivot = x
        .iter()
        .position(|v| v.abs() >= max - slack)
        .expect("maximum is attained");
    if x[pivot] < T::zero() {
        for v in x.iter_mut() {
            *v = -*v;
        }
        true
    } else {
        false
    }
}

/// Frobenius norm; free-function form of [`DenseMatrix::frobenius_norm`].
pub fn frobenius_norm<T: Scalar>(a: &DenseMatrix<T>) -> T {
    a.frobenius_norm()
}
