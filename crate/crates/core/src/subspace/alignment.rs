use serde::{Deserialize, Serialize};

use super::{check_same_shape, SubspaceFrame};
use crate::error::Result;
use crate::matrix_core::{svd, DenseMatrix};
use crate::scalar::Scalar;

/// Orthogonal `Ô` minimizing `‖V̂Ô − V‖_F`, with the attained distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Alignment<T: Scalar> {
    pub rotation: DenseMatrix<T>,
    pub distance: T,
}

/// Orthogonal Procrustes alignment of `V̂` onto `V`.
///
/// With `V̂ᵀV = O₁·diag(cos θ)·O₂ᵀ`, the minimizer is `Ô = O₁O₂ᵀ` and
/// `‖V̂Ô − V‖_F² = 2d − 2 Σ cos θ_j`. The distance is evaluated directly from `V̂Ô − V`.
pub fn procrustes_align<T: Scalar>(
    vhat: &SubspaceFrame<T>,
    v: &SubspaceFrame<T>,
) -> Result<Alignment<T>> {
    check_same_shape("procrustes_align", vhat, v)?;
    let cross = vhat.basis().tr_matmul(v.basis())?;
    let f = svd(&cross)?;
    let rotation = f.left.matmul(&f.right.transpose())?;
    let aligned = vhat.basis().matmul(&rotation)?;
    let distance = (&aligned - v.basis()).frobenius_norm();
    Ok(Alignment { rotation, distance })
}
