use serde::{Deserialize, Serialize};

use super::{check_same_shape, SubspaceFrame};
use crate::error::{Error, Result};
use crate::matrix_core::{operator_norm, svd, DenseMatrix};
use crate::scalar::Scalar;

/// Principal angles between two `d`-dimensional subspaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalAngleSet<T> {
    /// `θ₁ ≤ … ≤ θ_d`, each in `[0, π/2]`.
    pub angles: Vec<T>,
    /// Singular values of `V̂ᵀV` clamped to `[0, 1]`, nonincreasing.
    pub cosines: Vec<T>,
}

impl<T: Scalar> PrincipalAngleSet<T> {
    pub fn max_angle(&self) -> T {
        self.angles.last().copied().unwrap_or_else(T::zero)
    }
}

/// Angles are reported ascending. Each is `atan2(sin, cos)`, pairing the singular values of
/// `V̂ᵀV` with those of `(I − VVᵀ)V̂`, so small angles keep full relative accuracy.
pub fn principal_angles<T: Scalar>(
    vhat: &SubspaceFrame<T>,
    v: &SubspaceFrame<T>,
) -> Result<PrincipalAngleSet<T>> {
    check_same_shape("principal_angles", vhat, v)?;
    let cross = vhat.basis().tr_matmul(v.basis())?;
    let sv = svd(&cross)?.singular_values;
    let limit = T::one() + T::tol_chained();
    if let Some(&bad) = sv.iter().find(|&&s| s > limit) {
        return Err(Error::InvalidFrames {
            value: bad.as_f64(),
        });
    }
    let cosines: Vec<T> = sv.iter().map(|&s| s.max(T::zero()).min(T::one())).collect();
    let mut sines = svd(&residual_block(vhat, v))?.singular_values;
    sines.reverse();
    let angles = cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| s.min(T::one()).atan2(c))
        .collect();
    Ok(PrincipalAngleSet { angles, cosines })
}

/// Component of `V̂` orthogonal to the span of `V`: `(I − VVᵀ)V̂`.
fn residual_block<T: Scalar>(vhat: &SubspaceFrame<T>, v: &SubspaceFrame<T>) -> DenseMatrix<T> {
    let coeffs = v
        .basis()
        .tr_matmul(vhat.basis())
        .expect("same ambient dimension");
    let projected = v.basis().matmul(&coeffs).expect("conformable");
    vhat.basis() - &projected
}

/// `‖sin Θ(V̂, V)‖_F`, evaluated as `‖(I − VVᵀ)V̂‖_F`.
///
/// Equal to `(d − ‖V̂ᵀV‖_F²)^{1/2}` but without the cancellation that formula suffers for
/// nearly coincident subspaces.
pub fn sin_theta_frobenius<T: Scalar>(vhat: &SubspaceFrame<T>, v: &SubspaceFrame<T>) -> Result<T> {
    check_same_shape("sin_theta_frobenius", vhat, v)?;
    Ok(residual_block(vhat, v).frobenius_norm())
}

/// `‖sin Θ(V̂, V)‖_op = sin θ_max`, the largest singular value of `(I − VVᵀ)V̂`.
pub fn sin_theta_operator<T: Scalar>(vhat: &SubspaceFrame<T>, v: &SubspaceFrame<T>) -> Result<T> {
    check_same_shape("sin_theta_operator", vhat, v)?;
    Ok(operator_norm(&residual_block(vhat, v))?.min(T::one()))
}

/// `d − ‖V̂ᵀV‖_F²`, which equals `‖sin Θ(V̂, V)‖_F²`.
pub fn cross_gram_deficit<T: Scalar>(vhat: &SubspaceFrame<T>, v: &SubspaceFrame<T>) -> Result<T> {
    check_same_shape("cross_gram_deficit", vhat, v)?;
    let cross = vhat.basis().tr_matmul(v.basis())?.frobenius_norm();
    Ok(T::from_count(v.block_dim()) - cross * cross)
}
