use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix_core::{dot, norm2};
use crate::scalar::Scalar;

/// Two evaluations of the same quantity and whether they agree within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub agree: bool,
}

/// Returns `±v̂`, choosing the sign with `(±v̂)ᵀv ≥ 0` (`+` on ties).
pub fn orient_sign<T: Scalar>(vhat: &[T], v: &[T]) -> Result<Vec<T>> {
    if vhat.len() != v.len() {
        return Err(Error::DimensionMismatch {
            op: "orient_sign",
            detail: format!("lengths {} and {}", vhat.len(), v.len()),
        });
    }
    if norm2(vhat) == T::zero() || norm2(v) == T::zero() {
        return Err(Error::ZeroVector);
    }
    if dot(vhat, v) < T::zero() {
        Ok(vhat.iter().map(|&x| -x).collect())
    } else {
        Ok(vhat.to_vec())
    }
}

/// Compares `(2v̂ᵀv)²(1 − (v̂ᵀv)²)` with `¼‖v̂ − v‖²(2 − ‖v̂ − v‖²)²(4 − ‖v̂ − v‖²)`
/// for unit vectors. Both sides equal `sin² 2θ`.
///
/// The `(2 − ‖v̂ − v‖²)` factor is squared: with `x = ‖v̂ − v‖² = 2 − 2v̂ᵀv` one has
/// `2v̂ᵀv = 2 − x` and `1 − (v̂ᵀv)² = x(4 − x)/4`. The unsquared form already fails at
/// `θ = π/4`, where it gives `2^{-1/2}` instead of 1.
pub fn sin2theta_identity_check<T: Scalar>(vhat: &[T], v: &[T]) -> Result<IdentityCheck<T>> {
    if vhat.len() != v.len() {
        return Err(Error::DimensionMismatch {
            op: "sin2theta_identity_check",
            detail: format!("lengths {} and {}", vhat.len(), v.len()),
        });
    }
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let c = dot(vhat, v);
    let lhs = (two * c) * (two * c) * (T::one() - c * c);
    let diff: Vec<T> = vhat.iter().zip(v).map(|(&a, &b)| a - b).collect();
    let dist_sq = {
        let n = norm2(&diff);
        n * n
    };
    let rhs = dist_sq * (two - dist_sq) * (two - dist_sq) * (four - dist_sq) / four;
    Ok(IdentityCheck {
        lhs,
        rhs,
        agree: (lhs - rhs).abs() <= T::tol_identity(),
    })
}
