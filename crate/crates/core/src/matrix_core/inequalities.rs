//! Spectrum comparison inequalities between a symmetric matrix and a perturbation of it.

use serde::{Deserialize, Serialize};

use super::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Left and right sides of an inequality `lhs ≤ rhs` and whether it held within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

impl<T: Scalar> InequalityCheck<T> {
    pub fn new(lhs: T, rhs: T, slack: T) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + slack,
        }
    }

    /// `lhs − rhs`; positive means violated before slack.
    pub fn excess(&self) -> T {
        self.lhs - self.rhs
    }
}

/// Weyl: `max_j |λ̂_j − λ_j| ≤ ‖Σ̂ − Σ‖_op`.
pub fn weyl_check<T: Scalar>(
    pop: &SpectralDecomposition<T>,
    samp: &SpectralDecomposition<T>,
    diff_op_norm: T,
) -> Result<InequalityCheck<T>> {
    let lhs = paired_deviations(pop, samp)?.fold(T::zero(), |m, d| m.max(d.abs()));
    Ok(InequalityCheck::new(lhs, diff_op_norm, T::tol_identity()))
}

/// Wielandt–Hoffman: `(Σ_j (λ̂_j − λ_j)²)^{1/2} ≤ ‖Σ̂ − Σ‖_F`.
pub fn wielandt_hoffman_check<T: Scalar>(
    pop: &SpectralDecomposition<T>,
    samp: &SpectralDecomposition<T>,
    diff_frob_norm: T,
) -> Result<InequalityCheck<T>> {
    let devs: Vec<T> = paired_deviations(pop, samp)?.collect();
    let lhs = super::norm2(&devs);
    Ok(InequalityCheck::new(lhs, diff_frob_norm, T::tol_identity()))
}

fn paired_deviations<'a, T: Scalar>(
    pop: &'a SpectralDecomposition<T>,
    samp: &'a SpectralDecomposition<T>,
) -> Result<impl Iterator<Item = T> + 'a> {
    if pop.dim() != samp.dim() {
        return Err(Error::DimensionMismatch {
            op: "spectrum comparison",
            detail: format!("{} vs {} eigenvalues", pop.dim(), samp.dim()),
        });
    }
    Ok(pop
        .eigenvalues
        .iter()
        .zip(&samp.eigenvalues)
        .map(|(&l, &lh)| lh - l))
}
