//! Distances between subspaces: principal angles, sin Θ norms and orthogonal alignment.

mod alignment;
mod angles;
mod frame;
mod vector;

pub use alignment::{procrustes_align, Alignment};
pub use angles::{
    cross_gram_deficit, principal_angles, sin_theta_frobenius, sin_theta_operator,
    PrincipalAngleSet,
};
pub use frame::SubspaceFrame;
pub use vector::{orient_sign, sin2theta_identity_check, IdentityCheck};

use crate::error::{Error, Result};

fn check_same_shape<T: crate::Scalar>(
    op: &'static str,
    vhat: &SubspaceFrame<T>,
    v: &SubspaceFrame<T>,
) -> Result<()> {
    if vhat.ambient_dim() != v.ambient_dim() || vhat.block_dim() != v.block_dim() {
        return Err(Error::DimensionMismatch {
            op,
            detail: format!(
                "frames are {}x{} and {}x{}",
                vhat.ambient_dim(),
                vhat.block_dim(),
                v.ambient_dim(),
                v.block_dim()
            ),
        });
    }
    Ok(())
}
