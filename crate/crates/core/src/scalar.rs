//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Numerical tolerances used by decompositions, frame validation and bound checks.
///
/// The `f64` values are the ones the rest of the crate is calibrated against; `f32`
/// gets looser values scaled to its machine epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative asymmetry accepted by [`SymmetricMatrix`](crate::SymmetricMatrix).
    pub symmetry: f64,
    /// Relative off-diagonal mass at which Jacobi sweeps stop.
    pub convergence: f64,
    /// Sweep limit for the Jacobi solvers.
    pub max_sweeps: usize,
    /// Orthonormality residual accepted for subspace frames.
    pub frame: f64,
    /// Slack for purely algebraic identities.
    pub identity: f64,
    /// Slack for inequalities that chain several spectral computations.
    pub chained: f64,
}

/// Floating point scalar usable by the decompositions and the bound evaluators.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + serde::Serialize
    + serde::de::DeserializeOwned
    + Send
    + Sync
    + 'static
{
    const TOLERANCES: Tolerances;

    /// Converts an `f64` literal; every value used by the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal not representable")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count not representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    fn tol_symmetry() -> Self {
        Self::lit(Self::TOLERANCES.symmetry)
    }

    fn tol_convergence() -> Self {
        Self::lit(Self::TOLERANCES.convergence)
    }

    fn tol_frame() -> Self {
        Self::lit(Self::TOLERANCES.frame)
    }

    fn tol_identity() -> Self {
        Self::lit(Self::TOLERANCES.identity)
    }

    fn tol_chained() -> Self {
        Self::lit(Self::TOLERANCES.chained)
    }
}

impl Scalar for f64 {
    const TOLERANCES: Tolerances = Tolerances {
        symmetry: 1e-12,
        convergence: 1e-14,
        max_sweeps: 60,
        frame: 1e-10,
        identity: 1e-10,
        chained: 1e-8,
    };
}

impl Scalar for f32 {
    const TOLERANCES: Tolerances = Tolerances {
        symmetry: 1e-5,
        convergence: 5e-6,
        max_sweeps: 60,
        frame: 1e-4,
        identity: 1e-4,
        chained: 1e-3,
    };
}
