use thiserror::Error;

/// Errors raised by the numerical core, the bound evaluators and the harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("matrix has zero rows or columns")]
    Empty,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix size {rows}x{cols} overflows")]
    SizeOverflow { rows: usize, cols: usize },

    #[error("matrix is not symmetric: max asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    #[error("{solver} did not converge after {sweeps} sweeps (residual {residual:e})")]
    NonConvergence {
        solver: &'static str,
        sweeps: usize,
        residual: f64,
    },

    #[error("columns are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("singular value {value} of the cross product exceeds 1; frames are invalid")]
    InvalidFrames { value: f64 },

    #[error("subspace spans the whole space; orthogonal complement is empty")]
    EmptyComplement,

    #[error("zero vector")]
    ZeroVector,

    #[error("invalid block selection r={r}, s={s} for dimension {dim}")]
    InvalidSelection { r: usize, s: usize, dim: usize },

    #[error("spectrum is not in nonincreasing order at index {index}")]
    NonMonotoneSpectrum { index: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("invalid ensemble specification: {field}: {reason}")]
    InvalidSpec { field: &'static str, reason: String },

    #[error("trial {trial_index}: {source}")]
    Trial {
        trial_index: u64,
        source: Box<Error>,
    },

    #[error("soundness violation in trial {trial_index}: {message}")]
    Counterexample {
        trial_index: u64,
        message: String,
        counterexample: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
