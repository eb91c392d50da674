//! Eigenvector and singular-vector perturbation bounds, observed against the actual
//! subspace distances.
//!
//! Every bound divides a perturbation size by a separation:
//!
//! | bound | numerator | separation |
//! |-------|-----------|------------|
//! | classical | `‖Σ̂ − Σ‖` (Frobenius or operator) | `δ`, sample eigenvalues vs population interval |
//! | variant | `2 min(d^{1/2}‖Σ̂ − Σ‖_op, ‖Σ̂ − Σ‖_F)` | population gap only |
//! | sharp numerator | `‖V̂Λ − ΣV̂‖_F` | population gap |
//! | singular vectors | `2(2σ₁ + ‖Â − A‖_op) min(d^{1/2}‖Â − A‖_op, ‖Â − A‖_F)` | squared singular value gap |
//!
//! Alignment-distance bounds carry an extra factor `2^{1/2}`.

mod gaps;
mod report;
mod singular;
mod symmetric;

pub use gaps::{classical_delta, population_gap, BlockSelection, GapInfo};
pub use report::{Assessment, BoundCheck, BoundReport, CorollaryReport, NormKind, NumeratorTerm};
pub use singular::{svd_variant_bounds, Side, SvdBoundReport, SvdInstance};
pub use symmetric::{
    classical_dk_bound, corollary_bounds, sharp_numerator_bounds, variant_bounds,
    ObservedDistances, ProofChain, SharpNumeratorBounds, SymmetricInstance,
};
