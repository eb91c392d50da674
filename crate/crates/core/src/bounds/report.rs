use serde::{Deserialize, Serialize};

use super::gaps::{BlockSelection, GapInfo};
use crate::scalar::Scalar;

/// One observed distance against one bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck<T> {
    pub observed: T,
    pub bound: T,
    pub holds: bool,
    /// `bound / observed`; absent when the observed distance is numerically zero.
    pub ratio: Option<T>,
}

impl<T: Scalar> BoundCheck<T> {
    pub fn new(observed: T, bound: T) -> Self {
        Self::with_slack(observed, bound, T::tol_chained())
    }

    pub fn with_slack(observed: T, bound: T, slack: T) -> Self {
        let floor = T::epsilon() * T::lit(1e4);
        let ratio = if observed > floor {
            Some(bound / observed)
        } else {
            None
        };
        Self {
            observed,
            bound,
            holds: observed <= bound + slack,
            ratio,
        }
    }
}

/// A bound that either applies (with its check) or whose theorem precondition failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Assessment<T> {
    Applicable(BoundCheck<T>),
    Inapplicable { reason: String },
}

impl<T: Scalar> Assessment<T> {
    pub fn check(&self) -> Option<&BoundCheck<T>> {
        match self {
            Assessment::Applicable(c) => Some(c),
            Assessment::Inapplicable { .. } => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, Assessment::Applicable(_))
    }

    pub fn bound(&self) -> Option<T> {
        self.check().map(|c| c.bound)
    }

    pub fn ratio(&self) -> Option<T> {
        self.check().and_then(|c| c.ratio)
    }

    pub(crate) fn violation(&self, name: &str) -> Option<String> {
        match self {
            Assessment::Applicable(c) if !c.holds => Some(format!(
                "{name}: observed {:e} exceeds bound {:e}",
                c.observed.as_f64(),
                c.bound.as_f64()
            )),
            _ => None,
        }
    }
}

/// Which term attains `min(d^{1/2}‖Δ‖_op, ‖Δ‖_F)` in the variant numerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumeratorTerm {
    Operator,
    Frobenius,
}

/// Which norm the classical bound is stated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Frobenius,
    Operator,
}

/// Single-eigenvector bounds for index `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct CorollaryReport<T: Scalar> {
    pub index: usize,
    #[serde(with = "crate::serde_ext::extended")]
    pub gap: T,
    /// `sin Θ(v̂_j, v_j) ≤ 2‖Σ̂ − Σ‖_op / gap`.
    pub sin_theta: Assessment<T>,
    /// `‖v̂_j − v_j‖ ≤ 2^{3/2}‖Σ̂ − Σ‖_op / gap` after orienting `v̂_jᵀv_j ≥ 0`.
    pub distance: Assessment<T>,
}

/// Observed subspace distances for a symmetric pair and every bound evaluated on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct BoundReport<T: Scalar> {
    pub selection: BlockSelection,
    pub gaps: GapInfo<T>,
    pub diff_op_norm: T,
    pub diff_frob_norm: T,
    pub observed_sin_theta_frob: T,
    pub observed_sin_theta_op: T,
    pub observed_alignment_distance: T,
    /// `‖Σ̂ − Σ‖_F / δ` against the Frobenius sin Θ.
    pub classical_frobenius: Assessment<T>,
    /// `‖Σ̂ − Σ‖_op / δ` against the operator sin Θ.
    pub classical_operator: Assessment<T>,
    /// `2 min(d^{1/2}‖Δ‖_op, ‖Δ‖_F) / gap` against the Frobenius sin Θ.
    pub variant_sin: Assessment<T>,
    /// `2^{3/2} min(d^{1/2}‖Δ‖_op, ‖Δ‖_F) / gap` against the alignment distance.
    pub variant_align: Assessment<T>,
    /// `‖V̂Λ − ΣV̂‖_F / gap` against the Frobenius sin Θ.
    pub sharp_numerator_sin: Assessment<T>,
    /// `2^{1/2}‖V̂Λ − ΣV̂‖_F / gap` against the alignment distance.
    pub sharp_numerator_align: Assessment<T>,
    pub numerator_term: NumeratorTerm,
    /// Present for one-dimensional blocks.
    pub corollary: Option<CorollaryReport<T>>,
    /// `r = 1, s = p`: both subspaces are the whole space.
    pub full_block: bool,
}

impl<T: Scalar> BoundReport<T> {
    /// Every soundness or ordering failure recorded in the report.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = [
            ("classical_frobenius", &self.classical_frobenius),
            ("classical_operator", &self.classical_operator),
            ("variant_sin", &self.variant_sin),
            ("variant_align", &self.variant_align),
            ("sharp_numerator_sin", &self.sharp_numerator_sin),
            ("sharp_numerator_align", &self.sharp_numerator_align),
        ]
        .iter()
        .filter_map(|(name, a)| a.violation(name))
        .collect();
        let slack = T::tol_identity();
        for (name, sharp, variant) in [
            ("sin", &self.sharp_numerator_sin, &self.variant_sin),
            ("align", &self.sharp_numerator_align, &self.variant_align),
        ] {
            if let (Some(sb), Some(vb)) = (sharp.bound(), variant.bound()) {
                if sb > vb + slack {
                    out.push(format!(
                        "sharp numerator {name} bound {:e} exceeds variant bound {:e}",
                        sb.as_f64(),
                        vb.as_f64()
                    ));
                }
            }
        }
        if let Some(c) = &self.corollary {
            out.extend(c.sin_theta.violation("corollary_sin_theta"));
            out.extend(c.distance.violation("corollary_distance"));
        }
        out
    }
}
