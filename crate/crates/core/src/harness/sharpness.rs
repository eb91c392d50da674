//! The two closed-form examples on which the variant bounds are attained or nearly so.

use serde::{Deserialize, Serialize};

use crate::bounds::{BlockSelection, BoundReport, SymmetricInstance};
use crate::error::{Error, Result};
use crate::matrix_core::{DenseMatrix, SymmetricMatrix};

/// `Σ = diag(3,…,3,1,…,1)` with `d` threes and `Σ̂ = diag(2−ε,…,2−ε,2,…,2)` with `p − d`
/// copies of `2 − ε`. The top-`d` eigenspaces are orthogonal and the alignment bound is
/// exceeded by exactly the factor `1 + ε`.
pub fn gen_sharpness_diag(
    p: usize,
    d: usize,
    epsilon: f64,
) -> Result<(SymmetricMatrix<f64>, SymmetricMatrix<f64>)> {
    if d < 1 || d > p / 2 {
        return Err(Error::Precondition(format!(
            "need 1 <= d <= p/2, got p={p} d={d}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Precondition(format!(
            "need epsilon > 0, got {epsilon}"
        )));
    }
    let pop: Vec<f64> = (0..p).map(|i| if i < d { 3.0 } else { 1.0 }).collect();
    let samp: Vec<f64> = (0..p)
        .map(|i| if i < p - d { 2.0 - epsilon } else { 2.0 })
        .collect();
    Ok((
        SymmetricMatrix::from_diag(&pop),
        SymmetricMatrix::from_diag(&samp),
    ))
}

/// `Σ = diag(3, 1)` and `Σ̂ = R·diag(3, 1)·Rᵀ` with `R` the rotation whose sine is `ε`.
pub fn gen_sharpness_rotation(
    epsilon: f64,
) -> Result<(SymmetricMatrix<f64>, SymmetricMatrix<f64>)> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Precondition(format!(
            "need 0 < epsilon < 1, got {epsilon}"
        )));
    }
    let c = (1.0 - epsilon * epsilon).sqrt();
    let r = DenseMatrix::from_rows(&[[c, -epsilon], [epsilon, c]])?;
    Ok((
        SymmetricMatrix::from_diag(&[3.0, 1.0]),
        SymmetricMatrix::from_spectrum(&r, &[3.0, 1.0])?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpnessExample {
    Diag,
    Rotation,
}

/// One row of a sharpness table: the headline observed value, its bound, their ratio and
/// the closed-form expectations, plus the full report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub example: SharpnessExample,
    pub p: usize,
    pub d: usize,
    pub epsilon: f64,
    /// Diag: alignment distance. Rotation: `sin θ` of the leading eigenvectors.
    pub observed: f64,
    pub bound: f64,
    pub ratio: f64,
    pub expected_observed: f64,
    pub expected_bound: f64,
    pub expected_ratio: f64,
    /// Rotation only: `‖v̂ − v‖` and its closed form `(2 − 2(1 − ε²)^{1/2})^{1/2}`.
    #[serde(default)]
    pub vector_distance: Option<f64>,
    #[serde(default)]
    pub expected_vector_distance: Option<f64>,
    pub report: BoundReport<f64>,
}

pub fn diag_sharpness(p: usize, d: usize, epsilon: f64) -> Result<SharpnessRow> {
    let (pop, samp) = gen_sharpness_diag(p, d, epsilon)?;
    let report = SymmetricInstance::new(pop, samp)?.report(BlockSelection::new(1, d, p)?)?;
    let check = *report
        .variant_align
        .check()
        .ok_or_else(|| Error::Precondition("zero gap".into()))?;
    let root = (2.0 * d as f64).sqrt();
    Ok(SharpnessRow {
        example: SharpnessExample::Diag,
        p,
        d,
        epsilon,
        observed: check.observed,
        bound: check.bound,
        ratio: check.ratio.unwrap_or(f64::NAN),
        expected_observed: root,
        expected_bound: root * (1.0 + epsilon),
        expected_ratio: 1.0 + epsilon,
        vector_distance: None,
        expected_vector_distance: None,
        report,
    })
}

pub fn rotation_sharpness(epsilon: f64) -> Result<SharpnessRow> {
    let (pop, samp) = gen_sharpness_rotation(epsilon)?;
    let report = SymmetricInstance::new(pop, samp)?.report(BlockSelection { r: 1, s: 1 })?;
    let corollary = report.corollary.clone().expect("one-dimensional block");
    let sin = *corollary.sin_theta.check().expect("gap is 2");
    let dist = corollary.distance.check().expect("gap is 2").observed;
    Ok(SharpnessRow {
        example: SharpnessExample::Rotation,
        p: 2,
        d: 1,
        epsilon,
        observed: sin.observed,
        bound: sin.bound,
        ratio: sin.ratio.unwrap_or(f64::NAN),
        expected_observed: epsilon,
        expected_bound: 2.0 * epsilon,
        expected_ratio: 2.0,
        vector_distance: Some(dist),
        expected_vector_distance: Some((2.0 - 2.0 * (1.0 - epsilon * epsilon).sqrt()).sqrt()),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_matrices() {
        let (pop, samp) = gen_sharpness_diag(4, 2, 0.1).unwrap();
        assert_eq!(pop.diagonal(), vec![3.0, 3.0, 1.0, 1.0]);
        assert_eq!(samp.diagonal(), vec![1.9, 1.9, 2.0, 2.0]);
        let (pop, samp) = gen_sharpness_diag(2, 1, 0.5).unwrap();
        assert_eq!(pop.diagonal(), vec![3.0, 1.0]);
        assert_eq!(samp.diagonal(), vec![1.5, 2.0]);
        assert!(gen_sharpness_diag(5, 3, 0.1).is_err());
        assert!(gen_sharpness_diag(4, 2, 0.0).is_err());
    }

    #[test]
    fn diag_ratio_is_one_plus_epsilon() {
        let row = diag_sharpness(10, 3, 0.05).unwrap();
        assert!((row.ratio - 1.05).abs() < 1e-12);
        assert!((row.observed - 6f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rotation_rows() {
        assert!(gen_sharpness_rotation(0.0).is_err());
        assert!(gen_sharpness_rotation(1.0).is_err());
        let row = rotation_sharpness(0.1).unwrap();
        assert!((row.observed - 0.1).abs() < 1e-14);
        assert!((row.report.diff_op_norm - 0.2).abs() < 1e-14);
        assert!((row.ratio - 2.0).abs() < 1e-12);
        let tiny = rotation_sharpness(1e-6).unwrap();
        let dist = tiny.vector_distance.unwrap();
        assert!((dist * dist - 1e-12).abs() < 1e-16);
    }
}
