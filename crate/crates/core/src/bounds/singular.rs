//! Bounds for blocks of right or left singular vectors of a rectangular matrix.
//!
//! Squared singular values are the eigenvalues of `AᵀA` (right) or `AAᵀ` (left), so the
//! gaps here are gaps of those Gram spectra: `σ_j² = 0` for `m < j ≤ dim` and `−∞` only past
//! the ambient dimension of the chosen side.

use serde::{Deserialize, Serialize};

use super::gaps::{gaps_with_floor, BlockSelection, GapInfo};
use super::report::{Assessment, BoundCheck, NumeratorTerm};
use crate::error::{Error, Result};
use crate::matrix_core::{operator_norm, svd, DenseMatrix, InequalityCheck, SvdFactorization};
use crate::scalar::Scalar;
use crate::subspace::{procrustes_align, sin_theta_frobenius, sin_theta_operator, SubspaceFrame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SvdBoundReport<T: Scalar> {
    pub side: Side,
    pub selection: BlockSelection,
    pub rank: usize,
    /// Gaps of the squared singular values.
    pub gaps: GapInfo<T>,
    pub sigma_one: T,
    pub diff_op_norm: T,
    pub diff_frob_norm: T,
    /// `2σ₁ + ‖Â − A‖_op`.
    pub factor: T,
    pub numerator_term: NumeratorTerm,
    pub observed_sin_theta_frob: T,
    pub observed_sin_theta_op: T,
    pub observed_alignment_distance: T,
    pub sin_theta: Assessment<T>,
    pub alignment: Assessment<T>,
    /// The symmetric bound applied directly to the Gram pair.
    pub reduction_sin_theta: Assessment<T>,
    pub reduction_alignment: Assessment<T>,
    /// `‖Ĝ − G‖_op ≤ (2σ₁ + ‖Â − A‖_op)‖Â − A‖_op` for the Gram matrices `G`.
    pub gram_op: InequalityCheck<T>,
    /// The Frobenius analogue of `gram_op`.
    pub gram_frob: InequalityCheck<T>,
}

impl<T: Scalar> SvdBoundReport<T> {
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = [
            self.sin_theta.violation("svd_sin_theta"),
            self.alignment.violation("svd_alignment"),
            self.reduction_sin_theta
                .violation("gram_reduction_sin_theta"),
            self.reduction_alignment
                .violation("gram_reduction_alignment"),
        ]
        .into_iter()
        .flatten()
        .collect();
        for (name, c) in [("gram_op", &self.gram_op), ("gram_frob", &self.gram_frob)] {
            if !c.holds {
                out.push(format!(
                    "{name}: {:e} exceeds {:e}",
                    c.lhs.as_f64(),
                    c.rhs.as_f64()
                ));
            }
        }
        if let (Some(f), Some(r)) = (self.sin_theta.bound(), self.reduction_sin_theta.bound()) {
            if r > f + T::tol_identity() * T::one().max(f) {
                out.push(format!(
                    "factored bound {:e} below Gram reduction bound {:e}",
                    f.as_f64(),
                    r.as_f64()
                ));
            }
        }
        out
    }
}

/// A pair of `p×q` matrices with both SVDs and the norms of the difference precomputed.
#[derive(Debug, Clone)]
pub struct SvdInstance<T: Scalar> {
    pub population: DenseMatrix<T>,
    pub sample: DenseMatrix<T>,
    pub population_svd: SvdFactorization<T>,
    pub sample_svd: SvdFactorization<T>,
    pub diff_op_norm: T,
    pub diff_frob_norm: T,
}

impl<T: Scalar> SvdInstance<T> {
    pub fn new(population: DenseMatrix<T>, sample: DenseMatrix<T>) -> Result<Self> {
        let diff = sample.checked_sub(&population)?;
        let population_svd = svd(&population)?;
        let sample_svd = svd(&sample)?;
        let diff_op_norm = operator_norm(&diff)?;
        let diff_frob_norm = diff.frobenius_norm();
        Ok(Self {
            population,
            sample,
            population_svd,
            sample_svd,
            diff_op_norm,
            diff_frob_norm,
        })
    }

    /// Number of singular values above `1e-10·σ₁` (double precision).
    pub fn rank(&self) -> usize {
        self.population_svd.rank(T::tol_identity())
    }

    pub fn sigma_one(&self) -> T {
        self.population_svd
            .singular_values
            .first()
            .copied()
            .unwrap_or_else(T::zero)
    }

    fn ambient_dim(&self, side: Side) -> usize {
        match side {
            Side::Right => self.population.cols(),
            Side::Left => self.population.rows(),
        }
    }

    fn vectors<'a>(&self, f: &'a SvdFactorization<T>, side: Side) -> &'a DenseMatrix<T> {
        match side {
            Side::Right => &f.right,
            Side::Left => &f.left,
        }
    }

    fn gram(&self, a: &DenseMatrix<T>, side: Side) -> DenseMatrix<T> {
        let g = match side {
            Side::Right => a.tr_matmul(a),
            Side::Left => a.matmul(&a.transpose()),
        };
        let g = g.expect("Gram product conforms");
        DenseMatrix::from_fn(g.rows(), g.cols(), |i, j| {
            (g[(i, j)] + g[(j, i)]) * T::lit(0.5)
        })
    }

    pub fn squared_gaps(&self, sel: BlockSelection, side: Side) -> Result<GapInfo<T>> {
        let dim = self.ambient_dim(side);
        sel.check(dim)?;
        let mut sq: Vec<T> = self
            .population_svd
            .singular_values
            .iter()
            .map(|&s| s * s)
            .collect();
        sq.resize(dim, T::zero());
        Ok(gaps_with_floor(&sq, sel, T::neg_infinity()))
    }

    fn precondition(&self, sel: BlockSelection, gaps: &GapInfo<T>) -> Result<()> {
        let rank = self.rank();
        if sel.s > rank {
            return Err(Error::Precondition(format!(
                "block end s = {} exceeds rank(A) = {rank}",
                sel.s
            )));
        }
        let sigma = self.sigma_one();
        if gaps.population_gap <= T::tol_symmetry() * sigma * sigma {
            return Err(Error::Precondition(format!(
                "squared singular value gap is not positive ({:e})",
                gaps.population_gap.as_f64()
            )));
        }
        Ok(())
    }

    pub fn report(&self, sel: BlockSelection, side: Side) -> Result<SvdBoundReport<T>> {
        let m = self.population_svd.singular_values.len();
        sel.check(m)?;
        let gaps = self.squared_gaps(sel, side)?;

        let v = SubspaceFrame::from_trusted(
            self.vectors(&self.population_svd, side)
                .column_block(sel.r - 1, sel.s),
        );
        let vhat = SubspaceFrame::from_trusted(
            self.vectors(&self.sample_svd, side)
                .column_block(sel.r - 1, sel.s),
        );
        let sin_f = sin_theta_frobenius(&vhat, &v)?;
        let sin_op = sin_theta_operator(&vhat, &v)?;
        let dist = procrustes_align(&vhat, &v)?.distance;

        let sigma_one = self.sigma_one();
        let factor = T::lit(2.0) * sigma_one + self.diff_op_norm;
        let d = T::from_count(sel.d());
        let op_term = d.sqrt() * self.diff_op_norm;
        let (numerator, numerator_term) = if op_term <= self.diff_frob_norm {
            (op_term, NumeratorTerm::Operator)
        } else {
            (self.diff_frob_norm, NumeratorTerm::Frobenius)
        };

        let g = self.gram(&self.population, side);
        let ghat = self.gram(&self.sample, side);
        let gdiff = ghat.checked_sub(&g)?;
        let gdiff_op = operator_norm(&gdiff)?;
        let gdiff_frob = gdiff.frobenius_norm();
        let gram_check =
            |lhs: T, rhs: T| InequalityCheck::new(lhs, rhs, T::tol_chained() * T::one().max(rhs));
        let gram_op = gram_check(gdiff_op, factor * self.diff_op_norm);
        let gram_frob = gram_check(gdiff_frob, factor * self.diff_frob_norm);

        let two = T::lit(2.0);
        let sqrt2 = T::SQRT_2();
        let (sin_theta, alignment, reduction_sin_theta, reduction_alignment) =
            match self.precondition(sel, &gaps) {
                Ok(()) => {
                    let gap = gaps.population_gap;
                    let bound = two * factor * numerator / gap;
                    let reduced = two * (d.sqrt() * gdiff_op).min(gdiff_frob) / gap;
                    (
                        Assessment::Applicable(BoundCheck::new(sin_f, bound)),
                        Assessment::Applicable(BoundCheck::new(dist, sqrt2 * bound)),
                        Assessment::Applicable(BoundCheck::new(sin_f, reduced)),
                        Assessment::Applicable(BoundCheck::new(dist, sqrt2 * reduced)),
                    )
                }
                Err(e) => {
                    let reason = e.to_string();
                    let na = || Assessment::Inapplicable {
                        reason: reason.clone(),
                    };
                    (na(), na(), na(), na())
                }
            };

        Ok(SvdBoundReport {
            side,
            selection: sel,
            rank: self.rank(),
            gaps,
            sigma_one,
            diff_op_norm: self.diff_op_norm,
            diff_frob_norm: self.diff_frob_norm,
            factor,
            numerator_term,
            observed_sin_theta_frob: sin_f,
            observed_sin_theta_op: sin_op,
            observed_alignment_distance: dist,
            sin_theta,
            alignment,
            reduction_sin_theta,
            reduction_alignment,
            gram_op,
            gram_frob,
        })
    }
}

/// Singular-vector bounds for the block `sel` on the given side. Fails when `s` exceeds the
/// numerical rank of `pop` or when the squared singular value gap is not positive.
pub fn svd_variant_bounds<T: Scalar>(
    pop: &DenseMatrix<T>,
    samp: &DenseMatrix<T>,
    sel: BlockSelection,
    side: Side,
) -> Result<SvdBoundReport<T>> {
    let inst = SvdInstance::new(pop.clone(), samp.clone())?;
    sel.check(inst.population_svd.singular_values.len())?;
    inst.precondition(sel, &inst.squared_gaps(sel, side)?)?;
    let report = inst.report(sel, side)?;
    let violations = report.violations();
    if violations.is_empty() {
        Ok(report)
    } else {
        Err(Error::BoundViolation(violations.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn embedded(s: &[f64], p: usize, q: usize) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(p, q, |i, j| if i == j && i < s.len() { s[i] } else { 0.0 })
    }

    #[test]
    fn identical_pair_has_zero_bound() {
        let a = DenseMatrix::<f64>::from_rows(&[[1.0, 2.0], [0.5, -1.0], [3.0, 0.0]]).unwrap();
        for side in [Side::Right, Side::Left] {
            let r = svd_variant_bounds(&a, &a, BlockSelection { r: 1, s: 1 }, side).unwrap();
            assert_eq!(r.sin_theta.bound(), Some(0.0));
            assert!(r.observed_sin_theta_frob < 1e-14);
        }
    }

    #[test]
    fn axis_aligned_rescaling() {
        let a = embedded(&[2.0, 1.0], 3, 2);
        let ahat = embedded(&[2.1, 0.9], 3, 2);
        let r = svd_variant_bounds(&a, &ahat, BlockSelection { r: 1, s: 1 }, Side::Right).unwrap();
        assert_eq!(r.observed_sin_theta_frob, 0.0);
        // factor 2·2 + 0.1, numerator 0.1, gap 4 − 1
        assert!((r.sin_theta.bound().unwrap() - 2.0 * 4.1 * 0.1 / 3.0).abs() < 1e-14);
        assert!(r.sin_theta.check().unwrap().holds);
    }

    #[test]
    fn selection_beyond_rank_is_rejected() {
        let a = embedded(&[2.0, 0.0], 3, 2);
        let err = svd_variant_bounds(&a, &a, BlockSelection { r: 2, s: 2 }, Side::Right);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn rank_deficient_gap_uses_zero_not_minus_infinity() {
        // A = diag(1, 0): s = rank = 1 < q. The Gram spectrum is (1, 0), so the lower gap is 1.
        let a = embedded(&[1.0, 0.0], 2, 2);
        let t: f64 = 0.3;
        let ahat = DenseMatrix::from_rows(&[[t.cos(), t.sin()], [0.0, 0.0]]).unwrap();
        let r = svd_variant_bounds(&a, &ahat, BlockSelection { r: 1, s: 1 }, Side::Right).unwrap();
        assert_eq!(r.gaps.lower_gap, 1.0);
        assert!((r.observed_sin_theta_frob - t.sin()).abs() < 1e-14);
        assert!(r.sin_theta.bound().unwrap() > 0.0);
    }

    #[test]
    fn full_rank_square_block_reaches_minus_infinity() {
        let a = embedded(&[3.0, 1.0], 2, 2);
        let g = SvdInstance::new(a.clone(), a)
            .unwrap()
            .squared_gaps(BlockSelection { r: 1, s: 2 }, Side::Left)
            .unwrap();
        assert_eq!(g.population_gap, f64::INFINITY);
    }
}
