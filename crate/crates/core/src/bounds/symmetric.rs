//! Bounds for eigenvector blocks of a symmetric matrix and its perturbation.

use serde::{Deserialize, Serialize};

use super::gaps::{classical_delta, population_gap, BlockSelection, GapInfo};
use super::report::{
    Assessment, BoundCheck, BoundReport, CorollaryReport, NormKind, NumeratorTerm,
};
use crate::error::{Error, Result};
use crate::matrix_core::{
    norm2, operator_norm, sym_eig, DenseMatrix, SpectralDecomposition, SymmetricMatrix,
};
use crate::scalar::Scalar;
use crate::subspace::{
    orient_sign, procrustes_align, sin_theta_frobenius, sin_theta_operator, SubspaceFrame,
};

/// Observed distances between the population block `V` and the sample block `V̂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservedDistances<T> {
    pub sin_theta_frob: T,
    pub sin_theta_op: T,
    pub alignment_distance: T,
}

/// The three quantities of the lower-bound chain
/// `gap·‖sin Θ‖_F ≤ ‖V₁ᵀV̂Λ − Λ₁V₁ᵀV̂‖_F ≤ ‖V̂Λ − ΣV̂‖_F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProofChain<T> {
    pub gap_times_sin_theta: T,
    pub complement_residual: T,
    pub block_residual: T,
    pub holds: bool,
}

/// Sharper variant bounds built from `‖V̂Λ − ΣV̂‖_F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpNumeratorBounds<T> {
    pub numerator: T,
    pub sin_theta: BoundCheck<T>,
    pub alignment: BoundCheck<T>,
}

/// A population/sample pair of symmetric matrices with both spectral decompositions and
/// the norms of their difference precomputed.
#[derive(Debug, Clone)]
pub struct SymmetricInstance<T: Scalar> {
    pub population: SymmetricMatrix<T>,
    pub sample: SymmetricMatrix<T>,
    pub population_eig: SpectralDecomposition<T>,
    pub sample_eig: SpectralDecomposition<T>,
    pub diff_op_norm: T,
    pub diff_frob_norm: T,
}

impl<T: Scalar> SymmetricInstance<T> {
    pub fn new(population: SymmetricMatrix<T>, sample: SymmetricMatrix<T>) -> Result<Self> {
        if population.dim() != sample.dim() {
            return Err(Error::DimensionMismatch {
                op: "SymmetricInstance::new",
                detail: format!(
                    "{}x{} vs {}x{}",
                    population.dim(),
                    population.dim(),
                    sample.dim(),
                    sample.dim()
                ),
            });
        }
        let population_eig = sym_eig(&population)?;
        let sample_eig = sym_eig(&sample)?;
        let diff = sample.difference(&population)?;
        let diff_op_norm = operator_norm(&diff)?;
        let diff_frob_norm = diff.frobenius_norm();
        Ok(Self {
            population,
            sample,
            population_eig,
            sample_eig,
            diff_op_norm,
            diff_frob_norm,
        })
    }

    pub fn dim(&self) -> usize {
        self.population.dim()
    }

    /// Gaps at or below this are treated as zero: `1e-12·max|λ|` in double precision.
    fn gap_floor(&self) -> T {
        let scale = self
            .population_eig
            .eigenvalues
            .iter()
            .fold(T::zero(), |m, x| m.max(x.abs()));
        T::tol_symmetry() * scale
    }

    pub fn gaps(&self, sel: BlockSelection) -> Result<GapInfo<T>> {
        let g = population_gap(&self.population_eig.eigenvalues, sel)?;
        let delta = classical_delta(
            &self.population_eig.eigenvalues,
            &self.sample_eig.eigenvalues,
            sel,
        )?;
        Ok(g.with_classical_delta(delta))
    }

    pub fn population_block(&self, sel: BlockSelection) -> SubspaceFrame<T> {
        SubspaceFrame::from_trusted(self.population_eig.block(sel.r, sel.s))
    }

    pub fn sample_block(&self, sel: BlockSelection) -> SubspaceFrame<T> {
        SubspaceFrame::from_trusted(self.sample_eig.block(sel.r, sel.s))
    }

    pub fn observed(&self, sel: BlockSelection) -> Result<ObservedDistances<T>> {
        sel.check(self.dim())?;
        let v = self.population_block(sel);
        let vhat = self.sample_block(sel);
        Ok(ObservedDistances {
            sin_theta_frob: sin_theta_frobenius(&vhat, &v)?,
            sin_theta_op: sin_theta_operator(&vhat, &v)?,
            alignment_distance: procrustes_align(&vhat, &v)?.distance,
        })
    }

    /// Classical sin θ bound `‖Σ̂ − Σ‖ / δ` in the requested norm, against the observed
    /// sin Θ in the same norm. Inapplicable when `δ` is not positive.
    pub fn classical(&self, sel: BlockSelection, norm: NormKind) -> Result<Assessment<T>> {
        let delta = self.gaps(sel)?.classical_delta.expect("computed by gaps");
        let observed = self.observed(sel)?;
        Ok(self.classical_from(delta, &observed, norm))
    }

    fn classical_from(
        &self,
        delta: T,
        observed: &ObservedDistances<T>,
        norm: NormKind,
    ) -> Assessment<T> {
        if delta <= self.gap_floor() {
            return Assessment::Inapplicable {
                reason: format!(
                    "classical separation delta = {:e} is not positive",
                    delta.as_f64()
                ),
            };
        }
        let (numerator, seen) = match norm {
            NormKind::Frobenius => (self.diff_frob_norm, observed.sin_theta_frob),
            NormKind::Operator => (self.diff_op_norm, observed.sin_theta_op),
        };
        Assessment::Applicable(BoundCheck::new(seen, numerator / delta))
    }

    /// `min(d^{1/2}‖Σ̂ − Σ‖_op, ‖Σ̂ − Σ‖_F)` and which term attained it.
    pub fn variant_numerator(&self, d: usize) -> (T, NumeratorTerm) {
        let op_term = T::from_count(d).sqrt() * self.diff_op_norm;
        if op_term <= self.diff_frob_norm {
            (op_term, NumeratorTerm::Operator)
        } else {
            (self.diff_frob_norm, NumeratorTerm::Frobenius)
        }
    }

    fn require_gap(&self, gaps: &GapInfo<T>) -> Result<()> {
        if gaps.population_gap <= self.gap_floor() {
            let which = if gaps.upper_gap <= gaps.lower_gap {
                "upper"
            } else {
                "lower"
            };
            return Err(Error::Precondition(format!(
                "population eigen-gap is not positive ({which} gap = {:e})",
                gaps.population_gap.as_f64()
            )));
        }
        Ok(())
    }

    /// `‖V̂Λ − ΣV̂‖_F` with `Λ = diag(λ_r, …, λ_s)`.
    pub fn block_residual(&self, sel: BlockSelection) -> Result<T> {
        sel.check(self.dim())?;
        let vhat = self.sample_eig.block(sel.r, sel.s);
        let lambda = &self.population_eig.eigenvalues[sel.r - 1..sel.s];
        let scaled =
            DenseMatrix::from_fn(vhat.rows(), vhat.cols(), |i, j| vhat[(i, j)] * lambda[j]);
        let sigma_vhat = self.population.matmul(&vhat)?;
        Ok((&scaled - &sigma_vhat).frobenius_norm())
    }

    pub fn sharp_numerator(&self, sel: BlockSelection) -> Result<SharpNumeratorBounds<T>> {
        let gaps = self.gaps(sel)?;
        self.require_gap(&gaps)?;
        let observed = self.observed(sel)?;
        let numerator = self.block_residual(sel)?;
        Ok(self.sharp_from(numerator, gaps.population_gap, &observed))
    }

    fn sharp_from(
        &self,
        numerator: T,
        gap: T,
        observed: &ObservedDistances<T>,
    ) -> SharpNumeratorBounds<T> {
        SharpNumeratorBounds {
            numerator,
            sin_theta: BoundCheck::new(observed.sin_theta_frob, numerator / gap),
            alignment: BoundCheck::new(observed.alignment_distance, T::SQRT_2() * numerator / gap),
        }
    }

    /// The middle step `‖V₁ᵀV̂Λ − Λ₁V₁ᵀV̂‖_F` of the lower-bound chain, with both neighbours.
    /// `None` for a block covering the whole space, where the chain is vacuous.
    pub fn proof_chain(&self, sel: BlockSelection) -> Result<Option<ProofChain<T>>> {
        sel.check(self.dim())?;
        let p = self.dim();
        if sel.d() == p {
            return Ok(None);
        }
        let gaps = self.gaps(sel)?;
        let observed = self.observed(sel)?;
        let v1 = self.population_eig.complement_block(sel.r, sel.s);
        let lambda1: Vec<T> = (1..=p)
            .filter(|j| !sel.contains(*j))
            .map(|j| self.population_eig.eigenvalues[j - 1])
            .collect();
        let lambda = &self.population_eig.eigenvalues[sel.r - 1..sel.s];
        let vhat = self.sample_eig.block(sel.r, sel.s);
        let c = v1.tr_matmul(&vhat)?;
        let middle = DenseMatrix::from_fn(c.rows(), c.cols(), |i, j| {
            c[(i, j)] * (lambda[j] - lambda1[i])
        });
        let complement_residual = middle.frobenius_norm();
        let block_residual = self.block_residual(sel)?;
        let gap_times_sin_theta = gaps.population_gap * observed.sin_theta_frob;
        let slack = T::tol_chained();
        let holds = gap_times_sin_theta <= complement_residual + slack
            && complement_residual <= block_residual + slack;
        Ok(Some(ProofChain {
            gap_times_sin_theta,
            complement_residual,
            block_residual,
            holds,
        }))
    }

    pub fn corollary(&self, j: usize) -> Result<CorollaryReport<T>> {
        let sel = BlockSelection::single(j, self.dim())?;
        let gap = population_gap(&self.population_eig.eigenvalues, sel)?.population_gap;
        let v = self.population_eig.eigenvectors.column(j - 1);
        let vhat = orient_sign(&self.sample_eig.eigenvectors.column(j - 1), &v)?;
        let sin = sin_theta_operator(
            &SubspaceFrame::from_trusted(DenseMatrix::from_columns(&[&vhat])?),
            &SubspaceFrame::from_trusted(DenseMatrix::from_columns(&[&v])?),
        )?;
        let diff: Vec<T> = vhat.iter().zip(&v).map(|(&a, &b)| a - b).collect();
        let distance = norm2(&diff);

        let (sin_theta, dist) = if gap <= self.gap_floor() {
            let reason = format!(
                "eigen-gap at index {j} is not positive ({:e})",
                gap.as_f64()
            );
            (
                Assessment::Inapplicable {
                    reason: reason.clone(),
                },
                Assessment::Inapplicable { reason },
            )
        } else {
            let two = T::lit(2.0);
            (
                Assessment::Applicable(BoundCheck::new(sin, two * self.diff_op_norm / gap)),
                Assessment::Applicable(BoundCheck::new(
                    distance,
                    two * T::SQRT_2() * self.diff_op_norm / gap,
                )),
            )
        };
        Ok(CorollaryReport {
            index: j,
            gap,
            sin_theta,
            distance: dist,
        })
    }

    /// Every bound for the block `sel`. Failed theorem preconditions are recorded as
    /// [`Assessment::Inapplicable`]; soundness is not enforced here, see
    /// [`BoundReport::violations`].
    pub fn report(&self, sel: BlockSelection) -> Result<BoundReport<T>> {
        let gaps = self.gaps(sel)?;
        let observed = self.observed(sel)?;
        let delta = gaps.classical_delta.expect("computed by gaps");
        let d = sel.d();
        let (numerator, numerator_term) = self.variant_numerator(d);

        let (variant_sin, variant_align, sharp_sin, sharp_align) = match self.require_gap(&gaps) {
            Ok(()) => {
                let gap = gaps.population_gap;
                let two = T::lit(2.0);
                let sin_bound = two * numerator / gap;
                let sharp = self.sharp_from(self.block_residual(sel)?, gap, &observed);
                (
                    Assessment::Applicable(BoundCheck::new(observed.sin_theta_frob, sin_bound)),
                    Assessment::Applicable(BoundCheck::new(
                        observed.alignment_distance,
                        T::SQRT_2() * sin_bound,
                    )),
                    Assessment::Applicable(sharp.sin_theta),
                    Assessment::Applicable(sharp.alignment),
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

        Ok(BoundReport {
            selection: sel,
            gaps,
            diff_op_norm: self.diff_op_norm,
            diff_frob_norm: self.diff_frob_norm,
            observed_sin_theta_frob: observed.sin_theta_frob,
            observed_sin_theta_op: observed.sin_theta_op,
            observed_alignment_distance: observed.alignment_distance,
            classical_frobenius: self.classical_from(delta, &observed, NormKind::Frobenius),
            classical_operator: self.classical_from(delta, &observed, NormKind::Operator),
            variant_sin,
            variant_align,
            sharp_numerator_sin: sharp_sin,
            sharp_numerator_align: sharp_align,
            numerator_term,
            corollary: if d == 1 {
                Some(self.corollary(sel.r)?)
            } else {
                None
            },
            full_block: sel.r == 1 && sel.s == self.dim(),
        })
    }
}

fn ensure_sound(violations: Vec<String>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::BoundViolation(violations.join("; ")))
    }
}

/// Classical sin θ bound for `(Σ, Σ̂)` in the given norm.
pub fn classical_dk_bound<T: Scalar>(
    pop: &SymmetricMatrix<T>,
    samp: &SymmetricMatrix<T>,
    sel: BlockSelection,
    norm: NormKind,
) -> Result<Assessment<T>> {
    let a = SymmetricInstance::new(pop.clone(), samp.clone())?.classical(sel, norm)?;
    ensure_sound(a.violation("classical").into_iter().collect())?;
    Ok(a)
}

/// Population-gap bounds on `‖sin Θ(V̂, V)‖_F` and `min_O ‖V̂O − V‖_F`, with the full report.
/// Fails when the population eigen-gap around the block is not positive.
pub fn variant_bounds<T: Scalar>(
    pop: &SymmetricMatrix<T>,
    samp: &SymmetricMatrix<T>,
    sel: BlockSelection,
) -> Result<BoundReport<T>> {
    let inst = SymmetricInstance::new(pop.clone(), samp.clone())?;
    inst.require_gap(&inst.gaps(sel)?)?;
    let report = inst.report(sel)?;
    ensure_sound(report.violations())?;
    Ok(report)
}

/// Single-eigenvector bounds for index `j` (1-based).
pub fn corollary_bounds<T: Scalar>(
    pop: &SymmetricMatrix<T>,
    samp: &SymmetricMatrix<T>,
    j: usize,
) -> Result<CorollaryReport<T>> {
    let c = SymmetricInstance::new(pop.clone(), samp.clone())?.corollary(j)?;
    if !c.sin_theta.is_applicable() {
        return Err(Error::Precondition(format!(
            "eigen-gap at index {j} is not positive"
        )));
    }
    ensure_sound(
        c.sin_theta
            .violation("corollary_sin_theta")
            .into_iter()
            .chain(c.distance.violation("corollary_distance"))
            .collect(),
    )?;
    Ok(c)
}

/// Bounds with the smaller numerator `‖V̂Λ − ΣV̂‖_F`.
pub fn sharp_numerator_bounds<T: Scalar>(
    pop: &SymmetricMatrix<T>,
    samp: &SymmetricMatrix<T>,
    sel: BlockSelection,
) -> Result<SharpNumeratorBounds<T>> {
    SymmetricInstance::new(pop.clone(), samp.clone())?.sharp_numerator(sel)
}
