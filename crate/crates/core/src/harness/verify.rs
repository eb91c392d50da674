//! Self-checking property suites over seeded random instances.
//!
//! Each property draws `trials` instances from its own stream
//! `trial_rng(splitmix64(seed ^ salt), trial)`, so a failure is reproduced by its
//! `(seed, trial)` pair alone.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rng::{gaussian_matrix, random_frame, splitmix64, symmetric_noise, trial_rng, TrialRng};
use crate::bounds::{BlockSelection, Side, SvdInstance, SymmetricInstance};
use crate::error::Result;
use crate::matrix_core::{
    kron, operator_norm, svd, sym_eig, unvec, vec, weyl_check, wielandt_hoffman_check, DenseMatrix,
    SymmetricMatrix,
};
use crate::subspace::{
    cross_gram_deficit, principal_angles, procrustes_align, sin2theta_identity_check,
    sin_theta_frobenius, sin_theta_operator, SubspaceFrame,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Bounds,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Test-only corruption used to exercise the failure path.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Scales one frame by 1.5 before the `d − ‖V̂ᵀV‖_F²` identity is checked.
    CorruptFrame,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial_index: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub suite: Suite,
    pub instances: u64,
    pub failures: u64,
    /// Largest discrepancy seen: `|lhs − rhs|` for identities, `lhs − rhs` for inequalities.
    pub worst_margin: f64,
    pub first_failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: u64,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let status = if p.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<28} {}/{} worst_margin={:.3e}",
                p.name,
                p.instances - p.failures,
                p.instances,
                p.worst_margin
            )?;
            if let Some(fail) = &p.first_failure {
                writeln!(
                    f,
                    "     first failure: seed={} trial={} {}",
                    self.seed, fail.trial_index, fail.detail
                )?;
            }
        }
        let failed = self.properties.iter().filter(|p| p.failures > 0).count();
        write!(
            f,
            "{} of {} properties passed (suite={:?}, seed={}, trials={})",
            self.properties.len() - failed,
            self.properties.len(),
            self.suite,
            self.seed,
            self.trials
        )
    }
}

/// Outcome on one instance.
struct Sample {
    ok: bool,
    margin: f64,
    detail: String,
}

impl Sample {
    fn equal(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = (lhs - rhs).abs();
        Sample {
            ok: margin <= tol,
            margin,
            detail: format!("{name}: {lhs:e} != {rhs:e} (tol {tol:e})"),
        }
    }

    fn at_most(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = lhs - rhs;
        Sample {
            ok: margin <= tol,
            margin,
            detail: format!("{name}: {lhs:e} > {rhs:e} (tol {tol:e})"),
        }
    }

    fn all(parts: Vec<Sample>) -> Self {
        let margin = parts
            .iter()
            .map(|s| s.margin)
            .fold(f64::NEG_INFINITY, f64::max);
        match parts.into_iter().find(|s| !s.ok) {
            Some(bad) => Sample { margin, ..bad },
            None => Sample {
                ok: true,
                margin,
                detail: String::new(),
            },
        }
    }

    fn violations(list: Vec<String>) -> Self {
        Sample {
            ok: list.is_empty(),
            margin: 0.0,
            detail: list.join("; "),
        }
    }
}

type PropertyFn = fn(&mut TrialRng, Option<Fault>) -> Result<Sample>;

const ALGEBRAIC: f64 = 1e-12;
const IDENTITY: f64 = 1e-10;
const CHAINED: f64 = 1e-8;

const PROPERTIES: &[(&str, Suite, u64, PropertyFn)] = &[
    (
        "lemma_orthonormal_columns",
        Suite::Identities,
        1,
        lemma_columns,
    ),
    ("lemma_orthonormal_rows", Suite::Identities, 2, lemma_rows),
    ("weyl", Suite::Identities, 3, weyl),
    ("wielandt_hoffman", Suite::Identities, 4, wielandt_hoffman),
    ("vec_kron", Suite::Identities, 5, vec_kron),
    (
        "sin_theta_cross_gram",
        Suite::Identities,
        6,
        sin_theta_cross_gram,
    ),
    ("alignment_chain", Suite::Identities, 7, alignment_chain),
    ("sin_two_theta", Suite::Identities, 8, sin_two_theta),
    ("gap_lower_chain", Suite::Identities, 9, gap_lower_chain),
    ("basis_invariance", Suite::Identities, 10, basis_invariance),
    (
        "eigen_reconstruction",
        Suite::Identities,
        11,
        eigen_reconstruction,
    ),
    (
        "svd_reconstruction",
        Suite::Identities,
        12,
        svd_reconstruction,
    ),
    (
        "symmetric_soundness",
        Suite::Bounds,
        101,
        symmetric_soundness,
    ),
    ("joint_scaling", Suite::Bounds, 102, joint_scaling),
    ("singular_soundness", Suite::Bounds, 103, singular_soundness),
];

/// Runs every property of `suite` on `trials` instances each. Solver errors on an instance
/// count as failures of that property.
pub fn run_verify(suite: Suite, trials: u64, seed: u64, fault: Option<Fault>) -> VerifyReport {
    let properties = PROPERTIES
        .iter()
        .filter(|(_, s, _, _)| suite.includes(*s))
        .map(|&(name, s, salt, f)| {
            let stream = splitmix64(seed ^ salt);
            let mut res = PropertyResult {
                name: name.to_string(),
                suite: s,
                instances: trials,
                failures: 0,
                worst_margin: f64::NEG_INFINITY,
                first_failure: None,
            };
            for t in 0..trials {
                let mut rng = trial_rng(stream, t);
                let sample = f(&mut rng, fault).unwrap_or_else(|e| Sample {
                    ok: false,
                    margin: f64::INFINITY,
                    detail: format!("error: {e}"),
                });
                res.worst_margin = res.worst_margin.max(sample.margin);
                if !sample.ok {
                    res.failures += 1;
                    if res.first_failure.is_none() {
                        res.first_failure = Some(Failure {
                            trial_index: t,
                            detail: sample.detail,
                        });
                    }
                }
            }
            res
        })
        .collect();
    VerifyReport {
        suite,
        seed,
        trials,
        properties,
    }
}

fn dims(rng: &mut TrialRng, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}

fn frame_pair(rng: &mut TrialRng) -> (SubspaceFrame<f64>, SubspaceFrame<f64>) {
    let p = dims(rng, 2, 9);
    let d = dims(rng, 1, p);
    let v = SubspaceFrame::from_trusted(random_frame(rng, p, d));
    // mix of nearby and unrelated subspaces
    let vhat = if rng.random_bool(0.5) {
        SubspaceFrame::from_trusted(random_frame(rng, p, d))
    } else {
        let t = 10f64.powf(-rng.random_range(0.0..8.0));
        let nudged = v
            .basis()
            .checked_add(&gaussian_matrix(rng, p, d).scale(t))
            .expect("same shape");
        SubspaceFrame::from_trusted(crate::matrix_core::qr(&nudged).expect("tall").0)
    };
    (vhat, v)
}

fn random_spectrum(rng: &mut TrialRng, p: usize) -> Vec<f64> {
    let mut values: Vec<f64> = (0..p).map(|_| rng.random_range(-3.0..5.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

fn random_symmetric_pair(
    rng: &mut TrialRng,
    p: usize,
) -> (SymmetricMatrix<f64>, SymmetricMatrix<f64>) {
    let values = random_spectrum(rng, p);
    let q = super::rng::haar_orthogonal(rng, p);
    let pop = SymmetricMatrix::from_spectrum(&q, &values).expect("orthogonal factor");
    let noise = rng.random_range(0.001..0.5);
    let samp = pop
        .sum(&symmetric_noise(rng, p).scale(noise))
        .expect("same shape");
    (pop, samp)
}

fn random_selection(rng: &mut TrialRng, p: usize) -> BlockSelection {
    let r = dims(rng, 1, p);
    let s = dims(rng, r, p);
    BlockSelection { r, s }
}

fn lemma_columns(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (m, n) = (dims(rng, 1, 7), dims(rng, 1, 7));
    let (p, q) = (dims(rng, 1, m), dims(rng, 1, n));
    let a = gaussian_matrix(rng, m, n);
    let u = random_frame(rng, m, p);
    let w = random_frame(rng, n, q);
    let lhs = u.tr_matmul(&a)?.matmul(&w)?.frobenius_norm();
    let rhs = a.frobenius_norm();
    Ok(Sample::at_most(
        "||U^T A W||_F <= ||A||_F",
        lhs,
        rhs,
        ALGEBRAIC * rhs.max(1.0),
    ))
}

fn lemma_rows(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (m, n) = (dims(rng, 1, 7), dims(rng, 1, 7));
    let (p, q) = (dims(rng, m, 8), dims(rng, n, 8));
    let a = gaussian_matrix(rng, m, n);
    let u = random_frame(rng, p, m).transpose();
    let w = random_frame(rng, q, n).transpose();
    let lhs = u.tr_matmul(&a)?.matmul(&w)?.frobenius_norm();
    let rhs = a.frobenius_norm();
    Ok(Sample::equal(
        "||U^T A W||_F = ||A||_F",
        lhs,
        rhs,
        ALGEBRAIC * rhs.max(1.0),
    ))
}

fn weyl(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 1, 10);
    let (pop, samp) = random_symmetric_pair(rng, p);
    let diff = operator_norm(samp.difference(&pop)?.as_dense())?;
    let c = weyl_check(&sym_eig(&pop)?, &sym_eig(&samp)?, diff)?;
    Ok(Sample::at_most("weyl", c.lhs, c.rhs, IDENTITY))
}

fn wielandt_hoffman(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 1, 10);
    let (pop, samp) = random_symmetric_pair(rng, p);
    let diff = samp.difference(&pop)?.frobenius_norm();
    let c = wielandt_hoffman_check(&sym_eig(&pop)?, &sym_eig(&samp)?, diff)?;
    Ok(Sample::at_most("wielandt_hoffman", c.lhs, c.rhs, IDENTITY))
}

fn vec_kron(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (m, n, k, l) = (
        dims(rng, 1, 4),
        dims(rng, 1, 4),
        dims(rng, 1, 4),
        dims(rng, 1, 4),
    );
    let a = gaussian_matrix(rng, m, n);
    let b = gaussian_matrix(rng, n, k);
    let c = gaussian_matrix(rng, k, l);
    let direct = vec(&a.matmul(&b)?.matmul(&c)?);
    let via = kron(&c.transpose(), &a)?.mul_vec(&vec(&b))?;
    let diff = unvec(&direct, m, l)?
        .checked_sub(&unvec(&via, m, l)?)?
        .max_abs();
    let scale = a.frobenius_norm() * b.frobenius_norm() * c.frobenius_norm();
    Ok(Sample::at_most(
        "vec(ABC) = (C^T kron A) vec(B)",
        diff,
        0.0,
        ALGEBRAIC * scale.max(1.0),
    ))
}

fn sin_theta_cross_gram(rng: &mut TrialRng, fault: Option<Fault>) -> Result<Sample> {
    let (mut vhat, v) = frame_pair(rng);
    if fault == Some(Fault::CorruptFrame) {
        vhat = SubspaceFrame::from_trusted(vhat.basis().scale(1.5));
    }
    let sin = sin_theta_frobenius(&vhat, &v)?;
    let d = v.block_dim() as f64;
    Ok(Sample::equal(
        "d - ||V^T V||_F^2 = ||sin||_F^2",
        cross_gram_deficit(&vhat, &v)?,
        sin * sin,
        ALGEBRAIC * d,
    ))
}

fn alignment_chain(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (vhat, v) = frame_pair(rng);
    let d = v.block_dim() as f64;
    let dist = procrustes_align(&vhat, &v)?.distance;
    let cos_sum: f64 = principal_angles(&vhat, &v)?.cosines.iter().sum();
    let sin = sin_theta_frobenius(&vhat, &v)?;
    let middle = 2.0 * d - 2.0 * cos_sum;
    Ok(Sample::all(vec![
        Sample::equal("distance^2 = 2d - 2 sum cos", dist * dist, middle, IDENTITY),
        Sample::at_most(
            "2d - 2 sum cos <= 2 ||sin||_F^2",
            middle,
            2.0 * sin * sin,
            IDENTITY,
        ),
    ]))
}

fn sin_two_theta(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (vhat, v) = frame_pair(rng);
    let (a, b) = (vhat.basis().column(0), v.basis().column(0));
    let c = sin2theta_identity_check(&a, &b)?;
    Ok(Sample {
        ok: c.agree,
        ..Sample::equal("sin^2 2theta", c.lhs, c.rhs, IDENTITY)
    })
}

fn gap_lower_chain(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 2, 9);
    let (pop, samp) = random_symmetric_pair(rng, p);
    let mut sel = random_selection(rng, p);
    if sel.d() == p {
        sel.s = p - 1;
    }
    let chain = SymmetricInstance::new(pop, samp)?
        .proof_chain(sel)?
        .expect("proper block");
    Ok(Sample::all(vec![
        Sample::at_most(
            "gap * ||sin||_F <= ||V1^T V Lam - Lam1 V1^T V||_F",
            chain.gap_times_sin_theta,
            chain.complement_residual,
            CHAINED,
        ),
        Sample::at_most(
            "complement residual <= ||V Lam - Sigma V||_F",
            chain.complement_residual,
            chain.block_residual,
            CHAINED,
        ),
    ]))
}

fn basis_invariance(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (vhat, v) = frame_pair(rng);
    let d = v.block_dim();
    let r1 = super::rng::haar_orthogonal(rng, d);
    let r2 = super::rng::haar_orthogonal(rng, d);
    let (vhat2, v2) = (vhat.rotate(&r1)?, v.rotate(&r2)?);
    let before = principal_angles(&vhat, &v)?;
    let after = principal_angles(&vhat2, &v2)?;
    let mut parts: Vec<Sample> = before
        .cosines
        .iter()
        .zip(&after.cosines)
        .map(|(a, b)| Sample::equal("cosine", *a, *b, IDENTITY))
        .collect();
    parts.push(Sample::equal(
        "sin_F",
        sin_theta_frobenius(&vhat, &v)?,
        sin_theta_frobenius(&vhat2, &v2)?,
        IDENTITY,
    ));
    parts.push(Sample::equal(
        "sin_op",
        sin_theta_operator(&vhat, &v)?,
        sin_theta_operator(&vhat2, &v2)?,
        IDENTITY,
    ));
    parts.push(Sample::equal(
        "alignment",
        procrustes_align(&vhat, &v)?.distance,
        procrustes_align(&vhat2, &v2)?.distance,
        IDENTITY,
    ));
    Ok(Sample::all(parts))
}

fn eigen_reconstruction(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 1, 12);
    let a = symmetric_noise(rng, p);
    let e = sym_eig(&a)?;
    let res = e.reconstruct().checked_sub(&a)?.frobenius_norm();
    let tol = IDENTITY * a.frobenius_norm().max(1.0);
    Ok(Sample::all(vec![
        Sample::at_most("eigen residual", res, 0.0, tol),
        Sample::at_most(
            "eigenvector orthonormality",
            e.eigenvectors.orthonormality_residual(),
            0.0,
            tol,
        ),
    ]))
}

fn svd_reconstruction(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (p, q) = (dims(rng, 1, 12), dims(rng, 1, 12));
    let a = gaussian_matrix(rng, p, q);
    let f = svd(&a)?;
    let res = f.reconstruct().checked_sub(&a)?.frobenius_norm();
    let tol = IDENTITY * a.frobenius_norm().max(1.0);
    Ok(Sample::all(vec![
        Sample::at_most("svd residual", res, 0.0, tol),
        Sample::at_most(
            "left orthonormality",
            f.left.orthonormality_residual(),
            0.0,
            tol,
        ),
        Sample::at_most(
            "right orthonormality",
            f.right.orthonormality_residual(),
            0.0,
            tol,
        ),
    ]))
}

fn symmetric_soundness(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 1, 10);
    let (pop, samp) = random_symmetric_pair(rng, p);
    let sel = random_selection(rng, p);
    Ok(Sample::violations(
        SymmetricInstance::new(pop, samp)?.report(sel)?.violations(),
    ))
}

fn joint_scaling(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let p = dims(rng, 2, 8);
    let (pop, samp) = random_symmetric_pair(rng, p);
    let mut sel = random_selection(rng, p);
    if sel.d() == p {
        sel.r = 2;
    }
    let c = 10f64.powf(rng.random_range(-2.0..2.0));
    let base = SymmetricInstance::new(pop.clone(), samp.clone())?.report(sel)?;
    let scaled = SymmetricInstance::new(pop.scale(c), samp.scale(c))?.report(sel)?;
    let mut parts = vec![Sample::equal(
        "observed sin",
        base.observed_sin_theta_frob,
        scaled.observed_sin_theta_frob,
        IDENTITY,
    )];
    for (a, b) in [
        (&base.variant_sin, &scaled.variant_sin),
        (&base.variant_align, &scaled.variant_align),
    ] {
        if let (Some(x), Some(y)) = (a.bound(), b.bound()) {
            parts.push(Sample::equal(
                "variant bound / scale",
                x,
                y,
                IDENTITY * x.abs().max(1.0),
            ));
        }
    }
    Ok(Sample::all(parts))
}

fn singular_soundness(rng: &mut TrialRng, _: Option<Fault>) -> Result<Sample> {
    let (p, q) = (dims(rng, 1, 7), dims(rng, 1, 7));
    let m = p.min(q);
    let sigma: Vec<f64> = random_spectrum(rng, m)
        .into_iter()
        .map(f64::abs)
        .collect::<Vec<_>>();
    let mut sigma = sigma;
    sigma.sort_by(|a, b| b.total_cmp(a));
    let u = random_frame(rng, p, m);
    let v = random_frame(rng, q, m);
    let a = DenseMatrix::from_fn(p, m, |i, j| u[(i, j)] * sigma[j]).matmul(&v.transpose())?;
    let noise = rng.random_range(0.001..0.3);
    let ahat = a.checked_add(&gaussian_matrix(rng, p, q).scale(noise))?;
    let sel = random_selection(rng, m);
    let inst = SvdInstance::new(a, ahat)?;
    let mut v = Vec::new();
    for side in [Side::Right, Side::Left] {
        v.extend(inst.report(sel, side)?.violations());
    }
    Ok(Sample::violations(v))
}
