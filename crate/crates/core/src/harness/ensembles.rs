//! Random population/sample pairs for Monte Carlo campaigns.

use serde::{Deserialize, Serialize};

use super::rng::{gaussian_matrix, haar_orthogonal, symmetric_noise, trial_rng};
use crate::bounds::BlockSelection;
use crate::error::{Error, Result};
use crate::matrix_core::{DenseMatrix, SymmetricMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    SpikedSymmetric,
    Rectangular,
}

/// Population eigenvalues (symmetric) or singular values (rectangular).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spectrum {
    /// Nonincreasing list; shorter lists are padded with their last value.
    Explicit(Vec<f64>),
    /// `count` copies of `top` followed by `bulk`.
    Spiked { top: f64, bulk: f64, count: usize },
}

impl Spectrum {
    /// The spectrum expanded to exactly `len` values.
    pub fn resolve(&self, len: usize) -> Result<Vec<f64>> {
        let invalid = |reason: String| Error::InvalidSpec {
            field: "spectrum",
            reason,
        };
        let values = match self {
            Spectrum::Explicit(v) => {
                let last = *v.last().ok_or_else(|| invalid("empty list".into()))?;
                if v.len() > len {
                    return Err(invalid(format!("{} values for dimension {len}", v.len())));
                }
                let mut out = v.clone();
                out.resize(len, last);
                out
            }
            Spectrum::Spiked { top, bulk, count } => {
                if *count > len {
                    return Err(invalid(format!(
                        "spike count {count} exceeds dimension {len}"
                    )));
                }
                (0..len)
                    .map(|i| if i < *count { *top } else { *bulk })
                    .collect()
            }
        };
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            return Err(invalid(format!("non-finite value {x}")));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(invalid(format!("not nonincreasing at position {}", i + 1)));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub p: usize,
    /// Column count; required for rectangular ensembles, ignored otherwise.
    #[serde(default)]
    pub q: Option<usize>,
    pub spectrum: Spectrum,
    pub noise_scale: f64,
    pub trials: u64,
    pub seed: u64,
    pub selection: BlockSelection,
}

impl EnsembleSpec {
    pub fn spiked(
        p: usize,
        spectrum: Spectrum,
        noise_scale: f64,
        trials: u64,
        seed: u64,
        selection: BlockSelection,
    ) -> Self {
        Self {
            kind: EnsembleKind::SpikedSymmetric,
            p,
            q: None,
            spectrum,
            noise_scale,
            trials,
            seed,
            selection,
        }
    }

    pub fn rectangular(
        p: usize,
        q: usize,
        spectrum: Spectrum,
        noise_scale: f64,
        trials: u64,
        seed: u64,
        selection: BlockSelection,
    ) -> Self {
        Self {
            kind: EnsembleKind::Rectangular,
            p,
            q: Some(q),
            spectrum,
            noise_scale,
            trials,
            seed,
            selection,
        }
    }

    fn spectrum_len(&self) -> Result<usize> {
        match self.kind {
            EnsembleKind::SpikedSymmetric => Ok(self.p),
            EnsembleKind::Rectangular => {
                let q = self.q.ok_or(Error::InvalidSpec {
                    field: "q",
                    reason: "required for rectangular ensembles".into(),
                })?;
                if q == 0 {
                    return Err(Error::InvalidSpec {
                        field: "q",
                        reason: "must be positive".into(),
                    });
                }
                Ok(self.p.min(q))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidSpec {
                field: "p",
                reason: "must be positive".into(),
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidSpec {
                field: "trials",
                reason: "must be at least 1".into(),
            });
        }
        if !(self.noise_scale.is_finite() && self.noise_scale >= 0.0) {
            return Err(Error::InvalidSpec {
                field: "noise_scale",
                reason: format!("must be finite and nonnegative, got {}", self.noise_scale),
            });
        }
        let len = self.spectrum_len()?;
        let values = self.spectrum.resolve(len)?;
        if self.kind == EnsembleKind::Rectangular && values.iter().any(|&s| s < 0.0) {
            return Err(Error::InvalidSpec {
                field: "spectrum",
                reason: "singular values must be nonnegative".into(),
            });
        }
        let sel = self.selection;
        if sel.r < 1 || sel.r > sel.s || sel.s > len {
            return Err(Error::InvalidSpec {
                field: "selection",
                reason: format!("need 1 <= r <= s <= {len}, got r={} s={}", sel.r, sel.s),
            });
        }
        Ok(())
    }

    fn require(&self, kind: EnsembleKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidSpec {
                field: "kind",
                reason: format!("expected {kind:?}"),
            });
        }
        self.validate()
    }
}

/// `Σ = Q·diag(spectrum)·Qᵀ` with Haar `Q`, and `Σ̂ = Σ + noise_scale·W` with
/// [`symmetric_noise`] `W`. Deterministic in `(seed, trial_index)`.
pub fn gen_spiked_symmetric(
    spec: &EnsembleSpec,
    trial_index: u64,
) -> Result<(SymmetricMatrix<f64>, SymmetricMatrix<f64>)> {
    spec.require(EnsembleKind::SpikedSymmetric)?;
    let values = spec.spectrum.resolve(spec.p)?;
    let mut rng = trial_rng(spec.seed, trial_index);
    let q = haar_orthogonal(&mut rng, spec.p);
    let pop = SymmetricMatrix::from_spectrum(&q, &values)?;
    let noise = symmetric_noise(&mut rng, spec.p).scale(spec.noise_scale);
    let samp = pop.sum(&noise)?;
    Ok((pop, samp))
}

/// `A = U·diag(σ)·Vᵀ` with Haar factors, and `Â = A + noise_scale·G` with Gaussian `G`.
pub fn gen_rectangular(
    spec: &EnsembleSpec,
    trial_index: u64,
) -> Result<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    spec.require(EnsembleKind::Rectangular)?;
    let (p, q) = (spec.p, spec.q.expect("validated"));
    let m = p.min(q);
    let sigma = spec.spectrum.resolve(m)?;
    let mut rng = trial_rng(spec.seed, trial_index);
    let u = haar_orthogonal(&mut rng, p).column_block(0, m);
    let v = haar_orthogonal(&mut rng, q).column_block(0, m);
    let us = DenseMatrix::from_fn(p, m, |i, j| u[(i, j)] * sigma[j]);
    let pop = us.matmul(&v.transpose())?;
    let noise = gaussian_matrix(&mut rng, p, q).scale(spec.noise_scale);
    let samp = pop.checked_add(&noise)?;
    Ok((pop, samp))
}
