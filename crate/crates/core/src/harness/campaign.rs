//! Monte Carlo campaigns: generate, evaluate every bound, abort on the first violation,
//! and aggregate tightness ratios.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensembles::{gen_rectangular, gen_spiked_symmetric, EnsembleKind, EnsembleSpec};
use crate::bounds::{
    Assessment, BlockSelection, BoundReport, NumeratorTerm, Side, SvdBoundReport, SvdInstance,
    SymmetricInstance,
};
use crate::error::{Error, Result};
use crate::matrix_core::{DenseMatrix, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum TrialOutcome {
    Symmetric {
        report: BoundReport<f64>,
    },
    Rectangular {
        right: SvdBoundReport<f64>,
        left: SvdBoundReport<f64>,
    },
}

impl TrialOutcome {
    pub fn violations(&self) -> Vec<String> {
        match self {
            TrialOutcome::Symmetric { report } => report.violations(),
            TrialOutcome::Rectangular { right, left } => {
                let mut out: Vec<String> = right
                    .violations()
                    .into_iter()
                    .map(|m| format!("right: {m}"))
                    .collect();
                out.extend(left.violations().into_iter().map(|m| format!("left: {m}")));
                out
            }
        }
    }

    /// `(name, assessment)` for every bound, in a fixed order.
    pub fn assessments(&self) -> Vec<(String, &Assessment<f64>)> {
        match self {
            TrialOutcome::Symmetric { report } => {
                let mut out = vec![
                    (
                        "classical_frobenius".to_string(),
                        &report.classical_frobenius,
                    ),
                    ("classical_operator".to_string(), &report.classical_operator),
                    ("variant_sin".to_string(), &report.variant_sin),
                    ("variant_align".to_string(), &report.variant_align),
                    (
                        "sharp_numerator_sin".to_string(),
                        &report.sharp_numerator_sin,
                    ),
                    (
                        "sharp_numerator_align".to_string(),
                        &report.sharp_numerator_align,
                    ),
                ];
                if let Some(c) = &report.corollary {
                    out.push(("corollary_sin_theta".to_string(), &c.sin_theta));
                    out.push(("corollary_distance".to_string(), &c.distance));
                }
                out
            }
            TrialOutcome::Rectangular { right, left } => {
                let mut out = Vec::new();
                for (side, r) in [("right", right), ("left", left)] {
                    out.push((format!("{side}_sin_theta"), &r.sin_theta));
                    out.push((format!("{side}_alignment"), &r.alignment));
                    out.push((
                        format!("{side}_gram_reduction_sin_theta"),
                        &r.reduction_sin_theta,
                    ));
                }
                out
            }
        }
    }

    pub fn numerator_term(&self) -> NumeratorTerm {
        match self {
            TrialOutcome::Symmetric { report } => report.numerator_term,
            TrialOutcome::Rectangular { right, .. } => right.numerator_term,
        }
    }
}

/// Every bound evaluated on a symmetric pair.
pub fn evaluate_symmetric(
    pop: SymmetricMatrix<f64>,
    samp: SymmetricMatrix<f64>,
    sel: BlockSelection,
) -> Result<TrialOutcome> {
    Ok(TrialOutcome::Symmetric {
        report: SymmetricInstance::new(pop, samp)?.report(sel)?,
    })
}

/// Right and left singular-vector bounds evaluated on a rectangular pair.
pub fn evaluate_rectangular(
    pop: DenseMatrix<f64>,
    samp: DenseMatrix<f64>,
    sel: BlockSelection,
) -> Result<TrialOutcome> {
    let inst = SvdInstance::new(pop, samp)?;
    Ok(TrialOutcome::Rectangular {
        right: inst.report(sel, Side::Right)?,
        left: inst.report(sel, Side::Left)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub outcome: TrialOutcome,
    /// Not serialized, so that reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Tightness ratios `bound / observed` of one bound across a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioStats {
    pub min: Option<f64>,
    pub mean: Option<f64>,
    pub max: Option<f64>,
    /// Trials with a defined ratio.
    pub defined: u64,
    /// Applicable trials whose observed distance was numerically zero.
    pub undefined: u64,
    /// Trials where the bound's precondition failed.
    pub inapplicable: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub trials: u64,
    pub violations: u64,
    pub ratios: BTreeMap<String, RatioStats>,
    /// How often each term attained `min(d^{1/2}‖Δ‖_op, ‖Δ‖_F)`.
    pub numerator_term_counts: BTreeMap<String, u64>,
    /// Symmetric trials where the classical bound was inapplicable.
    pub inapplicable_classical: u64,
}

impl CampaignSummary {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        #[derive(Default)]
        struct Acc {
            min: Option<f64>,
            max: Option<f64>,
            sum: f64,
            defined: u64,
            undefined: u64,
            inapplicable: u64,
        }
        let mut acc: BTreeMap<String, Acc> = BTreeMap::new();
        let mut terms: BTreeMap<String, u64> = BTreeMap::new();
        let mut inapplicable_classical = 0;
        for rec in records {
            for (name, a) in rec.outcome.assessments() {
                let e = acc.entry(name.clone()).or_default();
                match a {
                    Assessment::Inapplicable { .. } => {
                        e.inapplicable += 1;
                        if name == "classical_frobenius" {
                            inapplicable_classical += 1;
                        }
                    }
                    Assessment::Applicable(c) => match c.ratio {
                        Some(r) => {
                            e.defined += 1;
                            e.sum += r;
                            e.min = Some(e.min.map_or(r, |m| m.min(r)));
                            e.max = Some(e.max.map_or(r, |m| m.max(r)));
                        }
                        None => e.undefined += 1,
                    },
                }
            }
            let term = match rec.outcome.numerator_term() {
                NumeratorTerm::Operator => "operator",
                NumeratorTerm::Frobenius => "frobenius",
            };
            *terms.entry(term.to_string()).or_default() += 1;
        }
        let ratios = acc
            .into_iter()
            .map(|(k, a)| {
                let mean = (a.defined > 0).then(|| a.sum / a.defined as f64);
                let stats = RatioStats {
                    min: a.min,
                    mean,
                    max: a.max,
                    defined: a.defined,
                    undefined: a.undefined,
                    inapplicable: a.inapplicable,
                };
                (k, stats)
            })
            .collect();
        CampaignSummary {
            trials: records.len() as u64,
            violations: 0,
            ratios,
            numerator_term_counts: terms,
            inapplicable_classical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub spec: EnsembleSpec,
    pub records: Vec<TrialRecord>,
    pub summary: CampaignSummary,
}

#[derive(Serialize)]
struct CounterexampleDump<'a> {
    spec: &'a EnsembleSpec,
    trial_index: u64,
    violations: &'a [String],
    population: &'a DenseMatrix<f64>,
    sample: &'a DenseMatrix<f64>,
    outcome: &'a TrialOutcome,
}

fn run_trial(
    spec: &EnsembleSpec,
    trial_index: u64,
    extra_check: &(dyn Fn(&TrialOutcome) -> Vec<String> + Sync),
) -> Result<TrialRecord> {
    let start = Instant::now();
    let (pop, samp, outcome) = match spec.kind {
        EnsembleKind::SpikedSymmetric => {
            let (pop, samp) = gen_spiked_symmetric(spec, trial_index)?;
            let outcome = evaluate_symmetric(pop.clone(), samp.clone(), spec.selection)?;
            (pop.into_dense(), samp.into_dense(), outcome)
        }
        EnsembleKind::Rectangular => {
            let (pop, samp) = gen_rectangular(spec, trial_index)?;
            let outcome = evaluate_rectangular(pop.clone(), samp.clone(), spec.selection)?;
            (pop, samp, outcome)
        }
    };
    let mut violations = outcome.violations();
    violations.extend(extra_check(&outcome));
    if !violations.is_empty() {
        let dump = CounterexampleDump {
            spec,
            trial_index,
            violations: &violations,
            population: &pop,
            sample: &samp,
            outcome: &outcome,
        };
        return Err(Error::Counterexample {
            trial_index,
            message: violations.join("; "),
            counterexample: serde_json::to_string(&dump).expect("serializable"),
        });
    }
    Ok(TrialRecord {
        trial_index,
        outcome,
        wall_time: start.elapsed(),
    })
}

/// Runs every trial of `spec` on `threads` worker threads (`0` picks the rayon default).
///
/// Records come back in trial order regardless of scheduling. The first failing trial in
/// that order decides the error: [`Error::Counterexample`] for a violated bound, or
/// [`Error::Trial`] wrapping a generator or solver failure.
pub fn run_campaign(spec: &EnsembleSpec, threads: usize) -> Result<Campaign> {
    run_campaign_checked(spec, threads, &|_| Vec::new())
}

fn run_campaign_checked(
    spec: &EnsembleSpec,
    threads: usize,
    extra_check: &(dyn Fn(&TrialOutcome) -> Vec<String> + Sync),
) -> Result<Campaign> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidSpec {
            field: "parallel",
            reason: e.to_string(),
        })?;
    let results: Vec<Result<TrialRecord>> = pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| run_trial(spec, i, extra_check))
            .collect()
    });
    let mut records = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(rec) => records.push(rec),
            Err(e @ Error::Counterexample { .. }) => return Err(e),
            Err(e) => {
                return Err(Error::Trial {
                    trial_index: i as u64,
                    source: Box::new(e),
                })
            }
        }
    }
    let summary = CampaignSummary::from_records(&records);
    Ok(Campaign {
        spec: spec.clone(),
        records,
        summary,
    })
}
