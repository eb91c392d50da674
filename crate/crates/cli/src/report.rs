//! The report document written by every command except `verify`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spectral_perturb::bounds::{Assessment, BoundReport, SvdBoundReport};
use spectral_perturb::harness::{CampaignSummary, SharpnessRow, TrialOutcome, TrialRecord};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1.0";

/// The JSON Schema that every JSON report validates against.
pub const SCHEMA: &str = include_str!("../schema/report-document.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invocation {
    pub command: String,
    /// Effective values of the flags that determine the report. Output location and
    /// thread count are left out so they cannot change the bytes.
    pub flags: BTreeMap<String, String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record_type", rename_all = "snake_case")]
pub enum Record {
    Symmetric(BoundReport<f64>),
    Singular(SvdBoundReport<f64>),
    Sharpness(SharpnessRow),
    Trial(TrialRecord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Inapplicable,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "summary_type", rename_all = "snake_case")]
pub enum Summary {
    Bound {
        status: Status,
        messages: Vec<String>,
    },
    /// Largest relative deviation of observed value, bound and ratio from their closed forms.
    Sharpness {
        rows: usize,
        max_relative_error: f64,
    },
    Campaign(CampaignSummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub invocation: Invocation,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportDocument {
    pub fn new(invocation: Invocation, records: Vec<Record>, summary: Summary) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            invocation,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite");
        s.push('\n');
        s
    }

    /// One row per bound: `record,quantity,status,observed,bound,holds,ratio`, numbers with
    /// 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "record", "quantity", "status", "observed", "bound", "holds", "ratio",
        ])
        .expect("in-memory write");
        for (i, rec) in self.records.iter().enumerate() {
            let id = match rec {
                Record::Trial(t) => t.trial_index.to_string(),
                _ => i.to_string(),
            };
            for (name, a) in assessments(rec) {
                let row = match a {
                    Assessment::Applicable(c) => [
                        id.clone(),
                        name,
                        "applicable".into(),
                        num(c.observed),
                        num(c.bound),
                        c.holds.to_string(),
                        c.ratio.map(num).unwrap_or_default(),
                    ],
                    Assessment::Inapplicable { .. } => [
                        id.clone(),
                        name,
                        "inapplicable".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ],
                };
                w.write_record(&row).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    /// Writes to `out`, or to `stdout` when no path is given.
    pub fn emit(
        &self,
        format: ReportFormat,
        out: Option<&Path>,
        stdout: &mut dyn Write,
    ) -> Result<(), CliError> {
        let text = self.render(format);
        match out {
            Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn symmetric_assessments(r: &BoundReport<f64>) -> Vec<(String, Assessment<f64>)> {
    let mut out = vec![
        (
            "classical_frobenius".to_string(),
            r.classical_frobenius.clone(),
        ),
        (
            "classical_operator".to_string(),
            r.classical_operator.clone(),
        ),
        ("variant_sin".to_string(), r.variant_sin.clone()),
        ("variant_align".to_string(), r.variant_align.clone()),
        (
            "sharp_numerator_sin".to_string(),
            r.sharp_numerator_sin.clone(),
        ),
        (
            "sharp_numerator_align".to_string(),
            r.sharp_numerator_align.clone(),
        ),
    ];
    if let Some(c) = &r.corollary {
        out.push(("corollary_sin_theta".to_string(), c.sin_theta.clone()));
        out.push(("corollary_distance".to_string(), c.distance.clone()));
    }
    out
}

fn singular_assessments(r: &SvdBoundReport<f64>, prefix: &str) -> Vec<(String, Assessment<f64>)> {
    vec![
        (format!("{prefix}sin_theta"), r.sin_theta.clone()),
        (format!("{prefix}alignment"), r.alignment.clone()),
        (
            format!("{prefix}gram_reduction_sin_theta"),
            r.reduction_sin_theta.clone(),
        ),
        (
            format!("{prefix}gram_reduction_alignment"),
            r.reduction_alignment.clone(),
        ),
    ]
}

fn assessments(rec: &Record) -> Vec<(String, Assessment<f64>)> {
    match rec {
        Record::Symmetric(r) => symmetric_assessments(r),
        Record::Singular(r) => singular_assessments(r, ""),
        Record::Sharpness(row) => {
            let headline = spectral_perturb::bounds::BoundCheck::new(row.observed, row.bound);
            let mut out = vec![("headline".to_string(), Assessment::Applicable(headline))];
            out.extend(symmetric_assessments(&row.report));
            out
        }
        Record::Trial(t) => match &t.outcome {
            TrialOutcome::Symmetric { report } => symmetric_assessments(report),
            TrialOutcome::Rectangular { right, left } => {
                let mut out = singular_assessments(right, "right_");
                out.extend(singular_assessments(left, "left_"));
                out
            }
        },
    }
}
