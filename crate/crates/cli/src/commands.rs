use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use spectral_perturb::bounds::{BlockSelection, Side, SvdInstance, SymmetricInstance};
use spectral_perturb::harness::{
    diag_sharpness, gen_sharpness_diag, gen_sharpness_rotation, rotation_sharpness, run_campaign,
    run_verify, EnsembleKind, EnsembleSpec, Fault, SharpnessRow, Spectrum, Suite,
};
use spectral_perturb::{Error, SymMatrix};

use crate::args::{
    BoundArgs, Ensemble, Example, Mode, MonteCarloArgs, SharpnessArgs, SuiteArg, VerifyArgs,
};
use crate::error::{CliError, EXIT_ERROR, EXIT_OK, EXIT_PRECONDITION, EXIT_VIOLATION};
use crate::matrix_io::{read_matrix, write_matrix, MatrixFormat};
use crate::report::{Invocation, Record, ReportDocument, Status, Summary};

fn flags<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Symmetric => "symmetric",
        Mode::SvdRight => "svd-right",
        Mode::SvdLeft => "svd-left",
    }
}

/// Builds the bound report for a pair of matrix files. The report is written even when a
/// precondition fails; the exit code says which case occurred.
pub fn cmd_bound(
    args: &BoundArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, CliError> {
    let pop = read_matrix(&args.pop_file)?;
    let samp = read_matrix(&args.samp_file)?;
    let invocation = Invocation {
        command: "bound".into(),
        flags: flags([
            ("pop_file", args.pop_file.display().to_string()),
            ("samp_file", args.samp_file.display().to_string()),
            ("r", args.r.to_string()),
            ("s", args.s.to_string()),
            ("mode", mode_name(args.mode).into()),
        ]),
        seed: None,
    };
    if pop.shape() != samp.shape() {
        return Err(CliError::core(
            "population and sample",
            Error::DimensionMismatch {
                op: "bound",
                detail: format!("{:?} vs {:?}", pop.shape(), samp.shape()),
            },
        ));
    }
    let (record, applicable, violations) = match args.mode {
        Mode::Symmetric => {
            let pop = SymMatrix::new(pop)
                .map_err(|e| CliError::core(args.pop_file.display().to_string(), e))?;
            let samp = SymMatrix::new(samp)
                .map_err(|e| CliError::core(args.samp_file.display().to_string(), e))?;
            let sel = BlockSelection::new(args.r, args.s, pop.dim())
                .map_err(|e| CliError::core("selection", e))?;
            let inst = SymmetricInstance::new(pop, samp)
                .map_err(|e| CliError::core("decomposition", e))?;
            let report = inst.report(sel).map_err(|e| CliError::core("bounds", e))?;
            let applicable = report.variant_sin.is_applicable();
            let violations = report.violations();
            (Record::Symmetric(report), applicable, violations)
        }
        Mode::SvdRight | Mode::SvdLeft => {
            let side = if args.mode == Mode::SvdRight {
                Side::Right
            } else {
                Side::Left
            };
            let m = pop.rows().min(pop.cols());
            let sel = BlockSelection::new(args.r, args.s, m)
                .map_err(|e| CliError::core("selection", e))?;
            let inst =
                SvdInstance::new(pop, samp).map_err(|e| CliError::core("decomposition", e))?;
            let report = inst
                .report(sel, side)
                .map_err(|e| CliError::core("bounds", e))?;
            let applicable = report.sin_theta.is_applicable();
            let violations = report.violations();
            (Record::Singular(report), applicable, violations)
        }
    };
    let (status, messages, code) = if !violations.is_empty() {
        (Status::Violation, violations, EXIT_VIOLATION)
    } else if !applicable {
        let reason = match &record {
            Record::Symmetric(r) => r.variant_sin.clone(),
            Record::Singular(r) => r.sin_theta.clone(),
            _ => unreachable!(),
        };
        let msg = match reason {
            spectral_perturb::bounds::Assessment::Inapplicable { reason } => reason,
            _ => String::new(),
        };
        (Status::Inapplicable, vec![msg], EXIT_PRECONDITION)
    } else {
        (Status::Ok, Vec::new(), EXIT_OK)
    };
    let doc = ReportDocument::new(
        invocation,
        vec![record],
        Summary::Bound {
            status,
            messages: messages.clone(),
        },
    );
    doc.emit(args.output.format, args.output.out.as_deref(), stdout)?;
    for m in &messages {
        let _ = writeln!(
            stderr,
            "{}: {m}",
            if code == EXIT_VIOLATION {
                "bound violated"
            } else {
                "precondition failed"
            }
        );
    }
    Ok(code)
}

fn relative_error(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

fn row_error(row: &SharpnessRow) -> f64 {
    let mut e = relative_error(row.observed, row.expected_observed)
        .max(relative_error(row.bound, row.expected_bound))
        .max(relative_error(row.ratio, row.expected_ratio));
    if let (Some(a), Some(b)) = (row.vector_distance, row.expected_vector_distance) {
        e = e.max(relative_error(a, b));
    }
    e
}

pub fn cmd_sharpness(args: &SharpnessArgs, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let ctx = |e| CliError::core("sharpness example", e);
    let (row, pair, invocation_flags) = match args.example {
        Example::Diag => (
            diag_sharpness(args.p, args.d, args.epsilon).map_err(ctx)?,
            gen_sharpness_diag(args.p, args.d, args.epsilon).map_err(ctx)?,
            flags([
                ("example", "diag".into()),
                ("p", args.p.to_string()),
                ("d", args.d.to_string()),
                ("epsilon", format!("{:?}", args.epsilon)),
            ]),
        ),
        Example::Rotation => (
            rotation_sharpness(args.epsilon).map_err(ctx)?,
            gen_sharpness_rotation(args.epsilon).map_err(ctx)?,
            flags([
                ("example", "rotation".into()),
                ("epsilon", format!("{:?}", args.epsilon)),
            ]),
        ),
    };
    if let Some(dir) = &args.emit_matrices {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (name, m) in [
            ("population", pair.0.as_dense()),
            ("sample", pair.1.as_dense()),
        ] {
            write_matrix(&dir.join(format!("{name}.csv")), m, MatrixFormat::Csv)?;
            write_matrix(&dir.join(format!("{name}.json")), m, MatrixFormat::Json)?;
        }
    }
    let violations = row.report.violations();
    let summary = Summary::Sharpness {
        rows: 1,
        max_relative_error: row_error(&row),
    };
    let invocation = Invocation {
        command: "sharpness".into(),
        flags: invocation_flags,
        seed: None,
    };
    let doc = ReportDocument::new(invocation, vec![Record::Sharpness(row)], summary);
    doc.emit(args.output.format, args.output.out.as_deref(), stdout)?;
    Ok(if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

pub fn cmd_montecarlo(
    args: &MonteCarloArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, CliError> {
    let sel = BlockSelection {
        r: args.r,
        s: args.s,
    };
    let spectrum = Spectrum::Explicit(args.spectrum.clone());
    let spec = match args.ensemble {
        Ensemble::Spiked => {
            EnsembleSpec::spiked(args.p, spectrum, args.noise, args.trials, args.seed, sel)
        }
        Ensemble::Rectangular => EnsembleSpec {
            kind: EnsembleKind::Rectangular,
            p: args.p,
            q: args.q,
            spectrum,
            noise_scale: args.noise,
            trials: args.trials,
            seed: args.seed,
            selection: sel,
        },
    };
    let campaign = match run_campaign(&spec, args.parallel) {
        Ok(c) => c,
        Err(Error::Counterexample {
            trial_index,
            message,
            counterexample,
        }) => {
            let _ = writeln!(
                stderr,
                "bound violated in trial {trial_index} (seed {}): {message}",
                args.seed
            );
            let _ = writeln!(stderr, "{counterexample}");
            return Ok(EXIT_VIOLATION);
        }
        Err(e) => return Err(CliError::core("montecarlo", e)),
    };
    let spectrum_text: Vec<String> = args.spectrum.iter().map(|x| format!("{x:?}")).collect();
    let mut f = flags([
        ("ensemble", format!("{:?}", args.ensemble).to_lowercase()),
        ("p", args.p.to_string()),
        ("spectrum", spectrum_text.join(",")),
        ("noise", format!("{:?}", args.noise)),
        ("trials", args.trials.to_string()),
        ("r", args.r.to_string()),
        ("s", args.s.to_string()),
    ]);
    if let Some(q) = args.q {
        f.insert("q".into(), q.to_string());
    }
    let invocation = Invocation {
        command: "montecarlo".into(),
        flags: f,
        seed: Some(args.seed),
    };
    let records = campaign.records.into_iter().map(Record::Trial).collect();
    let doc = ReportDocument::new(invocation, records, Summary::Campaign(campaign.summary));
    doc.emit(args.output.format, args.output.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let suite = match args.suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Bounds => Suite::Bounds,
        SuiteArg::All => Suite::All,
    };
    let fault = args.inject_fault.then_some(Fault::CorruptFrame);
    let report = run_verify(suite, args.trials, args.seed, fault);
    let _ = writeln!(stdout, "{report}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_ERROR })
}
