//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{doc, rel_err, run};
use spectral_perturb::bounds::{BlockSelection, Side};
use spectral_perturb::harness::{
    gaussian_matrix, haar_orthogonal, random_frame, run_campaign, run_verify, symmetric_noise,
    trial_rng, EnsembleSpec, Spectrum, Suite, TrialOutcome,
};
use spectral_perturb::matrix_core::{svd, sym_eig};
use spectral_perturb::subspace::{
    principal_angles, procrustes_align, sin_theta_frobenius, sin_theta_operator, SubspaceFrame,
};
use spectral_perturb_cli::{Record, EXIT_OK};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn sharpness_row(args: &[&str]) -> Result<spectral_perturb::harness::SharpnessRow, String> {
    let r = run(args);
    ensure(r.code == EXIT_OK, || {
        format!("{args:?} exited {}: {}", r.code, r.stderr)
    })?;
    match doc(&r.stdout).records.into_iter().next() {
        Some(Record::Sharpness(row)) => Ok(row),
        other => Err(format!("unexpected record {other:?}")),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (p, d, eps) in [(4usize, 2usize, 0.1f64), (10, 3, 0.05), (20, 10, 0.01)] {
        let row = sharpness_row(&[
            "sharpness",
            "--example",
            "diag",
            "--p",
            &p.to_string(),
            "--d",
            &d.to_string(),
            "--epsilon",
            &eps.to_string(),
        ])?;
        let root = (2.0 * d as f64).sqrt();
        for (name, got, want) in [
            ("observed", row.observed, root),
            ("bound", row.bound, root * (1.0 + eps)),
            ("ratio", row.ratio, 1.0 + eps),
        ] {
            let e = rel_err(got, want);
            worst = worst.max(e);
            ensure(e <= 1e-9, || {
                format!("(p={p}, d={d}, eps={eps}) {name}: {got} vs {want}")
            })?;
        }
    }
    within_time(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "3 configurations, max relative error {worst:.1e}, {:?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for eps in [0.1f64, 0.01, 0.001] {
        let row = sharpness_row(&[
            "sharpness",
            "--example",
            "rotation",
            "--epsilon",
            &eps.to_string(),
        ])?;
        for (name, got, want) in [
            ("sin theta", row.observed, eps),
            ("bound", row.bound, 2.0 * eps),
            ("ratio", row.ratio, 2.0),
        ] {
            let e = rel_err(got, want);
            worst = worst.max(e);
            ensure(e <= 1e-9, || format!("eps={eps} {name}: {got} vs {want}"))?;
        }
        let dist = row.vector_distance.ok_or("missing vector distance")?;
        let want = 2.0 - 2.0 * (1.0 - eps * eps).sqrt();
        ensure((dist * dist - want).abs() <= 1e-12, || {
            format!("eps={eps} |v̂ - v|^2 = {} vs {want}", dist * dist)
        })?;
    }
    within_time(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "3 values of epsilon, max relative error {worst:.1e}, {:?}",
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let spec = EnsembleSpec::spiked(
        20,
        Spectrum::Explicit(vec![5.0, 1.0]),
        0.05,
        1000,
        20_240_601,
        BlockSelection { r: 1, s: 1 },
    );
    let campaign = run_campaign(&spec, 0).map_err(|e| e.to_string())?;
    let tol = 1e-8;
    let mut classical_checked = 0;
    for rec in &campaign.records {
        let TrialOutcome::Symmetric { report } = &rec.outcome else {
            return Err("wrong outcome kind".into());
        };
        let t = rec.trial_index;
        for a in [&report.classical_frobenius, &report.classical_operator] {
            if let Some(c) = a.check() {
                classical_checked += 1;
                ensure(c.observed <= c.bound + tol, || {
                    format!("trial {t}: classical {c:?}")
                })?;
            }
        }
        let variant_sin = report
            .variant_sin
            .check()
            .ok_or_else(|| format!("trial {t}: variant inapplicable"))?;
        let variant_align = report.variant_align.check().ok_or("variant inapplicable")?;
        let sharp_sin = report
            .sharp_numerator_sin
            .check()
            .ok_or("sharp inapplicable")?;
        let sharp_align = report
            .sharp_numerator_align
            .check()
            .ok_or("sharp inapplicable")?;
        for c in [variant_sin, variant_align] {
            ensure(c.observed <= c.bound + tol, || {
                format!("trial {t}: variant {c:?}")
            })?;
        }
        for (sharp, variant) in [(sharp_sin, variant_sin), (sharp_align, variant_align)] {
            ensure(sharp.observed <= sharp.bound + tol, || {
                format!("trial {t}: observed above sharp {sharp:?}")
            })?;
            ensure(sharp.bound <= variant.bound + 1e-10, || {
                format!("trial {t}: sharp above variant")
            })?;
        }
        let cor = report.corollary.as_ref().ok_or("missing corollary")?;
        for a in [&cor.sin_theta, &cor.distance] {
            let c = a.check().ok_or("corollary inapplicable")?;
            ensure(c.observed <= c.bound + tol, || {
                format!("trial {t}: corollary {c:?}")
            })?;
        }
    }
    within_time(start.elapsed(), Duration::from_secs(60))?;
    let min_ratio = campaign.summary.ratios["variant_sin"]
        .min
        .unwrap_or(f64::NAN);
    Ok(format!(
        "{} trials, 0 violations, {classical_checked} classical checks, min variant sin ratio {min_ratio:.3}, {:?}",
        campaign.records.len(),
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let spec = EnsembleSpec::rectangular(
        6,
        4,
        Spectrum::Explicit(vec![3.0, 2.0, 1.0, 0.5]),
        0.02,
        500,
        7_700_123,
        BlockSelection { r: 1, s: 1 },
    );
    let campaign = run_campaign(&spec, 0).map_err(|e| e.to_string())?;
    let tol = 1e-8;
    for rec in &campaign.records {
        let TrialOutcome::Rectangular { right, left } = &rec.outcome else {
            return Err("wrong outcome kind".into());
        };
        for (side, r) in [(Side::Right, right), (Side::Left, left)] {
            ensure(r.side == side, || "side mismatch".into())?;
            let t = rec.trial_index;
            for a in [&r.sin_theta, &r.alignment] {
                let c = a
                    .check()
                    .ok_or_else(|| format!("trial {t}: inapplicable"))?;
                ensure(c.observed <= c.bound + tol, || {
                    format!("trial {t} {side:?}: {c:?}")
                })?;
            }
            for g in [&r.gram_op, &r.gram_frob] {
                ensure(g.lhs <= g.rhs + tol * g.rhs.max(1.0), || {
                    format!("trial {t} {side:?}: factor inequality {g:?}")
                })?;
            }
        }
    }
    within_time(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{} trials x 2 sides, 0 violations, {:?}",
        campaign.records.len(),
        start.elapsed()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let report = run_verify(Suite::Identities, 200, 5, None);
    ensure(report.passed(), || format!("\n{report}"))?;
    within_time(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{} properties x 200 instances, {:?}",
        report.properties.len(),
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in 0..100 {
        let mut rng = trial_rng(606, t);
        let p = 2 + (t as usize % 8);
        let d = 1 + (t as usize % p);
        let v = SubspaceFrame::new(random_frame(&mut rng, p, d)).map_err(|e| e.to_string())?;
        let vhat = SubspaceFrame::new(random_frame(&mut rng, p, d)).map_err(|e| e.to_string())?;
        let (r1, r2) = (haar_orthogonal(&mut rng, d), haar_orthogonal(&mut rng, d));
        let quantities =
            |a: &SubspaceFrame<f64>, b: &SubspaceFrame<f64>| -> Result<Vec<f64>, String> {
                let mut q = principal_angles(a, b).map_err(|e| e.to_string())?.angles;
                q.push(sin_theta_frobenius(a, b).map_err(|e| e.to_string())?);
                q.push(sin_theta_operator(a, b).map_err(|e| e.to_string())?);
                q.push(procrustes_align(a, b).map_err(|e| e.to_string())?.distance);
                Ok(q)
            };
        let base = quantities(&vhat, &v)?;
        for (a, b) in [
            (vhat.rotate(&r1).map_err(|e| e.to_string())?, v.clone()),
            (vhat.clone(), v.rotate(&r2).map_err(|e| e.to_string())?),
        ] {
            for (x, y) in base.iter().zip(quantities(&a, &b)?) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max change {worst:e}"))?;
    Ok(format!("100 trials, max change {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, &p) in [1usize, 2, 3, 5, 8, 13, 21, 34, 50].iter().enumerate() {
        let mut rng = trial_rng(707, i as u64);
        let a = symmetric_noise(&mut rng, p);
        let e = sym_eig(&a).map_err(|e| e.to_string())?;
        let scale = a.frobenius_norm().max(1.0);
        worst = worst.max(
            e.reconstruct()
                .checked_sub(&a)
                .map_err(|e| e.to_string())?
                .frobenius_norm()
                / scale,
        );
        for q in [1, p.div_ceil(2), p, p + 3] {
            let m = gaussian_matrix(&mut rng, p, q);
            let f = svd(&m).map_err(|e| e.to_string())?;
            let scale = m.frobenius_norm().max(1.0);
            worst = worst.max(
                f.reconstruct()
                    .checked_sub(&m)
                    .map_err(|e| e.to_string())?
                    .frobenius_norm()
                    / scale,
            );
        }
    }
    ensure(worst <= 1e-10, || {
        format!("worst scaled residual {worst:e}")
    })?;
    Ok(format!("sizes up to 50, worst scaled residual {worst:.1e}"))
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let emit = dir.path().join("m");
    let emit_s = emit.to_str().unwrap();
    let (pop, samp) = (emit.join("population.csv"), emit.join("sample.csv"));
    let invocations: Vec<Vec<String>> = vec![
        vec![
            "sharpness",
            "--example",
            "diag",
            "--p",
            "10",
            "--d",
            "3",
            "--epsilon",
            "0.05",
            "--emit-matrices",
            emit_s,
        ],
        vec![
            "bound",
            pop.to_str().unwrap(),
            samp.to_str().unwrap(),
            "--r",
            "1",
            "--s",
            "3",
        ],
        vec!["montecarlo", "--trials", "100", "--seed", "8"],
        vec![
            "montecarlo",
            "--ensemble",
            "rectangular",
            "--p",
            "6",
            "--q",
            "4",
            "--spectrum",
            "3,2,1,0.5",
            "--trials",
            "50",
            "--seed",
            "8",
            "--format",
            "csv",
        ],
        vec!["verify", "--suite", "all", "--trials", "20", "--seed", "8"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in &invocations {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&argv);
        ensure(first.code == EXIT_OK, || {
            format!("{argv:?} exited {}", first.code)
        })?;
        let again = run(&argv);
        ensure(first.stdout == again.stdout, || {
            format!("{argv:?} differs between runs")
        })?;
        if argv[0] == "montecarlo" {
            for threads in ["1", "4", "8"] {
                let mut varied = argv.clone();
                varied.extend(["--parallel", threads]);
                let other = run(&varied);
                ensure(first.stdout == other.stdout, || {
                    format!("{argv:?} differs with --parallel {threads}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} commands repeated, montecarlo also under --parallel 1, 4 and 8",
        invocations.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("diag sharpness reproduction", criterion_1),
        ("rotation sharpness reproduction", criterion_2),
        ("symmetric soundness campaign", criterion_3),
        ("singular-vector soundness campaign", criterion_4),
        ("identity suite", criterion_5),
        ("basis invariance", criterion_6),
        ("numerical core residuals", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} [PRIMARY] {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [PRIMARY] {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
