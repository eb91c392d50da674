#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use spectral_perturb_cli::ReportDocument;

pub struct Run {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command in-process.
pub fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spectral-perturb").chain(args.iter().copied());
    let code = spectral_perturb_cli::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Runs the installed binary, optionally with extra environment variables.
pub fn run_bin(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectral-perturb"));
    cmd.args(args).env_remove("SPECTRAL_PERTURB_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let o = cmd.output().expect("binary runs");
    Run {
        code: o.status.code().expect("exit code") as u8,
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

pub fn doc(text: &str) -> ReportDocument {
    serde_json::from_str(text).expect("report document parses")
}

pub fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}
