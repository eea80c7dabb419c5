//! One CLI invocation: load or synthesize data, fit every requested cell,
//! write the report.

use std::path::PathBuf;

use rayon::prelude::*;

use gnbfit_core::fitting::{fit, fit_pair, histogram_for, FitRequest, FitResult};
use gnbfit_core::objectives::{MetricKind, ModelFamily};

use crate::input::parse_input;
use crate::report::{fitted_curve, write_atomic, write_plot_csv, Cell, CurveColumn, InputInfo, Report, SynthInfo};
use crate::synth::SynthSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ESTIMATION: i32 = 3;

/// Seed used for `--synth` when none is given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Path(PathBuf),
    Synth(SynthSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyChoice {
    Single(ModelFamily),
    /// The classical family and its generalization, chosen from the data
    /// type: NB + GNB for counts, gamma + GG otherwise.
    AutoPair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: DataSource,
    pub family: FamilyChoice,
    pub metrics: Vec<MetricKind>,
    pub fix_r: Option<f64>,
    /// JSON report destination; stdout when absent.
    pub out: Option<PathBuf>,
    pub plot_csv: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub status: i32,
    /// Warnings and errors, one per line, for stderr.
    pub diagnostics: Vec<String>,
    pub report: Option<Report>,
    /// The serialized report when `out` was not set.
    pub stdout: Option<String>,
}

impl RunOutcome {
    fn fail(status: i32, message: String) -> Self {
        Self {
            status,
            diagnostics: vec![message],
            report: None,
            stdout: None,
        }
    }
}

fn dedup_metrics(ms: &[MetricKind]) -> Vec<MetricKind> {
    let mut out = Vec::new();
    for &m in ms {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let metrics = dedup_metrics(&config.metrics);
    if metrics.is_empty() {
        return RunOutcome::fail(EXIT_INPUT, "error: no metric selected".into());
    }
    let mut diagnostics = Vec::new();

    let (sample, path, synth) = match &config.source {
        DataSource::Path(p) => {
            if config.seed.is_some() {
                diagnostics.push("warning: --seed only affects --synth runs; ignored".into());
            }
            match parse_input(p) {
                Ok(s) => (s, Some(p.display().to_string()), None),
                Err(e) => return RunOutcome::fail(EXIT_INPUT, format!("error: {e}")),
            }
        }
        DataSource::Synth(spec) => {
            let seed = config.seed.unwrap_or(DEFAULT_SEED);
            (spec.draw(seed), None, Some(SynthInfo::new(spec, seed)))
        }
    };

    let families: Vec<ModelFamily> = match config.family {
        FamilyChoice::AutoPair if sample.is_discrete() => vec![ModelFamily::NB, ModelFamily::GNB],
        FamilyChoice::AutoPair => vec![ModelFamily::Gamma, ModelFamily::GG],
        FamilyChoice::Single(f) => {
            if !f.is_discrete() && sample.is_discrete() {
                diagnostics.push(format!("warning: fitting continuous family {f} to integer data"));
            }
            vec![f]
        }
    };

    let hist = match histogram_for(&sample, families[0]) {
        Ok(h) => h,
        Err(e) => {
            let mut out = RunOutcome::fail(EXIT_ESTIMATION, format!("error: cannot bin the data for {}: {e}", families[0]));
            out.diagnostics.splice(0..0, diagnostics);
            return out;
        }
    };

    // one task per metric; a pair task yields [classical, generalized]
    let pair = config.family == FamilyChoice::AutoPair;
    let results: Vec<Result<Vec<FitResult>, String>> = metrics
        .par_iter()
        .map(|&m| {
            let mut req = FitRequest::new(families[families.len() - 1], m);
            req.fix_r = config.fix_r;
            if pair {
                fit_pair(&sample, req.family, &req)
                    .map(|(c, g)| vec![c, g])
                    .map_err(|e| e.to_string())
            } else {
                fit(&sample, &req).map(|r| vec![r]).map_err(|e| e.to_string())
            }
        })
        .collect();

    let mut status = EXIT_OK;
    let mut cells = Vec::new();
    let mut curves = Vec::new();
    for (fi, family) in families.iter().enumerate() {
        for (m, res) in metrics.iter().zip(&results) {
            match res {
                Ok(fits) => {
                    let f = &fits[fi];
                    if !f.converged {
                        status = EXIT_ESTIMATION;
                        diagnostics.push(format!("error: cell {family}/{m} did not converge; best point reported"));
                    }
                    cells.push(Cell::new(*m, f));
                    match fitted_curve(&f.params, &hist) {
                        Ok(values) => curves.push(CurveColumn {
                            name: format!("fitted_{family}_{m}"),
                            values,
                        }),
                        Err(e) => diagnostics.push(format!("warning: no plot column for {family}/{m}: {e}")),
                    }
                }
                Err(e) => {
                    status = EXIT_ESTIMATION;
                    diagnostics.push(format!("error: cell {family}/{m} failed: {e}"));
                }
            }
        }
    }

    let report = Report {
        input: InputInfo {
            path,
            synth,
            n: sample.len(),
            binning: hist.rule().name().to_string(),
            n_bins: hist.n_bins(),
        },
        cells,
    };
    let json = report.to_json();
    let mut stdout = None;
    match &config.out {
        Some(p) => {
            if let Err(e) = write_atomic(p, json.as_bytes()) {
                diagnostics.push(format!("error: cannot write {}: {e}", p.display()));
                status = EXIT_INPUT;
            }
        }
        None => stdout = Some(json),
    }
    if let Some(p) = &config.plot_csv {
        let mut buf = Vec::new();
        let written = write_plot_csv(&mut buf, &hist, &curves)
            .map_err(|e| e.to_string())
            .and_then(|_| write_atomic(p, &buf).map_err(|e| e.to_string()));
        if let Err(e) = written {
            diagnostics.push(format!("error: cannot write {}: {e}", p.display()));
            status = EXIT_INPUT;
        }
    }
    RunOutcome {
        status,
        diagnostics,
        report: Some(report),
        stdout,
    }
}

