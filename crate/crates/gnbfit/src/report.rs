//! JSON fit reports and CSV plot data.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use gnbfit_core::fitting::FitResult;
use gnbfit_core::histogram::Histogram;
use gnbfit_core::objectives::{MetricKind, ModelParams};

use crate::synth::SynthSpec;

/// JSON Schema (draft 2020-12) of the report document.
pub const REPORT_SCHEMA: &str = include_str!("../schema/fit-report.schema.json");

/// Rounds to 15 significant digits; non-finite values become `None` (null).
pub fn sig15(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    format!("{x:.14e}").parse().ok()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthInfo {
    pub family: String,
    pub r: Option<f64>,
    pub gamma: Option<f64>,
    pub mu: Option<f64>,
    pub n: usize,
    pub seed: u64,
}

impl SynthInfo {
    pub fn new(spec: &SynthSpec, seed: u64) -> Self {
        Self {
            family: spec.family.name().to_string(),
            r: sig15(spec.r),
            gamma: sig15(spec.gamma),
            mu: sig15(spec.mu),
            n: spec.n,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synth: Option<SynthInfo>,
    pub n: usize,
    pub binning: String,
    #[serde(rename = "N_b")]
    pub n_bins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellParams {
    pub r: Option<f64>,
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl From<&ModelParams> for CellParams {
    fn from(p: &ModelParams) -> Self {
        match p {
            ModelParams::Nb(nb) => Self {
                r: sig15(nb.r()),
                gamma: Some(1.0),
                mu: None,
                p: sig15(nb.p()),
            },
            ModelParams::Gamma(g) => Self {
                r: sig15(g.r()),
                gamma: Some(1.0),
                mu: sig15(g.mu()),
                p: None,
            },
            ModelParams::Gnb(g) | ModelParams::Gg(g) => Self {
                r: sig15(g.r()),
                gamma: sig15(g.gamma_exp()),
                mu: sig15(g.mu()),
                p: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub l1: Option<f64>,
    pub l2: Option<f64>,
    pub linf: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub family: String,
    pub metric: String,
    pub params: CellParams,
    pub errors: ErrorRow,
    pub converged: bool,
}

impl Cell {
    pub fn new(metric: MetricKind, fit: &FitResult) -> Self {
        let e = |m| fit.errors.get(&m).copied().and_then(sig15);
        Self {
            family: fit.family.name().to_string(),
            metric: metric.name().to_string(),
            params: CellParams::from(&fit.params),
            errors: ErrorRow {
                l1: e(MetricKind::L1),
                l2: e(MetricKind::L2),
                linf: e(MetricKind::LInf),
            },
            converged: fit.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: InputInfo,
    pub cells: Vec<Cell>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One column of model values over the histogram bins.
pub struct CurveColumn {
    pub name: String,
    pub values: Vec<f64>,
}

/// Model values at the bin points: the pmf at each integer value, or the
/// density at each bin midpoint.
pub fn fitted_curve(params: &ModelParams, hist: &Histogram) -> gnbfit_core::Result<Vec<f64>> {
    if params.family().is_discrete() {
        params.pmf_values(hist.n_bins() as u64 - 1)
    } else {
        (0..hist.n_bins()).map(|i| params.density(hist.bin_point(i))).collect()
    }
}

/// Header plus one row per bin: bin_left, bin_right, height, then one
/// column per fitted curve.
pub fn write_plot_csv<W: Write>(out: W, hist: &Histogram, curves: &[CurveColumn]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["bin_left".to_string(), "bin_right".to_string(), "height".to_string()];
    header.extend(curves.iter().map(|c| c.name.clone()));
    w.write_record(&header)?;
    let fmt = |x: f64| match sig15(x) {
        Some(v) => v.to_string(),
        None => String::new(),
    };
    for i in 0..hist.n_bins() {
        let mut row = vec![fmt(hist.edges()[i]), fmt(hist.edges()[i + 1]), fmt(hist.heights()[i])];
        row.extend(curves.iter().map(|c| fmt(c.values[i])));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(0.1 + 0.2), Some(0.3));
        assert_eq!(sig15(1.0 / 3.0).unwrap().to_string(), "0.333333333333333");
        assert_eq!(sig15(123456789.123456789).unwrap().to_string(), "123456789.123457");
        assert_eq!(sig15(f64::INFINITY), None);
        assert_eq!(sig15(2.0), Some(2.0));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
