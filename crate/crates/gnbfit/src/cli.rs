//! Command-line flags.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use gnbfit_core::objectives::{MetricKind, ModelFamily};

use crate::run::{DataSource, FamilyChoice, RunConfig};
use crate::synth::SynthSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Nb,
    Gnb,
    Gamma,
    Gg,
    AutoPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    L1,
    L2,
    Linf,
}

/// Minimum-distance fits of NB/GNB and gamma/GG laws to a sample.
#[derive(Debug, Parser)]
#[command(name = "gnbfit", version)]
pub struct Cli {
    /// Sample file: whitespace-separated numbers, '#' comment lines
    #[arg(long, value_name = "PATH", required_unless_present = "synth", conflicts_with = "synth")]
    pub input: Option<PathBuf>,

    /// Synthesize the sample instead, e.g. gnb,r=2,gamma=1.5,mu=1,n=50000
    #[arg(long, value_name = "FAMILY,r=..,gamma=..,mu=..,n=..")]
    pub synth: Option<SynthSpec>,

    #[arg(long, value_enum, default_value = "auto-pair")]
    pub family: FamilyArg,

    /// Objective(s) to minimize; repeatable [default: all three]
    #[arg(long = "metric", value_enum, value_name = "METRIC")]
    pub metrics: Vec<MetricArg>,

    /// Hold the shape parameter r fixed
    #[arg(long, value_name = "REAL")]
    pub fix_r: Option<f64>,

    /// JSON report path [default: stdout]
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// CSV of histogram bars and fitted curves
    #[arg(long, value_name = "PATH")]
    pub plot_csv: Option<PathBuf>,

    /// Seed for --synth
    #[arg(long, value_name = "INT")]
    pub seed: Option<u64>,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let source = match (self.input, self.synth) {
            (Some(p), _) => DataSource::Path(p),
            (None, Some(s)) => DataSource::Synth(s),
            (None, None) => unreachable!("clap requires one of --input / --synth"),
        };
        let family = match self.family {
            FamilyArg::Nb => FamilyChoice::Single(ModelFamily::NB),
            FamilyArg::Gnb => FamilyChoice::Single(ModelFamily::GNB),
            FamilyArg::Gamma => FamilyChoice::Single(ModelFamily::Gamma),
            FamilyArg::Gg => FamilyChoice::Single(ModelFamily::GG),
            FamilyArg::AutoPair => FamilyChoice::AutoPair,
        };
        let metrics = if self.metrics.is_empty() {
            MetricKind::ALL.to_vec()
        } else {
            self.metrics
                .iter()
                .map(|m| match m {
                    MetricArg::L1 => MetricKind::L1,
                    MetricArg::L2 => MetricKind::L2,
                    MetricArg::Linf => MetricKind::LInf,
                })
                .collect()
        };
        RunConfig {
            source,
            family,
            metrics,
            fix_r: self.fix_r,
            out: self.out,
            plot_csv: self.plot_csv,
            seed: self.seed,
        }
    }
}
