//! File IO, report formats and the command-line front end for `gnbfit-core`.

pub mod cli;
pub mod input;
pub mod report;
pub mod run;
pub mod synth;

pub use input::{parse_input, parse_str, InputError};
pub use report::{Report, REPORT_SCHEMA};
pub use run::{run, DataSource, FamilyChoice, RunConfig, RunOutcome};
pub use synth::SynthSpec;
