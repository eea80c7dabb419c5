use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use gnbfit::cli::Cli;

fn main() -> ExitCode {
    let config = Cli::parse().into_config();
    let outcome = gnbfit::run(&config);
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    if let Some(json) = &outcome.stdout {
        let mut out = std::io::stdout().lock();
        if out.write_all(json.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.status as u8)
}
