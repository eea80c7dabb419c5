//! Sample files: whitespace-separated decimal numbers, `#` comment lines.

use std::fs;
use std::path::{Path, PathBuf};

use gnbfit_core::fitting::Sample;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: `{token}` is not a number")]
    Parse { line: usize, token: String },
    #[error("line {line}: negative value {value}")]
    Negative { line: usize, value: f64 },
    #[error("input contains no values")]
    Empty,
}

pub fn parse_input(path: &Path) -> Result<Sample, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text)
}

/// Integer-only content (every token a plain digit string) gives a discrete
/// sample; anything else a continuous one.
pub fn parse_str(text: &str) -> Result<Sample, InputError> {
    let mut values = Vec::new();
    let mut all_integers = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        for token in trimmed.split_whitespace() {
            let value: f64 = token
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| InputError::Parse {
                    line,
                    token: token.to_string(),
                })?;
            if value < 0.0 {
                return Err(InputError::Negative { line, value });
            }
            let digits = token.strip_prefix('+').unwrap_or(token);
            all_integers &= !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && token.parse::<u64>().is_ok();
            values.push(value);
        }
    }
    if values.is_empty() {
        return Err(InputError::Empty);
    }
    if all_integers {
        Ok(Sample::Discrete(values.iter().map(|&v| v as u64).collect()))
    } else {
        Ok(Sample::Continuous(values))
    }
}
