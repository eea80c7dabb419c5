use alloc::string::String;
use core::fmt;

/// Best value reached by a quadrature that ran out of budget.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureFailure {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// Where the failing integral came from (bin index, pmf argument, ...).
    pub context: String,
}

impl fmt::Display for QuadratureFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadrature did not converge after {} evaluations (value {:e}, error estimate {:e})",
            self.evaluations, self.value, self.abs_error_estimate
        )?;
        if !self.context.is_empty() {
            write!(f, " [{}]", self.context)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("{0}")]
    Quadrature(QuadratureFailure),
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("all {starts} optimizer starts failed; first failure: {first}")]
    AllStartsFailed { starts: usize, first: String },
}

impl Error {
    /// Attaches context to a quadrature failure; other variants pass through.
    pub fn with_context(self, context: impl Into<String>) -> Self {
        match self {
            Error::Quadrature(mut q) => {
                let extra = context.into();
                if q.context.is_empty() {
                    q.context = extra;
                } else {
                    q.context = alloc::format!("{extra}; {}", q.context);
                }
                Error::Quadrature(q)
            }
            other => other,
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
