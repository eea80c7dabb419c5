//! Special functions and quadrature shared by every other module.

mod quadrature;
mod special;

pub use quadrature::{
    integrate_interval, integrate_interval_with, integrate_semiinfinite, integrate_semiinfinite_log,
    LogQuadratureResult, QuadOptions, QuadratureResult, DEFAULT_ABS_TOL, DEFAULT_MAX_EVALS,
};
pub(crate) use quadrature::{integrate_log_bumps, Bump};
pub use special::{ln_factorial, log_gamma, log_sum_exp, LogSumExp};
pub(crate) use special::{ln_gamma_remainder, ln_gamma_unchecked, HALF_LN_2PI};

/// Default relative tolerance for pmf evaluation.
pub const PMF_REL_TOL: f64 = 1e-10;
/// Default relative tolerance for per-bin objective integrals.
pub const BIN_REL_TOL: f64 = 1e-8;
