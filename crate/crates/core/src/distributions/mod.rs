//! The four model families: gamma, generalized gamma (GG), negative
//! binomial (NB) and generalized negative binomial (GNB, the GG-mixed
//! Poisson law), plus seeded samplers for synthetic data.

mod continuous;
mod discrete;
mod params;
mod sampling;

pub use continuous::{
    gamma_log_pdf, gamma_mode, gamma_pdf, gg_log_pdf, gg_mean, gg_mode, gg_pdf, gg_power_identity_check,
};
pub use discrete::{
    gnb_log_pmf, gnb_log_pmf_range, gnb_log_pmf_range_quadrature, gnb_mean, gnb_pmf, gnb_pmf_batch,
    gnb_pmf_batch_quadrature, gnb_recurrence_residual, gnb_recurrence_residual_literal, gnb_truncated_pmf,
    nb_log_pmf, nb_pmf, TRUNCATION_MASS, TRUNCATION_MIN_CAP,
};
pub use params::{GGParams, GammaParams, NBParams, MIN_ABS_GAMMA_EXP};
pub use sampling::{sample_gamma, sample_gg, sample_gnb, Sampler};
