//! Minimum-distance estimation for generalized negative binomial (GNB) and
//! generalized gamma (GG) laws.
//!
//! The crate evaluates the gamma, GG, negative binomial and GNB families,
//! bins samples (integer rule or Freedman–Diaconis), measures ℓ^p / L^p
//! distances between a model and a histogram, and minimizes those distances
//! with a Nelder–Mead simplex search.
//!
//! It is `no_std` and needs only `alloc`; file IO and the command-line front
//! end live in the `gnbfit` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distributions;
pub mod error;
pub mod fitting;
pub mod histogram;
pub mod numerics;
pub mod objectives;
pub mod optimizer;

pub use error::{Error, QuadratureFailure, Result};
