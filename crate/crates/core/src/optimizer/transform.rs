//! Bijections between a constrained natural parameter space and the
//! unconstrained space the simplex walks in.

// inherent float methods shadow this when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Floor on |x| for [`Domain::NonzeroSigned`] coordinates.
pub const NONZERO_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// x > 0, mapped by ln.
    Positive,
    /// |x| ≥ 1e-3, mapped by sign(x)·ln(|x|/1e-3).
    NonzeroSigned,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    domains: Vec<Domain>,
}

pub fn make_transform(domains: &[Domain]) -> Result<Transform> {
    if domains.is_empty() {
        return Err(Error::Domain("transform needs at least one coordinate".into()));
    }
    Ok(Transform {
        domains: domains.to_vec(),
    })
}

impl Transform {
    pub fn dim(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn to_internal(&self, natural: &[f64]) -> Result<Vec<f64>> {
        self.check_len(natural.len())?;
        natural
            .iter()
            .zip(&self.domains)
            .enumerate()
            .map(|(i, (&x, d))| match d {
                Domain::Positive if x.is_finite() && x > 0.0 => Ok(x.ln()),
                Domain::NonzeroSigned if x.is_finite() && x.abs() >= NONZERO_FLOOR => {
                    let y = (x.abs() / NONZERO_FLOOR).ln();
                    Ok(if x < 0.0 { -y } else { y })
                }
                Domain::Unbounded if x.is_finite() => Ok(x),
                _ => Err(Error::Domain(format!(
                    "coordinate {i} = {x} lies outside its {d:?} domain"
                ))),
            })
            .collect()
    }

    /// Always lands in the natural domain: Positive values are floored at the
    /// smallest positive normal, NonzeroSigned magnitudes at 1e-3 (y = 0 maps
    /// to +1e-3).
    pub fn to_natural(&self, internal: &[f64]) -> Result<Vec<f64>> {
        self.check_len(internal.len())?;
        Ok(internal
            .iter()
            .zip(&self.domains)
            .map(|(&y, d)| match d {
                Domain::Positive => y.exp().max(f64::MIN_POSITIVE),
                Domain::NonzeroSigned => {
                    let m = NONZERO_FLOOR * y.abs().exp();
                    if y < 0.0 {
                        -m
                    } else {
                        m
                    }
                }
                Domain::Unbounded => y,
            })
            .collect())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::Domain(format!(
                "point has {n} coordinates, transform expects {}",
                self.dim()
            )));
        }
        Ok(())
    }
}
