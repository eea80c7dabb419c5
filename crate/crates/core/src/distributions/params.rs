use crate::error::{Error, Result};

/// Smallest admissible |γ| for a generalized gamma law.
pub const MIN_ABS_GAMMA_EXP: f64 = 1e-3;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

/// Gamma law with shape `r` and rate `mu`: density μ^r x^{r−1} e^{−μx} / Γ(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    r: f64,
    mu: f64,
}

impl GammaParams {
    pub fn new(r: f64, mu: f64) -> Result<Self> {
        Ok(Self {
            r: positive("r", r)?,
            mu: positive("mu", mu)?,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mean(&self) -> f64 {
        self.r / self.mu
    }
}

/// Generalized gamma law (r, γ, μ); also the mixing law of a GNB law.
///
/// γ = 1 is the gamma law, r = 1 the Weibull law, γ = −1 the inverse gamma
/// law (whose Poisson mixture is the Sichel-type family).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GGParams {
    r: f64,
    gamma_exp: f64,
    mu: f64,
}

impl GGParams {
    pub fn new(r: f64, gamma_exp: f64, mu: f64) -> Result<Self> {
        let r = positive("r", r)?;
        let mu = positive("mu", mu)?;
        if !gamma_exp.is_finite() || gamma_exp.abs() < MIN_ABS_GAMMA_EXP {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma_exp,
                reason: "must be finite with |gamma| >= 1e-3",
            });
        }
        Ok(Self { r, gamma_exp, mu })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn gamma_exp(&self) -> f64 {
        self.gamma_exp
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// The underlying gamma law G_{r,μ} with Ḡ = G^{1/γ}.
    pub fn base_gamma(&self) -> GammaParams {
        GammaParams {
            r: self.r,
            mu: self.mu,
        }
    }

    /// Same law with shape r + 1 (appears in the GNB recurrence).
    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(r, self.gamma_exp, self.mu)
    }
}

impl From<GammaParams> for GGParams {
    fn from(g: GammaParams) -> Self {
        Self {
            r: g.r,
            gamma_exp: 1.0,
            mu: g.mu,
        }
    }
}

/// Negative binomial law: P(k) = Γ(r+k)/(k! Γ(r)) p^r (1−p)^k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NBParams {
    r: f64,
    p: f64,
}

impl NBParams {
    pub fn new(r: f64, p: f64) -> Result<Self> {
        let r = positive("r", r)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(Self { r, p })
    }

    /// NB law of the gamma(r, μ)-mixed Poisson: p = μ / (1 + μ).
    pub fn from_gamma_mixing(r: f64, mu: f64) -> Result<Self> {
        let mu = positive("mu", mu)?;
        Self::new(r, mu / (1.0 + mu))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mean(&self) -> f64 {
        self.r * (1.0 - self.p) / self.p
    }
}
