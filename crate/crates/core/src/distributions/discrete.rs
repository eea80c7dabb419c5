//! Negative binomial and generalized negative binomial probabilities.
//!
//! The GNB pmf is the Poisson mixture
//!
//! P(N = k) = (1/k!) ∫₀^∞ e^{−z} z^k g*(z; r, γ, μ) dz.
//!
//! Substituting t = μ z^γ turns the GG mixing density into the Gamma(r, 1)
//! density for either sign of γ, and a further s = ln t gives
//!
//! P(N = k) = ∫ exp(r s − e^s − ln Γ(r) + k w − e^w − ln k!) ds,  w = (s − ln μ)/γ,
//!
//! whose exponent is strictly concave in s. Each k is therefore a single
//! bump with an analytically known peak and curvature. Bumps of neighbouring
//! k overlap, so they are integrated in blocks that share one node set.

// inherent float methods shadow this when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::vec::Vec;

use super::params::{GGParams, NBParams};
use crate::error::{Error, QuadratureFailure, Result};
use crate::numerics::{integrate_log_bumps, ln_factorial, ln_gamma_unchecked, Bump, PMF_REL_TOL};

/// Number of consecutive k values integrated on a shared node set.
const BLOCK: usize = 8;
/// Log-drop below the peak beyond which an integrand is truncated.
const TAIL_DROP: f64 = 60.0;
/// Mass target and cap for the truncation rule.
pub const TRUNCATION_MASS: f64 = 1.0 - 1e-10;
pub const TRUNCATION_MIN_CAP: u64 = 10_000;

pub fn nb_log_pmf(k: u64, params: &NBParams) -> f64 {
    let (r, p) = (params.r(), params.p());
    let kf = k as f64;
    let coeff = if k == 0 {
        0.0
    } else {
        ln_gamma_unchecked(r + kf) - ln_gamma_unchecked(r) - ln_factorial(k)
    };
    coeff + r * p.ln() + kf * (-p).ln_1p()
}

/// Γ(r+k)/(k! Γ(r)) · p^r (1−p)^k, evaluated in log space.
pub fn nb_pmf(k: u64, params: &NBParams) -> f64 {
    nb_log_pmf(k, params).exp()
}

#[inline]
fn capped_exp(x: f64) -> f64 {
    x.min(700.0).exp()
}

/// ln-integrand pieces in s for shape `r`: the parts shared by every k.
struct MixingIntegrand {
    r: f64,
    inv_gamma: f64,
    ln_mu: f64,
    ln_gamma_r: f64,
}

impl MixingIntegrand {
    fn new(params: &GGParams) -> Self {
        Self {
            r: params.r(),
            inv_gamma: 1.0 / params.gamma_exp(),
            ln_mu: params.mu().ln(),
            ln_gamma_r: ln_gamma_unchecked(params.r()),
        }
    }

    #[inline]
    fn w(&self, s: f64) -> f64 {
        (s - self.ln_mu) * self.inv_gamma
    }

    /// ln integrand at s for argument k, with ln k! supplied.
    #[inline]
    fn ln_term(&self, s: f64, k: f64, ln_k_fact: f64) -> f64 {
        let w = self.w(s);
        self.r * s - s.exp() - self.ln_gamma_r + k * w - w.exp() - ln_k_fact
    }

    /// First derivative in s.
    #[inline]
    fn slope(&self, s: f64, k: f64) -> f64 {
        let w = self.w(s);
        self.r - capped_exp(s) + (k - capped_exp(w)) * self.inv_gamma
    }

    /// Negative second derivative in s (always > 0).
    #[inline]
    fn curvature(&self, s: f64) -> f64 {
        let w = self.w(s);
        capped_exp(s) + capped_exp(w) * self.inv_gamma * self.inv_gamma
    }

    /// Peak of the concave exponent for argument k by safeguarded Newton.
    fn peak(&self, k: f64) -> f64 {
        // bracket the unique root of the decreasing slope
        let guess = if k > 0.0 {
            // where the Poisson factor peaks, pulled toward the gamma peak
            0.5 * (self.r.ln() + self.ln_mu + k.ln() / self.inv_gamma)
        } else {
            self.r.ln()
        };
        let guess = if guess.is_finite() { guess } else { 0.0 };
        let (mut lo, mut hi) = (guess, guess);
        let mut step = 1.0;
        while self.slope(lo, k) <= 0.0 {
            lo -= step;
            step *= 2.0;
            if step > 1e6 {
                break;
            }
        }
        step = 1.0;
        while self.slope(hi, k) >= 0.0 {
            hi += step;
            step *= 2.0;
            if step > 1e6 {
                break;
            }
        }
        let mut s = 0.5 * (lo + hi);
        for _ in 0..200 {
            let d = self.slope(s, k);
            if d > 0.0 {
                lo = s;
            } else if d < 0.0 {
                hi = s;
            } else {
                return s;
            }
            let newton = s + d / self.curvature(s);
            let next = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - s).abs() <= 1e-14 * (1.0 + s.abs()) || hi - lo <= 1e-14 * (1.0 + s.abs()) {
                return next;
            }
            s = next;
        }
        s
    }

    /// Distance from `center` in direction `dir` at which the exponent for k
    /// has dropped by `TAIL_DROP`.
    fn tail(&self, center: f64, peak_log: f64, k: f64, ln_k_fact: f64, dir: f64, scale: f64) -> f64 {
        let target = peak_log - TAIL_DROP;
        let mut d = scale;
        for _ in 0..200 {
            let v = self.ln_term(center + dir * d, k, ln_k_fact);
            if !(v > target) {
                return d;
            }
            d *= 2.0;
        }
        d
    }
}

fn quadrature_error(params: &GGParams, k_lo: u64, k_hi: u64, ln_value: f64, rel: f64, evals: usize) -> Error {
    Error::Quadrature(QuadratureFailure {
        value: ln_value,
        abs_error_estimate: rel,
        evaluations: evals,
        context: format!(
            "GNB pmf, k in {k_lo}..={k_hi}, r={}, gamma={}, mu={} (value is ln P, estimate is relative)",
            params.r(),
            params.gamma_exp(),
            params.mu()
        ),
    })
}

/// ln P(N = k) for k = k_lo..=k_hi by quadrature of the mixing integral,
/// without the closed-form shortcut at γ = 1.
pub fn gnb_log_pmf_range_quadrature(params: &GGParams, k_lo: u64, k_hi: u64, rel_tol: f64) -> Result<Vec<f64>> {
    if k_hi < k_lo {
        return Ok(Vec::new());
    }
    let integrand = MixingIntegrand::new(params);
    let mut out = Vec::with_capacity((k_hi - k_lo + 1) as usize);
    let mut block_start = k_lo;
    while block_start <= k_hi {
        let block_end = (block_start + BLOCK as u64 - 1).min(k_hi);
        let ks: Vec<u64> = (block_start..=block_end).collect();
        let ln_facts: Vec<f64> = ks.iter().map(|&k| ln_factorial(k)).collect();
        let mut bumps = Vec::with_capacity(ks.len());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (&k, &lf) in ks.iter().zip(&ln_facts) {
            let kf = k as f64;
            let center = integrand.peak(kf);
            let peak_log = integrand.ln_term(center, kf, lf);
            let scale = 1.0 / integrand.curvature(center).sqrt();
            let left = integrand.tail(center, peak_log, kf, lf, -1.0, scale);
            let right = integrand.tail(center, peak_log, kf, lf, 1.0, scale);
            lo = lo.min(center - left);
            hi = hi.max(center + right);
            bumps.push(Bump {
                center,
                peak_log,
                scale,
            });
        }
        let kfs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
        let res = integrate_log_bumps(
            |s, o: &mut [f64]| {
                let w = integrand.w(s);
                let base = integrand.r * s - s.exp() - integrand.ln_gamma_r - w.exp();
                for ((slot, &kf), &lf) in o.iter_mut().zip(&kfs).zip(&ln_facts) {
                    *slot = base + kf * w - lf;
                }
            },
            &bumps,
            lo,
            hi,
            rel_tol,
        );
        match res {
            Ok((ln_values, _, _)) => out.extend(ln_values),
            Err((ln_values, rel, evals)) => {
                let (i, worst) = rel
                    .iter()
                    .enumerate()
                    .fold((0, 0.0f64), |acc, (i, &e)| if e > acc.1 { (i, e) } else { acc });
                return Err(quadrature_error(params, block_start, block_end, ln_values[i], worst, evals));
            }
        }
        block_start = block_end + 1;
    }
    Ok(out)
}

/// ln P(N = k) for k = k_lo..=k_hi.
///
/// At γ = 1 the mixture is the negative binomial law with p = μ/(1+μ) and
/// the closed form is used; this keeps the γ = 1 slice of the GNB family
/// bit-identical to the NB family.
pub fn gnb_log_pmf_range(params: &GGParams, k_lo: u64, k_hi: u64, rel_tol: f64) -> Result<Vec<f64>> {
    if params.gamma_exp() == 1.0 {
        let nb = NBParams::from_gamma_mixing(params.r(), params.mu())?;
        return Ok((k_lo..=k_hi).map(|k| nb_log_pmf(k, &nb)).collect());
    }
    gnb_log_pmf_range_quadrature(params, k_lo, k_hi, rel_tol)
}

pub fn gnb_log_pmf(k: u64, params: &GGParams) -> Result<f64> {
    Ok(gnb_log_pmf_range(params, k, k, PMF_REL_TOL)?[0])
}

pub fn gnb_pmf(k: u64, params: &GGParams) -> Result<f64> {
    gnb_log_pmf(k, params).map(f64::exp)
}

/// P(N = k) for k = 0..=k_max.
pub fn gnb_pmf_batch(params: &GGParams, k_max: u64) -> Result<Vec<f64>> {
    let mut v = gnb_log_pmf_range(params, 0, k_max, PMF_REL_TOL)?;
    v.iter_mut().for_each(|x| *x = x.exp());
    Ok(v)
}

/// P(N = k) for k = 0..=k_max, always by quadrature.
pub fn gnb_pmf_batch_quadrature(params: &GGParams, k_max: u64) -> Result<Vec<f64>> {
    let mut v = gnb_log_pmf_range_quadrature(params, 0, k_max, PMF_REL_TOL)?;
    v.iter_mut().for_each(|x| *x = x.exp());
    Ok(v)
}

/// Residual of the GNB recurrence
///
/// (γr + k) P_r(k) = (k + 1) P_r(k + 1) + γ r P_{r+1}(k),
///
/// returned as P_r(k+1) − [(γr+k)/(k+1) P_r(k) − γr/(k+1) P_{r+1}(k)].
/// Every pmf is taken from the quadrature path.
pub fn gnb_recurrence_residual(k: u64, params: &GGParams) -> Result<f64> {
    let coeff = params.gamma_exp() * params.r();
    recurrence_with_coefficient(k, params, coeff)
}

/// The same residual with the coefficient |γ|μ in place of γr.
///
/// That form does not hold in general (it agrees with the identity above
/// only when |γ|μ = γr); it is kept so the discrepancy can be measured.
pub fn gnb_recurrence_residual_literal(k: u64, params: &GGParams) -> Result<f64> {
    let coeff = params.gamma_exp().abs() * params.mu();
    recurrence_with_coefficient(k, params, coeff)
}

fn recurrence_with_coefficient(k: u64, params: &GGParams, coeff: f64) -> Result<f64> {
    let here = gnb_log_pmf_range_quadrature(params, k, k + 1, PMF_REL_TOL)?;
    let shifted = gnb_log_pmf_range_quadrature(&params.with_r(params.r() + 1.0)?, k, k, PMF_REL_TOL)?[0];
    let (p_k, p_next) = (here[0].exp(), here[1].exp());
    let kf = k as f64;
    let g = params.gamma_exp();
    let predicted = (g * params.r() + kf) / (kf + 1.0) * p_k - coeff / (kf + 1.0) * shifted.exp();
    Ok(p_next - predicted)
}

/// Mean of the GNB law (the mean of its mixing law), possibly infinite.
pub fn gnb_mean(params: &GGParams) -> f64 {
    super::continuous::gg_mean(params)
}

/// Truncation point: the smallest K with Σ_{k≤K} P(k) ≥ 1 − 1e-10, capped
/// at max(10 · mean, 10⁴). Returns K together with the probabilities.
pub fn gnb_truncated_pmf(params: &GGParams) -> Result<(u64, Vec<f64>)> {
    let mean = gnb_mean(params);
    let cap = if mean.is_finite() {
        ((10.0 * mean).ceil() as u64).max(TRUNCATION_MIN_CAP)
    } else {
        TRUNCATION_MIN_CAP
    };
    let mut probs = Vec::new();
    let mut cumulative = 0.0;
    let mut next = 0u64;
    const CHUNK: u64 = 64;
    while next <= cap {
        let end = (next + CHUNK - 1).min(cap);
        let chunk = gnb_log_pmf_range(params, next, end, PMF_REL_TOL)?;
        for (i, lp) in chunk.into_iter().enumerate() {
            let p = lp.exp();
            probs.push(p);
            cumulative += p;
            if cumulative >= TRUNCATION_MASS {
                return Ok((next + i as u64, probs));
            }
        }
        next = end + 1;
    }
    Ok((cap, probs))
}
