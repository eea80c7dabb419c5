//! Adaptive Gauss–Kronrod quadrature on finite intervals, the half-line, and
//! (in log form) on bell-shaped integrands over the real line.
//!
//! Every routine is built on one engine: a globally adaptive G7/K15 scheme
//! that integrates a vector of integrands on a shared node set. Panels are
//! bisected in order of their worst normalized error until every component
//! meets `max(rel_tol·|I|, abs_tol)` or the evaluation budget runs out.

// inherent float methods shadow this when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, QuadratureFailure, Result};

/// Hard cap on integrand evaluations per integral.
pub const DEFAULT_MAX_EVALS: usize = 200_000;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, same units as `value`.
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Result of a log-form integral: `ln_value = ln ∫ f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogQuadratureResult {
    pub ln_value: f64,
    /// Relative error estimate of `exp(ln_value)`.
    pub rel_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl QuadOptions {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: DEFAULT_ABS_TOL,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }
}

/// Output of the vector engine: per-component values and error estimates.
#[derive(Debug, Clone)]
pub(crate) struct VectorOutcome {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
}

/// One K15 panel rule applied to every component.
///
/// `scratch` holds `15 * dim` samples; `val`/`err` receive the per-component
/// Kronrod value and the QUADPACK-style error estimate.
fn gk15_panel<F>(f: &mut F, a: f64, b: f64, dim: usize, scratch: &mut [f64], val: &mut [f64], err: &mut [f64])
where
    F: FnMut(f64, &mut [f64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // scratch layout: node j (0..15) occupies scratch[j*dim .. (j+1)*dim]
    // j = 0..7 → center - half*XGK[j], j = 7 → center, j = 8..15 → center + half*XGK[j-8]
    for j in 0..7 {
        let dx = half * XGK[j];
        f(center - dx, &mut scratch[j * dim..(j + 1) * dim]);
        f(center + dx, &mut scratch[(8 + j) * dim..(9 + j) * dim]);
    }
    f(center, &mut scratch[7 * dim..8 * dim]);

    for c in 0..dim {
        let fc = sanitize(scratch[7 * dim + c]);
        let mut resk = fc * WGK[7];
        let mut resg = fc * WG[3];
        let mut resabs = fc.abs() * WGK[7];
        let mut pairs = [(0.0f64, 0.0f64); 7];
        for (j, pair) in pairs.iter_mut().enumerate() {
            let lo = sanitize(scratch[j * dim + c]);
            let hi = sanitize(scratch[(8 + j) * dim + c]);
            *pair = (lo, hi);
            resk += WGK[j] * (lo + hi);
            resabs += WGK[j] * (lo.abs() + hi.abs());
            if j % 2 == 1 {
                resg += WG[j / 2] * (lo + hi);
            }
        }
        let reskh = 0.5 * resk;
        let mut resasc = WGK[7] * (fc - reskh).abs();
        for (j, &(lo, hi)) in pairs.iter().enumerate() {
            resasc += WGK[j] * ((lo - reskh).abs() + (hi - reskh).abs());
        }
        let result = resk * half;
        let resabs = resabs * half.abs();
        let resasc = resasc * half.abs();
        let mut abserr = ((resk - resg) * half).abs();
        if resasc != 0.0 && abserr != 0.0 {
            abserr = resasc * (1.0f64).min((200.0 * abserr / resasc).powf(1.5));
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            abserr = abserr.max(50.0 * f64::EPSILON * resabs);
        }
        val[c] = result;
        err[c] = abserr;
    }
}

/// Non-finite samples are zeroed here; the engine flags them separately.
#[inline]
fn sanitize(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// Globally adaptive vector quadrature over `[breaks[0], breaks[last]]`,
/// starting from the panels delimited by `breaks`.
///
/// Component `c` converges when `Σ err_c ≤ max(rel_tol·|I_c|, abs_tol)`.
pub(crate) fn adaptive_vector<F>(
    mut f: F,
    breaks: &[f64],
    dim: usize,
    opts: &QuadOptions,
) -> VectorOutcome
where
    F: FnMut(f64, &mut [f64]),
{
    debug_assert!(breaks.len() >= 2 && dim >= 1);
    let mut bounds: Vec<(f64, f64)> = Vec::with_capacity(breaks.len() * 2);
    let mut vals: Vec<f64> = Vec::new();
    let mut errs: Vec<f64> = Vec::new();
    let mut frozen: Vec<bool> = Vec::new();
    let mut scratch = vec![0.0; 15 * dim];
    let mut pv = vec![0.0; dim];
    let mut pe = vec![0.0; dim];
    let mut evaluations = 0usize;

    let mut nonfinite = false;
    let mut guarded = |x: f64, out: &mut [f64]| {
        f(x, out);
        if out.iter().any(|v| !v.is_finite()) {
            nonfinite = true;
        }
    };

    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        gk15_panel(&mut guarded, a, b, dim, &mut scratch, &mut pv, &mut pe);
        evaluations += 15;
        bounds.push((a, b));
        vals.extend_from_slice(&pv);
        errs.extend_from_slice(&pe);
        frozen.push(false);
    }

    let mut total = vec![0.0; dim];
    let mut total_err = vec![0.0; dim];
    let recompute = |vals: &[f64], errs: &[f64], total: &mut [f64], total_err: &mut [f64]| {
        total.iter_mut().for_each(|t| *t = 0.0);
        total_err.iter_mut().for_each(|t| *t = 0.0);
        for (pv, pe) in vals.chunks_exact(dim).zip(errs.chunks_exact(dim)) {
            for c in 0..dim {
                total[c] += pv[c];
                total_err[c] += pe[c];
            }
        }
    };
    recompute(&vals, &errs, &mut total, &mut total_err);

    let tolerance = |t: f64| (opts.rel_tol * t.abs()).max(opts.abs_tol);
    let mut converged;
    let mut since_recompute = 0usize;
    loop {
        converged = (0..dim).all(|c| total_err[c] <= tolerance(total[c]));
        if converged || evaluations + 30 > opts.max_evals {
            break;
        }
        // pick the panel with the worst normalized error
        let mut best: Option<(usize, f64)> = None;
        for (p, pe) in errs.chunks_exact(dim).enumerate() {
            if frozen[p] {
                continue;
            }
            let mut score = 0.0f64;
            for c in 0..dim {
                let s = pe[c] / tolerance(total[c]);
                if s > score {
                    score = s;
                }
            }
            if best.map_or(true, |(_, b)| score > b) {
                best = Some((p, score));
            }
        }
        let Some((p, score)) = best else { break };
        if score == 0.0 {
            break;
        }
        let (a, b) = bounds[p];
        let m = 0.5 * (a + b);
        if !(m > a && m < b) || (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            frozen[p] = true;
            continue;
        }
        let old_v: Vec<f64> = vals[p * dim..(p + 1) * dim].to_vec();
        let old_e: Vec<f64> = errs[p * dim..(p + 1) * dim].to_vec();

        gk15_panel(&mut guarded, a, m, dim, &mut scratch, &mut pv, &mut pe);
        let (lv, le) = (pv.clone(), pe.clone());
        gk15_panel(&mut guarded, m, b, dim, &mut scratch, &mut pv, &mut pe);
        evaluations += 30;

        bounds[p] = (a, m);
        vals[p * dim..(p + 1) * dim].copy_from_slice(&lv);
        errs[p * dim..(p + 1) * dim].copy_from_slice(&le);
        bounds.push((m, b));
        vals.extend_from_slice(&pv);
        errs.extend_from_slice(&pe);
        frozen.push(false);
        for c in 0..dim {
            total[c] += lv[c] + pv[c] - old_v[c];
            total_err[c] += le[c] + pe[c] - old_e[c];
        }
        since_recompute += 1;
        if since_recompute >= 64 {
            recompute(&vals, &errs, &mut total, &mut total_err);
            since_recompute = 0;
        }
    }
    recompute(&vals, &errs, &mut total, &mut total_err);
    converged = !nonfinite && (0..dim).all(|c| total_err[c] <= tolerance(total[c]));
    if nonfinite {
        for e in total_err.iter_mut() {
            *e = f64::INFINITY;
        }
    }
    VectorOutcome {
        values: total,
        errors: total_err,
        evaluations,
        converged,
    }
}

fn failure(value: f64, abs_error_estimate: f64, evaluations: usize) -> Error {
    Error::Quadrature(QuadratureFailure {
        value,
        abs_error_estimate,
        evaluations,
        context: String::new(),
    })
}

/// ∫_a^b f with the default budget and absolute floor.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_interval_with(f, a, b, &QuadOptions::with_rel_tol(rel_tol))
}

pub fn integrate_interval_with<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "integration interval [{a}, {b}] must be finite with a < b"
        )));
    }
    let out = adaptive_vector(|x, o: &mut [f64]| o[0] = f(x), &[a, b], 1, opts);
    finish_scalar(out)
}

fn finish_scalar(out: VectorOutcome) -> Result<QuadratureResult> {
    let res = QuadratureResult {
        value: out.values[0],
        abs_error_estimate: out.errors[0],
        evaluations: out.evaluations,
    };
    if out.converged {
        Ok(res)
    } else {
        Err(failure(res.value, res.abs_error_estimate, res.evaluations))
    }
}

/// ∫_0^∞ f through the map x = (1 − t)/t on (0, 1].
pub fn integrate_semiinfinite<F>(mut f: F, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    let opts = QuadOptions::with_rel_tol(rel_tol);
    let mapped = |t: f64, o: &mut [f64]| {
        let x = (1.0 - t) / t;
        let v = f(x) / (t * t);
        // the integrand must vanish at infinity; an overflowing product of a
        // vanishing f and 1/t² is taken as zero
        o[0] = if v.is_nan() { 0.0 } else { v };
    };
    let out = adaptive_vector(mapped, &[0.0, 0.5, 1.0], 1, &opts);
    finish_scalar(out)
}

/// Shape of one log-concave-ish bump in the substituted variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bump {
    pub center: f64,
    pub peak_log: f64,
    pub scale: f64,
}

/// Breakpoints for a set of bumps inside `[lo, hi]`.
///
/// Each bump contributes its center and points at 1, 2, 4, 8 scales on
/// either side; points closer than half the local scale are merged.
pub(crate) fn bump_breakpoints(bumps: &[Bump], lo: f64, hi: f64) -> Vec<f64> {
    const OFFSETS: [f64; 9] = [0.0, -1.0, 1.0, -2.0, 2.0, -4.0, 4.0, -8.0, 8.0];
    let mut cand: Vec<(f64, f64)> = Vec::with_capacity(bumps.len() * OFFSETS.len());
    for bump in bumps {
        for &m in OFFSETS.iter() {
            let x = bump.center + m * bump.scale;
            if x > lo && x < hi {
                let local = bump.scale * (0.5 * m.abs()).max(1.0);
                cand.push((x, local));
            }
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::with_capacity(cand.len() + 2);
    out.push(lo);
    let mut last_scale = f64::INFINITY;
    for (x, s) in cand {
        let prev = *out.last().unwrap();
        if x - prev >= 0.5 * s.min(last_scale) {
            out.push(x);
            last_scale = s;
        } else if s < last_scale {
            last_scale = s;
        }
    }
    if hi - *out.last().unwrap() <= 0.0 {
        out.pop();
    }
    out.push(hi);
    out
}

/// Integrates `dim` positive functions given in log form over `[lo, hi]`.
///
/// `ln_f(s, out)` writes ln f_c(s); each component is rescaled by its bump's
/// `peak_log` before exponentiation so arbitrarily small or large integrals
/// stay representable. Returns ln ∫ f_c per component.
pub(crate) fn integrate_log_bumps<F>(
    mut ln_f: F,
    bumps: &[Bump],
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> core::result::Result<(Vec<f64>, Vec<f64>, usize), (Vec<f64>, Vec<f64>, usize)>
where
    F: FnMut(f64, &mut [f64]),
{
    let dim = bumps.len();
    let breaks = bump_breakpoints(bumps, lo, hi);
    let opts = QuadOptions {
        rel_tol,
        abs_tol: 0.0,
        max_evals: DEFAULT_MAX_EVALS,
    };
    let out = adaptive_vector(
        |s, o: &mut [f64]| {
            ln_f(s, o);
            for (v, b) in o.iter_mut().zip(bumps) {
                *v = if *v == f64::NEG_INFINITY {
                    0.0
                } else {
                    (*v - b.peak_log).exp()
                };
            }
        },
        &breaks,
        dim,
        &opts,
    );
    let ln_values: Vec<f64> = out
        .values
        .iter()
        .zip(bumps)
        .map(|(v, b)| b.peak_log + v.ln())
        .collect();
    let rel_errors: Vec<f64> = out
        .values
        .iter()
        .zip(&out.errors)
        .map(|(v, e)| if *v > 0.0 { e / v } else { f64::INFINITY })
        .collect();
    if out.converged {
        Ok((ln_values, rel_errors, out.evaluations))
    } else {
        Err((ln_values, rel_errors, out.evaluations))
    }
}

/// Golden-section maximization on [a, b].
fn golden_max<F: FnMut(f64) -> f64>(f: &mut F, mut a: f64, mut b: f64, evals: &mut usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    *evals += 2;
    while (b - a) > 1e-9 * (1.0 + c.abs()) {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        *evals += 1;
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Distance from `center` (stepping by `dir`) at which `g` first falls
/// `drop` below `peak`, located by doubling then bisection.
fn drop_distance<F: FnMut(f64) -> f64>(
    g: &mut F,
    center: f64,
    peak: f64,
    dir: f64,
    drop: f64,
    start: f64,
    limit: f64,
    evals: &mut usize,
) -> f64 {
    let target = peak - drop;
    let mut inner = 0.0;
    let mut outer = start;
    loop {
        *evals += 1;
        if g(center + dir * outer) <= target {
            break;
        }
        inner = outer;
        outer *= 2.0;
        if outer >= limit {
            return limit;
        }
    }
    for _ in 0..40 {
        let mid = 0.5 * (inner + outer);
        *evals += 1;
        if g(center + dir * mid) <= target {
            outer = mid;
        } else {
            inner = mid;
        }
        if outer - inner <= 1e-6 * outer {
            break;
        }
    }
    outer
}

/// ln ∫_0^∞ f for a nonnegative f supplied as `ln_f(x) = ln f(x)`.
///
/// The integral is taken in s = ln x, where power-type behaviour of f at 0
/// becomes exponential decay. The integrand in s is assumed unimodal
/// (as for the gamma-weighted mixing integrals this crate evaluates): the peak
/// is located by a coarse scan plus golden section, and panels are laid out
/// in multiples of its half-drop width.
pub fn integrate_semiinfinite_log<F>(mut ln_f: F, rel_tol: f64) -> Result<LogQuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    const SPAN: f64 = 120.0;
    const STEP: f64 = 0.25;
    let mut evals = 0usize;
    let mut g = |s: f64| {
        let v = ln_f(s.exp()) + s;
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let mut best = (0.0, f64::NEG_INFINITY);
    let steps = (2.0 * SPAN / STEP) as usize;
    for i in 0..=steps {
        let s = -SPAN + i as f64 * STEP;
        let v = g(s);
        evals += 1;
        if v > best.1 {
            best = (s, v);
        }
    }
    if best.1 == f64::NEG_INFINITY {
        return Ok(LogQuadratureResult {
            ln_value: f64::NEG_INFINITY,
            rel_error_estimate: 0.0,
            evaluations: evals,
        });
    }
    if best.1 == f64::INFINITY {
        return Err(failure(f64::INFINITY, f64::INFINITY, evals));
    }
    let (center, peak) = golden_max(&mut g, best.0 - STEP, best.0 + STEP, &mut evals);
    let (center, peak) = if peak >= best.1 { (center, peak) } else { best };

    let left_w = drop_distance(&mut g, center, peak, -1.0, 0.5, 1e-6, 2.0 * SPAN, &mut evals);
    let right_w = drop_distance(&mut g, center, peak, 1.0, 0.5, 1e-6, 2.0 * SPAN, &mut evals);
    let lo = center - drop_distance(&mut g, center, peak, -1.0, 60.0, left_w, 4.0 * SPAN, &mut evals);
    let hi = center + drop_distance(&mut g, center, peak, 1.0, 60.0, right_w, 4.0 * SPAN, &mut evals);
    let scale = left_w.min(right_w);

    let bumps = [
        Bump {
            center,
            peak_log: peak,
            scale,
        },
        // second entry only adds breakpoints on the wider side
        Bump {
            center,
            peak_log: peak,
            scale: left_w.max(right_w),
        },
    ];
    let breaks = {
        let mut b = bump_breakpoints(&bumps, lo, hi);
        b.dedup();
        b
    };
    let opts = QuadOptions {
        rel_tol,
        abs_tol: 0.0,
        max_evals: DEFAULT_MAX_EVALS.saturating_sub(evals),
    };
    let out = adaptive_vector(
        |s, o: &mut [f64]| {
            let v = g(s);
            o[0] = if v == f64::NEG_INFINITY { 0.0 } else { (v - peak).exp() };
        },
        &breaks,
        1,
        &opts,
    );
    let evaluations = evals + out.evaluations;
    let v = out.values[0];
    let rel = if v > 0.0 { out.errors[0] / v } else { f64::INFINITY };
    if out.converged {
        Ok(LogQuadratureResult {
            ln_value: peak + v.ln(),
            rel_error_estimate: rel,
            evaluations,
        })
    } else {
        Err(failure(peak + v.ln(), rel, evaluations).with_context("log-form integral; value is ln"))
    }
}
