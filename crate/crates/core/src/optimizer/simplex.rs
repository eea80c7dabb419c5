// inherent float methods shadow this when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Converged once the simplex diameter (max ∞-norm distance from the best
    /// vertex) is at most this...
    pub x_tol: f64,
    /// ...and the spread of vertex values is at most this.
    pub f_tol: f64,
    /// Iteration budget shared by the initial run and all restarts.
    pub max_iters: usize,
    /// After convergence the simplex is rebuilt around the best vertex up to
    /// this many times, stopping early once a restart fails to improve.
    pub restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            x_tol: 1e-8,
            f_tol: 1e-10,
            max_iters: 2000,
            restarts: 5,
        }
    }
}

impl SimplexOptions {
    pub fn validate(&self) -> Result<()> {
        let ok = self.reflection > 0.0
            && self.expansion > 1.0
            && self.contraction > 0.0
            && self.contraction < 1.0
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.x_tol >= 0.0
            && self.f_tol >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid simplex coefficients {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimResult {
    pub x_min: Vec<f64>,
    pub f_min: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Index of the start that produced this result (0 for [`minimize`]).
    pub restart_index: usize,
}

fn eval<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64]) -> f64 {
    let v = f(x);
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

struct Simplex {
    pts: Vec<Vec<f64>>,
    vals: Vec<f64>,
}

impl Simplex {
    /// x0 plus a step of 5% of |x0_i| (0.05 if x0_i = 0) along each axis.
    fn around<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], f0: f64) -> Self {
        let mut pts = vec![x0.to_vec()];
        let mut vals = vec![f0];
        for i in 0..x0.len() {
            let mut p = x0.to_vec();
            p[i] += if x0[i] == 0.0 { 0.05 } else { 0.05 * x0[i].abs() };
            vals.push(eval(f, &p));
            pts.push(p);
        }
        Self { pts, vals }
    }

    /// Stable sort by value, so ties keep their current order.
    fn order(&mut self) {
        let mut idx: Vec<usize> = (0..self.pts.len()).collect();
        idx.sort_by(|&a, &b| self.vals[a].total_cmp(&self.vals[b]));
        self.pts = idx.iter().map(|&i| self.pts[i].clone()).collect();
        self.vals = idx.iter().map(|&i| self.vals[i]).collect();
    }

    fn diameter(&self) -> f64 {
        let best = &self.pts[0];
        self.pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }

    fn spread(&self) -> f64 {
        self.vals[self.vals.len() - 1] - self.vals[0]
    }
}

fn affine(c: &[f64], d: &[f64], t: f64) -> Vec<f64> {
    // c + t (c − d)
    c.iter().zip(d).map(|(ci, di)| ci + t * (ci - di)).collect()
}

/// One Nelder–Mead run; returns (converged, iterations used).
fn run<F: FnMut(&[f64]) -> f64>(f: &mut F, s: &mut Simplex, opts: &SimplexOptions, budget: usize) -> (bool, usize) {
    let n = s.pts.len() - 1;
    let mut it = 0;
    loop {
        s.order();
        let spread = s.spread();
        if s.diameter() <= opts.x_tol && spread <= opts.f_tol {
            return (true, it);
        }
        if it >= budget {
            return (false, it);
        }
        it += 1;

        let mut c = vec![0.0; n];
        for p in &s.pts[..n] {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi / n as f64;
            }
        }
        let (f_best, f_second, f_worst) = (s.vals[0], s.vals[n - 1], s.vals[n]);

        let xr = affine(&c, &s.pts[n], opts.reflection);
        let fr = eval(f, &xr);
        if fr < f_best {
            let xe = affine(&c, &s.pts[n], opts.reflection * opts.expansion);
            let fe = eval(f, &xe);
            if fe < fr {
                s.pts[n] = xe;
                s.vals[n] = fe;
            } else {
                s.pts[n] = xr;
                s.vals[n] = fr;
            }
            continue;
        }
        if fr < f_second {
            s.pts[n] = xr;
            s.vals[n] = fr;
            continue;
        }
        if fr < f_worst {
            let xc = affine(&c, &s.pts[n], opts.reflection * opts.contraction);
            let fc = eval(f, &xc);
            if fc <= fr {
                s.pts[n] = xc;
                s.vals[n] = fc;
                continue;
            }
        } else {
            let xc = affine(&c, &s.pts[n], -opts.contraction);
            let fc = eval(f, &xc);
            if fc < f_worst {
                s.pts[n] = xc;
                s.vals[n] = fc;
                continue;
            }
        }
        // shrink toward the best vertex
        let best = s.pts[0].clone();
        for i in 1..=n {
            let p: Vec<f64> = best
                .iter()
                .zip(&s.pts[i])
                .map(|(b, x)| b + opts.shrink * (x - b))
                .collect();
            s.vals[i] = eval(f, &p);
            s.pts[i] = p;
        }
    }
}

/// Nelder–Mead from `x0`. Non-finite values of `f` during the search count
/// as +∞; a non-finite f(x0) is an error.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> Result<OptimResult>
where
    F: FnMut(&[f64]) -> f64,
{
    opts.validate()?;
    if x0.is_empty() {
        return Err(Error::Domain("starting point has no coordinates".into()));
    }
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(Error::Domain(format!("objective is {f0} at the starting point")));
    }
    let mut s = Simplex::around(&mut f, x0, f0);
    let (mut converged, mut iterations) = run(&mut f, &mut s, opts, opts.max_iters);
    let mut restarts = 0;
    while converged && restarts < opts.restarts && iterations < opts.max_iters {
        restarts += 1;
        let (x_best, f_best) = (s.pts[0].clone(), s.vals[0]);
        let mut fresh = Simplex::around(&mut f, &x_best, f_best);
        let (c, it) = run(&mut f, &mut fresh, opts, opts.max_iters - iterations);
        iterations += it;
        converged = c;
        let improved = f_best - fresh.vals[0] > opts.f_tol;
        s = fresh;
        if !improved {
            break;
        }
    }
    s.order();
    Ok(OptimResult {
        x_min: s.pts[0].clone(),
        f_min: s.vals[0],
        iterations,
        converged,
        restart_index: 0,
    })
}

/// Runs [`minimize`] from every start and keeps the lowest f_min; ties go to
/// the earliest start. Starts where f is not finite are skipped.
pub fn minimize_multistart<F>(mut f: F, starts: &[Vec<f64>], opts: &SimplexOptions) -> Result<OptimResult>
where
    F: FnMut(&[f64]) -> f64,
{
    if starts.is_empty() {
        return Err(Error::Domain("no starting points".into()));
    }
    let mut best: Option<OptimResult> = None;
    let mut first_error = None;
    for (i, x0) in starts.iter().enumerate() {
        match minimize(&mut f, x0, opts) {
            Ok(mut res) => {
                res.restart_index = i;
                if best.as_ref().map_or(true, |b| res.f_min < b.f_min) {
                    best = Some(res);
                }
            }
            Err(e) => {
                first_error.get_or_insert_with(|| format!("start {i}: {e}"));
            }
        }
    }
    best.ok_or_else(|| Error::AllStartsFailed {
        starts: starts.len(),
        first: first_error.unwrap_or_else(|| "unknown".to_string()),
    })
}
