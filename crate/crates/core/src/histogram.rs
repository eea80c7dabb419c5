//! Empirical histograms: the integer rule for counts and the
//! Freedman–Diaconis rule for continuous positives.
//!
//! Bars are normalized by area, so `Σ height · width = 1`. Bins are
//! right-open, except the last one, which is closed.

// inherent float methods shadow this when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Upper bound on the number of bins either rule may create.
pub const MAX_BINS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinningRule {
    /// One unit-width bin per integer value, starting at 0.
    Integer,
    FreedmanDiaconis,
}

impl BinningRule {
    pub fn name(self) -> &'static str {
        match self {
            BinningRule::Integer => "integer",
            BinningRule::FreedmanDiaconis => "freedman-diaconis",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    heights: Vec<f64>,
    counts: Vec<u64>,
    rule: BinningRule,
    n: usize,
}

impl Histogram {
    /// Histogram from explicit edges and counts; heights are
    /// count / (n · width).
    pub fn from_counts(edges: Vec<f64>, counts: Vec<u64>, rule: BinningRule) -> Result<Self> {
        if counts.is_empty() || edges.len() != counts.len() + 1 {
            return Err(Error::Domain(format!(
                "{} edges do not bound {} bins",
                edges.len(),
                counts.len()
            )));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("edges must be finite and strictly increasing".into()));
        }
        if rule == BinningRule::Integer
            && edges.iter().enumerate().any(|(k, &e)| e != k as f64 - 0.5)
        {
            return Err(Error::Domain("integer bins must have edges k − 0.5 starting at −0.5".into()));
        }
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return Err(Error::Domain("histogram has no observations".into()));
        }
        let heights = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 / (n as f64 * (edges[i + 1] - edges[i])))
            .collect();
        Ok(Self {
            edges,
            heights,
            counts,
            rule,
            n: n as usize,
        })
    }

    /// Bin edges, length `n_bins() + 1`, strictly increasing.
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn rule(&self) -> BinningRule {
        self.rule
    }

    /// Sample size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_bins(&self) -> usize {
        self.heights.len()
    }

    pub fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    /// Representative abscissa of bin `i`: the integer value for the integer
    /// rule, the midpoint otherwise.
    pub fn bin_point(&self, i: usize) -> f64 {
        match self.rule {
            BinningRule::Integer => i as f64,
            BinningRule::FreedmanDiaconis => 0.5 * (self.edges[i] + self.edges[i + 1]),
        }
    }

    /// Σ height · width.
    pub fn total_area(&self) -> f64 {
        (0..self.n_bins()).map(|i| self.heights[i] * self.width(i)).sum()
    }
}

/// One bin per integer value 0..=max(data), height = count / n.
pub fn bin_integer(data: &[u64]) -> Result<Histogram> {
    let max = *data
        .iter()
        .max()
        .ok_or_else(|| Error::Domain("cannot bin an empty sample".into()))?;
    if max >= MAX_BINS as u64 {
        return Err(Error::Domain(format!(
            "largest value {max} would need more than {MAX_BINS} integer bins"
        )));
    }
    let n_bins = max as usize + 1;
    let mut counts = vec![0u64; n_bins];
    for &k in data {
        counts[k as usize] += 1;
    }
    let n = data.len();
    let heights = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let edges = (0..=n_bins).map(|k| k as f64 - 0.5).collect();
    Ok(Histogram {
        edges,
        heights,
        counts,
        rule: BinningRule::Integer,
        n,
    })
}

/// [`bin_integer`] for values stored as reals; each must be a nonnegative
/// integer.
pub fn bin_integer_values(data: &[f64]) -> Result<Histogram> {
    let mut ints = Vec::with_capacity(data.len());
    for (i, &x) in data.iter().enumerate() {
        if !(x >= 0.0 && x.fract() == 0.0 && x < MAX_BINS as f64) {
            return Err(Error::Domain(format!(
                "value {x} at position {i} is not a nonnegative integer"
            )));
        }
        ints.push(x as u64);
    }
    bin_integer(&ints)
}

/// Sample quantile by linear interpolation between order statistics at
/// position 1 + (n − 1)q (1-based). `sorted` must be ascending and non-empty.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

/// Freedman–Diaconis width 2·IQR / n^{1/3}, edges anchored at min(data).
pub fn bin_fd(data: &[f64]) -> Result<Histogram> {
    if data.is_empty() {
        return Err(Error::Domain("cannot bin an empty sample".into()));
    }
    if let Some((i, x)) = data.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::Domain(format!(
            "value {x} at position {i} is not a finite nonnegative real"
        )));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q25 = quantile_sorted(&sorted, 0.25);
    let q75 = quantile_sorted(&sorted, 0.75);
    let iqr = q75 - q25;
    if !(iqr > 0.0) {
        return Err(Error::DegenerateData(format!(
            "interquartile range is zero (q0.25 = {q25}, q0.75 = {q75})"
        )));
    }
    let n = data.len();
    let w = 2.0 * iqr / (n as f64).cbrt();
    let (lo, hi) = (sorted[0], sorted[n - 1]);
    let span = ((hi - lo) / w).ceil();
    if span > MAX_BINS as f64 {
        return Err(Error::DegenerateData(format!(
            "bin width {w} over range [{lo}, {hi}] needs more than {MAX_BINS} bins"
        )));
    }
    let n_bins = (span as usize).max(1);
    let mut edges: Vec<f64> = (0..=n_bins).map(|i| lo + i as f64 * w).collect();
    if edges[n_bins] < hi {
        // rounding in lo + n·w
        edges[n_bins] = hi;
    }

    let mut counts = vec![0u64; n_bins];
    for &x in data {
        let mut i = (((x - lo) / w).floor() as usize).min(n_bins - 1);
        while i > 0 && x < edges[i] {
            i -= 1;
        }
        while i + 1 < n_bins && x >= edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    let heights = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| c as f64 / (n as f64 * (edges[i + 1] - edges[i])))
        .collect();
    Ok(Histogram {
        edges,
        heights,
        counts,
        rule: BinningRule::FreedmanDiaconis,
        n,
    })
}
