//! Plain and weighted sample quantiles.
//!
//! `sample_quantile` is the continuous linear-interpolation definition at
//! rank h = (n-1)q + 1 (R's default type 7). `weighted_quantile` follows the
//! semantics of R's `Hmisc::wtd.quantile(type = "quantile")` with weights
//! rescaled to sum to the number of values: the rank h is looked up in the
//! cumulative rescaled weights and the two bracketing order statistics are
//! blended linearly. With equal weights this reduces exactly to
//! `sample_quantile`; a value holding a majority of the weight absorbs the
//! median.

use crate::error::Error;

/// Linear-interpolation quantile of an ascending-sorted slice.
///
/// q = 0 returns the minimum, q = 1 the maximum.
pub fn sample_quantile(sorted: &[f64], q: f64) -> Result<f64, Error> {
    if sorted.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability(q));
    }
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]), "input not sorted");
    let n = sorted.len();
    let h = (n - 1) as f64 * q;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 || lo + 1 == n {
        Ok(sorted[lo.min(n - 1)])
    } else {
        Ok(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]))
    }
}

/// Values with nonnegative weights, kept sorted by value.
#[derive(Debug, Clone)]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSample {
    /// Pairs values with weights and sorts by value.
    ///
    /// Weights must be finite and nonnegative with at least one positive;
    /// they are interpreted proportionally, so any normalization is accepted.
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if values.len() != weights.len() {
            return Err(Error::NonFiniteInput);
        }
        if values.iter().chain(weights.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if weights.iter().any(|&w| w < 0.0) || weights.iter().all(|&w| w == 0.0) {
            return Err(Error::ZeroWeights);
        }
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        Ok(Self {
            values: idx.iter().map(|&i| values[i]).collect(),
            weights: idx.iter().map(|&i| weights[i]).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Weighted quantile of `ws` at probability `q`.
pub fn weighted_quantile(ws: &WeightedSample, q: f64) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability(q));
    }
    // Zero-weight entries carry no mass.
    let mut xs: Vec<f64> = Vec::with_capacity(ws.len());
    let mut wts: Vec<f64> = Vec::with_capacity(ws.len());
    for (&x, &w) in ws.values.iter().zip(&ws.weights) {
        if w > 0.0 {
            xs.push(x);
            wts.push(w);
        }
    }
    if xs.is_empty() {
        return Err(Error::ZeroWeights);
    }
    if xs.len() == 1 {
        return Ok(xs[0]);
    }
    // Equal weights are the normative anchor: defer to the plain quantile
    // so the equivalence is exact rather than within rounding.
    if wts.iter().all(|&w| w == wts[0]) {
        return sample_quantile(&xs, q);
    }

    let n = xs.len() as f64;
    // Merge ties, then rescale weights to sum to the pre-merge count.
    let mut vals: Vec<f64> = Vec::with_capacity(xs.len());
    let mut mass: Vec<f64> = Vec::with_capacity(xs.len());
    for (&x, &w) in xs.iter().zip(&wts) {
        if vals.last() == Some(&x) {
            *mass.last_mut().unwrap() += w;
        } else {
            vals.push(x);
            mass.push(w);
        }
    }
    let total: f64 = mass.iter().sum();
    let scale = n / total;
    let cum: Vec<f64> = mass
        .iter()
        .scan(0.0, |acc, &w| {
            *acc += w * scale;
            Some(*acc)
        })
        .collect();

    let order = 1.0 + (n - 1.0) * q;
    let low = order.floor().max(1.0);
    let high = (low + 1.0).min(n);
    let frac = order - order.floor();

    // Smallest order statistic whose cumulative weight reaches t. The slack
    // absorbs summation rounding; genuine gaps between cumulative weights are
    // many orders of magnitude wider for any realistic study sizes.
    let at = |t: f64| -> f64 {
        let target = t - 1e-9;
        let j = cum.partition_point(|&c| c < target);
        vals[j.min(vals.len() - 1)]
    };
    Ok((1.0 - frac) * at(low) + frac * at(high))
}
