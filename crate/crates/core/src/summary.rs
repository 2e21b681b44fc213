//! Study-level aggregate records: what a published study reports, and how a
//! raw sample is compressed into such a record.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::quantile::sample_quantile;

/// Five-number summary subset; the median is always present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileSummary {
    pub min: Option<f64>,
    pub q1: Option<f64>,
    pub median: f64,
    pub q3: Option<f64>,
    pub max: Option<f64>,
}

impl QuantileSummary {
    pub fn median_only(median: f64) -> Self {
        QuantileSummary { min: None, q1: None, median, q3: None, max: None }
    }

    /// Checks min <= q1 <= median <= q3 <= max over the present fields.
    pub fn validate(&self) -> Result<(), Error> {
        let seq = [self.min, self.q1, Some(self.median), self.q3, self.max];
        if seq.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        let present: Vec<f64> = seq.iter().copied().flatten().collect();
        if present.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::QuantileOrder);
        }
        Ok(())
    }
}

/// One study's reported aggregates. At least one of mean+se or a median must
/// be present for the record to be usable by any pooling approach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySummary {
    pub id: String,
    pub n: Option<u32>,
    pub mean: Option<f64>,
    pub se: Option<f64>,
    pub quantiles: Option<QuantileSummary>,
}

impl StudySummary {
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(n) = self.n {
            if n == 0 {
                return Err(Error::NonPositiveSize);
            }
        }
        if let Some(se) = self.se {
            if !(se > 0.0) || !se.is_finite() {
                return Err(Error::NonPositiveVariance);
            }
        }
        if let Some(m) = self.mean {
            if !m.is_finite() {
                return Err(Error::NonFiniteInput);
            }
        }
        if let Some(q) = &self.quantiles {
            q.validate()?;
        }
        if !(self.has_mean_se() || self.quantiles.is_some()) {
            return Err(Error::UnusableStudy {
                id: self.id.clone(),
                approach: "any",
                reason: "neither mean+se nor a median reported",
            });
        }
        Ok(())
    }

    pub fn has_mean_se(&self) -> bool {
        self.mean.is_some() && self.se.is_some()
    }

    pub fn has_quartiles(&self) -> bool {
        self.quantiles.as_ref().map_or(false, |q| q.q1.is_some() && q.q3.is_some())
    }

    pub fn has_min_max(&self) -> bool {
        self.quantiles.as_ref().map_or(false, |q| q.min.is_some() && q.max.is_some())
    }

    /// The value a median-based approach pools: the reported median when
    /// present, otherwise the reported mean treated as a median.
    pub fn median_or_mean(&self) -> Option<f64> {
        self.quantiles.as_ref().map(|q| q.median).or(self.mean)
    }
}

/// Compresses a raw sample into the aggregates a study would report: n,
/// mean, its standard error (n-1 variance), and the five-number summary.
pub fn summarize_sample(raw: &[f64], id: impl Into<String>) -> Result<StudySummary, Error> {
    let n = raw.len();
    if n < 2 {
        return Err(Error::SampleTooSmall { n, min: 2 });
    }
    if raw.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let mut sorted = raw.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let nf = n as f64;
    let mean = sorted.iter().sum::<f64>() / nf;
    let ss: f64 = sorted.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (nf - 1.0)).sqrt();
    Ok(StudySummary {
        id: id.into(),
        n: Some(n as u32),
        mean: Some(mean),
        se: Some(sd / nf.sqrt()),
        quantiles: Some(QuantileSummary {
            min: Some(sorted[0]),
            q1: Some(sample_quantile(&sorted, 0.25)?),
            median: sample_quantile(&sorted, 0.5)?,
            q3: Some(sample_quantile(&sorted, 0.75)?),
            max: Some(sorted[n - 1]),
        }),
    })
}
