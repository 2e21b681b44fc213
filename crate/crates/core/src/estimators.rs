//! Recovery of a sample mean and standard error from quantile reports.
//!
//! T1 works from the quartiles: mean = (Q1 + Q2 + Q3)/3 and
//! sd = (Q3 - Q1) / (2 * Phi^-1((0.75n - 0.125)/(n + 0.25))).
//! T2 works from the range: mean = (min + 2*median + max)/4 and
//! sd = (max - min) / (2 * Phi^-1((n - 0.375)/(n + 0.25))).
//! Both assume an underlying normal sample; how badly that assumption breaks
//! down on skewed data is exactly what the simulation study measures.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::normal::std_normal_quantile;
use crate::summary::StudySummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateSource {
    T1,
    T2,
    Reported,
}

/// Mean and spread recovered from a quantile report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSdEstimate {
    pub mean: f64,
    pub sd: f64,
    pub se: f64,
    pub source: EstimateSource,
}

/// A (mean, se) pair ready for inverse-variance pooling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectInput {
    pub mean: f64,
    pub se: f64,
    pub source: EstimateSource,
}

/// Quartile-based estimate (Wan et al. style).
pub fn t1_estimate(n: u32, q1: f64, q2: f64, q3: f64) -> Result<MeanSdEstimate, Error> {
    if n < 2 {
        return Err(Error::SampleTooSmall { n: n as usize, min: 2 });
    }
    if !(q1.is_finite() && q2.is_finite() && q3.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if q1 > q2 || q2 > q3 {
        return Err(Error::QuantileOrder);
    }
    if q1 == q3 {
        return Err(Error::ZeroSpread);
    }
    let nf = n as f64;
    let z = std_normal_quantile((0.75 * nf - 0.125) / (nf + 0.25))?;
    let mean = (q1 + q2 + q3) / 3.0;
    let sd = (q3 - q1) / (2.0 * z);
    Ok(MeanSdEstimate { mean, sd, se: sd / nf.sqrt(), source: EstimateSource::T1 })
}

/// Range-based estimate (Hozo mean, Wan spread).
pub fn t2_estimate(n: u32, min: f64, q2: f64, max: f64) -> Result<MeanSdEstimate, Error> {
    if n < 2 {
        return Err(Error::SampleTooSmall { n: n as usize, min: 2 });
    }
    if !(min.is_finite() && q2.is_finite() && max.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if min > q2 || q2 > max {
        return Err(Error::QuantileOrder);
    }
    if min == max {
        return Err(Error::ZeroSpread);
    }
    let nf = n as f64;
    let z = std_normal_quantile((nf - 0.375) / (nf + 0.25))?;
    let mean = (min + 2.0 * q2 + max) / 4.0;
    let sd = (max - min) / (2.0 * z);
    Ok(MeanSdEstimate { mean, sd, se: sd / nf.sqrt(), source: EstimateSource::T2 })
}

/// Which quantile route a transformation pool may use for median reporters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPolicy {
    /// Quartiles only (T1); min/max-only reporters are ineligible.
    QuartilesOnly,
    /// Range only (T2); quartile-only reporters are ineligible.
    RangeOnly,
    /// Quartiles take precedence, range is the fallback; when a study
    /// reports both, min/max are discarded.
    Either,
}

/// How a single study enters a transformation-based pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StudyEffect {
    Eligible(EffectInput),
    Ineligible(&'static str),
}

/// Routes one study into a transformation pool: a reported mean+se passes
/// through untouched, otherwise the policy picks the quantile route.
pub fn study_effect(study: &StudySummary, policy: TransformPolicy) -> StudyEffect {
    if let (Some(mean), Some(se)) = (study.mean, study.se) {
        return StudyEffect::Eligible(EffectInput { mean, se, source: EstimateSource::Reported });
    }
    let Some(q) = &study.quantiles else {
        return StudyEffect::Ineligible("no mean+se and no quantile report");
    };
    let Some(n) = study.n else {
        return StudyEffect::Ineligible("missing study size");
    };
    let quartiles = q.q1.zip(q.q3);
    let range = q.min.zip(q.max);
    let route = match policy {
        TransformPolicy::QuartilesOnly => quartiles.map(|_| EstimateSource::T1),
        TransformPolicy::RangeOnly => range.map(|_| EstimateSource::T2),
        TransformPolicy::Either => quartiles
            .map(|_| EstimateSource::T1)
            .or_else(|| range.map(|_| EstimateSource::T2)),
    };
    let est = match route {
        Some(EstimateSource::T1) => {
            let (q1, q3) = quartiles.unwrap();
            t1_estimate(n, q1, q.median, q3)
        }
        Some(EstimateSource::T2) => {
            let (min, max) = range.unwrap();
            t2_estimate(n, min, q.median, max)
        }
        _ => return StudyEffect::Ineligible("no spread usable by this transformation"),
    };
    match est {
        Ok(e) => StudyEffect::Eligible(EffectInput { mean: e.mean, se: e.se, source: e.source }),
        Err(Error::ZeroSpread) => StudyEffect::Ineligible("zero reported spread"),
        Err(Error::SampleTooSmall { .. }) => StudyEffect::Ineligible("study size below 2"),
        Err(_) => StudyEffect::Ineligible("inconsistent quantile report"),
    }
}
