//! Pooling approaches: inverse-variance fixed and random effects over study
//! means, and the (weighted) median of study medians with nonparametric
//! quantile confidence intervals.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::estimators::{study_effect, StudyEffect, TransformPolicy};
use crate::normal::Z_95;
use crate::quantile::{sample_quantile, weighted_quantile, WeightedSample};
use crate::summary::StudySummary;

/// What quantity an approach estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Mean,
    Median,
}

/// The pooling approaches.
///
/// `T1*` transforms quartile reporters, `T2*` range reporters, `Trans*` uses
/// quartiles with a range fallback (discarding min/max when both are given),
/// `Means*` requires every study to report mean and SE, and `Mm`/`Wm` pool
/// the study medians directly (reported means are treated as medians).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Approach {
    T1Fe,
    T1Re,
    T2Fe,
    T2Re,
    MeansFe,
    MeansRe,
    Mm,
    Wm,
    TransFe,
    TransRe,
}

impl Approach {
    pub const ALL: [Approach; 10] = [
        Approach::T1Fe,
        Approach::T1Re,
        Approach::T2Fe,
        Approach::T2Re,
        Approach::MeansFe,
        Approach::MeansRe,
        Approach::Mm,
        Approach::Wm,
        Approach::TransFe,
        Approach::TransRe,
    ];

    pub fn target(self) -> Target {
        match self {
            Approach::Mm | Approach::Wm => Target::Median,
            _ => Target::Mean,
        }
    }

    pub fn random_effects(self) -> bool {
        matches!(self, Approach::T1Re | Approach::T2Re | Approach::MeansRe | Approach::TransRe)
    }

    pub fn label(self) -> &'static str {
        match self {
            Approach::T1Fe => "t1_fe",
            Approach::T1Re => "t1_re",
            Approach::T2Fe => "t2_fe",
            Approach::T2Re => "t2_re",
            Approach::MeansFe => "means_fe",
            Approach::MeansRe => "means_re",
            Approach::Mm => "mm",
            Approach::Wm => "wm",
            Approach::TransFe => "trans_fe",
            Approach::TransRe => "trans_re",
        }
    }
}

impl std::fmt::Display for Approach {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Approach {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t1_fe" => Ok(Approach::T1Fe),
            "t1_re" => Ok(Approach::T1Re),
            "t2_fe" => Ok(Approach::T2Fe),
            "t2_re" => Ok(Approach::T2Re),
            "means_fe" => Ok(Approach::MeansFe),
            "means_re" => Ok(Approach::MeansRe),
            "mm" => Ok(Approach::Mm),
            "wm" => Ok(Approach::Wm),
            "trans_fe" => Ok(Approach::TransFe),
            "trans_re" => Ok(Approach::TransRe),
            other => Err(format!(
                "unknown approach '{other}' (expected one of mm, wm, t1_fe, t1_re, t2_fe, \
                 t2_re, means_fe, means_re, trans_fe, trans_re)"
            )),
        }
    }
}

/// A pooled point estimate with its 95% confidence interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PooledEstimate {
    pub target: Target,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub se: Option<f64>,
    pub tau2: Option<f64>,
    pub q_stat: Option<f64>,
    pub i2: Option<f64>,
    pub k: usize,
}

fn check_variances(effects: &[f64], variances: &[f64]) -> Result<(), Error> {
    if effects.is_empty() {
        return Err(Error::EmptyInput);
    }
    if effects.len() != variances.len() {
        return Err(Error::NonFiniteInput);
    }
    if effects.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if variances.iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::NonPositiveVariance);
    }
    Ok(())
}

fn inverse_variance(effects: &[f64], weights: &[f64]) -> (f64, f64) {
    let wsum: f64 = weights.iter().sum();
    let point = effects.iter().zip(weights).map(|(y, w)| y * w).sum::<f64>() / wsum;
    (point, (1.0 / wsum).sqrt())
}

/// Cochran's Q under fixed-effect weights.
fn cochran_q(effects: &[f64], weights: &[f64], point: f64) -> f64 {
    effects.iter().zip(weights).map(|(y, w)| w * (y - point) * (y - point)).sum()
}

fn i_squared(q: f64, k: usize) -> f64 {
    let df = (k - 1) as f64;
    if q > df && q > 0.0 {
        (q - df) / q * 100.0
    } else {
        0.0
    }
}

/// Fixed-effect inverse-variance pool: weights 1/v_i, CI = point +- z*se.
pub fn pool_fixed(effects: &[f64], variances: &[f64]) -> Result<PooledEstimate, Error> {
    check_variances(effects, variances)?;
    let weights: Vec<f64> = variances.iter().map(|v| 1.0 / v).collect();
    let (point, se) = inverse_variance(effects, &weights);
    let q = cochran_q(effects, &weights, point);
    Ok(PooledEstimate {
        target: Target::Mean,
        point,
        ci_low: point - Z_95 * se,
        ci_high: point + Z_95 * se,
        se: Some(se),
        tau2: None,
        q_stat: Some(q),
        i2: Some(i_squared(q, effects.len())),
        k: effects.len(),
    })
}

/// DerSimonian-Laird moment estimate of between-study variance,
/// max(0, (Q - (k-1)) / (sum w - sum w^2 / sum w)) with w_i = 1/v_i.
pub fn dl_tau2(effects: &[f64], variances: &[f64]) -> Result<f64, Error> {
    check_variances(effects, variances)?;
    let k = effects.len();
    if k < 2 {
        return Err(Error::TooFewStudies { k, min: 2 });
    }
    let weights: Vec<f64> = variances.iter().map(|v| 1.0 / v).collect();
    let (point, _) = inverse_variance(effects, &weights);
    let q = cochran_q(effects, &weights, point);
    let wsum: f64 = weights.iter().sum();
    let w2sum: f64 = weights.iter().map(|w| w * w).sum();
    let denom = wsum - w2sum / wsum;
    if denom <= 0.0 {
        return Ok(0.0);
    }
    Ok(((q - (k - 1) as f64) / denom).max(0.0))
}

/// Random-effects pool with DL heterogeneity: weights 1/(v_i + tau2).
///
/// Q and I^2 are those of the fixed-effect fit; a single study is an error,
/// never a silent fixed-effect fallback.
pub fn pool_random(effects: &[f64], variances: &[f64]) -> Result<PooledEstimate, Error> {
    check_variances(effects, variances)?;
    let k = effects.len();
    if k < 2 {
        return Err(Error::TooFewStudies { k, min: 2 });
    }
    let tau2 = dl_tau2(effects, variances)?;
    let fe_weights: Vec<f64> = variances.iter().map(|v| 1.0 / v).collect();
    let (fe_point, _) = inverse_variance(effects, &fe_weights);
    let q = cochran_q(effects, &fe_weights, fe_point);
    let weights: Vec<f64> = variances.iter().map(|v| 1.0 / (v + tau2)).collect();
    let (point, se) = inverse_variance(effects, &weights);
    Ok(PooledEstimate {
        target: Target::Mean,
        point,
        ci_low: point - Z_95 * se,
        ci_high: point + Z_95 * se,
        se: Some(se),
        tau2: Some(tau2),
        q_stat: Some(q),
        i2: Some(i_squared(q, k)),
        k,
    })
}

/// Quantile offset for the median CI: min(1/2, z_0.025 / (2 sqrt(k))),
/// applied independently to each side.
fn median_ci_offset(k: usize) -> f64 {
    (Z_95 / (2.0 * (k as f64).sqrt())).min(0.5)
}

/// Median of the study medians, CI from quantiles of the medians.
pub fn pool_median_mm(medians: &[f64]) -> Result<PooledEstimate, Error> {
    if medians.is_empty() {
        return Err(Error::EmptyInput);
    }
    if medians.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let mut sorted = medians.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let k = sorted.len();
    let d = median_ci_offset(k);
    Ok(PooledEstimate {
        target: Target::Median,
        point: sample_quantile(&sorted, 0.5)?,
        ci_low: sample_quantile(&sorted, 0.5 - d)?,
        ci_high: sample_quantile(&sorted, 0.5 + d)?,
        se: None,
        tau2: None,
        q_stat: None,
        i2: None,
        k,
    })
}

/// Subject-count-weighted median of the study medians, CI from weighted
/// quantiles at the same offsets.
pub fn pool_median_wm(medians: &[f64], sizes: &[u32]) -> Result<PooledEstimate, Error> {
    if medians.is_empty() {
        return Err(Error::EmptyInput);
    }
    if medians.len() != sizes.len() {
        return Err(Error::NonFiniteInput);
    }
    if sizes.iter().any(|&n| n == 0) {
        return Err(Error::NonPositiveSize);
    }
    let total: f64 = sizes.iter().map(|&n| n as f64).sum();
    let weights: Vec<f64> = sizes.iter().map(|&n| n as f64 / total).collect();
    let ws = WeightedSample::new(medians.to_vec(), weights)?;
    let k = medians.len();
    let d = median_ci_offset(k);
    Ok(PooledEstimate {
        target: Target::Median,
        point: weighted_quantile(&ws, 0.5)?,
        ci_low: weighted_quantile(&ws, 0.5 - d)?,
        ci_high: weighted_quantile(&ws, 0.5 + d)?,
        se: None,
        tau2: None,
        q_stat: None,
        i2: None,
        k,
    })
}

/// A study an approach could not use, with the reason it was set aside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedStudy {
    pub id: String,
    pub reason: &'static str,
}

/// Applies one approach to a set of study summaries.
///
/// Median approaches use the reported median, falling back to the reported
/// mean treated as a median; WM drops studies without a subject count. The
/// transformation approaches route each study per their policy, setting
/// aside studies their spread rule cannot use. MEANS is strict: any study
/// without mean+se is an error.
pub fn apply_approach(studies: &[StudySummary], approach: Approach) -> Result<PooledEstimate, Error> {
    apply_approach_detailed(studies, approach).map(|(est, _)| est)
}

/// Like [`apply_approach`], additionally reporting the studies set aside.
pub fn apply_approach_detailed(
    studies: &[StudySummary],
    approach: Approach,
) -> Result<(PooledEstimate, Vec<SkippedStudy>), Error> {
    if studies.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut skipped = Vec::new();
    match approach {
        Approach::Mm => {
            let mut medians = Vec::with_capacity(studies.len());
            for s in studies {
                match s.median_or_mean() {
                    Some(v) => medians.push(v),
                    None => {
                        return Err(Error::UnusableStudy {
                            id: s.id.clone(),
                            approach: approach.label(),
                            reason: "neither median nor mean reported",
                        })
                    }
                }
            }
            Ok((pool_median_mm(&medians)?, skipped))
        }
        Approach::Wm => {
            let mut medians = Vec::new();
            let mut sizes = Vec::new();
            for s in studies {
                let Some(n) = s.n else {
                    skipped.push(SkippedStudy { id: s.id.clone(), reason: "missing study size" });
                    continue;
                };
                match s.median_or_mean() {
                    Some(v) => {
                        medians.push(v);
                        sizes.push(n);
                    }
                    None => {
                        return Err(Error::UnusableStudy {
                            id: s.id.clone(),
                            approach: approach.label(),
                            reason: "neither median nor mean reported",
                        })
                    }
                }
            }
            if medians.is_empty() {
                return Err(Error::NoEligibleStudies { approach: approach.label() });
            }
            Ok((pool_median_wm(&medians, &sizes)?, skipped))
        }
        Approach::MeansFe | Approach::MeansRe => {
            let mut effects = Vec::with_capacity(studies.len());
            let mut variances = Vec::with_capacity(studies.len());
            for s in studies {
                match (s.mean, s.se) {
                    (Some(m), Some(se)) => {
                        effects.push(m);
                        variances.push(se * se);
                    }
                    _ => {
                        return Err(Error::UnusableStudy {
                            id: s.id.clone(),
                            approach: approach.label(),
                            reason: "mean and standard error required",
                        })
                    }
                }
            }
            let est = if approach.random_effects() {
                pool_random(&effects, &variances)?
            } else {
                pool_fixed(&effects, &variances)?
            };
            Ok((est, skipped))
        }
        Approach::T1Fe | Approach::T1Re | Approach::T2Fe | Approach::T2Re | Approach::TransFe
        | Approach::TransRe => {
            let policy = match approach {
                Approach::T1Fe | Approach::T1Re => TransformPolicy::QuartilesOnly,
                Approach::T2Fe | Approach::T2Re => TransformPolicy::RangeOnly,
                _ => TransformPolicy::Either,
            };
            let mut effects = Vec::new();
            let mut variances = Vec::new();
            for s in studies {
                match study_effect(s, policy) {
                    StudyEffect::Eligible(e) => {
                        effects.push(e.mean);
                        variances.push(e.se * e.se);
                    }
                    StudyEffect::Ineligible(reason) => {
                        skipped.push(SkippedStudy { id: s.id.clone(), reason })
                    }
                }
            }
            if effects.is_empty() {
                return Err(Error::NoEligibleStudies { approach: approach.label() });
            }
            let est = if approach.random_effects() {
                if effects.len() < 2 {
                    return Err(Error::TooFewStudies { k: effects.len(), min: 2 });
                }
                pool_random(&effects, &variances)?
            } else {
                pool_fixed(&effects, &variances)?
            };
            Ok((est, skipped))
        }
    }
}
