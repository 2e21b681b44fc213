//! Bowley's quartile coefficient of skewness and its categorical binning.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Skewness bin for a quartile-based skewness coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewLevel {
    Low,
    Medium,
    High,
    VeryHigh,
}

impl SkewLevel {
    pub const ALL: [SkewLevel; 4] =
        [SkewLevel::Low, SkewLevel::Medium, SkewLevel::High, SkewLevel::VeryHigh];

    pub fn label(self) -> &'static str {
        match self {
            SkewLevel::Low => "low",
            SkewLevel::Medium => "medium",
            SkewLevel::High => "high",
            SkewLevel::VeryHigh => "very_high",
        }
    }
}

impl std::fmt::Display for SkewLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Bowley's coefficient (Q1 - 2*Q2 + Q3) / (Q3 - Q1), in [-1, 1].
///
/// Signals [`Error::DegenerateIqr`] when Q3 == Q1 instead of returning NaN;
/// callers decide what a zero-IQR study means.
pub fn bowley_skewness(q1: f64, q2: f64, q3: f64) -> Result<f64, Error> {
    if !(q1.is_finite() && q2.is_finite() && q3.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    if q1 > q2 || q2 > q3 {
        return Err(Error::QuantileOrder);
    }
    if q3 == q1 {
        return Err(Error::DegenerateIqr);
    }
    Ok((q1 - 2.0 * q2 + q3) / (q3 - q1))
}

/// Bins a skewness coefficient; boundary values fall in the lower bin.
pub fn classify_skew(skb: f64) -> SkewLevel {
    if skb <= 0.1 {
        SkewLevel::Low
    } else if skb <= 0.2 {
        SkewLevel::Medium
    } else if skb <= 0.4 {
        SkewLevel::High
    } else {
        SkewLevel::VeryHigh
    }
}
