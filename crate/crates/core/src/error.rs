use std::fmt;

/// Errors produced by the statistical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that needs at least one value got none.
    EmptyInput,
    /// Weights summed to zero (or every weight was zero).
    ZeroWeights,
    /// A probability argument was outside its admissible range.
    InvalidProbability(f64),
    /// Input contained NaN or an infinity.
    NonFiniteInput,
    /// Quantile arguments violated min <= q1 <= median <= q3 <= max.
    QuantileOrder,
    /// Q3 equalled Q1, so a quartile-based statistic is undefined.
    DegenerateIqr,
    /// The reported spread collapsed to a point (q1 == q3 or min == max).
    ZeroSpread,
    /// Sample smaller than the method supports.
    SampleTooSmall { n: usize, min: usize },
    /// Sample larger than the method supports.
    SampleTooLarge { n: usize, max: usize },
    /// All sample values identical; variance-based statistics are undefined.
    ConstantSample,
    /// A sampling variance was zero or negative.
    NonPositiveVariance,
    /// A study size was zero.
    NonPositiveSize,
    /// Fewer studies than the pooling method needs.
    TooFewStudies { k: usize, min: usize },
    /// A study carries none of the fields the requested approach can use.
    UnusableStudy { id: String, approach: &'static str, reason: &'static str },
    /// After eligibility filtering no study was left to pool.
    NoEligibleStudies { approach: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "empty input"),
            Error::ZeroWeights => write!(f, "weights sum to zero"),
            Error::InvalidProbability(p) => write!(f, "probability {p} outside valid range"),
            Error::NonFiniteInput => write!(f, "input contains non-finite values"),
            Error::QuantileOrder => write!(f, "quantiles out of order"),
            Error::DegenerateIqr => write!(f, "degenerate interquartile range (Q3 == Q1)"),
            Error::ZeroSpread => write!(f, "reported spread is zero"),
            Error::SampleTooSmall { n, min } => {
                write!(f, "sample size {n} below minimum {min}")
            }
            Error::SampleTooLarge { n, max } => {
                write!(f, "sample size {n} above maximum {max}")
            }
            Error::ConstantSample => write!(f, "sample has zero variance"),
            Error::NonPositiveVariance => write!(f, "sampling variance must be positive"),
            Error::NonPositiveSize => write!(f, "study size must be at least 1"),
            Error::TooFewStudies { k, min } => {
                write!(f, "{k} studies where at least {min} are required")
            }
            Error::UnusableStudy { id, approach, reason } => {
                write!(f, "study '{id}' unusable for {approach}: {reason}")
            }
            Error::NoEligibleStudies { approach } => {
                write!(f, "no eligible studies for {approach}")
            }
        }
    }
}

impl std::error::Error for Error {}
