//! Statistical substrate for one-sample aggregate-data meta-analysis where
//! primary studies report medians.
//!
//! Three layers:
//!
//! * numeric primitives: normal distribution functions, plain and weighted
//!   quantiles, Bowley skewness, the Shapiro-Wilk test, chi-square tails
//!   ([`normal`], [`quantile`], [`skew`], [`shapiro`], [`chi2`]);
//! * study summaries and mean/SD recovery from quantile reports
//!   ([`summary`], [`estimators`]);
//! * pooling: inverse-variance fixed/random effects with DerSimonian-Laird
//!   heterogeneity, and the median-of-medians estimators with nonparametric
//!   quantile confidence intervals ([`pooling`]).
//!
//! All functions are pure; nothing here owns threads, RNG state or I/O.

pub mod chi2;
pub mod error;
pub mod estimators;
pub mod normal;
pub mod pooling;
pub mod quantile;
pub mod shapiro;
pub mod skew;
pub mod summary;

pub use error::Error;
pub use estimators::{t1_estimate, t2_estimate, EffectInput, EstimateSource, MeanSdEstimate};
pub use normal::{std_normal_cdf, std_normal_quantile, Z_95};
pub use pooling::{
    apply_approach, dl_tau2, pool_fixed, pool_median_mm, pool_median_wm, pool_random, Approach,
    PooledEstimate, Target,
};
pub use quantile::{sample_quantile, weighted_quantile, WeightedSample};
pub use shapiro::{shapiro_wilk, ShapiroWilk};
pub use skew::{bowley_skewness, classify_skew, SkewLevel};
pub use summary::{summarize_sample, QuantileSummary, StudySummary};
