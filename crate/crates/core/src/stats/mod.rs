//! Statistics over simulation output.

pub mod concentration;
pub mod distance;
pub mod histogram;
pub mod ks;
pub mod waiting;

pub use concentration::{concentration_scan, ConcentrationPoint};
pub use distance::{
    fit_log_log_slope, tail_slope, total_variation, total_variation_pmf, total_variation_unchecked,
};
pub use histogram::{DegreeHistogram, DegreeKind, HistogramCounter};
pub use ks::{exponential_rate_mle, ks_statistic, ks_statistic_censored};
pub use waiting::{
    collect_descendant_waiting_times, collect_waiting_times, CensoredLevel, OpenWait,
    WaitingTimeCollector, WaitingTimeSample, WaitingTimes,
};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    Tv,
    Ks,
    Slope,
    /// Ratio of spreads in a concentration scan.
    Ratio,
}

/// Outcome of one statistic against optional acceptance bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub statistic: Statistic,
    pub value: f64,
    pub sample_size: u64,
    /// Inclusive bounds the value must lie in to pass.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub pass: bool,
    /// Mass the statistic did not cover, e.g. the TV contribution above `k_cap`.
    pub remainder: Option<f64>,
    pub label: Option<String>,
}

impl FitReport {
    pub fn new(statistic: Statistic, value: f64, sample_size: u64) -> Self {
        FitReport {
            statistic,
            value,
            sample_size,
            lower: None,
            upper: None,
            pass: true,
            remainder: None,
            label: None,
        }
    }

    pub fn at_most(self, upper: f64) -> Self {
        let lower = self.lower;
        self.within(lower, Some(upper))
    }

    pub fn within(mut self, lower: Option<f64>, upper: Option<f64>) -> Self {
        self.lower = lower;
        self.upper = upper;
        self.pass =
            lower.is_none_or(|lo| self.value >= lo) && upper.is_none_or(|hi| self.value <= hi);
        self
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}
