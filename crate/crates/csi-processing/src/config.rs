use serde::{Deserialize, Serialize};

/// Tuning knobs for reference selection and window extraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProcessingConfig {
    /// Number of strongest subcarriers averaged into the reference series.
    pub top_subcarriers: usize,
    /// Moving-average length in seconds.
    pub smoothing_s: f64,
    /// Length of the leading segment used as the Path-1 baseline.
    pub baseline_s: f64,
    /// Crossing-window edge threshold as a fraction of the dip depth.
    pub alpha: f64,
    /// Half-path transition band, as a fraction of the step.
    pub beta: f64,
    /// Fraction of samples at each end used for the half-path level means.
    pub level_fraction: f64,
    /// Acceleration correction applied to the Path-2 duration.
    pub gamma: f64,
    /// Inflation applied to long Path-1 windows.
    pub delta: f64,
    /// A Path-1 window longer than this fraction of its trace counts as long.
    pub long_window_fraction: f64,
    /// Samples ignored at each end of the trace by the fluctuation extent.
    pub guard_s: f64,
}

impl Default for ProcessingConfig {
    fn default() -> Self {
        Self {
            top_subcarriers: 5,
            smoothing_s: 0.2,
            baseline_s: 1.0,
            alpha: 0.3,
            beta: 0.10,
            level_fraction: 0.15,
            gamma: 1.15,
            delta: 1.1,
            long_window_fraction: 0.6,
            guard_s: 0.5,
        }
    }
}
