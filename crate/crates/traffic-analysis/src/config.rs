use serde::{Deserialize, Serialize};

/// Thresholds for the suspicious-device search and the leave-the-room check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DetectionConfig {
    /// Mean payload threshold in bytes.
    pub t_s: f64,
    /// Frame-count threshold for a 5 s window; scaled with `window_s`.
    pub t_l: f64,
    pub rssi_floor_dbm: i32,
    pub window_s: f64,
    pub observe_s: f64,
    pub risk_threshold: f64,
    /// Ratio reported when the second half is silent.
    pub risk_cap: f64,
    /// Minimum first-half throughput, bytes/s, for a snooping verdict.
    pub activity_floor_bps: f64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            t_s: 300.0,
            t_l: 150.0,
            rssi_floor_dbm: -67,
            window_s: 5.0,
            observe_s: 15.0,
            risk_threshold: 1.5,
            risk_cap: 100.0,
            activity_floor_bps: 5000.0,
        }
    }
}

const REFERENCE_WINDOW_S: f64 = 5.0;

impl DetectionConfig {
    /// Count threshold for the configured window length.
    pub fn effective_t_l(&self) -> f64 {
        self.t_l * self.window_s / REFERENCE_WINDOW_S
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("t_s", self.t_s),
            ("t_l", self.t_l),
            ("window_s", self.window_s),
            ("risk_threshold", self.risk_threshold),
            ("risk_cap", self.risk_cap),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.observe_s >= 4.0 && self.observe_s.is_finite()) {
            return Err(format!("observe_s must be at least 4, got {}", self.observe_s));
        }
        if !(self.activity_floor_bps >= 0.0) {
            return Err("activity_floor_bps must be non-negative".into());
        }
        Ok(())
    }
}
