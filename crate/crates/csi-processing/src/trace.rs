use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsiError {
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("empty trace")]
    Empty,
    #[error("series too short: {samples} samples, need {needed}")]
    TooShort { samples: usize, needed: usize },
    #[error("no significant attenuation (minimum {min:.4} vs baseline {baseline:.4})")]
    NoWindow { min: f64, baseline: f64 },
    #[error("no transition detected (step {step:.4}, noise {noise:.4})")]
    NoTransition { step: f64, noise: f64 },
    #[error("amplitude is zero across the walk window")]
    ZeroAmplitude,
}

/// Per-subcarrier CSI amplitudes sampled at a fixed rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsiTrace {
    pub sample_rate_hz: f64,
    /// Seconds, epoch-relative.
    pub start_time: f64,
    /// `amplitudes[subcarrier][sample]`, linear and non-negative.
    pub amplitudes: Vec<Vec<f64>>,
}

impl CsiTrace {
    /// Checks shape and finiteness; see [`CsiTrace::check_length`] for the
    /// minimum duration the window extractors need.
    pub fn new(sample_rate_hz: f64, start_time: f64, amplitudes: Vec<Vec<f64>>) -> Result<Self, CsiError> {
        let t = Self { sample_rate_hz, start_time, amplitudes };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), CsiError> {
        if !(self.sample_rate_hz > 0.0) || !self.sample_rate_hz.is_finite() {
            return Err(CsiError::InvalidTrace(format!("sample rate {}", self.sample_rate_hz)));
        }
        if self.amplitudes.is_empty() || self.amplitudes[0].is_empty() {
            return Err(CsiError::Empty);
        }
        let n = self.amplitudes[0].len();
        for (k, row) in self.amplitudes.iter().enumerate() {
            if row.len() != n {
                return Err(CsiError::InvalidTrace(format!(
                    "subcarrier {k} has {} samples, expected {n}",
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !x.is_finite() || **x < 0.0) {
                return Err(CsiError::InvalidTrace(format!("subcarrier {k} amplitude {x}")));
            }
        }
        Ok(())
    }

    /// At least two seconds of samples.
    pub fn check_length(&self) -> Result<(), CsiError> {
        let needed = (2.0 * self.sample_rate_hz).ceil() as usize;
        if self.n_samples() < needed {
            return Err(CsiError::TooShort { samples: self.n_samples(), needed });
        }
        Ok(())
    }

    pub fn n_subcarriers(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_samples(&self) -> usize {
        self.amplitudes.first().map_or(0, Vec::len)
    }

    pub fn duration_s(&self) -> f64 {
        self.n_samples() as f64 / self.sample_rate_hz
    }

    /// Multiply every amplitude by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|row| row.iter().map(|x| x * k).collect())
            .collect();
        Self { amplitudes, ..self.clone() }
    }
}
