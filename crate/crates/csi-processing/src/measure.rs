use crate::config::ProcessingConfig;
use crate::reference::select_reference_trace_with;
use crate::trace::{CsiError, CsiTrace};
use crate::window::{extract_window_crossing_with, extract_window_halfpath_with, AttenuationWindow};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A window-extraction failure tagged with the walk that produced it.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("Path {path}: {source}")]
pub struct PathFailure {
    pub path: u8,
    pub source: CsiError,
}

impl PathFailure {
    /// Short operator-facing reason, e.g. "Path 2: no transition detected".
    pub fn guidance(&self) -> String {
        let what = match &self.source {
            CsiError::NoTransition { .. } => "no transition detected".to_string(),
            CsiError::NoWindow { .. } => "no attenuation window detected".to_string(),
            other => other.to_string(),
        };
        format!("Path {}: {what}", self.path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioMeasurement {
    pub orthogonal_ratio: f64,
    /// Path-1 duration after the long-window correction.
    pub t1_s: f64,
    /// Path-2 duration after the acceleration correction.
    pub t2_s: f64,
    pub window1: AttenuationWindow,
    pub window2: AttenuationWindow,
    pub long_window_corrected: bool,
}

pub fn measure_orthogonal_ratio(trace1: &CsiTrace, trace2: &CsiTrace) -> Result<RatioMeasurement, PathFailure> {
    measure_orthogonal_ratio_with(trace1, trace2, &ProcessingConfig::default())
}

/// R_o = T1 / T2 from the Path-1 crossing and the Path-2 half-path windows.
pub fn measure_orthogonal_ratio_with(
    trace1: &CsiTrace,
    trace2: &CsiTrace,
    cfg: &ProcessingConfig,
) -> Result<RatioMeasurement, PathFailure> {
    let tag = |path: u8| move |source: CsiError| PathFailure { path, source };
    trace1.validate().and_then(|_| trace1.check_length()).map_err(tag(1))?;
    trace2.validate().and_then(|_| trace2.check_length()).map_err(tag(2))?;
    let s1 = select_reference_trace_with(trace1, cfg).map_err(tag(1))?;
    let s2 = select_reference_trace_with(trace2, cfg).map_err(tag(2))?;
    let window1 = extract_window_crossing_with(&s1, trace1.sample_rate_hz, cfg).map_err(tag(1))?;
    let window2 = extract_window_halfpath_with(&s2, trace2.sample_rate_hz, cfg).map_err(tag(2))?;
    let mut t1 = window1.duration_s();
    let long = t1 > cfg.long_window_fraction * trace1.duration_s();
    if long {
        t1 *= cfg.delta;
    }
    let t2 = window2.duration_s();
    if !(t2 > 0.0) {
        return Err(PathFailure { path: 2, source: CsiError::NoTransition { step: 0.0, noise: 0.0 } });
    }
    Ok(RatioMeasurement {
        orthogonal_ratio: t1 / t2,
        t1_s: t1,
        t2_s: t2,
        window1,
        window2,
        long_window_corrected: long,
    })
}

pub fn fluctuation_extent(trace: &CsiTrace) -> Result<f64, CsiError> {
    fluctuation_extent_with(trace, &ProcessingConfig::default())
}

/// max/min of the smoothed reference series, ignoring `guard_s` at each end.
pub fn fluctuation_extent_with(trace: &CsiTrace, cfg: &ProcessingConfig) -> Result<f64, CsiError> {
    trace.validate()?;
    let s = select_reference_trace_with(trace, cfg)?;
    let guard = (cfg.guard_s * trace.sample_rate_hz).round() as usize;
    let body = if s.len() > 2 * guard + 1 { &s[guard..s.len() - guard] } else { &s[..] };
    let max = body.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut min = body.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        let mut sorted = body.to_vec();
        sorted.sort_by(f64::total_cmp);
        min = sorted[(sorted.len() - 1) / 100];
    }
    if !(min > 0.0) {
        return Err(CsiError::ZeroAmplitude);
    }
    Ok(max / min)
}
