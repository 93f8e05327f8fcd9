use azimuth_model::{estimate_azimuth, AzimuthError, AzimuthEstimate, ModelParams};
use csi_processing::{
    fluctuation_extent_with, measure_orthogonal_ratio_with, CsiTrace, PathFailure, ProcessingConfig, RatioMeasurement,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Azimuth estimate with the measurements behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub estimate: AzimuthEstimate,
    pub measurement: RatioMeasurement,
    pub extent_csi1: f64,
    pub extent_csi3: f64,
    pub params: ModelParams,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocalizeError {
    /// A walk produced no usable window; the operator should repeat it.
    #[error("{}", .0.guidance())]
    Signal(PathFailure),
    #[error(transparent)]
    Model(#[from] AzimuthError),
}

/// Ratio from Paths 1 and 2, extents from Paths 1 and 3, then solve and pick the quadrant.
pub fn localize(
    traces: [&CsiTrace; 3],
    params: &ModelParams,
    cfg: &ProcessingConfig,
    t_q: f64,
) -> Result<LocalizationReport, LocalizeError> {
    let measurement = measure_orthogonal_ratio_with(traces[0], traces[1], cfg).map_err(LocalizeError::Signal)?;
    let extent = |path: u8, t: &CsiTrace| {
        fluctuation_extent_with(t, cfg).map_err(|source| LocalizeError::Signal(PathFailure { path, source }))
    };
    let e1 = extent(1, traces[0])?;
    let e3 = extent(3, traces[2])?;
    let estimate = estimate_azimuth(measurement.orthogonal_ratio, e1, e3, t_q, params)?;
    Ok(LocalizationReport { estimate, measurement, extent_csi1: e1, extent_csi3: e3, params: *params })
}
