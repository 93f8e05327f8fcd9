use crate::model::{orthogonal_ratio, orthogonal_ratio_derivative, ModelParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

/// Lower edge of the solver bracket, in degrees.
pub const THETA_MIN_DEG: f64 = 0.5;
const MAX_ITER: u32 = 100;
const RATIO_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AzimuthError {
    #[error("orthogonal ratio must be finite and positive, got {0}")]
    BadRatio(f64),
    #[error("fluctuation extents must be positive, got {0} and {1}")]
    BadExtent(f64, f64),
    #[error("invalid model parameters: {0:?}")]
    BadParams(ModelParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AzimuthSolution {
    /// Degrees in [0.5, 90].
    pub theta_deg: f64,
    pub iterations: u32,
    pub clamped: bool,
}

/// Invert R_o(θ) on (0.5°, 90°].
///
/// R_o is strictly decreasing there, so a Newton iteration started at 45°
/// is kept inside a shrinking bracket and falls back to bisection whenever a
/// step would leave it. Ratios outside [R_o(90°), R_o(0.5°)] clamp to the
/// nearer end.
pub fn solve_azimuth(r_o: f64, p: &ModelParams) -> Result<AzimuthSolution, AzimuthError> {
    if !r_o.is_finite() || r_o <= 0.0 {
        return Err(AzimuthError::BadRatio(r_o));
    }
    if !p.is_valid() {
        return Err(AzimuthError::BadParams(*p));
    }
    let mut lo = THETA_MIN_DEG.to_radians();
    let mut hi = FRAC_PI_2;
    let r_hi = orthogonal_ratio(hi, p);
    let r_lo = orthogonal_ratio(lo, p);
    if r_o < r_hi {
        return Ok(AzimuthSolution { theta_deg: 90.0, iterations: 0, clamped: true });
    }
    if r_o > r_lo {
        return Ok(AzimuthSolution { theta_deg: THETA_MIN_DEG, iterations: 0, clamped: true });
    }

    let mut theta = 45f64.to_radians();
    let mut last_step = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        let f = orthogonal_ratio(theta, p) - r_o;
        // Keep going past |ΔR_o| < 1e-9 until θ itself stops moving: R_o is
        // flat at 90° and the ratio tolerance alone leaves ~1e-3° there.
        if f == 0.0 || (f.abs() < RATIO_TOL && last_step < 1e-13) || hi - lo < 1e-15 {
            break;
        }
        iterations += 1;
        // f > 0 means θ is too small (R_o decreases with θ).
        if f > 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let slope = orthogonal_ratio_derivative(theta, p);
        let newton = theta - f / slope;
        let next = if slope < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        last_step = (next - theta).abs();
        theta = next;
    }
    Ok(AzimuthSolution { theta_deg: theta.to_degrees(), iterations, clamped: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_30() {
        let p = ModelParams::default();
        let s = solve_azimuth(orthogonal_ratio(30f64.to_radians(), &p), &p).unwrap();
        assert!((s.theta_deg - 30.0).abs() < 1e-6);
        assert!(!s.clamped);
    }

    #[test]
    fn clamps() {
        let p = ModelParams::default();
        let s = solve_azimuth(0.01, &p).unwrap();
        assert_eq!((s.theta_deg, s.clamped), (90.0, true));
        let s = solve_azimuth(1e6, &p).unwrap();
        assert_eq!((s.theta_deg, s.clamped), (THETA_MIN_DEG, true));
    }

    #[test]
    fn forward_45_inverse() {
        let s = solve_azimuth(2.424, &ModelParams::default()).unwrap();
        assert!((s.theta_deg - 45.0).abs() < 0.01, "{}", s.theta_deg);
    }

    #[test]
    fn rejects_bad_ratio() {
        let p = ModelParams::default();
        assert!(solve_azimuth(f64::NAN, &p).is_err());
        assert!(solve_azimuth(f64::INFINITY, &p).is_err());
        assert!(solve_azimuth(-1.0, &p).is_err());
    }
}
