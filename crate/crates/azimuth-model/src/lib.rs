//! Azimuth from the orthogonal ratio of two FFZ crossing times.
//!
//! Frame: receiver at the origin, Path 1 along +x, Path 2 along +y, and the
//! transmitter at `d·(cos θ, sin θ)` with θ ∈ (0, π).

pub mod model;
pub mod oracle;
pub mod quadrant;
pub mod solve;

pub use model::{
    l2, lf1, lf2, orthogonal_ratio, orthogonal_ratio_derivative, wavelength_for_channel,
    ModelParams, DEFAULT_BODY_SIZE, DEFAULT_D, DEFAULT_WAVELENGTH,
};
pub use oracle::geometric_crossing_length;
pub use quadrant::{determine_quadrant, finalize_azimuth, Quadrant, DEFAULT_T_Q};
pub use solve::{solve_azimuth, AzimuthError, AzimuthSolution, THETA_MIN_DEG};

use serde::{Deserialize, Serialize};

/// Final localization result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AzimuthEstimate {
    /// Degrees in (0, 180).
    pub theta_deg: f64,
    pub quadrant: Quadrant,
    pub orthogonal_ratio: f64,
    pub solver_iterations: u32,
    pub clamped: bool,
}

/// Solve, pick the quadrant and reflect: the whole localization step on scalars.
pub fn estimate_azimuth(
    r_o: f64,
    extent_csi1: f64,
    extent_csi3: f64,
    t_q: f64,
    p: &ModelParams,
) -> Result<AzimuthEstimate, AzimuthError> {
    let sol = solve_azimuth(r_o, p)?;
    let quadrant = determine_quadrant(extent_csi1, extent_csi3, t_q)?;
    Ok(AzimuthEstimate {
        theta_deg: finalize_azimuth(sol.theta_deg, quadrant),
        quadrant,
        orthogonal_ratio: r_o,
        solver_iterations: sol.iterations,
        clamped: sol.clamped,
    })
}
