use crate::solve::AzimuthError;
use serde::{Deserialize, Serialize};

pub const DEFAULT_T_Q: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Quadrant {
    First,
    Second,
}

impl From<Quadrant> for u8 {
    fn from(q: Quadrant) -> u8 {
        match q {
            Quadrant::First => 1,
            Quadrant::Second => 2,
        }
    }
}

impl TryFrom<u8> for Quadrant {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Quadrant::First),
            2 => Ok(Quadrant::Second),
            other => Err(format!("quadrant must be 1 or 2, got {other}")),
        }
    }
}

/// Second quadrant iff the Path-3 extent is below `t_q` times the Path-1 extent.
pub fn determine_quadrant(
    extent_csi1: f64,
    extent_csi3: f64,
    t_q: f64,
) -> Result<Quadrant, AzimuthError> {
    if !(extent_csi1 > 0.0) || !(extent_csi3 > 0.0) {
        return Err(AzimuthError::BadExtent(extent_csi1, extent_csi3));
    }
    if extent_csi3 < t_q * extent_csi1 {
        Ok(Quadrant::Second)
    } else {
        Ok(Quadrant::First)
    }
}

/// Map the (0, 90] solution into (0, 180) using the quadrant.
pub fn finalize_azimuth(theta_deg: f64, quadrant: Quadrant) -> f64 {
    match quadrant {
        Quadrant::First => theta_deg,
        Quadrant::Second => 180.0 - theta_deg,
    }
}
