use crate::integral::{fresnel_integral_f, fresnel_integral_f_lower};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid link geometry: {0}")]
    Invalid(String),
}

/// Transmitter/receiver split around the foot point of an obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub wavelength: f64,
    pub d1: f64,
    pub d2: f64,
}

impl LinkGeometry {
    pub fn new(wavelength: f64, d1: f64, d2: f64) -> Result<Self, GeometryError> {
        let g = Self { wavelength, d1, d2 };
        g.check()?;
        if d1 <= 0.0 || d2 <= 0.0 {
            return Err(GeometryError::Invalid(format!("d1={d1}, d2={d2} must be positive")));
        }
        Ok(g)
    }

    // Looser than `new`: a zero leg is allowed so the focus limit can be taken.
    fn check(&self) -> Result<(), GeometryError> {
        let finite = self.wavelength.is_finite() && self.d1.is_finite() && self.d2.is_finite();
        if !finite || self.wavelength <= 0.0 {
            return Err(GeometryError::Invalid(format!("wavelength {}", self.wavelength)));
        }
        if self.d1 < 0.0 || self.d2 < 0.0 || self.d1 + self.d2 <= 0.0 {
            return Err(GeometryError::Invalid(format!(
                "degenerate split d1={}, d2={}",
                self.d1, self.d2
            )));
        }
        Ok(())
    }
}

/// Body approximated as a cylinder whose axis sits `center_offset` from the LOS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderObstacle {
    pub center_offset: f64,
    pub radius: f64,
}

impl CylinderObstacle {
    pub fn h_front(&self) -> f64 {
        self.center_offset - self.radius
    }

    pub fn h_back(&self) -> f64 {
        self.center_offset + self.radius
    }
}

/// First Fresnel zone radius r1 = sqrt(λ·d1·d2/(d1+d2)).
pub fn ffz_radius(geom: &LinkGeometry) -> Result<f64, GeometryError> {
    geom.check()?;
    Ok((geom.wavelength * geom.d1 * geom.d2 / (geom.d1 + geom.d2)).sqrt())
}

fn positive_radius(geom: &LinkGeometry) -> Result<f64, GeometryError> {
    let r1 = ffz_radius(geom)?;
    if r1 > 0.0 {
        Ok(r1)
    } else {
        Err(GeometryError::Invalid("zero Fresnel radius at a focus".into()))
    }
}

/// Fresnel clearance u = h / r1.
pub fn clearance_u(h: f64, geom: &LinkGeometry) -> Result<f64, GeometryError> {
    Ok(h / positive_radius(geom)?)
}

/// Fresnel-Kirchhoff parameter v = h·sqrt(2(d1+d2)/(λ·d1·d2)).
pub fn kirchhoff_v(h: f64, geom: &LinkGeometry) -> Result<f64, GeometryError> {
    Ok(h * std::f64::consts::SQRT_2 / positive_radius(geom)?)
}

pub const DEFAULT_GAIN_FLOOR_DB: f64 = -80.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffractionGain {
    pub gain_db: f64,
    /// True when the field ratio fell below the floor and was clamped.
    pub floored: bool,
}

/// Gain of an opaque strip spanning clearances `[u_lo, u_hi]` (in FFZ radii).
///
/// The field below the strip arrives through the lower edge and the field
/// above it through the upper edge, so the two half-plane integrals add.
/// A strip that recedes to either side of the LOS leaves the full field.
pub fn strip_gain_db(u_lo: f64, u_hi: f64, floor_db: f64) -> DiffractionGain {
    let (lo, hi) = if u_lo <= u_hi { (u_lo, u_hi) } else { (u_hi, u_lo) };
    let s2 = std::f64::consts::SQRT_2;
    let field = fresnel_integral_f_lower(lo * s2) + fresnel_integral_f(hi * s2);
    let mag = field.magnitude();
    let db = if mag > 0.0 { 20.0 * mag.log10() } else { f64::NEG_INFINITY };
    if db < floor_db || !db.is_finite() {
        DiffractionGain { gain_db: floor_db, floored: true }
    } else {
        DiffractionGain { gain_db: db, floored: false }
    }
}

/// Diffraction gain of a cylinder across the LOS with the default −80 dB floor.
pub fn cylinder_gain_db(
    obstacle: &CylinderObstacle,
    geom: &LinkGeometry,
) -> Result<DiffractionGain, GeometryError> {
    cylinder_gain_db_with_floor(obstacle, geom, DEFAULT_GAIN_FLOOR_DB)
}

pub fn cylinder_gain_db_with_floor(
    obstacle: &CylinderObstacle,
    geom: &LinkGeometry,
    floor_db: f64,
) -> Result<DiffractionGain, GeometryError> {
    if !(obstacle.radius > 0.0) {
        return Err(GeometryError::Invalid(format!("radius {}", obstacle.radius)));
    }
    let r1 = positive_radius(geom)?;
    Ok(strip_gain_db(obstacle.h_front() / r1, obstacle.h_back() / r1, floor_db))
}
