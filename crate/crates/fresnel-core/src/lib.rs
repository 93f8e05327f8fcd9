//! Fresnel-zone geometry and diffraction gain for a body crossing a radio link.

pub mod complex;
pub mod geometry;
pub mod integral;

pub use complex::ComplexValue;
pub use geometry::{
    clearance_u, cylinder_gain_db, cylinder_gain_db_with_floor, ffz_radius, kirchhoff_v,
    strip_gain_db, CylinderObstacle, DiffractionGain, GeometryError, LinkGeometry,
    DEFAULT_GAIN_FLOOR_DB,
};
pub use integral::{fresnel_cs, fresnel_integral_f, fresnel_integral_f_lower, knife_edge_gain_db};
