//! From raw CSI amplitude to the two walk durations and the fluctuation extent.

pub mod config;
pub mod measure;
pub mod reference;
pub mod trace;
pub mod window;

pub use config::ProcessingConfig;
pub use measure::{
    fluctuation_extent, fluctuation_extent_with, measure_orthogonal_ratio,
    measure_orthogonal_ratio_with, PathFailure, RatioMeasurement,
};
pub use reference::{moving_average, select_reference_trace, select_reference_trace_with};
pub use trace::{CsiError, CsiTrace};
pub use window::{
    extract_window_crossing, extract_window_crossing_with, extract_window_halfpath,
    extract_window_halfpath_with, AttenuationWindow,
};
