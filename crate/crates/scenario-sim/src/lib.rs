//! Forward simulator: CSI amplitude traces for the three localization walks
//! and 802.11 traffic from a camera, both deterministic per seed.

pub mod geometry;
mod motion;
mod rooms;
mod scenario;
mod traffic;
mod walk;

pub use motion::{travel, walk_time};
pub use rooms::{all_room_points, room_azimuth, room_fixture, room_fixture_at_range, FIXTURE_RANGE_M, ROOM_AZIMUTHS};
pub use scenario::{simulate_scenario, FixtureRef, GroundTruth, ScenarioConfig, SimulationOutput, TRUTH_SCHEMA};
pub use traffic::{
    device_traffic, simulate_beacons, simulate_traffic, TrafficProfile, EPOCH_US, SIM_AP, SIM_CAMERA, SIM_GATEWAY,
};
pub use walk::{
    body_position, simulate_walk_csi, walk_end_s, WalkPath, WalkScenario, DEFAULT_WALK_DURATION_S,
    MIN_WALK_DURATION_S,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("no room {room} point {point}")]
    NoSuchPoint { room: u8, point: usize },
}
