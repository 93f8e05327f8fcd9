use crate::geometry::Chords;
use crate::rooms::{room_fixture_at_range, FIXTURE_RANGE_M};
use crate::traffic::{simulate_beacons, simulate_traffic, TrafficProfile, SIM_AP, SIM_CAMERA};
use crate::walk::{simulate_walk_csi, WalkPath, WalkScenario, DEFAULT_WALK_DURATION_S};
use crate::SimError;
use azimuth_model::Quadrant;
use capture_ingest::{write_csi_jsonl, write_jsonl_capture, CsiHeader, MacAddr};
use serde::{Deserialize, Serialize};

pub const TRUTH_SCHEMA: &str = "camlopa-truth/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureRef {
    pub room: u8,
    pub point: usize,
    #[serde(default)]
    pub d: Option<f64>,
}

fn d_motion() -> Vec<(f64, f64)> {
    vec![(0.0, 7.0)]
}
fn d_csi_duration() -> f64 {
    DEFAULT_WALK_DURATION_S
}
fn d_traffic_duration() -> f64 {
    15.0
}
fn d_camera() -> MacAddr {
    SIM_CAMERA
}
fn d_ap_rssi() -> i32 {
    -50
}
fn d_channel() -> u32 {
    6
}

/// Scenario file: a walk (explicit or a room fixture) plus the camera's traffic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub fixture: Option<FixtureRef>,
    #[serde(default)]
    pub walk: Option<WalkScenario>,
    #[serde(default)]
    pub traffic: TrafficProfile,
    #[serde(default = "d_motion")]
    pub motion: Vec<(f64, f64)>,
    #[serde(default = "d_csi_duration")]
    pub csi_duration_s: f64,
    #[serde(default = "d_traffic_duration")]
    pub traffic_duration_s: f64,
    #[serde(default = "d_camera")]
    pub camera_mac: MacAddr,
    #[serde(default = "d_ap_rssi")]
    pub ap_rssi_dbm: i32,
    #[serde(default = "d_channel")]
    pub channel: u32,
}

impl ScenarioConfig {
    pub fn from_fixture(room: u8, point: usize) -> Self {
        ScenarioConfig {
            fixture: Some(FixtureRef { room, point, d: None }),
            walk: None,
            traffic: TrafficProfile::default(),
            motion: d_motion(),
            csi_duration_s: d_csi_duration(),
            traffic_duration_s: d_traffic_duration(),
            camera_mac: d_camera(),
            ap_rssi_dbm: d_ap_rssi(),
            channel: d_channel(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        serde_json::from_str(text).map_err(|e| SimError::InvalidScenario(e.to_string()))
    }

    /// The walk to simulate, with `seed` applied.
    pub fn resolve_walk(&self, seed: u64) -> Result<WalkScenario, SimError> {
        let mut w = match (&self.walk, &self.fixture) {
            (Some(w), None) => w.clone(),
            (None, Some(f)) => room_fixture_at_range(f.room, f.point, f.d.unwrap_or(FIXTURE_RANGE_M))?,
            (Some(_), Some(_)) => return Err(SimError::InvalidScenario("give either walk or fixture, not both".into())),
            (None, None) => return Err(SimError::InvalidScenario("scenario needs a walk or a fixture".into())),
        };
        w.seed = seed;
        w.validate()?;
        Ok(w)
    }
}

/// What the simulator knows and the pipeline has to recover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub schema: String,
    pub theta_deg: f64,
    pub quadrant: Quadrant,
    pub d: f64,
    pub body_size: f64,
    pub wavelength: f64,
    pub speed: f64,
    pub lf1: f64,
    pub lf2: f64,
    pub l2: f64,
    pub orthogonal_ratio: f64,
    pub camera_mac: MacAddr,
    pub motion: Vec<(f64, f64)>,
    pub seed: u64,
}

impl GroundTruth {
    pub fn of(w: &WalkScenario, cfg: &ScenarioConfig) -> Self {
        let ch = Chords::of(&w.link());
        let theta = w.true_azimuth_deg();
        GroundTruth {
            schema: TRUTH_SCHEMA.to_string(),
            theta_deg: theta,
            quadrant: if theta < 90.0 { Quadrant::First } else { Quadrant::Second },
            d: w.range(),
            body_size: w.body_size,
            wavelength: w.wavelength,
            speed: w.speed,
            lf1: ch.lf1,
            lf2: ch.lf2,
            l2: ch.l2,
            orthogonal_ratio: (w.body_size + ch.lf1 + ch.lf2) / ch.l2,
            camera_mac: cfg.camera_mac,
            motion: cfg.motion.clone(),
            seed: w.seed,
        }
    }
}

/// File contents for one simulated session.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutput {
    /// CSI JSONL for Paths 1, 2 and 3.
    pub csi: [String; 3],
    pub capture: String,
    pub truth: GroundTruth,
}

pub fn simulate_scenario(cfg: &ScenarioConfig, seed: u64) -> Result<SimulationOutput, SimError> {
    let walk = cfg.resolve_walk(seed)?;
    cfg.traffic.validate()?;
    if !(cfg.traffic_duration_s > 0.0) {
        return Err(SimError::InvalidScenario("traffic_duration_s must be positive".into()));
    }
    let header = CsiHeader {
        sample_rate_hz: walk.sample_rate_hz,
        n_subcarriers: walk.n_subcarriers,
        mac: cfg.camera_mac.to_string(),
        channel: cfg.channel,
    };
    let mut csi: [String; 3] = Default::default();
    for (i, path) in [WalkPath::Path1, WalkPath::Path2, WalkPath::Path3].into_iter().enumerate() {
        csi[i] = write_csi_jsonl(&header, &simulate_walk_csi(&walk, path, cfg.csi_duration_s)?);
    }
    let mut frames = simulate_beacons(SIM_AP, cfg.ap_rssi_dbm, cfg.traffic_duration_s);
    frames.extend(simulate_traffic(&cfg.traffic, &cfg.motion, cfg.traffic_duration_s, cfg.camera_mac, seed)?);
    frames.sort_by_key(|f| f.timestamp_us);
    Ok(SimulationOutput { csi, capture: write_jsonl_capture(&frames), truth: GroundTruth::of(&walk, cfg) })
}
