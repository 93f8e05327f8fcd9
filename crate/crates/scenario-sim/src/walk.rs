use crate::geometry::{signed_clearance, Chords, Link};
use crate::motion::{travel, walk_time};
use crate::SimError;
use csi_processing::CsiTrace;
use fresnel_core::{strip_gain_db, DEFAULT_GAIN_FLOOR_DB};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

pub const MIN_WALK_DURATION_S: f64 = 10.0;
pub const DEFAULT_WALK_DURATION_S: f64 = 12.0;
const BASE_AMPLITUDE: f64 = 30.0;

fn d_speed() -> f64 { 1.0 }
fn d_accel() -> f64 { 0.5 }
fn d_body() -> f64 { 0.25 }
fn d_wavelength() -> f64 { 0.125 }
fn d_noise() -> f64 { 0.02 }
fn d_ripple() -> f64 { 0.05 }
fn d_rate() -> f64 { 100.0 }
fn d_subcarriers() -> usize { 56 }
fn d_lead() -> f64 { 2.0 }
fn d_path3_offset() -> f64 { 0.3 }
fn d_entry_loss() -> f64 { -12.0 }
fn d_path2_depth() -> f64 { -20.0 }

/// Ground truth for one localization session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkScenario {
    pub camera_pos: [f64; 2],
    pub device_pos: [f64; 2],
    /// Direction of Path 1, degrees counter-clockwise from +x.
    pub path1_heading: f64,
    #[serde(default = "d_speed")]
    pub speed: f64,
    #[serde(default = "d_accel")]
    pub accel_time: f64,
    #[serde(default = "d_body")]
    pub body_size: f64,
    #[serde(default = "d_wavelength")]
    pub wavelength: f64,
    /// Additive noise, as a fraction of each subcarrier's static amplitude.
    #[serde(default = "d_noise")]
    pub noise_std: f64,
    #[serde(default = "d_ripple")]
    pub ripple_amp: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "d_rate")]
    pub sample_rate_hz: f64,
    #[serde(default = "d_subcarriers")]
    pub n_subcarriers: usize,
    /// Standing time before each walk starts.
    #[serde(default = "d_lead")]
    pub lead_s: f64,
    /// Distance from the device to the body's leading edge at the Path 3 start.
    #[serde(default = "d_path3_offset")]
    pub path3_offset: f64,
    /// Loss while the body overlaps the FFZ but does not shadow the LOS deeper.
    #[serde(default = "d_entry_loss")]
    pub entry_loss_db: f64,
    /// Path 2 loss with the body against the device; it fades linearly (in dB)
    /// to zero as the body's back edge leaves the zone.
    #[serde(default = "d_path2_depth")]
    pub path2_depth_db: f64,
}

impl WalkScenario {
    /// Device at the origin, Path 1 along +x, camera at azimuth `theta_deg`, range `d`.
    pub fn at_azimuth(theta_deg: f64, d: f64) -> Self {
        let t = theta_deg.to_radians();
        WalkScenario {
            camera_pos: [d * t.cos(), d * t.sin()],
            device_pos: [0.0, 0.0],
            path1_heading: 0.0,
            speed: d_speed(),
            accel_time: d_accel(),
            body_size: d_body(),
            wavelength: d_wavelength(),
            noise_std: d_noise(),
            ripple_amp: d_ripple(),
            seed: 0,
            sample_rate_hz: d_rate(),
            n_subcarriers: d_subcarriers(),
            lead_s: d_lead(),
            path3_offset: d_path3_offset(),
            entry_loss_db: d_entry_loss(),
            path2_depth_db: d_path2_depth(),
        }
    }

    pub fn noiseless(mut self) -> Self {
        self.noise_std = 0.0;
        self.ripple_amp = 0.0;
        self
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: &str| Err(SimError::InvalidScenario(m.to_string()));
        let all_finite = self.camera_pos.iter().chain(&self.device_pos).all(|v| v.is_finite())
            && [self.path1_heading, self.speed, self.accel_time, self.body_size, self.wavelength]
                .iter()
                .all(|v| v.is_finite());
        if !all_finite {
            return bad("non-finite scenario field");
        }
        if self.range() <= 0.0 {
            return bad("camera_pos must differ from device_pos");
        }
        if !(self.speed > 0.0) {
            return bad("speed must be positive");
        }
        if self.accel_time < 0.0 || self.body_size <= 0.0 || self.wavelength <= 0.0 {
            return bad("accel_time must be non-negative, body_size and wavelength positive");
        }
        if !(self.noise_std >= 0.0 && self.ripple_amp >= 0.0 && self.ripple_amp < 1.0) {
            return bad("noise_std must be non-negative and ripple_amp in [0, 1)");
        }
        if !(self.sample_rate_hz > 0.0) || self.n_subcarriers == 0 {
            return bad("sample_rate_hz and n_subcarriers must be positive");
        }
        if !(self.lead_s >= 0.0 && self.path3_offset >= 0.0) {
            return bad("lead_s and path3_offset must be non-negative");
        }
        if !(self.entry_loss_db <= 0.0 && self.path2_depth_db <= 0.0) {
            return bad("losses are given as non-positive dB");
        }
        let th = self.true_azimuth_deg();
        if !(th > 0.0 && th < 180.0) {
            return bad("camera must not lie on the Path 1 line");
        }
        Ok(())
    }

    /// Device-to-camera distance.
    pub fn range(&self) -> f64 {
        (self.camera_pos[0] - self.device_pos[0]).hypot(self.camera_pos[1] - self.device_pos[1])
    }

    /// Unsigned angle between Path 1 and the device→camera line, degrees.
    /// Path 2 is always walked on the camera's side of Path 1.
    pub fn true_azimuth_deg(&self) -> f64 {
        let (s, c) = self.path1_heading.to_radians().sin_cos();
        let vx = self.camera_pos[0] - self.device_pos[0];
        let vy = self.camera_pos[1] - self.device_pos[1];
        let along = vx * c + vy * s;
        let across = (vy * c - vx * s).abs();
        across.atan2(along).to_degrees()
    }

    pub fn link(&self) -> Link {
        Link::from_azimuth(self.true_azimuth_deg(), self.range(), self.wavelength)
    }
}

/// The three walks of a localization session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WalkPath {
    /// Along the heading, through the device.
    Path1,
    /// Orthogonal, from the device out on the camera's side.
    Path2,
    /// Along the heading, from just in front of the device.
    Path3,
}

impl WalkPath {
    pub fn from_index(i: u8) -> Option<WalkPath> {
        match i {
            1 => Some(WalkPath::Path1),
            2 => Some(WalkPath::Path2),
            3 => Some(WalkPath::Path3),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            WalkPath::Path1 => 1,
            WalkPath::Path2 => 2,
            WalkPath::Path3 => 3,
        }
    }
}

/// Start offset, direction and length of a walk; positions refer to the body centre.
struct Walk {
    start: [f64; 2],
    dir: [f64; 2],
    length: f64,
}

const MARGIN: f64 = 0.5;
const MIN_HALF_SPAN: f64 = 2.0;

fn plan(s: &WalkScenario, path: WalkPath, ch: &Chords) -> Walk {
    let r = s.body_size / 2.0;
    match path {
        WalkPath::Path1 => {
            let back = (ch.lf2 + r + MARGIN).max(MIN_HALF_SPAN);
            let fwd = (ch.lf1 + r + MARGIN).max(MIN_HALF_SPAN);
            Walk { start: [-back, 0.0], dir: [1.0, 0.0], length: back + fwd }
        }
        WalkPath::Path2 => Walk { start: [0.0, r], dir: [0.0, 1.0], length: (ch.l2 + 2.0 * r + 1.0).max(3.0) },
        WalkPath::Path3 => Walk { start: [s.path3_offset - r, 0.0], dir: [1.0, 0.0], length: 3.0 },
    }
}

/// Gain in dB with the body centred at `p`.
fn body_gain_db(s: &WalkScenario, link: &Link, ch: &Chords, path: WalkPath, p: [f64; 2]) -> f64 {
    let r = s.body_size / 2.0;
    match path {
        WalkPath::Path2 => {
            let back = p[1] - r;
            if back < ch.l2 {
                s.path2_depth_db * (1.0 - back.max(0.0) / ch.l2)
            } else {
                0.0
            }
        }
        WalkPath::Path1 | WalkPath::Path3 => {
            let overlaps = p[0] - r < ch.lf1 && p[0] + r > -ch.lf2;
            if !overlaps {
                return 0.0;
            }
            // Shadowing only when the body's foot point is strictly between the ends.
            let u = link.los_dir();
            let foot = p[0] * u[0] + p[1] * u[1];
            let shadow = if foot > 0.0 && foot < link.d() {
                let n = link.los_normal();
                let a = signed_clearance(link, [p[0] - r * n[0], p[1] - r * n[1]]);
                let b = signed_clearance(link, [p[0] + r * n[0], p[1] + r * n[1]]);
                strip_gain_db(a.min(b), a.max(b), DEFAULT_GAIN_FLOOR_DB).gain_db
            } else {
                0.0
            };
            shadow.min(s.entry_loss_db)
        }
    }
}

fn path_seed(seed: u64, path: WalkPath) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (path.index() as u64).wrapping_mul(0xd1b5_4a32_d192_ed03)
}

/// Body-centre position at time `t` of the given walk.
pub fn body_position(s: &WalkScenario, path: WalkPath, t: f64) -> [f64; 2] {
    let ch = Chords::of(&s.link());
    let w = plan(s, path, &ch);
    let k = travel(t - s.lead_s, w.length, s.speed, s.accel_time);
    [w.start[0] + k * w.dir[0], w.start[1] + k * w.dir[1]]
}

/// Seconds from trace start until the walk of `path` ends.
pub fn walk_end_s(s: &WalkScenario, path: WalkPath) -> f64 {
    let ch = Chords::of(&s.link());
    s.lead_s + walk_time(plan(s, path, &ch).length, s.speed, s.accel_time)
}

/// Synthesize the CSI amplitude trace of one walk.
pub fn simulate_walk_csi(s: &WalkScenario, path: WalkPath, duration_s: f64) -> Result<CsiTrace, SimError> {
    s.validate()?;
    if !(duration_s >= MIN_WALK_DURATION_S) {
        return Err(SimError::InvalidScenario(format!(
            "walk duration {duration_s} s is below {MIN_WALK_DURATION_S} s"
        )));
    }
    let link = s.link();
    let ch = Chords::of(&link);
    let walk = plan(s, path, &ch);
    let n = (duration_s * s.sample_rate_hz).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(path_seed(s.seed, path));
    let tilt: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let statics: Vec<f64> = (0..s.n_subcarriers)
        .map(|k| BASE_AMPLITUDE * (1.0 + 0.25 * (0.29 * k as f64 + tilt).sin()))
        .collect();
    let phases: Vec<f64> = (0..s.n_subcarriers).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");

    let mut amplitudes = vec![Vec::with_capacity(n); s.n_subcarriers];
    for i in 0..n {
        let t = i as f64 / s.sample_rate_hz;
        let k = travel(t - s.lead_s, walk.length, s.speed, s.accel_time);
        let p = [walk.start[0] + k * walk.dir[0], walk.start[1] + k * walk.dir[1]];
        let gain = 10f64.powf(body_gain_db(s, &link, &ch, path, p) / 20.0);
        let phase = std::f64::consts::TAU * link.excess_path(p) / s.wavelength;
        for (c, row) in amplitudes.iter_mut().enumerate() {
            let ripple = 1.0 + s.ripple_amp * (phase + phases[c]).sin();
            let noise = if s.noise_std > 0.0 { s.noise_std * statics[c] * normal.sample(&mut rng) } else { 0.0 };
            row.push((statics[c] * gain * ripple + noise).max(0.0));
        }
    }
    CsiTrace::new(s.sample_rate_hz, 0.0, amplitudes).map_err(|e| SimError::InvalidScenario(e.to_string()))
}
