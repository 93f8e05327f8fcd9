use crate::SimError;
use capture_ingest::{FrameRecord, FrameType, MacAddr, SUBTYPE_BEACON, SUBTYPE_QOS_DATA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

/// Capture clock origin, microseconds since the epoch.
pub const EPOCH_US: u64 = 1_700_000_000_000_000;
pub const SIM_AP: MacAddr = MacAddr([0x00, 0x1f, 0x33, 0x0a, 0x0b, 0x0c]);
pub const SIM_GATEWAY: MacAddr = MacAddr([0x00, 0x1f, 0x33, 0x0a, 0x0b, 0x01]);
pub const SIM_CAMERA: MacAddr = MacAddr([0x00, 0x12, 0x34, 0x56, 0x78, 0x9a]);
const MAX_PAYLOAD: f64 = 1500.0;
const MIN_PAYLOAD: f64 = 40.0;

/// Upload behaviour of a device.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrafficProfile {
    pub base_pps: f64,
    pub base_payload: f64,
    /// Rate multiplier while there is motion in view.
    pub motion_gain: f64,
    /// Constant bit rate: exact per-second counts and fixed payloads.
    pub cbr: bool,
}

impl Default for TrafficProfile {
    fn default() -> Self {
        TrafficProfile { base_pps: 60.0, base_payload: 800.0, motion_gain: 3.0, cbr: false }
    }
}

impl TrafficProfile {
    /// Cameras: 35-130 frames/s of 369-1050 bytes.
    pub fn validate(&self) -> Result<(), SimError> {
        if !(35.0..=130.0).contains(&self.base_pps) {
            return Err(SimError::InvalidScenario(format!("base_pps {} outside [35, 130]", self.base_pps)));
        }
        if !(369.0..=1050.0).contains(&self.base_payload) {
            return Err(SimError::InvalidScenario(format!("base_payload {} outside [369, 1050]", self.base_payload)));
        }
        if !(self.motion_gain >= 1.0 && self.motion_gain.is_finite()) {
            return Err(SimError::InvalidScenario(format!("motion_gain {} below 1", self.motion_gain)));
        }
        Ok(())
    }
}

fn in_motion(timeline: &[(f64, f64)], t: f64) -> bool {
    timeline.iter().any(|&(a, b)| t >= a && t < b)
}

/// Uplink QoS data frames from `mac` through [`SIM_AP`].
///
/// Each second draws a Poisson count (exact `base_pps` when `cbr`), scaled
/// by `motion_gain` if its midpoint falls in a motion interval. Payloads are
/// Gaussian around `base_payload`, wider during motion, clamped to a frame.
pub fn simulate_traffic(
    p: &TrafficProfile,
    motion_timeline: &[(f64, f64)],
    duration_s: f64,
    mac: MacAddr,
    seed: u64,
) -> Result<Vec<FrameRecord>, SimError> {
    p.validate()?;
    Ok(device_traffic(p, motion_timeline, duration_s, mac, seed))
}

/// [`simulate_traffic`] without the camera range checks, for benign devices.
pub fn device_traffic(
    p: &TrafficProfile,
    motion_timeline: &[(f64, f64)],
    duration_s: f64,
    mac: MacAddr,
    seed: u64,
) -> Vec<FrameRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7261_6666_6963);
    let mut out = Vec::new();
    let seconds = duration_s.max(0.0).ceil() as u64;
    for sec in 0..seconds {
        let span = (duration_s - sec as f64).min(1.0);
        let motion = in_motion(motion_timeline, sec as f64 + 0.5 * span);
        let rate = p.base_pps * if motion && !p.cbr { p.motion_gain } else { 1.0 } * span;
        let count = if p.cbr {
            rate.round() as u64
        } else if rate > 0.0 {
            Poisson::new(rate).expect("positive rate").sample(&mut rng) as u64
        } else {
            0
        };
        let spread = if motion { 0.25 } else { 0.1 };
        let sizes = Normal::new(p.base_payload, spread * p.base_payload).expect("finite payload");
        let mut offsets: Vec<u64> = (0..count).map(|_| rng.gen_range(0..(span * 1e6) as u64)).collect();
        offsets.sort_unstable();
        for off in offsets {
            let len = if p.cbr { p.base_payload } else { sizes.sample(&mut rng).clamp(MIN_PAYLOAD, MAX_PAYLOAD) };
            out.push(FrameRecord {
                timestamp_us: EPOCH_US + sec * 1_000_000 + off,
                src_mac: mac,
                dst_mac: SIM_GATEWAY,
                bssid: Some(SIM_AP),
                frame_type: FrameType::Data,
                subtype: SUBTYPE_QOS_DATA,
                payload_len: len.round() as u32,
                rssi_dbm: Some(-48),
                channel: Some(6),
            });
        }
    }
    out
}

/// Beacons from `ap` every 102.4 ms.
pub fn simulate_beacons(ap: MacAddr, rssi_dbm: i32, duration_s: f64) -> Vec<FrameRecord> {
    let n = (duration_s * 1e6 / 102_400.0).ceil() as u64;
    (0..n)
        .map(|i| FrameRecord {
            timestamp_us: EPOCH_US + i * 102_400,
            src_mac: ap,
            dst_mac: MacAddr([0xff; 6]),
            bssid: Some(ap),
            frame_type: FrameType::Management,
            subtype: SUBTYPE_BEACON,
            payload_len: 180,
            rssi_dbm: Some(rssi_dbm),
            channel: Some(6),
        })
        .collect()
}
