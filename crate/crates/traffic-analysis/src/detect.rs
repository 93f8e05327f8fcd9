use crate::config::DetectionConfig;
use capture_ingest::{CaptureSession, FrameRecord, FrameType, MacAddr};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Access points seen in a capture, split by the RSSI gate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApSet {
    pub retained: BTreeSet<MacAddr>,
    pub excluded: BTreeSet<MacAddr>,
}

impl ApSet {
    pub fn contains(&self, mac: &MacAddr) -> bool {
        self.retained.contains(mac) || self.excluded.contains(mac)
    }
}

/// APs are the sources of beacons and probe responses. An AP is kept when
/// its strongest announcement reaches the floor, or when no RSSI was seen.
pub fn gate_aps(session: &CaptureSession, cfg: &DetectionConfig) -> ApSet {
    let mut best: BTreeMap<MacAddr, Option<i32>> = BTreeMap::new();
    for r in session.records.iter().filter(|r| r.is_ap_announcement()) {
        let e = best.entry(r.src_mac).or_insert(None);
        if let Some(v) = r.rssi_dbm {
            *e = Some(e.map_or(v, |old| old.max(v)));
        }
    }
    let mut set = ApSet::default();
    for (mac, rssi) in best {
        match rssi {
            Some(v) if v < cfg.rssi_floor_dbm => set.excluded.insert(mac),
            _ => set.retained.insert(mac),
        };
    }
    set
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuspicionVerdict {
    pub mac: MacAddr,
    pub mean_payload: f64,
    pub frame_count: u64,
    /// Offset of the scored window from the capture start.
    pub window_start_s: f64,
    pub suspicious: bool,
}

fn is_data(r: &FrameRecord) -> bool {
    r.frame_type == FrameType::Data
}

/// Suspicious when a window holds more than `t_l` data frames whose mean
/// payload exceeds `t_s` bytes, checked per transmitter over consecutive
/// `window_s` windows.
///
/// Each device is scored on its busiest window (most frames, then highest
/// mean payload). Frames inside a BSS whose AP failed the RSSI gate are
/// ignored, and AP addresses are never suspects.
pub fn find_suspicious(session: &CaptureSession, cfg: &DetectionConfig) -> Vec<SuspicionVerdict> {
    let aps = gate_aps(session, cfg);
    find_suspicious_with_aps(session, cfg, &aps)
}

pub fn find_suspicious_with_aps(session: &CaptureSession, cfg: &DetectionConfig, aps: &ApSet) -> Vec<SuspicionVerdict> {
    let Some(t0) = session.start_us() else { return Vec::new() };
    let window_us = (cfg.window_s * 1e6).max(1.0);
    // (mac, window index) -> (count, byte sum)
    let mut bins: BTreeMap<(MacAddr, u64), (u64, u64)> = BTreeMap::new();
    for r in session.records.iter().filter(|r| is_data(r)) {
        if r.bssid.is_some_and(|b| aps.excluded.contains(&b)) {
            continue;
        }
        let w = ((r.timestamp_us - t0) as f64 / window_us).floor() as u64;
        let e = bins.entry((r.src_mac, w)).or_insert((0, 0));
        e.0 += 1;
        e.1 += r.payload_len as u64;
    }
    let mut best: BTreeMap<MacAddr, (u64, u64, u64)> = BTreeMap::new();
    for ((mac, w), (n, bytes)) in bins {
        let e = best.entry(mac).or_insert((w, n, bytes));
        if n > e.1 || (n == e.1 && bytes > e.2) {
            *e = (w, n, bytes);
        }
    }
    let t_l = cfg.effective_t_l();
    best.into_iter()
        .map(|(mac, (w, n, bytes))| {
            let mean = bytes as f64 / n as f64;
            SuspicionVerdict {
                mac,
                mean_payload: mean,
                frame_count: n,
                window_start_s: w as f64 * cfg.window_s,
                suspicious: mean > cfg.t_s && n as f64 > t_l && !aps.contains(&mac),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnoopVerdict {
    pub mac: MacAddr,
    pub per_second_bytes: Vec<u64>,
    pub first_half_bps: f64,
    pub second_half_bps: f64,
    pub risk_ratio: f64,
    pub snooping: bool,
}

/// Leave-the-room check over the first `observe_s` seconds of the capture.
///
/// Halves split at `observe_s / 2`, exactly, on frame timestamps, so a
/// per-second bin straddling the midpoint is divided by time rather than
/// assigned whole.
pub fn detect_snooping(session: &CaptureSession, mac: MacAddr, cfg: &DetectionConfig) -> SnoopVerdict {
    let n_bins = cfg.observe_s.ceil().max(0.0) as usize;
    let mut per_second = vec![0u64; n_bins];
    let (mut first, mut second) = (0u64, 0u64);
    let half_us = cfg.observe_s * 0.5e6;
    if let Some(t0) = session.start_us() {
        for r in session.records.iter().filter(|r| is_data(r) && r.src_mac == mac) {
            let dt = (r.timestamp_us - t0) as f64;
            if dt >= 2.0 * half_us {
                continue;
            }
            let bin = (dt / 1e6) as usize;
            if let Some(b) = per_second.get_mut(bin) {
                *b += r.payload_len as u64;
            }
            if dt < half_us {
                first += r.payload_len as u64;
            } else {
                second += r.payload_len as u64;
            }
        }
    }
    let half_s = cfg.observe_s / 2.0;
    let first_bps = first as f64 / half_s;
    let second_bps = second as f64 / half_s;
    let risk_ratio = if first == 0 {
        0.0
    } else if second == 0 {
        cfg.risk_cap
    } else {
        (first_bps / second_bps).min(cfg.risk_cap)
    };
    SnoopVerdict {
        mac,
        per_second_bytes: per_second,
        first_half_bps: first_bps,
        second_half_bps: second_bps,
        risk_ratio,
        snooping: risk_ratio >= cfg.risk_threshold && first_bps >= cfg.activity_floor_bps,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub aps: ApSet,
    pub suspicious: Vec<SuspicionVerdict>,
    pub snooping: Vec<SnoopVerdict>,
}

/// Gate APs, search for uploaders, then run the leave-the-room check on each suspect.
pub fn run_detection(session: &CaptureSession, cfg: &DetectionConfig) -> DetectionReport {
    let aps = gate_aps(session, cfg);
    let suspicious: Vec<_> = find_suspicious_with_aps(session, cfg, &aps).into_iter().filter(|v| v.suspicious).collect();
    let snooping = suspicious.iter().map(|v| detect_snooping(session, v.mac, cfg)).collect();
    DetectionReport { aps, suspicious, snooping }
}
