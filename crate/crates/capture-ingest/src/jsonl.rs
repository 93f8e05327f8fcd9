//! Line-oriented JSON formats: frame captures and CSI traces.

use crate::record::{CaptureSession, FrameRecord, FrameType, MacAddr};
use crate::CaptureError;
use csi_processing::CsiTrace;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFrame {
    t_us: u64,
    src: MacAddr,
    dst: MacAddr,
    #[serde(rename = "type")]
    kind: FrameType,
    subtype: u8,
    len: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rssi: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ch: Option<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bssid: Option<MacAddr>,
}

/// One capture line for `r`, without the trailing newline.
pub fn frame_to_jsonl(r: &FrameRecord) -> String {
    let j = JsonFrame {
        t_us: r.timestamp_us,
        src: r.src_mac,
        dst: r.dst_mac,
        kind: r.frame_type,
        subtype: r.subtype,
        len: r.payload_len,
        rssi: r.rssi_dbm,
        ch: r.channel,
        bssid: r.bssid,
    };
    serde_json::to_string(&j).expect("plain struct serializes")
}

pub fn write_jsonl_capture(records: &[FrameRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&frame_to_jsonl(r));
        out.push('\n');
    }
    out
}

/// Parse capture JSONL; blank lines are ignored, records come back sorted.
pub fn read_jsonl_capture(text: &str) -> Result<CaptureSession, CaptureError> {
    read_jsonl_capture_named(text, "<memory>")
}

pub fn read_jsonl_capture_named(text: &str, source: &str) -> Result<CaptureSession, CaptureError> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let j: JsonFrame = serde_json::from_str(line)
            .map_err(|e| CaptureError::Line { line: i + 1, message: e.to_string() })?;
        if j.subtype > 15 {
            return Err(CaptureError::Line { line: i + 1, message: format!("subtype {} out of range", j.subtype) });
        }
        records.push(FrameRecord {
            timestamp_us: j.t_us,
            src_mac: j.src,
            dst_mac: j.dst,
            bssid: j.bssid,
            frame_type: j.kind,
            subtype: j.subtype,
            payload_len: j.len,
            rssi_dbm: j.rssi,
            channel: j.ch,
        });
    }
    Ok(CaptureSession::from_records(records, source, 0))
}

/// First line of a CSI file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsiHeader {
    pub sample_rate_hz: f64,
    pub n_subcarriers: usize,
    pub mac: String,
    pub channel: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsiLine {
    t: f64,
    amp: Vec<f64>,
}

pub fn write_csi_jsonl(header: &CsiHeader, trace: &CsiTrace) -> String {
    let mut out = serde_json::to_string(header).expect("header serializes");
    out.push('\n');
    let rate = trace.sample_rate_hz;
    for i in 0..trace.n_samples() {
        let line = CsiLine {
            t: trace.start_time + i as f64 / rate,
            amp: trace.amplitudes.iter().map(|row| row[i]).collect(),
        };
        out.push_str(&serde_json::to_string(&line).expect("line serializes"));
        out.push('\n');
    }
    out
}

pub fn read_csi_jsonl(text: &str) -> Result<CsiTrace, CaptureError> {
    read_csi_jsonl_with_header(text).map(|(_, t)| t)
}

/// Parse a CSI file and resample it onto the declared rate.
///
/// Output sample k sits at `t0 + k / rate` (t0 = first timestamp) and is
/// linearly interpolated between the bracketing input lines.
pub fn read_csi_jsonl_with_header(text: &str) -> Result<(CsiHeader, CsiTrace), CaptureError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, htext) = lines.next().ok_or_else(|| CaptureError::Format("empty CSI file".into()))?;
    let header: CsiHeader = serde_json::from_str(htext)
        .map_err(|e| CaptureError::Line { line: hline + 1, message: format!("header: {e}") })?;
    if !(header.sample_rate_hz > 0.0 && header.sample_rate_hz.is_finite()) || header.n_subcarriers == 0 {
        return Err(CaptureError::Format(format!(
            "header declares rate {} and {} subcarriers",
            header.sample_rate_hz, header.n_subcarriers
        )));
    }
    let mut times = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, l) in lines {
        let s: CsiLine = serde_json::from_str(l).map_err(|e| CaptureError::Line { line: i + 1, message: e.to_string() })?;
        if s.amp.len() != header.n_subcarriers {
            return Err(CaptureError::Line {
                line: i + 1,
                message: format!("{} amplitudes, header declares {}", s.amp.len(), header.n_subcarriers),
            });
        }
        if !s.t.is_finite() || times.last().is_some_and(|&p| s.t <= p) {
            return Err(CaptureError::Line { line: i + 1, message: format!("timestamp {} not increasing", s.t) });
        }
        times.push(s.t);
        rows.push(s.amp);
    }
    if times.is_empty() {
        return Err(CaptureError::Format("CSI file has no samples".into()));
    }
    let rate = header.sample_rate_hz;
    let t0 = times[0];
    let span = times[times.len() - 1] - t0;
    let n_out = (span * rate + 1e-6).floor() as usize + 1;
    let mut amplitudes = vec![Vec::with_capacity(n_out); header.n_subcarriers];
    let mut j = 0;
    for k in 0..n_out {
        let t = t0 + k as f64 / rate;
        while j + 2 < times.len() && times[j + 1] <= t {
            j += 1;
        }
        let (a, b) = if times.len() == 1 { (0, 0) } else { (j, j + 1) };
        let w = if a == b { 0.0 } else { ((t - times[a]) / (times[b] - times[a])).clamp(0.0, 1.0) };
        for (c, out) in amplitudes.iter_mut().enumerate() {
            out.push(rows[a][c] + w * (rows[b][c] - rows[a][c]));
        }
    }
    let trace = CsiTrace::new(rate, t0, amplitudes).map_err(|e| CaptureError::Format(e.to_string()))?;
    Ok((header, trace))
}
