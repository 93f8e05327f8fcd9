//! Frame records from pcap/radiotap or JSONL captures, and CSI trace files.

pub mod jsonl;
pub mod pcap;
pub mod record;

pub use jsonl::{
    frame_to_jsonl, read_csi_jsonl, read_csi_jsonl_with_header, read_jsonl_capture,
    read_jsonl_capture_named, write_csi_jsonl, write_jsonl_capture, CsiHeader,
};
pub use pcap::{parse_mac_header, parse_pcap, parse_pcap_named, parse_radiotap, MacHeader, RadiotapInfo};
pub use record::{
    channel_from_freq, CaptureSession, FrameRecord, FrameType, MacAddr, SUBTYPE_BEACON,
    SUBTYPE_PROBE_RESPONSE, SUBTYPE_QOS_DATA,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CaptureError {
    #[error("format error: {0}")]
    Format(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Read a capture file, choosing the parser by extension (`.jsonl`/`.json`
/// are JSONL, anything else is treated as pcap).
pub fn read_capture_file(path: &std::path::Path) -> Result<CaptureSession, CaptureError> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CaptureError::Io { path: name.clone(), source })?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    if ext == "jsonl" || ext == "json" {
        let text = String::from_utf8(bytes).map_err(|e| CaptureError::Format(e.to_string()))?;
        read_jsonl_capture_named(&text, &name)
    } else {
        parse_pcap_named(&bytes, &name)
    }
}
