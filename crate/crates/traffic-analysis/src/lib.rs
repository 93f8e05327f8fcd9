//! Wireless-camera detection from sniffed 802.11 traffic: RSSI gating of
//! access points, the large-and-frequent uploader test, the throughput drop
//! when the user leaves the room, and vendor lookup by OUI.

mod config;
mod detect;
mod oui;

pub use config::DetectionConfig;
pub use detect::{
    detect_snooping, find_suspicious, find_suspicious_with_aps, gate_aps, run_detection, ApSet, DetectionReport,
    SnoopVerdict, SuspicionVerdict,
};
pub use oui::{oui_lookup, OuiTable, RANDOMIZED_VENDOR, UNKNOWN_VENDOR};
