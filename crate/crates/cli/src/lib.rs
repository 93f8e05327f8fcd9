//! Library side of the `camlopa` binary: file handling, report assembly and
//! the exit-code mapping shared by the subcommands.

mod config;
pub mod eval;
mod localize;

pub use config::RunConfig;
pub use eval::{run_eval, EvalOptions, EvalSummary, PointResult};
pub use localize::{localize, LocalizationReport, LocalizeError};

use azimuth_model::wavelength_for_channel;
use capture_ingest::{read_capture_file, read_csi_jsonl_with_header, CsiHeader};
use csi_processing::CsiTrace;
use scenario_sim::{simulate_scenario, GroundTruth, ScenarioConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;
use traffic_analysis::{oui_lookup, run_detection, DetectionReport, OuiTable};

pub const REPORT_SCHEMA: &str = "camlopa-report/1";

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, bad flags or config.
    #[error("{0}")]
    Input(String),
    /// Inputs parsed but the signal did not support an estimate.
    #[error("{0}")]
    Signal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Signal(_) => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// What `detect` and `localize` print with `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionReport>,
    /// Vendor per suspicious MAC, when an OUI table was given.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vendors: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localization: Option<LocalizationReport>,
    pub config: RunConfig,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl RunReport {
    fn new(command: &str, inputs: Vec<String>, config: RunConfig) -> Self {
        RunReport {
            schema: REPORT_SCHEMA.to_string(),
            command: command.to_string(),
            inputs,
            detection: None,
            vendors: BTreeMap::new(),
            localization: None,
            config,
            warnings: Vec::new(),
        }
    }

    /// Plain-text rendering for the terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(d) = &self.detection {
            out.push_str(&format!(
                "access points: {} retained, {} excluded by RSSI\n",
                d.aps.retained.len(),
                d.aps.excluded.len()
            ));
            if d.suspicious.iter().all(|s| !s.suspicious) {
                out.push_str("no suspicious uploaders\n");
            }
            for s in d.suspicious.iter().filter(|s| s.suspicious) {
                let vendor = self.vendors.get(&s.mac.to_string()).map(|v| format!(" ({v})")).unwrap_or_default();
                out.push_str(&format!(
                    "suspicious {}{vendor}: {} frames, mean payload {:.0} B\n",
                    s.mac, s.frame_count, s.mean_payload
                ));
            }
            for v in &d.snooping {
                out.push_str(&format!(
                    "{} risk ratio {:.2} ({:.0} -> {:.0} B/s): {}\n",
                    v.mac,
                    v.risk_ratio,
                    v.first_half_bps,
                    v.second_half_bps,
                    if v.snooping { "SNOOPING" } else { "not snooping" }
                ));
            }
        }
        if let Some(l) = &self.localization {
            let e = &l.estimate;
            out.push_str(&format!(
                "azimuth {:.1} deg (quadrant {}), R_o {:.4}, T1 {:.3} s, T2 {:.3} s, extents {:.3} / {:.3}\n",
                e.theta_deg,
                u8::from(e.quadrant),
                e.orthogonal_ratio,
                l.measurement.t1_s,
                l.measurement.t2_s,
                l.extent_csi1,
                l.extent_csi3
            ));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

pub fn detect(capture: &Path, cfg: &RunConfig, oui: Option<&Path>) -> Result<RunReport, CliError> {
    cfg.detection.validate().map_err(input)?;
    let session = read_capture_file(capture).map_err(input)?;
    let mut report = RunReport::new("detect", vec![capture.display().to_string()], cfg.clone());
    if session.skipped > 0 {
        report.warnings.push(format!("{} truncated packets skipped", session.skipped));
    }
    if session.records.is_empty() {
        report.warnings.push("capture contains no frames".into());
    }
    let det = run_detection(&session, &cfg.detection);
    if let Some(path) = oui {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        let (table, warnings) = OuiTable::parse(&text);
        report.warnings.extend(warnings.into_iter().map(|w| format!("{}: {w}", path.display())));
        for s in det.suspicious.iter().filter(|s| s.suspicious) {
            report.vendors.insert(s.mac.to_string(), oui_lookup(&s.mac, &table));
        }
    }
    report.detection = Some(det);
    Ok(report)
}

/// Per-invocation overrides of the model parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModelOverrides {
    pub d: Option<f64>,
    pub body_size: Option<f64>,
    pub channel: Option<u32>,
}

fn read_trace(path: &Path) -> Result<(CsiHeader, CsiTrace), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    read_csi_jsonl_with_header(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn localize_files(paths: [&Path; 3], cfg: &RunConfig, ov: ModelOverrides) -> Result<RunReport, CliError> {
    let mut cfg = cfg.clone();
    if let Some(d) = ov.d {
        cfg.model.d = d;
    }
    if let Some(b) = ov.body_size {
        cfg.model.body_size = b;
    }
    if let Some(ch) = ov.channel {
        cfg.model.wavelength =
            wavelength_for_channel(ch).ok_or_else(|| input(format!("channel {ch} is not a 2.4 GHz channel (1-13)")))?;
    }
    if !cfg.model.is_valid() || cfg.model.d <= 0.0 {
        return Err(input(format!("invalid model parameters {:?}", cfg.model)));
    }
    let loaded = paths.map(read_trace);
    let [a, b, c] = loaded;
    let (a, b, c) = (a?, b?, c?);

    let mut report = RunReport::new("localize", paths.iter().map(|p| p.display().to_string()).collect(), cfg.clone());
    if ov.channel.is_none() {
        if let Some(lambda) = wavelength_for_channel(a.0.channel) {
            if (lambda - cfg.model.wavelength).abs() > 1e-3 {
                report.warnings.push(format!(
                    "traces report channel {} but wavelength {:.4} m is assumed; pass --channel to use it",
                    a.0.channel, cfg.model.wavelength
                ));
            }
        }
    }
    if a.0.mac != b.0.mac || a.0.mac != c.0.mac {
        report.warnings.push("CSI files name different transmitters".into());
    }
    let loc = localize([&a.1, &b.1, &c.1], &cfg.model, &cfg.processing, cfg.t_q).map_err(|e| match e {
        LocalizeError::Signal(_) => CliError::Signal(e.to_string()),
        LocalizeError::Model(_) => CliError::Signal(e.to_string()),
    })?;
    if loc.estimate.clamped {
        report.warnings.push(format!(
            "orthogonal ratio {:.4} is outside the model range; azimuth clamped",
            loc.estimate.orthogonal_ratio
        ));
    }
    if loc.measurement.long_window_corrected {
        report.warnings.push("Path 1 window is long; duration inflated by delta".into());
    }
    report.localization = Some(loc);
    Ok(report)
}

pub const SIM_FILES: [&str; 5] = ["csi1.jsonl", "csi2.jsonl", "csi3.jsonl", "capture.jsonl", "truth.json"];

/// Simulate a scenario file into `out_dir` and return the ground truth.
pub fn simulate_to_dir(scenario: &Path, out_dir: &Path, seed: u64) -> Result<GroundTruth, CliError> {
    let text = std::fs::read_to_string(scenario).map_err(|e| input(format!("{}: {e}", scenario.display())))?;
    let cfg = ScenarioConfig::from_json(&text).map_err(input)?;
    let out = simulate_scenario(&cfg, seed).map_err(input)?;
    std::fs::create_dir_all(out_dir).map_err(|e| input(format!("{}: {e}", out_dir.display())))?;
    let truth = serde_json::to_string_pretty(&out.truth).map_err(input)? + "\n";
    let contents = [&out.csi[0], &out.csi[1], &out.csi[2], &out.capture, &truth];
    for (name, body) in SIM_FILES.iter().zip(contents) {
        let p = out_dir.join(name);
        std::fs::write(&p, body).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    Ok(out.truth)
}
