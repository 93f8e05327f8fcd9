use anyhow::Context;
use azimuth_model::{ModelParams, DEFAULT_T_Q};
use csi_processing::ProcessingConfig;
use serde::{Deserialize, Serialize};
use std::path::Path;
use traffic_analysis::DetectionConfig;

fn d_t_q() -> f64 {
    DEFAULT_T_Q
}

/// Everything tunable, loadable from one JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub detection: DetectionConfig,
    #[serde(default)]
    pub processing: ProcessingConfig,
    #[serde(default)]
    pub model: ModelParams,
    #[serde(default = "d_t_q")]
    pub t_q: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            detection: DetectionConfig::default(),
            processing: ProcessingConfig::default(),
            model: ModelParams::default(),
            t_q: DEFAULT_T_Q,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<RunConfig> {
        let Some(path) = path else { return Ok(RunConfig::default()) };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        cfg.detection.validate().map_err(anyhow::Error::msg).context("detection config")?;
        if !cfg.model.is_valid() {
            anyhow::bail!("model parameters must be positive and finite");
        }
        if !(cfg.t_q > 0.0) {
            anyhow::bail!("t_q must be positive");
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file() {
        let dir = std::env::temp_dir().join(format!("camlopa-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.json");
        std::fs::write(&p, r#"{"detection": {"t_s": 350}, "model": {"d": 4.0, "body_size": 0.3, "wavelength": 0.125}}"#).unwrap();
        let c = RunConfig::load(Some(&p)).unwrap();
        assert_eq!(c.detection.t_s, 350.0);
        assert_eq!(c.detection.t_l, 150.0);
        assert_eq!(c.model.d, 4.0);
        assert_eq!(c.t_q, 0.6);
        std::fs::write(&p, r#"{"t_q": -1}"#).unwrap();
        assert!(RunConfig::load(Some(&p)).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
