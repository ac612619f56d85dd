use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::sweep::{sweep_to_toml, SweepConfig};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const CONFIG_FILE: &str = "config.toml";

/// What was run and what it produced. Written next to every output set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    /// The sweep configuration in the format read by `qbsim sweep`.
    pub config_toml: String,
    pub outputs: Vec<PathBuf>,
    pub tool_version: String,
    pub wall_time_seconds: f64,
}

impl RunManifest {
    pub fn new(command: Vec<String>, config: &SweepConfig, outputs: Vec<PathBuf>, wall_time_seconds: f64) -> Self {
        Self {
            command,
            config_toml: sweep_to_toml(config),
            outputs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds,
        }
    }

    /// Writes `manifest.json` and `config.toml` into `dir`; returns their paths.
    pub fn write(&self, dir: &Path) -> std::io::Result<[PathBuf; 2]> {
        let manifest = dir.join(MANIFEST_FILE);
        let config = dir.join(CONFIG_FILE);
        let json = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(&manifest, json + "\n")?;
        std::fs::write(&config, &self.config_toml)?;
        Ok([manifest, config])
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{figure_preset, parse_sweep_toml, FigureId};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = figure_preset("f9b".parse::<FigureId>().unwrap());
        let m = RunManifest::new(vec!["qbsim".into(), "figure".into()], &cfg, vec!["f9b.csv".into()], 0.5);
        let [json, toml_path] = m.write(dir.path()).unwrap();
        assert_eq!(RunManifest::read(&json).unwrap(), m);
        let text = std::fs::read_to_string(toml_path).unwrap();
        assert_eq!(parse_sweep_toml(&text).unwrap(), cfg);
    }
}
