//! TOML form of a sweep configuration:
//!
//! ```toml
//! [base]
//! j = 1.0
//! temperature = 0.1
//!
//! [axis1]
//! name = "omega_t"
//! min = 0.0
//! max = 3.14159
//! steps = 11
//!
//! [metric]
//! kind = "ergotropy"
//! time_window = [0.0, 6.283185307179586]
//! omega_t = 1.5707963267948966
//! ```

use serde::{Deserialize, Serialize};

use super::{AxisSpec, Metric, SweepConfig};
use crate::error::SweepError;
use crate::model::{ModelParams, PARAM_NAMES};

const SECTIONS: [&str; 4] = ["base", "axis1", "axis2", "metric"];
const BASE_EXTRA: [&str; 3] = ["axis", "exchange", "convention"];
const AXIS_KEYS: [&str; 4] = ["name", "min", "max", "steps"];
const METRIC_KEYS: [&str; 3] = ["kind", "time_window", "omega_t"];

#[derive(Debug, Serialize, Deserialize)]
struct MetricSection {
    kind: Metric,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    time_window: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega_t: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileSchema {
    #[serde(default)]
    base: ModelParams,
    axis1: AxisSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axis2: Option<AxisSpec>,
    metric: MetricSection,
}

fn unknown_keys(table: &toml::Table) -> Vec<String> {
    let mut bad = Vec::new();
    for (key, value) in table {
        let allowed: Vec<&str> = match key.as_str() {
            "base" => PARAM_NAMES.iter().chain(&BASE_EXTRA).copied().collect(),
            "axis1" | "axis2" => AXIS_KEYS.to_vec(),
            "metric" => METRIC_KEYS.to_vec(),
            _ => {
                bad.push(key.clone());
                continue;
            }
        };
        if let Some(section) = value.as_table() {
            bad.extend(
                section
                    .keys()
                    .filter(|k| !allowed.contains(&k.as_str()))
                    .map(|k| format!("{key}.{k}")),
            );
        }
    }
    bad
}

/// Parses and validates a sweep configuration, naming every unknown key.
pub fn parse_sweep_toml(text: &str) -> Result<SweepConfig, SweepError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| SweepError::InvalidConfig(e.message().to_string()))?;
    let bad = unknown_keys(&table);
    if !bad.is_empty() {
        return Err(SweepError::InvalidConfig(format!(
            "unknown keys: {} (sections are {})",
            bad.join(", "),
            SECTIONS.join(", ")
        )));
    }
    let file: FileSchema = table
        .try_into()
        .map_err(|e: toml::de::Error| SweepError::InvalidConfig(e.message().to_string()))?;
    let mut config = SweepConfig::new(file.base, file.axis1, file.axis2, file.metric.kind);
    if let Some(w) = file.metric.time_window {
        config.time_window = w;
    }
    if let Some(p) = file.metric.omega_t {
        config.omega_t = p;
    }
    config.validate()?;
    Ok(config)
}

/// Serializes a configuration so that [`parse_sweep_toml`] reproduces it exactly.
pub fn sweep_to_toml(config: &SweepConfig) -> String {
    let file = FileSchema {
        base: config.base,
        axis1: config.axis1.clone(),
        axis2: config.axis2.clone(),
        metric: MetricSection {
            kind: config.metric,
            time_window: Some(config.time_window),
            omega_t: Some(config.omega_t),
        },
    };
    toml::to_string(&file).expect("sweep configuration is representable as TOML")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{figure_preset, FigureId, OMEGA_T};

    const MINIMAL: &str = r#"
[axis1]
name = "omega_t"
min = 0.0
max = 3.0
steps = 11

[metric]
kind = "ergotropy"
"#;

    #[test]
    fn minimal_config() {
        let cfg = parse_sweep_toml(MINIMAL).unwrap();
        assert_eq!(cfg.axis1.name, OMEGA_T);
        assert_eq!(cfg.axis1.steps, 11);
        assert_eq!(cfg.base, ModelParams::default());
        assert!(cfg.axis2.is_none());
    }

    #[test]
    fn lists_every_unknown_key() {
        let text = format!("{MINIMAL}\nbogus = 1\n[base]\nJ = 1.0\nfoo = 2\n[extra]\nx = 1\n");
        let err = parse_sweep_toml(&text).unwrap_err().to_string();
        for key in ["metric.bogus", "base.J", "base.foo", "extra"] {
            assert!(err.contains(key), "{err} should name {key}");
        }
    }

    #[test]
    fn rejects_bad_values() {
        let err = parse_sweep_toml(&MINIMAL.replace("steps = 11", "steps = 1")).unwrap_err();
        assert!(err.to_string().contains("steps"));
        assert!(parse_sweep_toml(&MINIMAL.replace("ergotropy", "entropy")).is_err());
        assert!(parse_sweep_toml("[axis1\n").is_err());
    }

    #[test]
    fn presets_round_trip() {
        for id in ["f2a", "f5d", "f10b", "f11c"] {
            let cfg = figure_preset(id.parse::<FigureId>().unwrap());
            let back = parse_sweep_toml(&sweep_to_toml(&cfg)).unwrap();
            assert_eq!(back, cfg, "{id}");
        }
    }
}
