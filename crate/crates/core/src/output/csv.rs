use std::fmt::Write as _;

use crate::sweep::{SweepConfig, SweepResult};

/// 17 significant digits in scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// A `# key=value` header (no timestamp) followed by one row per grid point.
///
/// The body depends only on the configuration and the values, so identical
/// inputs give byte-identical files.
pub fn sweep_csv(label: &str, config: &SweepConfig, result: &SweepResult) -> String {
    let mut out = String::new();
    let mut meta = |k: &str, v: String| {
        let _ = writeln!(out, "# {k}={v}");
    };
    meta("id", label.to_string());
    meta("tool", format!("qbsim {}", result.metadata.tool_version));
    meta("metric", config.metric.to_string());
    for (key, axis) in [("axis1", Some(&config.axis1)), ("axis2", config.axis2.as_ref())] {
        if let Some(a) = axis {
            meta(
                key,
                format!("{}:{}:{}:{}", a.name, format_value(a.min), format_value(a.max), a.steps),
            );
        }
    }
    meta(
        "time_window",
        format!("{}:{}", format_value(config.time_window[0]), format_value(config.time_window[1])),
    );
    meta("omega_t", format_value(config.omega_t));
    for (k, v) in config.base.snapshot() {
        meta(k, v);
    }

    let names: Vec<&str> = result.axes.iter().map(|a| a.name.as_str()).collect();
    let _ = writeln!(out, "{},value", names.join(","));
    let (rows, cols) = result.shape();
    for i in 0..rows {
        for j in 0..cols {
            let coords: Vec<String> = result.coords(i, j).into_iter().map(format_value).collect();
            let _ = writeln!(out, "{},{}", coords.join(","), format_value(result.get(i, j)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::sweep::{run_sweep, AxisSpec, Metric, OMEGA_T};

    #[test]
    fn layout() {
        let cfg = SweepConfig::new(
            ModelParams::default(),
            AxisSpec::new(OMEGA_T, 0.0, 1.0, 3),
            Some(AxisSpec::new("theta", 0.0, 0.5, 2)),
            Metric::Ergotropy,
        );
        let res = run_sweep(&cfg).unwrap();
        let csv = sweep_csv("demo", &cfg, &res);
        assert!(!csv.contains('\r'));
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "omega_t,theta,value");
        assert_eq!(body.len(), 1 + 6);
        assert!(body[1].starts_with("0.0000000000000000e0,0.0000000000000000e0,"));
        assert!(csv.contains("# metric=ergotropy\n"));
        assert!(csv.contains("# temperature=1.0000000000000001e-1\n"));
    }

    #[test]
    fn value_format() {
        assert_eq!(format_value(0.1), "1.0000000000000001e-1");
        assert_eq!(format_value(-2.5), "-2.5000000000000000e0");
    }
}
