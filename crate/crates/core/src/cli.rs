//! The `qbsim` command line.
//!
//! Exit codes: 0 success, 1 computation failure, 2 invalid input, 3 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{ModelError, SweepError};
use crate::metrics::{
    capacity_closed_form, efficiency, CapacityMode, ChargedBattery, ErgotropyBreakdown,
};
use crate::model::{ChargeAxis, ExchangeScale, ModelParams, SpinConvention};
use crate::output::{sweep_csv, sweep_svg, RunManifest};
use crate::sweep::{
    detect_threshold, evaluate_metric, figure_preset, parse_sweep_toml, refine_threshold,
    run_sweep_with_threads, FigureId, FigureKind, SweepConfig, SweepResult, ThresholdReport,
};
use crate::tolerances::THRESHOLD_REFINE_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qbsim", version, about = "Two-spin Heisenberg quantum battery simulator")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "QBSIM_THREADS")]
    threads: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    #[value(name = "csv+svg")]
    CsvSvg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regenerate one figure panel (f2a … f11c).
    Figure {
        #[arg(long)]
        id: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every figure of merit at one parameter point and time.
    Metrics(MetricsArgs),
    /// Run a sweep described by a TOML file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        json: bool,
    },
    /// List the figure presets.
    Presets {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelPreset {
    Xx,
    Xy,
    Xxz,
    Xyz,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    /// Sets γ and Δ for a Heisenberg subfamily; Δ takes the sign of J.
    #[arg(long, value_enum)]
    model: Option<ModelPreset>,
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    dz: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gz: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    temperature: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    #[arg(long)]
    axis: Option<ChargeAxis>,
    /// Charging phase Ωt.
    #[arg(long = "omega-t", default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
    omega_t: f64,
    #[arg(long)]
    exchange: Option<ExchangeScale>,
    #[arg(long)]
    convention: Option<SpinConvention>,
    #[arg(long)]
    json: bool,
}

impl MetricsArgs {
    fn params(&self) -> ModelParams {
        let mut p = ModelParams::default();
        if let Some(j) = self.j {
            p.j = j;
        }
        if let Some(model) = self.model {
            let sign = if p.j < 0.0 { -1.0 } else { 1.0 };
            let (gamma, delta) = match model {
                ModelPreset::Xx => (0.0, 0.0),
                ModelPreset::Xy => (0.5, 0.0),
                ModelPreset::Xxz => (0.0, 0.5),
                ModelPreset::Xyz => (0.5, 0.5),
            };
            p.gamma = gamma;
            p.delta = sign * delta;
        }
        let fields = [
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("dz", self.dz),
            ("gz", self.gz),
            ("b", self.b),
            ("theta", self.theta),
            ("temperature", self.temperature),
            ("omega", self.omega),
        ];
        for (name, value) in fields {
            if let Some(v) = value {
                p.set(name, v);
            }
        }
        if let Some(a) = self.axis {
            p.axis = a;
        }
        if let Some(e) = self.exchange {
            p.exchange = e;
        }
        if let Some(c) = self.convention {
            p.convention = c;
        }
        p
    }
}

fn flag_for(field: &str) -> String {
    match field {
        "j" => "--J".into(),
        "temperature" => "--T".into(),
        other => format!("--{other}"),
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout(), std::io::stderr());
    run_with(args, &mut out, &mut err)
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command_line: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut io = Io { out, err };
    let threads = cli.threads;
    match cli.command {
        Command::Figure { id, out, format, json } => cmd_figure(&mut io, &id, &out, format, json, threads, command_line),
        Command::Metrics(args) => cmd_metrics(&mut io, &args),
        Command::Sweep {
            config,
            out,
            format,
            json,
        } => cmd_sweep(&mut io, &config, &out, format, json, threads, command_line),
        Command::Presets { json } => cmd_presets(&mut io, json),
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    id: String,
    metric: String,
    shape: (usize, usize),
    max_value: f64,
    argmax: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<ThresholdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold_note: Option<String>,
    outputs: Vec<PathBuf>,
}

fn threshold_of(config: &SweepConfig, result: &SweepResult) -> Result<ThresholdReport, SweepError> {
    let coarse = detect_threshold(&result.axes[0].values, &result.values)?;
    Ok(refine_threshold(
        &coarse,
        |x| {
            let (p, phase) = config.point(&[x]);
            evaluate_metric(&p, config.metric, phase, config.time_window).unwrap_or(f64::NAN)
        },
        THRESHOLD_REFINE_TOL,
    ))
}

fn write_outputs(
    io: &mut Io<'_>,
    label: &str,
    config: &SweepConfig,
    result: &SweepResult,
    dir: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>, i32> {
    let io_fail = |io: &mut Io<'_>, path: &Path, e: std::io::Error| {
        let _ = writeln!(io.err, "error: cannot write {}: {e}", path.display());
        EXIT_IO
    };
    std::fs::create_dir_all(dir).map_err(|e| io_fail(io, dir, e))?;
    let csv_path = dir.join(format!("{label}.csv"));
    std::fs::write(&csv_path, sweep_csv(label, config, result)).map_err(|e| io_fail(io, &csv_path, e))?;
    let mut outputs = vec![csv_path];
    if format == OutputFormat::CsvSvg {
        let svg_path = dir.join(format!("{label}.svg"));
        std::fs::write(&svg_path, sweep_svg(label, result)).map_err(|e| io_fail(io, &svg_path, e))?;
        outputs.push(svg_path);
    }
    Ok(outputs)
}

fn sweep_and_report(
    io: &mut Io<'_>,
    label: &str,
    config: &SweepConfig,
    dir: &Path,
    format: OutputFormat,
    json: bool,
    threads: Option<usize>,
    command_line: Vec<String>,
    with_threshold: bool,
) -> i32 {
    let started = Instant::now();
    let result = match run_sweep_with_threads(config, threads) {
        Ok(r) => r,
        Err(e @ SweepError::InvalidConfig(_)) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_COMPUTE;
        }
    };
    let mut outputs = match write_outputs(io, label, config, &result, dir, format) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let manifest = RunManifest::new(command_line, config, outputs.clone(), started.elapsed().as_secs_f64());
    match manifest.write(dir) {
        Ok(paths) => outputs.extend(paths),
        Err(e) => {
            let _ = writeln!(io.err, "error: cannot write manifest in {}: {e}", dir.display());
            return EXIT_IO;
        }
    }

    let (i, j, max_value) = result.argmax();
    let argmax = result
        .axes
        .iter()
        .map(|a| a.name.clone())
        .zip(result.coords(i, j))
        .collect();
    let (threshold, threshold_note) = if with_threshold {
        match threshold_of(config, &result) {
            Ok(t) => (Some(t), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let summary = Summary {
        id: label.to_string(),
        metric: config.metric.to_string(),
        shape: result.shape(),
        max_value,
        argmax,
        threshold,
        threshold_note,
        outputs,
    };
    print_summary(io, &summary, &config.axis1.name, json);
    EXIT_OK
}

fn print_summary(io: &mut Io<'_>, s: &Summary, axis1: &str, json: bool) {
    if json {
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(s).unwrap_or_default());
        return;
    }
    let _ = writeln!(io.out, "{} ({}), grid {}×{}", s.id, s.metric, s.shape.0, s.shape.1);
    let coords: Vec<String> = s.argmax.iter().map(|(n, x)| format!("{n}={x:.6}")).collect();
    let _ = writeln!(io.out, "max {:.9} at {}", s.max_value, coords.join(", "));
    if let Some(t) = &s.threshold {
        let _ = writeln!(
            io.out,
            "threshold_{axis1} = {:.4} (window [{:.4}, {:.4}], peak {:.6}, post mean {:.3e})",
            t.threshold_x, t.window[0], t.window[1], t.pre_peak, t.post_mean
        );
    }
    if let Some(note) = &s.threshold_note {
        let _ = writeln!(io.out, "threshold_{axis1}: none ({note})");
    }
    for p in &s.outputs {
        let _ = writeln!(io.out, "wrote {}", p.display());
    }
}

fn cmd_figure(
    io: &mut Io<'_>,
    id: &str,
    out: &Path,
    format: OutputFormat,
    json: bool,
    threads: Option<usize>,
    command_line: Vec<String>,
) -> i32 {
    let fid: FigureId = match id.parse() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}; run `qbsim presets` for the list");
            return EXIT_USAGE;
        }
    };
    let config = figure_preset(fid);
    let label = fid.to_string();
    let with_threshold = fid.kind() == FigureKind::Curve;
    sweep_and_report(io, &label, &config, out, format, json, threads, command_line, with_threshold)
}

fn cmd_sweep(
    io: &mut Io<'_>,
    path: &Path,
    out: &Path,
    format: OutputFormat,
    json: bool,
    threads: Option<usize>,
    command_line: Vec<String>,
) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(io.err, "error: cannot read {}: {e}", path.display());
            return EXIT_IO;
        }
    };
    let config = match parse_sweep_toml(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(io.err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let label = path
        .file_stem()
        .map_or_else(|| "sweep".to_string(), |s| s.to_string_lossy().into_owned());
    let with_threshold = config.axis2.is_none();
    sweep_and_report(io, &label, &config, out, format, json, threads, command_line, with_threshold)
}

fn cmd_presets(io: &mut Io<'_>, json: bool) -> i32 {
    if json {
        let list: Vec<_> = FigureId::all()
            .into_iter()
            .map(|id| json!({ "id": id.to_string(), "description": id.description() }))
            .collect();
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&list).unwrap_or_default());
    } else {
        for id in FigureId::all() {
            let _ = writeln!(io.out, "{}", id.description());
        }
    }
    EXIT_OK
}

fn opt(v: Option<f64>) -> serde_json::Value {
    v.filter(|x| x.is_finite()).map_or(serde_json::Value::Null, |x| json!(x))
}

fn cmd_metrics(io: &mut Io<'_>, args: &MetricsArgs) -> i32 {
    let params = args.params();
    if let Err(e) = params.validate() {
        let flag = match &e {
            ModelError::InvalidParameter { name, .. } => flag_for(name),
            _ => String::new(),
        };
        let _ = writeln!(io.err, "error: {flag}: {e}");
        return EXIT_USAGE;
    }
    if !args.omega_t.is_finite() || args.omega_t < 0.0 {
        let _ = writeln!(io.err, "error: --omega-t: phase must be finite and ≥ 0");
        return EXIT_USAGE;
    }
    let battery = match ChargedBattery::new(&params) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_COMPUTE;
        }
    };
    let t = args.omega_t / params.omega;
    let rho = battery.state_at(t);
    let energy = |m: &crate::linalg::ComplexMatrix| m.trace_product(&battery.hamiltonian).map(|z| z.re).unwrap_or(f64::NAN);
    let e_charged = energy(rho.matrix());
    let e_thermal = energy(battery.rho_th.matrix());
    let ErgotropyBreakdown {
        spectral,
        trace_formula,
        closed_form,
        agreement,
    } = match battery.breakdown(t) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_COMPUTE;
        }
    };
    let work = trace_formula;
    let power = (t > 0.0).then(|| work / t);
    let eta = efficiency(work, spectral).ok();
    let k_literal = battery.capacity(CapacityMode::Literal11).ok();
    let k_top = battery.capacity(CapacityMode::TopEigenstate).ok();
    let k_closed = capacity_closed_form(&params).ok();
    let coherence = crate::metrics::l1_coherence(&rho);

    if args.json {
        let value = json!({
            "params": params,
            "omega_t": args.omega_t,
            "time": t,
            "energy": { "thermal": e_thermal, "charged": e_charged },
            "ergotropy": {
                "spectral": spectral,
                "trace_formula": trace_formula,
                "closed_form": opt(closed_form),
                "agreement": agreement,
            },
            "work": work,
            "power": opt(power),
            "efficiency": opt(eta.map(|e| e.value)),
            "efficiency_exceeds_unity": eta.map(|e| e.exceeds_unity),
            "capacity": {
                "literal11": opt(k_literal),
                "top_eigenstate": opt(k_top),
                "closed_form": opt(k_closed),
            },
            "coherence": coherence,
        });
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&value).unwrap_or_default());
        return EXIT_OK;
    }
    let show = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.12}"));
    let rows = [
        ("omega_t", Some(args.omega_t)),
        ("energy_thermal", Some(e_thermal)),
        ("energy_charged", Some(e_charged)),
        ("ergotropy_spectral", Some(spectral)),
        ("ergotropy_trace", Some(trace_formula)),
        ("ergotropy_closed", closed_form),
        ("ergotropy_agreement", Some(agreement)),
        ("work", Some(work)),
        ("power", power),
        ("efficiency", eta.map(|e| e.value)),
        ("capacity_literal11", k_literal),
        ("capacity_top", k_top),
        ("capacity_closed", k_closed),
        ("coherence_l1", Some(coherence)),
    ];
    for (name, v) in rows {
        let _ = writeln!(io.out, "{name:<20} {}", show(v));
    }
    if eta.is_some_and(|e| e.exceeds_unity) {
        let _ = writeln!(io.err, "warning: efficiency exceeds 1");
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["qbsim"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_figure_is_usage_error() {
        let (code, _, err) = run_capture(&["figure", "--id", "f0x"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("f0x"));
    }

    #[test]
    fn zero_temperature_names_flag() {
        let (code, _, err) = run_capture(&["metrics", "--T", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--T"));
        assert!(err.contains("temperature must be > 0"));
    }

    #[test]
    fn bad_flag_is_usage_error() {
        assert_eq!(run_capture(&["metrics", "--nope", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["figure", "--id", "f2a", "--format", "png"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn metrics_model_presets() {
        let a = MetricsArgs::parse_from_for_test(&["--model", "xyz", "--J", "-1"]);
        let p = a.params();
        assert_eq!((p.j, p.gamma, p.delta), (-1.0, 0.5, -0.5));
        let a = MetricsArgs::parse_from_for_test(&["--model", "xxz", "--delta", "0.2"]);
        assert_eq!(a.params().delta, 0.2);
    }

    #[test]
    fn metrics_zero_phase() {
        let (code, out, _) = run_capture(&["metrics", "--model", "xyz", "--omega-t", "0", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["ergotropy"]["trace_formula"].as_f64().unwrap().abs() < 1e-15);
        assert!(v["power"].is_null());
    }

    impl MetricsArgs {
        fn parse_from_for_test(args: &[&str]) -> Self {
            #[derive(Parser)]
            struct Wrap {
                #[command(flatten)]
                m: MetricsArgs,
            }
            let mut full = vec!["x"];
            full.extend_from_slice(args);
            Wrap::parse_from(full).m
        }
    }
}
