//! Parameter grids, time maximization, threshold detection and figure presets.

mod config_file;
mod presets;
mod threshold;

pub use config_file::{parse_sweep_toml, sweep_to_toml};
pub use presets::{figure_preset, FigureId, FigureKind};
pub use threshold::{detect_threshold, refine_threshold, ThresholdReport};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MetricsError, SweepError};
use crate::metrics::{average_power, CapacityMode, ChargedBattery};
use crate::model::{ModelParams, PARAM_NAMES};
use crate::optimize::{linspace, scan_then_refine};
use crate::tolerances::{GOLDEN_TOL, TIME_SCAN_POINTS};

/// Axis name that selects the charging phase Ωt instead of a model field.
pub const OMEGA_T: &str = "omega_t";

/// One grid axis: `steps` evenly spaced values of a named parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AxisSpec {
    pub fn new(name: &str, min: f64, max: f64, steps: usize) -> Self {
        Self {
            name: name.to_string(),
            min,
            max,
            steps,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.steps)
    }

    fn validate(&self, label: &str) -> Result<(), SweepError> {
        if self.name != OMEGA_T && !PARAM_NAMES.contains(&self.name.as_str()) {
            return Err(SweepError::InvalidConfig(format!(
                "{label}.name `{}` is not one of {OMEGA_T}, {}",
                self.name,
                PARAM_NAMES.join(", ")
            )));
        }
        if self.steps < 2 {
            return Err(SweepError::InvalidConfig(format!(
                "{label}.steps must be ≥ 2, got {}",
                self.steps
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(SweepError::InvalidConfig(format!(
                "{label} needs finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

/// Quantity evaluated at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// ξ at the point's phase.
    Ergotropy,
    /// max over the time window of ξ.
    ErgotropyMax,
    /// K with ρ_↑ = |11⟩⟨11|.
    Capacity,
    /// max over the time window of the l₁-coherence.
    CoherenceMax,
    /// Work against ρ_th at the point's phase.
    Work,
    /// Work divided by elapsed time.
    Power,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Ergotropy,
        Metric::ErgotropyMax,
        Metric::Capacity,
        Metric::CoherenceMax,
        Metric::Work,
        Metric::Power,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Ergotropy => "ergotropy",
            Metric::ErgotropyMax => "ergotropy_max",
            Metric::Capacity => "capacity",
            Metric::CoherenceMax => "coherence_max",
            Metric::Work => "work",
            Metric::Power => "power",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown metric `{s}`"))
    }
}

/// Everything needed to evaluate a metric over a 1-D or 2-D grid.
///
/// `time_window` and `omega_t` are phases Ωt; physical time is phase/Ω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub base: ModelParams,
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub metric: Metric,
    pub time_window: [f64; 2],
    /// Phase used by time-resolved metrics when no axis is `omega_t`.
    pub omega_t: f64,
}

impl SweepConfig {
    pub fn new(base: ModelParams, axis1: AxisSpec, axis2: Option<AxisSpec>, metric: Metric) -> Self {
        Self {
            base,
            axis1,
            axis2,
            metric,
            time_window: [0.0, 2.0 * std::f64::consts::PI],
            omega_t: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        self.axis1.validate("axis1")?;
        if let Some(a2) = &self.axis2 {
            a2.validate("axis2")?;
            if a2.name == self.axis1.name {
                return Err(SweepError::InvalidConfig(format!(
                    "axis1 and axis2 both sweep `{}`",
                    a2.name
                )));
            }
        }
        let [lo, hi] = self.time_window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(SweepError::InvalidConfig(format!(
                "time_window needs finite t_min < t_max, got [{lo}, {hi}]"
            )));
        }
        if !self.omega_t.is_finite() {
            return Err(SweepError::InvalidConfig("omega_t must be finite".into()));
        }
        self.base
            .validate()
            .map_err(|e| SweepError::InvalidConfig(format!("base: {e}")))
    }

    fn axes(&self) -> Vec<&AxisSpec> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref()).collect()
    }

    /// Parameters and phase at one grid point.
    pub fn point(&self, coords: &[f64]) -> (ModelParams, f64) {
        let mut params = self.base;
        let mut phase = self.omega_t;
        for (axis, &x) in self.axes().into_iter().zip(coords) {
            if axis.name == OMEGA_T {
                phase = x;
            } else {
                params.set(&axis.name, x);
            }
        }
        (params, phase)
    }
}

/// Evaluates `metric` at one parameter point and phase.
pub fn evaluate_metric(
    params: &ModelParams,
    metric: Metric,
    phase: f64,
    time_window: [f64; 2],
) -> Result<f64, MetricsError> {
    let battery = ChargedBattery::new(params)?;
    let omega = params.omega;
    Ok(match metric {
        Metric::Ergotropy | Metric::Work => battery.ergotropy_at(phase / omega),
        Metric::Power => {
            if phase <= 0.0 {
                0.0
            } else {
                average_power(battery.ergotropy_at(phase / omega), phase / omega)
            }
        }
        Metric::Capacity => battery.capacity(CapacityMode::Literal11)?,
        Metric::ErgotropyMax => maximize_phase(|p| battery.ergotropy_at(p / omega), time_window).1,
        Metric::CoherenceMax => maximize_phase(|p| battery.coherence_at(p / omega), time_window).1,
    })
}

/// Scan of `TIME_SCAN_POINTS` phases plus golden-section refinement.
pub fn maximize_phase<F: FnMut(f64) -> f64>(f: F, window: [f64; 2]) -> (f64, f64) {
    let grid = linspace(window[0], window[1], TIME_SCAN_POINTS);
    scan_then_refine(f, &grid, GOLDEN_TOL).unwrap_or((f64::NAN, f64::NAN))
}

/// Maximum of a time-resolved metric over a phase window; returns (Ωt*, value).
///
/// `ErgotropyMax`/`Ergotropy`/`Work` maximize ξ, `CoherenceMax` the
/// l₁-coherence and `Power` W/t. `Capacity` does not depend on time and is
/// returned at the window start.
pub fn maximize_over_time(
    params: &ModelParams,
    metric: Metric,
    window: [f64; 2],
) -> Result<(f64, f64), MetricsError> {
    let battery = ChargedBattery::new(params)?;
    let omega = params.omega;
    Ok(match metric {
        Metric::Ergotropy | Metric::ErgotropyMax | Metric::Work => {
            maximize_phase(|p| battery.ergotropy_at(p / omega), window)
        }
        Metric::CoherenceMax => maximize_phase(|p| battery.coherence_at(p / omega), window),
        Metric::Power => maximize_phase(
            |p| {
                if p > 0.0 {
                    average_power(battery.ergotropy_at(p / omega), p / omega)
                } else {
                    f64::NAN
                }
            },
            window,
        ),
        Metric::Capacity => (window[0], battery.capacity(CapacityMode::Literal11)?),
    })
}

/// Grid coordinates of one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisValues {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub metric: Metric,
    pub params: Vec<(String, String)>,
    pub tool_version: String,
    /// Seconds since the Unix epoch when the sweep finished.
    pub timestamp: u64,
}

/// Metric values on the grid, row-major with axis1 as the slow index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<AxisValues>,
    pub values: Vec<f64>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    /// (rows, cols); cols = 1 for a 1-D sweep.
    pub fn shape(&self) -> (usize, usize) {
        let rows = self.axes[0].values.len();
        let cols = self.axes.get(1).map_or(1, |a| a.values.len());
        (rows, cols)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.shape().1 + j]
    }

    /// Coordinates of grid point (i, j).
    pub fn coords(&self, i: usize, j: usize) -> Vec<f64> {
        let mut c = vec![self.axes[0].values[i]];
        if let Some(a) = self.axes.get(1) {
            c.push(a.values[j]);
        }
        c
    }

    /// Largest value with its grid indices.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let cols = self.shape().1;
        let (k, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &v)| if v > best.1 { (k, v) } else { best });
        (k / cols, k % cols, v)
    }

    /// The values along axis1 at column `j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.shape().0).map(|i| self.get(i, j)).collect()
    }
}

fn format_coords(names: &[&str], coords: &[f64]) -> String {
    names
        .iter()
        .zip(coords)
        .map(|(n, x)| format!("{n}={x}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn compute_row(config: &SweepConfig, x1: f64, cols: &[Option<f64>]) -> Result<Vec<f64>, SweepError> {
    let names: Vec<&str> = config.axes().iter().map(|a| a.name.as_str()).collect();
    cols.iter()
        .map(|x2| {
            let coords: Vec<f64> = std::iter::once(x1).chain(*x2).collect();
            let (params, phase) = config.point(&coords);
            let v = evaluate_metric(&params, config.metric, phase, config.time_window).map_err(|source| {
                SweepError::Metric {
                    coords: format_coords(&names, &coords),
                    source,
                }
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(SweepError::Metric {
                    coords: format_coords(&names, &coords),
                    source: MetricsError::InvalidInput(format!("non-finite value {v}")),
                })
            }
        })
        .collect()
}

/// Evaluates the configured metric at every grid point.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult, SweepError> {
    run_sweep_with_threads(config, None)
}

/// As [`run_sweep`], on a dedicated pool of `threads` workers when given.
///
/// Rows are computed independently and assembled in row order, so the
/// values do not depend on the number of workers.
pub fn run_sweep_with_threads(config: &SweepConfig, threads: Option<usize>) -> Result<SweepResult, SweepError> {
    config.validate()?;
    let xs = config.axis1.values();
    let cols: Vec<Option<f64>> = match &config.axis2 {
        Some(a) => a.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let work = || -> Result<Vec<Vec<f64>>, SweepError> {
        xs.par_iter().map(|&x1| compute_row(config, x1, &cols)).collect()
    };
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SweepError::InvalidConfig(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    let mut axes = vec![AxisValues {
        name: config.axis1.name.clone(),
        values: xs,
    }];
    if let Some(a) = &config.axis2 {
        axes.push(AxisValues {
            name: a.name.clone(),
            values: a.values(),
        });
    }
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    Ok(SweepResult {
        axes,
        values: rows.into_iter().flatten().collect(),
        metadata: SweepMetadata {
            metric: config.metric,
            params: config
                .base
                .snapshot()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        },
    })
}
