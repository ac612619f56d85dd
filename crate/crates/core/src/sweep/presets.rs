use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use super::{AxisSpec, Metric, SweepConfig, OMEGA_T};
use crate::error::SweepError;
use crate::model::ModelParams;

const DENSITY_STEPS: usize = 101;
const CURVE_STEPS: usize = 400;

/// A figure panel such as `f2a` or `f11c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FigureId {
    pub figure: u8,
    pub panel: char,
}

/// How a figure's grid is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// ξ over (Ωt, parameter).
    TimeDensity,
    /// A time-maximized or time-free metric along D_z.
    Curve,
    /// A time-maximized metric over (D_z, G_z).
    ParameterDensity,
}

impl FigureId {
    fn panels(figure: u8) -> &'static [char] {
        match figure {
            2..=8 => &['a', 'b', 'c', 'd'],
            9..=11 => &['a', 'b', 'c'],
            _ => &[],
        }
    }

    pub fn new(figure: u8, panel: char) -> Result<Self, SweepError> {
        let panel = panel.to_ascii_lowercase();
        if Self::panels(figure).contains(&panel) {
            Ok(Self { figure, panel })
        } else {
            Err(SweepError::UnknownFigure(format!("f{figure}{panel}")))
        }
    }

    /// Every known panel in figure order.
    pub fn all() -> Vec<FigureId> {
        (2..=11)
            .flat_map(|f| Self::panels(f).iter().map(move |&p| FigureId { figure: f, panel: p }))
            .collect()
    }

    pub fn kind(self) -> FigureKind {
        match self.figure {
            9 | 10 => FigureKind::Curve,
            11 => FigureKind::ParameterDensity,
            _ => FigureKind::TimeDensity,
        }
    }

    /// One-line description of the panel's parameters.
    pub fn description(self) -> String {
        let cfg = figure_preset(self);
        let p = cfg.base;
        let mut axes = format!("{} ∈ [{}, {}]", cfg.axis1.name, fmt_num(cfg.axis1.min), fmt_num(cfg.axis1.max));
        if let Some(a) = &cfg.axis2 {
            axes.push_str(&format!(" × {} ∈ [{}, {}]", a.name, fmt_num(a.min), fmt_num(a.max)));
        }
        format!(
            "{}: {} over {}; J={} Δ={} γ={} D_z={} G_z={} θ={} T={} Ω={}",
            self,
            cfg.metric,
            axes,
            fmt_num(p.j),
            fmt_num(p.delta),
            fmt_num(p.gamma),
            fmt_num(p.dz),
            fmt_num(p.gz),
            fmt_num(p.theta),
            fmt_num(p.temperature),
            fmt_num(p.omega),
        )
    }
}

fn fmt_num(x: f64) -> String {
    let named = [(PI, "π"), (2.0 * PI, "2π"), (FRAC_PI_2, "π/2"), (FRAC_PI_4, "π/4")];
    named
        .iter()
        .find(|(v, _)| (x - v).abs() < 1e-15)
        .map_or_else(|| format!("{x}"), |(_, s)| s.to_string())
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}{}", self.figure, self.panel)
    }
}

impl FromStr for FigureId {
    type Err = SweepError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SweepError::UnknownFigure(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let body = lower.strip_prefix('f').ok_or_else(unknown)?;
        let panel = body.chars().last().ok_or_else(unknown)?;
        let figure: u8 = body[..body.len() - panel.len_utf8()].parse().map_err(|_| unknown())?;
        FigureId::new(figure, panel).map_err(|_| unknown())
    }
}

/// (γ, Δ magnitude) for panels a–d: XX, XY, XXZ, XYZ.
fn heisenberg_case(panel: char) -> (f64, f64) {
    match panel {
        'a' => (0.0, 0.0),
        'b' => (0.5, 0.0),
        'c' => (0.0, 0.5),
        _ => (0.5, 0.5),
    }
}

fn panel_temperature(panel: char) -> f64 {
    match panel {
        'a' => 0.01,
        'b' => 0.1,
        _ => 1.0,
    }
}

/// The sweep that regenerates a figure panel.
pub fn figure_preset(id: FigureId) -> SweepConfig {
    let time_axis = AxisSpec::new(OMEGA_T, 0.0, 2.0 * PI, DENSITY_STEPS);
    match id.figure {
        2..=8 => {
            let ferro = matches!(id.figure, 3 | 5 | 8);
            let (gamma, delta) = heisenberg_case(id.panel);
            let base = ModelParams {
                j: if ferro { -1.0 } else { 1.0 },
                gamma,
                delta: if ferro { -delta } else { delta },
                theta: if ferro && id.figure != 3 { FRAC_PI_4 } else { 0.0 },
                temperature: 0.1,
                ..ModelParams::default()
            };
            let axis2 = match id.figure {
                2 | 3 => AxisSpec::new("theta", 0.0, FRAC_PI_2, DENSITY_STEPS),
                4 | 5 => AxisSpec::new("temperature", 0.01, 2.0, DENSITY_STEPS),
                6 => AxisSpec::new("gz", 0.0, 30.0, DENSITY_STEPS),
                _ => AxisSpec::new("dz", 0.0, 40.0, DENSITY_STEPS),
            };
            SweepConfig::new(base, time_axis, Some(axis2), Metric::Ergotropy)
        }
        _ => {
            let base = ModelParams {
                j: 1.0,
                gamma: 0.5,
                delta: 0.5,
                gz: 0.0,
                omega: 1.0,
                theta: FRAC_PI_2,
                temperature: panel_temperature(id.panel),
                ..ModelParams::default()
            };
            match id.figure {
                9 => SweepConfig::new(base, AxisSpec::new("dz", 0.0, 5.0, CURVE_STEPS), None, Metric::ErgotropyMax),
                10 => SweepConfig::new(base, AxisSpec::new("dz", 0.0, 5.0, CURVE_STEPS), None, Metric::Capacity),
                _ => SweepConfig::new(
                    base,
                    AxisSpec::new("dz", 0.0, 5.0, DENSITY_STEPS),
                    Some(AxisSpec::new("gz", 0.0, 5.0, DENSITY_STEPS)),
                    Metric::CoherenceMax,
                ),
            }
        }
    }
}
