use std::fmt::Write as _;

use crate::sweep::SweepResult;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 90.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

// viridis at 0, 0.25, 0.5, 0.75, 1
const PALETTE: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn color(u: f64) -> String {
    let u = if u.is_finite() { u.clamp(0.0, 1.0) } else { 0.0 };
    let pos = u * (PALETTE.len() - 1) as f64;
    let k = (pos.floor() as usize).min(PALETTE.len() - 2);
    let f = pos - k as f64;
    let (a, b) = (PALETTE[k], PALETTE[k + 1]);
    let mix = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn finite_range(values: &[f64]) -> (f64, f64) {
    let (lo, hi) = values
        .iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Heatmap for 2-D sweeps (axis1 horizontal), polyline for 1-D sweeps.
pub fn sweep_svg(title: &str, result: &SweepResult) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let xs = &result.axes[0].values;
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let (vmin, vmax) = finite_range(&result.values);

    match result.axes.get(1) {
        Some(yaxis) => {
            let ys = &yaxis.values;
            let (nx, ny) = (xs.len() as f64, ys.len() as f64);
            let (cw, ch) = (pw / nx, ph / ny);
            for i in 0..xs.len() {
                for j in 0..ys.len() {
                    let v = result.get(i, j);
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                        LEFT + i as f64 * cw,
                        TOP + ph - (j as f64 + 1.0) * ch,
                        cw + 0.05,
                        ch + 0.05,
                        color((v - vmin) / (vmax - vmin))
                    );
                }
            }
            // colour bar
            let bx = LEFT + pw + 20.0;
            for k in 0..50 {
                let u = k as f64 / 49.0;
                let _ = writeln!(
                    s,
                    r#"<rect x="{bx:.3}" y="{:.3}" width="16" height="{:.3}" fill="{}"/>"#,
                    TOP + ph * (1.0 - (k as f64 + 1.0) / 50.0),
                    ph / 50.0 + 0.05,
                    color(u)
                );
            }
            let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">{vmax:.4}</text>"#, bx + 20.0, TOP + 10.0);
            let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}">{vmin:.4}</text>"#, bx + 20.0, TOP + ph);
            let (y0, y1) = (ys[0], ys[ys.len() - 1]);
            axis_labels(&mut s, &result.axes[0].name, x0, x1, &yaxis.name, y0, y1);
        }
        None => {
            let points: Vec<String> = xs
                .iter()
                .zip(&result.values)
                .filter(|(_, v)| v.is_finite())
                .map(|(&x, &v)| {
                    format!(
                        "{:.3},{:.3}",
                        LEFT + pw * (x - x0) / (x1 - x0),
                        TOP + ph * (1.0 - (v - vmin) / (vmax - vmin))
                    )
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline fill="none" stroke="#21918c" stroke-width="1.5" points="{}"/>"##,
                points.join(" ")
            );
            let metric = result.metadata.metric.to_string();
            axis_labels(&mut s, &result.axes[0].name, x0, x1, &metric, vmin, vmax);
        }
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    s.push_str("</svg>\n");
    s
}

fn axis_labels(s: &mut String, xname: &str, x0: f64, x1: f64, yname: &str, y0: f64, y1: f64) {
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let base = TOP + ph;
    let _ = writeln!(s, r#"<text x="{LEFT}" y="{:.3}" text-anchor="middle">{x0:.4}</text>"#, base + 16.0);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{x1:.4}</text>"#, LEFT + pw, base + 16.0);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, base + 36.0, escape(xname));
    let _ = writeln!(s, r#"<text x="{:.3}" y="{base:.3}" text-anchor="end">{y0:.4}</text>"#, LEFT - 6.0);
    let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{y1:.4}</text>"#, LEFT - 6.0, TOP + 10.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.3}" text-anchor="middle" transform="rotate(-90 16 {:.3})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(yname)
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::sweep::{run_sweep, AxisSpec, Metric, SweepConfig, OMEGA_T};

    #[test]
    fn palette_ends() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
        assert_eq!(color(f64::NAN), "#440154");
    }

    #[test]
    fn heatmap_and_line() {
        let cfg = SweepConfig::new(
            ModelParams::default(),
            AxisSpec::new(OMEGA_T, 0.0, 3.0, 4),
            Some(AxisSpec::new("theta", 0.0, 1.0, 3)),
            Metric::Ergotropy,
        );
        let svg = sweep_svg("demo <1>", &run_sweep(&cfg).unwrap());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("demo &lt;1&gt;"));
        assert!(svg.matches("<rect").count() >= 12);

        let line = SweepConfig::new(
            ModelParams::default(),
            AxisSpec::new("dz", 0.0, 1.0, 5),
            None,
            Metric::Capacity,
        );
        let svg = sweep_svg("line", &run_sweep(&line).unwrap());
        assert!(svg.contains("<polyline"));
    }
}
