//! Looks for a collapse of the maximal ergotropy along D_z, once with the exact
//! pipeline and once with the closed form evaluated literally in f64.

use qbsim::metrics::{ergotropy_closed_form_with, ClosedFormEval};
use qbsim::model::ModelParams;
use qbsim::optimize::linspace;
use qbsim::sweep::{detect_threshold, figure_preset, maximize_phase, refine_threshold, run_sweep, FigureId};
use qbsim::tolerances::THRESHOLD_REFINE_TOL;

fn literal_max(base: &ModelParams, dz: f64) -> f64 {
    let p = ModelParams { dz, ..*base };
    let f = |phase: f64| {
        ergotropy_closed_form_with(&p, phase / p.omega, ClosedFormEval::LiteralF64).unwrap_or(f64::NAN)
    };
    // NaN anywhere in the window is what a plot of the literal formula shows as a gap.
    let grid = linspace(0.0, std::f64::consts::TAU, 64);
    if grid.iter().any(|&x| f(x).is_nan()) {
        return f64::NAN;
    }
    maximize_phase(f, [0.0, std::f64::consts::TAU]).1
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = figure_preset("f9a".parse::<FigureId>()?);
    let result = run_sweep(&config)?;
    let xs = &result.axes[0].values;
    let ys = result.column(0);
    match detect_threshold(xs, &ys) {
        Ok(r) => println!("exact pipeline: threshold at D_z ≈ {:.4}", r.threshold_x),
        Err(e) => println!("exact pipeline: {e}"),
    }

    let literal: Vec<f64> = xs.iter().map(|&dz| literal_max(&config.base, dz)).collect();
    let coarse = detect_threshold(xs, &literal)?;
    let fine = refine_threshold(&coarse, |dz| literal_max(&config.base, dz), THRESHOLD_REFINE_TOL);
    println!(
        "literal f64 closed form: NaN from D_z ≈ {:.4} (coarse {:.4}, peak {:.4})",
        fine.threshold_x, coarse.threshold_x, coarse.pre_peak
    );
    Ok(())
}
