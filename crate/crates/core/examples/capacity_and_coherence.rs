//! Battery capacity and the l1-coherence of the charged state.

use qbsim::metrics::{capacity_closed_form, CapacityMode, ChargedBattery};
use qbsim::model::ModelParams;
use qbsim::sweep::{maximize_over_time, Metric};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for dz in [0.0, 1.0, 2.0, 3.0] {
        let params = ModelParams {
            gamma: 0.5,
            delta: 0.5,
            dz,
            theta: std::f64::consts::FRAC_PI_2,
            temperature: 0.1,
            ..ModelParams::default()
        };
        let battery = ChargedBattery::new(&params)?;
        let (phase, q) = maximize_over_time(&params, Metric::CoherenceMax, [0.0, std::f64::consts::TAU])?;
        println!(
            "D_z={dz:.1}: K={:.6} (closed {:.6}, top-eigenstate {:.6}), max C_l1={q:.4} at Ωt={phase:.4}",
            battery.capacity(CapacityMode::Literal11)?,
            capacity_closed_form(&params)?,
            battery.capacity(CapacityMode::TopEigenstate)?,
        );
    }
    Ok(())
}
