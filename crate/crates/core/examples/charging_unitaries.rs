//! Charging unitaries: matrix exponential against the assembled closed forms.

use std::f64::consts::FRAC_PI_2;

use qbsim::charger::{charging_unitary_closed, charging_unitary_numeric};
use qbsim::model::ChargeAxis;

fn main() {
    for axis in [ChargeAxis::X, ChargeAxis::Y] {
        let mut worst = 0.0_f64;
        for k in 0..=64 {
            let phase = k as f64 * std::f64::consts::PI / 64.0;
            let a = charging_unitary_numeric(axis, 1.0, phase);
            let b = charging_unitary_closed(axis, phase);
            worst = worst.max(a.matrix.max_abs_diff(&b.matrix).unwrap());
        }
        println!("{axis:?}: max |numeric − closed| over Ωt ∈ [0, π] = {worst:.2e}");
    }

    let u = charging_unitary_numeric(ChargeAxis::Y, 1.0, FRAC_PI_2);
    println!("U_Y(Ωt = π/2), real parts:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:+.3}", u.matrix[(i, j)].re)).collect();
        println!("  [{}]", row.join(" "));
    }
    println!("unitarity error {:.1e}", u.unitarity_error());
}
