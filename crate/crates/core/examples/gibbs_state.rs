//! Thermal state of the two-spin battery, numerically and in closed form.

use qbsim::deviation::DeviationReport;
use qbsim::model::{build_qb_hamiltonian, ModelParams};
use qbsim::thermal::{gibbs_state, is_passive, partition_function, partition_function_closed_form};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ModelParams {
        gamma: 0.5,
        delta: 0.5,
        dz: 0.3,
        gz: 0.2,
        theta: 0.4,
        temperature: 0.5,
        ..ModelParams::default()
    };
    let h = build_qb_hamiltonian(&params);
    let rho = gibbs_state(&h, params.temperature)?;

    println!("rho_th diagonal:");
    for i in 0..4 {
        println!("  {i}: {:.6}", rho.matrix()[(i, i)].re);
    }
    println!("passive: {}", is_passive(&rho, &h)?);
    println!(
        "Z numeric {:.12}, closed form {:.12}",
        partition_function(&h, params.temperature)?,
        partition_function_closed_form(&params)?
    );

    let mut report = DeviationReport::new();
    report.check_gibbs("example", &params)?;
    print!("closed-form elements off by more than 1e-8:\n{}", report.to_csv());
    Ok(())
}
