//! Spectrum and thermal state of a longer Heisenberg chain.

use qbsim::linalg::hermitian_eig;
use qbsim::model::{build_chain_hamiltonian, classify_model, ModelParams};
use qbsim::thermal::gibbs_state;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ModelParams {
        gamma: 0.2,
        delta: 0.7,
        temperature: 0.5,
        ..ModelParams::default()
    };
    println!("model: {:?}", classify_model(&params)?);
    for n in 2..=6 {
        let h = build_chain_hamiltonian(&params, n)?;
        let spectrum = hermitian_eig(&h)?;
        let rho = gibbs_state(&h, params.temperature)?;
        let energy = rho.matrix().trace_product(&h)?.re;
        println!(
            "n={n}: dim {:>3}, E0 {:+.6}, Emax {:+.6}, <H>_th {:+.6}",
            h.dim(),
            spectrum.min(),
            spectrum.max(),
            energy
        );
    }
    Ok(())
}
