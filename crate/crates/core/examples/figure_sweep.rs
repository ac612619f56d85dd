//! Regenerates one figure panel and writes CSV and SVG next to the working directory.
//!
//! `cargo run --release --example figure_sweep -- f10b`

use qbsim::output::{sweep_csv, sweep_svg};
use qbsim::sweep::{figure_preset, run_sweep, FigureId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id: FigureId = std::env::args().nth(1).as_deref().unwrap_or("f10b").parse()?;
    println!("{}", id.description());
    let config = figure_preset(id);
    let result = run_sweep(&config)?;
    let (i, j, v) = result.argmax();
    println!("max {v:.6} at {:?}", result.coords(i, j));
    std::fs::write(format!("{id}.csv"), sweep_csv(&id.to_string(), &config, &result))?;
    std::fs::write(format!("{id}.svg"), sweep_svg(&id.to_string(), &result))?;
    println!("wrote {id}.csv and {id}.svg");
    Ok(())
}
