//! Runs a sweep described in TOML and prints the result table.

use qbsim::output::format_value;
use qbsim::sweep::{parse_sweep_toml, run_sweep, sweep_to_toml};

const CONFIG: &str = r#"
[base]
j = -1.0
delta = -0.5
gamma = 0.5
temperature = 0.1

[axis1]
name = "omega_t"
min = 0.0
max = 3.141592653589793
steps = 9

[axis2]
name = "theta"
min = 0.0
max = 1.5707963267948966
steps = 3

[metric]
kind = "ergotropy"
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = parse_sweep_toml(CONFIG)?;
    let result = run_sweep(&config)?;
    let (rows, cols) = result.shape();
    for i in 0..rows {
        let cells: Vec<String> = (0..cols).map(|j| format_value(result.get(i, j))).collect();
        println!("{:.4}  {}", result.axes[0].values[i], cells.join("  "));
    }
    println!("\nnormalized config:\n{}", sweep_to_toml(&config));
    Ok(())
}
