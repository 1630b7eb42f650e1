// Agent-level simulation of the SIR model against the exact expectation.

use std::path::Path;

use stochreach::epidemic::{expected_infected_uniform, monte_carlo};
use stochreach::io::load_sir;

pub fn run_example() -> stochreach::Result<()> {
    let (cfg, x0) = load_sir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sir_ring.json"))?;
    let horizon = 30;
    let exact = expected_infected_uniform(&cfg, &x0, horizon)?;
    let mc = monte_carlo(&cfg, &x0, horizon, 20_000, 2024, 2)?;
    let worst = (1..=horizon)
        .map(|k| (exact[k] - mc.mean[k]).abs() / mc.stderr[k])
        .fold(0.0, f64::max);
    for k in (0..=horizon).step_by(5) {
        println!(
            "k = {k:>2}: exact {:.4}  simulated {:.4} ± {:.4}",
            exact[k], mc.mean[k], mc.stderr[k]
        );
    }
    println!("largest deviation: {worst:.2} standard errors");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("SIR Monte Carlo example failed");
}
