// SARSA and Q-learning estimates of the SIR infection bounds.

use std::path::Path;
use std::sync::Arc;

use stochreach::epidemic::{infected_bounds_for, rl_bound_estimates, SirMdp};
use stochreach::io::load_sir;
use stochreach::rl::{Algorithm, RlParams};

pub fn run_example() -> stochreach::Result<()> {
    let (cfg, x0) = load_sir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sir_ring.json"))?;
    let mdp = Arc::new(SirMdp::build(&cfg, &x0)?);
    let exact = infected_bounds_for(&mdp)?;
    println!(
        "exact:      lower {:.4}  upper {:.4}",
        exact.lower, exact.upper
    );
    let params = RlParams {
        episodes: 2_000,
        seed: 5,
        ..RlParams::default()
    };
    for algo in [Algorithm::Sarsa, Algorithm::QLearning] {
        let e = rl_bound_estimates(&mdp, algo, &params)?;
        println!(
            "{:<10}  lower {:.4}  upper {:.4}",
            algo.name(),
            e.lower,
            e.upper
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("SIR RL example failed");
}
