// Bounds on the cumulative number of infected agents of a small SIR
// population moving on a ring, next to the expectation under uniform moves.

use std::path::Path;
use std::sync::Arc;

use stochreach::epidemic::{infected_bounds_for, SirMdp};
use stochreach::io::load_sir;
use stochreach::mdp::Dynamics;

pub fn run_example() -> stochreach::Result<()> {
    let (cfg, x0) = load_sir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sir_ring.json"))?;
    let mdp = Arc::new(SirMdp::build(&cfg, &x0)?);
    println!(
        "{} agents, {} positions: {} reachable of {} joint states",
        cfg.agents(),
        cfg.kappa(),
        mdp.num_states(),
        cfg.state_count().unwrap_or(usize::MAX)
    );
    let b = infected_bounds_for(&mdp)?;
    println!("theta(x0) = {}", b.theta0);
    println!(
        "lower = {:.4} (increment {:.4})",
        b.lower, b.lower_increment
    );
    println!(
        "upper = {:.4} (increment {:.4})",
        b.upper, b.upper_increment
    );

    let expected = mdp.expected_infected(50);
    for k in [0, 1, 2, 5, 10, 20, 50] {
        println!("k = {k:>2}: expected infected {:.4}", expected[k]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("SIR bounds example failed");
}
