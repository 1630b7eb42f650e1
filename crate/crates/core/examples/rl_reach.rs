// Learns reach probabilities from sampled episodes and compares them with
// the exact infinite-horizon values.

use std::path::Path;

use stochreach::io::load_graph;
use stochreach::reachability::{augment_for_target, reach_limit, reach_model};
use stochreach::rl::{q_learning, sarsa, RlParams};
use stochreach::target::TargetSet;

pub fn run_example() -> stochreach::Result<()> {
    let sd = load_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reference_graph.json"))?;
    let target = TargetSet::parse_one_based("4")?;
    let aug = augment_for_target(&sd, &target)?;
    let model = reach_model(&aug, 1.0)?;
    let done = |s: usize| s == aug.target_proxy || s == aug.terminal;
    let exact = reach_limit(&sd, &target, false)?;

    let params = RlParams {
        episodes: 2_000,
        seed: 11,
        ..RlParams::default()
    };
    for start in 0..sd.n() {
        let q = q_learning(&model, start, done, &params)?;
        let s = sarsa(&model, start, done, &params)?;
        println!(
            "start {}: exact {:.4}  q-learning {:.4}  sarsa {:.4}",
            start + 1,
            exact.values[start],
            q.estimate,
            s.estimate
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("rl reach example failed");
}
