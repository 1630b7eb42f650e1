// Best- and worst-case probabilities of reaching a target set, computed by
// value iteration on the state-local MDP and by the direct recursion.

use std::path::Path;

use stochreach::bounds::{reach_recursion, ReachKind};
use stochreach::format::format_probability;
use stochreach::io::load_graph;
use stochreach::reachability::{reach_limit, strong_recurrence, weak_reachability};
use stochreach::target::TargetSet;

pub fn run_example() -> stochreach::Result<()> {
    let sd = load_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reference_graph.json"))?;
    let target = TargetSet::parse_one_based("4")?;
    let horizon = 5;

    let weak = weak_reachability(&sd, &target, horizon)?;
    let strong = strong_recurrence(&sd, &target, horizon)?;
    let upper = reach_recursion(&sd, &target, horizon, ReachKind::Upper)?;
    let lower = reach_recursion(&sd, &target, horizon, ReachKind::Lower)?;

    println!("k node weak strong");
    for k in 0..=horizon {
        for x in 0..sd.n() {
            println!(
                "{k} {} {} {}",
                x + 1,
                format_probability(weak.value(k, x), false),
                format_probability(strong.value(k, x), false)
            );
        }
    }
    let gap = |a: &ndarray::Array2<f64>, b: &ndarray::Array2<f64>| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    println!(
        "max |weak - upper recursion|   = {:e}",
        gap(&weak.values, &upper.values)
    );
    println!(
        "max |strong - lower recursion| = {:e}",
        gap(&strong.values, &lower.values)
    );

    let greedy = weak
        .greedy
        .as_ref()
        .expect("value iteration records its policy");
    println!(
        "greedy actions with {horizon} steps to go: {:?}",
        greedy.row(horizon - 1).mapv(|a| a + 1).to_vec()
    );

    let limit = reach_limit(&sd, &target, false)?;
    println!(
        "limit weak: {:?} after {} iterations",
        limit.values, limit.iterations
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("reachability example failed");
}
