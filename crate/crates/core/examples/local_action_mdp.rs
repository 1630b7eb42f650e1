// The state-local MDP: actions at a node are tuples of successor choices,
// one per edge set.

use std::path::Path;

use stochreach::format::format_probability;
use stochreach::io::load_graph;
use stochreach::mdp::{local_actions, LocalActionMdp};

pub fn run_example() -> stochreach::Result<()> {
    let sd = load_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reference_graph.json"))?;
    for i in 0..sd.n() {
        let space = local_actions(&sd, i)?;
        let tuples: Vec<String> = space
            .tuples
            .iter()
            .map(|t| {
                let picks: Vec<String> = t
                    .iter()
                    .map(|c| c.map_or("-".into(), |j| (j + 1).to_string()))
                    .collect();
                format!("({})", picks.join(","))
            })
            .collect();
        println!(
            "node {}: {} actions {}",
            i + 1,
            space.count(),
            tuples.join(" ")
        );
    }

    println!("i a j p");
    for (i, a, j, p) in LocalActionMdp::new(sd)?.listing() {
        println!(
            "{} {} {} {}",
            i + 1,
            a + 1,
            j + 1,
            format_probability(p, false)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("local action MDP example failed");
}
