// A graph with a sink is rejected by the analyses until an absorbing node
// is added.

use stochreach::graph::StochasticDigraph;
use stochreach::io::graph_to_json;
use stochreach::reachability::weak_reachability;
use stochreach::target::TargetSet;

pub fn run_example() -> stochreach::Result<()> {
    // Node 3 has no way out under the first edge set.
    let sd = StochasticDigraph::from_edge_lists(
        3,
        &[vec![(0, 1), (1, 2)], vec![(0, 2), (1, 0), (2, 1)]],
        vec![0.5, 0.5],
    )?;
    println!(
        "violations (node, edge set), 0-based: {:?}",
        sd.standing_assumption_violations()
    );
    let target = TargetSet::new([1]);
    match weak_reachability(&sd, &target, 3) {
        Err(e) => println!("before repair: {e}"),
        Ok(_) => unreachable!("the sink must be reported"),
    }

    let repaired = sd.augment_sink();
    print!("{}", graph_to_json(&repaired));
    let table = weak_reachability(&repaired, &target, 3)?;
    println!(
        "weak reachability of node 2 within 3 steps: {:?}",
        table.values.row(3).to_vec()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sink repair example failed");
}
