// Enumerates every right-stochastic matrix induced by picking one
// 1-regular piece per edge set, and checks the entrywise envelope.

use std::path::Path;

use stochreach::bounds::compute_bound_matrices;
use stochreach::decomposition::{
    decompose_one_regular, enumerate_transition_matrices, DEFAULT_CAP,
};
use stochreach::io::load_graph;

pub fn run_example() -> stochreach::Result<()> {
    let sd = load_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reference_graph.json"))?;
    for (s, g) in sd.graphs().iter().enumerate() {
        println!(
            "edge set {}: {} one-regular pieces",
            s + 1,
            decompose_one_regular(g)?.pieces.len()
        );
    }
    let set = enumerate_transition_matrices(&sd, DEFAULT_CAP)?;
    println!("nu = {} ({} distinct)", set.nu(), set.deduplicated().len());

    let b = compute_bound_matrices(&sd);
    let close = |a: &ndarray::Array2<f64>, b: &ndarray::Array2<f64>| {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    };
    println!(
        "min over set == L: {}",
        close(&set.entrywise_min(), &b.lower)
    );
    println!(
        "max over set == M: {}",
        close(&set.entrywise_max(), &b.upper)
    );

    // Asking for fewer matrices than exist is refused with a pointer elsewhere.
    if let Err(e) = enumerate_transition_matrices(&sd, 10) {
        println!("cap 10: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("transition matrix set example failed");
}
