// Lower and upper one-step bound matrices of a stochastic digraph.

use std::path::Path;

use ndarray::Array2;
use stochreach::bounds::compute_bound_matrices;
use stochreach::format::format_probability;
use stochreach::io::load_graph;

fn print_matrix(name: &str, m: &Array2<f64>) {
    println!("{name} =");
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|&x| format!("{:>5}", format_probability(x, false)))
            .collect();
        println!("  [{}]", cells.join(" "));
    }
}

pub fn run_example() -> stochreach::Result<()> {
    let sd = load_graph(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reference_graph.json"))?;
    println!("n = {}, h = {}, mu = {:?}", sd.n(), sd.h(), sd.mu());
    let b = compute_bound_matrices(&sd);
    print_matrix("L", &b.lower);
    print_matrix("M", &b.upper);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bound matrices example failed");
}
