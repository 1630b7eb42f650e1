#![allow(dead_code)]

use std::path::PathBuf;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::Rng;
use stochreach::decomposition::TransitionMatrixSet;
use stochreach::graph::StochasticDigraph;
use stochreach::target::TargetSet;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub const L_REFERENCE: [[f64; 4]; 4] = [
    [0.0, 0.0, 0.0, 0.0],
    [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
    [0.0, 0.0, 0.0, 1.0 / 3.0],
    [0.0, 0.0, 1.0 / 3.0, 0.0],
];

pub const M_REFERENCE: [[f64; 4]; 4] = [
    [0.0, 2.0 / 3.0, 1.0, 1.0 / 3.0],
    [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
    [2.0 / 3.0, 0.0, 0.0, 1.0],
    [0.0, 2.0 / 3.0, 1.0, 0.0],
];

pub const P_REFERENCE: [[[f64; 4]; 4]; 16] = [
    [
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 2.0 / 3.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 0.0, 1.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 0.0, 1.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 0.0, 1.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0],
    ],
    [
        [0.0, 0.0, 1.0, 0.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0],
        [2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
];

/// Rows `(i, a, j, p)`, 1-based.
pub const TABLE_REFERENCE: [(usize, usize, usize, f64); 15] = [
    (1, 1, 2, 2.0 / 3.0),
    (1, 1, 3, 1.0 / 3.0),
    (1, 2, 2, 2.0 / 3.0),
    (1, 2, 4, 1.0 / 3.0),
    (1, 3, 3, 1.0),
    (1, 4, 3, 2.0 / 3.0),
    (1, 4, 4, 1.0 / 3.0),
    (2, 1, 1, 2.0 / 3.0),
    (2, 1, 4, 1.0 / 3.0),
    (3, 1, 1, 2.0 / 3.0),
    (3, 1, 4, 1.0 / 3.0),
    (3, 2, 4, 1.0),
    (4, 1, 2, 2.0 / 3.0),
    (4, 1, 3, 1.0 / 3.0),
    (4, 2, 3, 1.0),
];

pub fn to_array(m: &[[f64; 4]; 4]) -> Array2<f64> {
    Array2::from_shape_fn((4, 4), |(i, j)| m[i][j])
}

pub fn max_abs_diff(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A stochastic digraph with no sinks: every node gets between 1 and
/// `max_degree` distinct successors in every edge set.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_h: usize,
    max_degree: usize,
) -> StochasticDigraph {
    let n = rng.gen_range(2..=max_n);
    let h = rng.gen_range(1..=max_h);
    let nodes: Vec<usize> = (0..n).collect();
    let edge_sets: Vec<Vec<(usize, usize)>> = (0..h)
        .map(|_| {
            (0..n)
                .flat_map(|x| {
                    let d = rng.gen_range(1..=max_degree.min(n));
                    nodes
                        .choose_multiple(rng, d)
                        .map(move |&y| (x, y))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let weights: Vec<f64> = (0..h).map(|_| rng.gen_range(1..=6) as f64).collect();
    let total: f64 = weights.iter().sum();
    StochasticDigraph::from_edge_lists(n, &edge_sets, weights.iter().map(|w| w / total).collect())
        .unwrap()
}

pub fn random_target<R: Rng>(rng: &mut R, n: usize) -> TargetSet {
    let size = rng.gen_range(1..n);
    let nodes: Vec<usize> = (0..n).collect();
    TargetSet::new(nodes.choose_multiple(rng, size).copied())
}

/// Extreme probabilities of entering `target` at some step `1..=k`,
/// over every sequence of matrices drawn from `set`, found by pushing the
/// unabsorbed probability mass forward along each sequence.
///
/// Returns `(max, min)`, each indexed `[k][start]` for `k = 0..=horizon`.
pub fn brute_force_hits(
    set: &TransitionMatrixSet,
    target: &TargetSet,
    horizon: usize,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = set.n();
    let mut max = vec![vec![0.0; n]; horizon + 1];
    let mut min = vec![vec![0.0; n]; horizon + 1];
    for row in min.iter_mut().skip(1) {
        row.fill(f64::INFINITY);
    }
    for start in 0..n {
        let mut mass = vec![0.0; n];
        mass[start] = 1.0;
        explore(
            set, target, &mass, 0.0, 1, horizon, start, &mut max, &mut min,
        );
    }
    (max, min)
}

#[allow(clippy::too_many_arguments)]
fn explore(
    set: &TransitionMatrixSet,
    target: &TargetSet,
    mass: &[f64],
    hit: f64,
    k: usize,
    horizon: usize,
    start: usize,
    max: &mut [Vec<f64>],
    min: &mut [Vec<f64>],
) {
    if k > horizon {
        return;
    }
    let n = mass.len();
    for p in &set.matrices {
        let mut next = vec![0.0; n];
        for (i, &m) in mass.iter().enumerate() {
            if m != 0.0 {
                for j in 0..n {
                    next[j] += m * p[[i, j]];
                }
            }
        }
        let mut h = hit;
        for j in target.iter() {
            h += next[j];
            next[j] = 0.0;
        }
        max[k][start] = max[k][start].max(h);
        min[k][start] = min[k][start].min(h);
        explore(set, target, &next, h, k + 1, horizon, start, max, min);
    }
}
