//! Entrywise bounds on one-step transition probabilities, and the
//! finite-horizon reach recursions that extend them to `k` steps.

use ndarray::Array2;

use crate::error::Result;
use crate::graph::StochasticDigraph;
use crate::target::TargetSet;

/// Lower (`L`) and upper (`M`) transition-probability bounds.
///
/// `lower[[i, j]]` sums `mu(w)` over the topologies in which `j` is the only
/// successor of `i`; `upper[[i, j]]` over those in which `j` is one of the
/// successors.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundMatrices {
    pub lower: Array2<f64>,
    pub upper: Array2<f64>,
}

pub fn compute_bound_matrices(sd: &StochasticDigraph) -> BoundMatrices {
    let n = sd.n();
    let mut lower = Array2::zeros((n, n));
    let mut upper = Array2::zeros((n, n));
    for (w, &p) in sd.mu().iter().enumerate() {
        for i in 0..n {
            let succ = sd.hmap(i, w);
            if let [only] = succ {
                lower[[i, *only]] += p;
            }
            for &j in succ {
                upper[[i, j]] += p;
            }
        }
    }
    BoundMatrices { lower, upper }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReachKind {
    /// Supremum over stochastic paths (`m`).
    Upper,
    /// Infimum over stochastic paths (`ℓ`).
    Lower,
}

/// `values[[k, x]]` is the extreme probability of visiting the target at
/// some step in `1..=k` when starting from `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachRecursionTable {
    pub values: Array2<f64>,
    pub target: TargetSet,
    pub kind: ReachKind,
}

impl ReachRecursionTable {
    pub fn horizon(&self) -> usize {
        self.values.nrows() - 1
    }
}

/// Runs the max/min reach recursion up to `horizon` steps.
///
/// A successor `g` contributes 1 when it lies in the target and its
/// previous-step value otherwise; the upper table takes the maximum of these
/// contributions over `H(ξ, w)`, the lower table the minimum, and both
/// average over `w` with weights `mu`.
pub fn reach_recursion(
    sd: &StochasticDigraph,
    target: &TargetSet,
    horizon: usize,
    kind: ReachKind,
) -> Result<ReachRecursionTable> {
    sd.require_standing_assumption()?;
    target.check_within(sd.n())?;
    let n = sd.n();
    let mut values = Array2::zeros((horizon + 1, n));
    for k in 1..=horizon {
        for xi in 0..n {
            let mut acc = 0.0;
            for (w, &p) in sd.mu().iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let contributions = sd.hmap(xi, w).iter().map(|&g| {
                    if target.contains(g) {
                        1.0
                    } else {
                        values[[k - 1, g]]
                    }
                });
                let extreme = match kind {
                    ReachKind::Upper => contributions.fold(f64::NEG_INFINITY, f64::max),
                    ReachKind::Lower => contributions.fold(f64::INFINITY, f64::min),
                };
                acc += extreme * p;
            }
            values[[k, xi]] = acc;
        }
    }
    Ok(ReachRecursionTable {
        values,
        target: target.clone(),
        kind,
    })
}
