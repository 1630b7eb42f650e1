//! Decomposition of instantaneous digraphs into 1-regular pieces and
//! enumeration of the induced set of right-stochastic matrices.

use std::collections::HashSet;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::{Digraph, StochasticDigraph};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Tolerance on row sums of enumerated matrices.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OneRegularDecomposition {
    /// Edge set the pieces came from, when decomposed out of a stochastic digraph.
    pub source_index: Option<usize>,
    pub pieces: Vec<Digraph>,
}

/// Number of 1-regular pieces of `g`, i.e. the product of out-degrees.
/// `None` on overflow.
pub fn piece_count(g: &Digraph) -> Option<u128> {
    (0..g.n()).try_fold(1u128, |acc, x| acc.checked_mul(g.out_degree(x) as u128))
}

/// Enumerates every way of keeping exactly one out-edge per node.
///
/// Pieces are listed in lexicographic order of the per-node choices, with
/// node 1 the most significant position.
pub fn decompose_one_regular(g: &Digraph) -> Result<OneRegularDecomposition> {
    if let Some(x) = (0..g.n()).find(|&x| g.out_degree(x) == 0) {
        return Err(Error::ZeroOutDegree { node: x + 1 });
    }
    let total = piece_count(g)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or_else(|| Error::CapacityExceeded {
            nu: "more than usize::MAX".into(),
            cap: usize::MAX,
        })?;
    let pieces = (0..total)
        .map(|index| {
            let choice = piece_choice(g, index);
            Digraph::new(g.n(), choice.into_iter().enumerate())
                .expect("chosen successors are valid nodes")
        })
        .collect();
    Ok(OneRegularDecomposition {
        source_index: None,
        pieces,
    })
}

/// Successor chosen at every node by the `index`-th piece.
fn piece_choice(g: &Digraph, mut index: usize) -> Vec<usize> {
    let mut choice = vec![0; g.n()];
    for x in (0..g.n()).rev() {
        let succ = g.succ(x);
        choice[x] = succ[index % succ.len()];
        index /= succ.len();
    }
    choice
}

/// Transition matrix of a stochastic digraph whose edge sets are all 1-regular.
pub fn markov_matrix(sd: &StochasticDigraph) -> Result<Array2<f64>> {
    if let Some(s) = sd.graphs().iter().position(|g| !g.is_one_regular()) {
        return Err(Error::NotOneRegular { index: s + 1 });
    }
    let n = sd.n();
    let mut p = Array2::zeros((n, n));
    for (w, &mu) in sd.mu().iter().enumerate() {
        for i in 0..n {
            p[[i, sd.hmap(i, w)[0]]] += mu;
        }
    }
    Ok(p)
}

/// The matrices `P_1 … P_ν`, one per tuple of 1-regular pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrixSet {
    pub matrices: Vec<Array2<f64>>,
}

impl TransitionMatrixSet {
    pub fn nu(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.matrices.first().map_or(0, Array2::nrows)
    }

    /// Distinct matrices, first occurrence kept, compared on a 1e-12 grid.
    pub fn deduplicated(&self) -> Vec<Array2<f64>> {
        let mut seen = HashSet::new();
        self.matrices
            .iter()
            .filter(|m| seen.insert(grid_key(m.iter().copied())))
            .cloned()
            .collect()
    }

    /// Entrywise minimum over the set.
    pub fn entrywise_min(&self) -> Array2<f64> {
        self.fold_entries(f64::INFINITY, f64::min)
    }

    /// Entrywise maximum over the set.
    pub fn entrywise_max(&self) -> Array2<f64> {
        self.fold_entries(f64::NEG_INFINITY, f64::max)
    }

    fn fold_entries(&self, init: f64, f: fn(f64, f64) -> f64) -> Array2<f64> {
        let n = self.n();
        let mut out = Array2::from_elem((n, n), init);
        for m in &self.matrices {
            out.zip_mut_with(m, |a, &b| *a = f(*a, b));
        }
        out
    }
}

pub(crate) fn grid_key(values: impl Iterator<Item = f64>) -> Vec<i64> {
    values.map(|v| (v * 1e12).round() as i64).collect()
}

/// Enumerates the full transition-matrix set, failing when it would hold
/// more than `cap` matrices.
///
/// Tuples are ordered lexicographically with edge set 1 most significant;
/// within an edge set pieces follow [`decompose_one_regular`].
pub fn enumerate_transition_matrices(
    sd: &StochasticDigraph,
    cap: usize,
) -> Result<TransitionMatrixSet> {
    sd.require_standing_assumption()?;
    // A zero-probability edge set may contain sinks; it contributes nothing
    // to any matrix, so a single placeholder piece stands in for it then.
    let counts: Vec<u128> = sd
        .graphs()
        .iter()
        .zip(sd.mu())
        .map(|(g, &mu)| {
            if mu == 0.0 && (0..g.n()).any(|x| g.out_degree(x) == 0) {
                Some(1)
            } else {
                piece_count(g)
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::CapacityExceeded {
            nu: "more than 2^128".into(),
            cap,
        })?;
    let nu = counts
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c))
        .ok_or_else(|| Error::CapacityExceeded {
            nu: "more than 2^128".into(),
            cap,
        })?;
    if nu > cap as u128 {
        return Err(Error::CapacityExceeded {
            nu: nu.to_string(),
            cap,
        });
    }
    let n = sd.n();
    let nu = nu as usize;
    let mut matrices = Vec::with_capacity(nu);
    for a in 0..nu {
        let mut rest = a;
        let mut selection = vec![0usize; sd.h()];
        for s in (0..sd.h()).rev() {
            let c = counts[s] as usize;
            selection[s] = rest % c;
            rest /= c;
        }
        let mut p = Array2::zeros((n, n));
        for (s, &piece) in selection.iter().enumerate() {
            let mu = sd.mu()[s];
            if mu == 0.0 {
                continue;
            }
            for (i, j) in piece_choice(&sd.graphs()[s], piece).into_iter().enumerate() {
                p[[i, j]] += mu;
            }
        }
        matrices.push(p);
    }
    Ok(TransitionMatrixSet { matrices })
}
