//! Digraphs and stochastic digraphs.
//!
//! Nodes are 0-based `usize` indices inside the library. File formats and
//! the command line use 1-based numbering; conversion happens in
//! [`crate::io`] and [`crate::cli`].

use crate::error::{Error, Result};

/// Tolerance on `Σ μ(w) = 1`.
pub const MU_TOLERANCE: f64 = 1e-12;

/// A directed graph over nodes `0..n` with sorted, deduplicated successor lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut succ = vec![Vec::new(); n];
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::InvalidNode { node: node + 1, n });
                }
            }
            succ[u].push(v);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, succ })
    }

    /// Graph on `n` nodes without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            succ: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Out-neighborhood of `x`.
    pub fn out_neighborhood(&self, x: usize) -> Result<&[usize]> {
        self.succ
            .get(x)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidNode {
                node: x + 1,
                n: self.n,
            })
    }

    pub(crate) fn succ(&self, x: usize) -> &[usize] {
        &self.succ[x]
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.succ[x].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.succ[u].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// True when every node has exactly one successor.
    pub fn is_one_regular(&self) -> bool {
        self.succ.iter().all(|s| s.len() == 1)
    }

    pub fn union(&self, other: &Digraph) -> Result<Digraph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Digraph::new(self.n, self.edges().chain(other.edges()))
    }
}

/// A stochastic digraph: `h` edge sets over a common node set, with the
/// edge set of each step drawn i.i.d. from `mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticDigraph {
    n: usize,
    graphs: Vec<Digraph>,
    mu: Vec<f64>,
}

impl StochasticDigraph {
    pub fn new(n: usize, graphs: Vec<Digraph>, mu: Vec<f64>) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::InvalidDistribution(
                "at least one edge set is required".into(),
            ));
        }
        if graphs.len() != mu.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} edge sets but {} probabilities",
                graphs.len(),
                mu.len()
            )));
        }
        if let Some(g) = graphs.iter().find(|g| g.n() != n) {
            return Err(Error::VertexCountMismatch {
                left: n,
                right: g.n(),
            });
        }
        if let Some((w, p)) = mu
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "mu[{}] = {p} is not a probability",
                w + 1
            )));
        }
        let total: f64 = mu.iter().sum();
        if (total - 1.0).abs() > MU_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { n, graphs, mu })
    }

    /// Convenience constructor from 0-based edge lists.
    pub fn from_edge_lists(
        n: usize,
        edge_sets: &[Vec<(usize, usize)>],
        mu: Vec<f64>,
    ) -> Result<Self> {
        let graphs = edge_sets
            .iter()
            .map(|es| Digraph::new(n, es.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, graphs, mu)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edge sets.
    pub fn h(&self) -> usize {
        self.graphs.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn graphs(&self) -> &[Digraph] {
        &self.graphs
    }

    pub fn graph(&self, w: usize) -> Result<&Digraph> {
        self.graphs.get(w).ok_or(Error::InvalidEdgeSet {
            index: w + 1,
            h: self.h(),
        })
    }

    /// The out-neighborhood map `H(x, w)`.
    pub fn out_neighbors(&self, x: usize, w: usize) -> Result<&[usize]> {
        self.graph(w)?.out_neighborhood(x)
    }

    /// Unchecked `H(x, w)` for internal loops.
    pub(crate) fn hmap(&self, x: usize, w: usize) -> &[usize] {
        self.graphs[w].succ(x)
    }

    /// All `(i, w)` with `mu[w] > 0` and an empty `H(i, w)`, 0-based.
    pub fn standing_assumption_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for (w, g) in self.graphs.iter().enumerate() {
                if self.mu[w] > 0.0 && g.out_degree(i) == 0 {
                    out.push((i, w));
                }
            }
        }
        out
    }

    pub fn satisfies_standing_assumption(&self) -> bool {
        self.standing_assumption_violations().is_empty()
    }

    pub(crate) fn require_standing_assumption(&self) -> Result<()> {
        let violations = self.standing_assumption_violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::StandingAssumption {
                violations: violations
                    .into_iter()
                    .map(|(i, w)| (i + 1, w + 1))
                    .collect(),
            })
        }
    }

    /// Repairs sinks by adding an absorbing node `n` (1-based `n+1`) and
    /// redirecting every violating `(i, w)` to it.
    pub fn augment_sink(&self) -> StochasticDigraph {
        let sink = self.n;
        let violations = self.standing_assumption_violations();
        let graphs = self
            .graphs
            .iter()
            .enumerate()
            .map(|(w, g)| {
                let redirected = violations
                    .iter()
                    .filter(move |&&(_, vw)| vw == w)
                    .map(move |&(i, _)| (i, sink));
                Digraph::new(
                    self.n + 1,
                    g.edges()
                        .chain(redirected)
                        .chain(std::iter::once((sink, sink))),
                )
                .expect("augmented edges stay in range")
            })
            .collect();
        StochasticDigraph {
            n: self.n + 1,
            graphs,
            mu: self.mu.clone(),
        }
    }

    /// True when every edge set is 1-regular.
    pub fn is_one_regular(&self) -> bool {
        self.graphs.iter().all(Digraph::is_one_regular)
    }
}

/// Parses `"p/q"` or a decimal literal into a probability.
pub fn parse_probability(text: &str) -> std::result::Result<f64, String> {
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {text:?}"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {text:?}"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in {text:?}"));
            }
            p / q
        }
        None => text
            .parse()
            .map_err(|_| format!("not a number: {text:?}"))?,
    };
    if !(0.0..=1.0).contains(&value) {
        return Err(format!("{text:?} is outside [0, 1]"));
    }
    Ok(value)
}
