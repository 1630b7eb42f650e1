//! Markov decision processes over the nodes of a stochastic digraph.
//!
//! Two constructions are provided. [`LocalActionMdp`] lets the action set
//! depend on the current node: an action at node `i` picks one successor
//! from every `H(i, w)`, and the induced distribution aggregates `mu(w)`
//! over the coordinates that land on each successor. [`GlobalMatrixMdp`]
//! uses the enumerated matrix set instead, one action per matrix; it is only
//! practical for small graphs and mainly serves as a cross-check.
//!
//! Both implement [`Dynamics`]; an [`MdpModel`] pairs dynamics with a
//! reward `r(i, a, j)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::decomposition::{grid_key, TransitionMatrixSet};
use crate::error::{Error, Result};
use crate::graph::StochasticDigraph;

/// Tolerance on the total mass of a transition distribution.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-12;

/// Next-state distribution, sorted by state, without zero-probability entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionDistribution {
    outcomes: Vec<(usize, f64)>,
}

impl TransitionDistribution {
    /// Aggregates weighted outcomes by state, dropping zero weights.
    pub fn from_weighted<I: IntoIterator<Item = (usize, f64)>>(items: I) -> Self {
        let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
        for (state, p) in items {
            if p != 0.0 {
                *acc.entry(state).or_insert(0.0) += p;
            }
        }
        Self {
            outcomes: acc.into_iter().collect(),
        }
    }

    pub fn outcomes(&self) -> &[(usize, f64)] {
        &self.outcomes
    }

    pub fn prob(&self, state: usize) -> f64 {
        self.outcomes
            .binary_search_by_key(&state, |&(s, _)| s)
            .map_or(0.0, |i| self.outcomes[i].1)
    }

    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|&(_, p)| p).sum()
    }

    pub fn is_valid(&self) -> bool {
        (self.total() - 1.0).abs() <= DISTRIBUTION_TOLERANCE
            && self.outcomes.iter().all(|&(_, p)| p > 0.0)
    }

    /// Key for comparing distributions up to a 1e-12 grid.
    pub fn key(&self) -> Vec<(usize, i64)> {
        self.outcomes
            .iter()
            .map(|&(s, _)| s)
            .zip(grid_key(self.outcomes.iter().map(|&(_, p)| p)))
            .collect()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let mut states: Vec<usize> = self
            .outcomes
            .iter()
            .chain(&other.outcomes)
            .map(|&(s, _)| s)
            .collect();
        states.sort_unstable();
        states.dedup();
        states
            .into_iter()
            .all(|s| (self.prob(s) - other.prob(s)).abs() <= tol)
    }
}

/// Finite state/action dynamics. States are `0..num_states()`, actions at
/// `s` are `0..num_actions(s)`.
pub trait Dynamics: Send + Sync {
    fn num_states(&self) -> usize;
    fn num_actions(&self, state: usize) -> usize;
    /// Panics when `action >= num_actions(state)`.
    fn distribution(&self, state: usize, action: usize) -> &TransitionDistribution;
}

pub type RewardFn = Arc<dyn Fn(usize, usize, usize) -> f64 + Send + Sync>;

/// Dynamics together with a deterministic reward `r(i, a, j)`.
#[derive(Clone)]
pub struct MdpModel {
    dynamics: Arc<dyn Dynamics>,
    reward: RewardFn,
}

impl fmt::Debug for MdpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MdpModel")
            .field("states", &self.num_states())
            .finish_non_exhaustive()
    }
}

impl MdpModel {
    /// Wraps `dynamics` with the zero reward.
    pub fn new<D: Dynamics + 'static>(dynamics: D) -> Self {
        Self::from_shared(Arc::new(dynamics))
    }

    pub fn from_shared(dynamics: Arc<dyn Dynamics>) -> Self {
        Self {
            dynamics,
            reward: Arc::new(|_, _, _| 0.0),
        }
    }

    /// Same dynamics, new reward.
    pub fn attach_reward<F>(&self, reward: F) -> Self
    where
        F: Fn(usize, usize, usize) -> f64 + Send + Sync + 'static,
    {
        Self {
            dynamics: Arc::clone(&self.dynamics),
            reward: Arc::new(reward),
        }
    }

    pub fn dynamics(&self) -> &Arc<dyn Dynamics> {
        &self.dynamics
    }

    pub fn num_states(&self) -> usize {
        self.dynamics.num_states()
    }

    pub fn num_actions(&self, state: usize) -> usize {
        self.dynamics.num_actions(state)
    }

    /// Checked access to `p(· | state, action)`.
    pub fn transition(&self, state: usize, action: usize) -> Result<&TransitionDistribution> {
        if state >= self.num_states() {
            return Err(Error::InvalidNode {
                node: state + 1,
                n: self.num_states(),
            });
        }
        let count = self.num_actions(state);
        if action >= count {
            return Err(Error::InvalidAction {
                state: state + 1,
                action: action + 1,
                count,
            });
        }
        Ok(self.dynamics.distribution(state, action))
    }

    pub(crate) fn dist(&self, state: usize, action: usize) -> &TransitionDistribution {
        self.dynamics.distribution(state, action)
    }

    pub fn reward(&self, state: usize, action: usize, next: usize) -> f64 {
        (self.reward)(state, action, next)
    }

    /// Expected one-step reward of `(state, action)`.
    pub fn expected_reward(&self, state: usize, action: usize) -> f64 {
        self.dist(state, action)
            .outcomes()
            .iter()
            .map(|&(j, p)| p * self.reward(state, action, j))
            .sum()
    }
}

/// A per-coordinate successor choice. `None` only appears for a topology of
/// probability zero in which the node has no successor.
pub type ActionTuple = Vec<Option<usize>>;

/// The update rules available at one node: every tuple whose `w`-th entry is
/// taken from `H(i, w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalActionSpace {
    pub node: usize,
    pub tuples: Vec<ActionTuple>,
}

impl LocalActionSpace {
    pub fn count(&self) -> usize {
        self.tuples.len()
    }
}

/// `Π_w |H(i, w)|`, skipping empty zero-probability coordinates.
fn local_action_count(sd: &StochasticDigraph, i: usize) -> Result<usize> {
    (0..sd.h())
        .map(|w| sd.hmap(i, w).len().max(1))
        .try_fold(1usize, |acc, c| acc.checked_mul(c))
        .ok_or_else(|| Error::CapacityExceeded {
            nu: format!("more than usize::MAX actions at node {}", i + 1),
            cap: usize::MAX,
        })
}

fn check_node_sa1(sd: &StochasticDigraph, i: usize) -> Result<()> {
    if i >= sd.n() {
        return Err(Error::InvalidNode {
            node: i + 1,
            n: sd.n(),
        });
    }
    let violations: Vec<(usize, usize)> = (0..sd.h())
        .filter(|&w| sd.mu()[w] > 0.0 && sd.hmap(i, w).is_empty())
        .map(|w| (i + 1, w + 1))
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::StandingAssumption { violations })
    }
}

/// Decodes action `a` at node `i`; the first edge set is the most
/// significant coordinate.
fn decode_tuple(sd: &StochasticDigraph, i: usize, mut a: usize) -> ActionTuple {
    let mut tuple = vec![None; sd.h()];
    for w in (0..sd.h()).rev() {
        let succ = sd.hmap(i, w);
        if !succ.is_empty() {
            tuple[w] = Some(succ[a % succ.len()]);
            a /= succ.len();
        }
    }
    tuple
}

/// Lists the update rules available at node `i`.
pub fn local_actions(sd: &StochasticDigraph, i: usize) -> Result<LocalActionSpace> {
    check_node_sa1(sd, i)?;
    let count = local_action_count(sd, i)?;
    Ok(LocalActionSpace {
        node: i,
        tuples: (0..count).map(|a| decode_tuple(sd, i, a)).collect(),
    })
}

/// Distribution induced at node `i` by an explicit successor tuple.
pub fn tuple_distribution(
    sd: &StochasticDigraph,
    i: usize,
    tuple: &[Option<usize>],
) -> Result<TransitionDistribution> {
    check_node_sa1(sd, i)?;
    if tuple.len() != sd.h() {
        return Err(Error::InvalidParameter(format!(
            "action tuple has {} entries, expected {}",
            tuple.len(),
            sd.h()
        )));
    }
    for (w, choice) in tuple.iter().enumerate() {
        let succ = sd.hmap(i, w);
        let ok = match choice {
            Some(j) => succ.binary_search(j).is_ok(),
            None => succ.is_empty(),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "tuple entry {} is not a successor of node {} in edge set {}",
                choice.map_or("-".to_string(), |j| (j + 1).to_string()),
                i + 1,
                w + 1
            )));
        }
    }
    Ok(TransitionDistribution::from_weighted(
        tuple
            .iter()
            .zip(sd.mu())
            .filter_map(|(choice, &mu)| choice.map(|j| (j, mu))),
    ))
}

/// Transition law of action `a` at node `i`.
pub fn transition(sd: &StochasticDigraph, i: usize, a: usize) -> Result<TransitionDistribution> {
    check_node_sa1(sd, i)?;
    let count = local_action_count(sd, i)?;
    if a >= count {
        return Err(Error::InvalidAction {
            state: i + 1,
            action: a + 1,
            count,
        });
    }
    tuple_distribution(sd, i, &decode_tuple(sd, i, a))
}

/// State-local MDP of a stochastic digraph. Distributions are computed the
/// first time a node is queried and cached.
#[derive(Debug)]
pub struct LocalActionMdp {
    sd: StochasticDigraph,
    counts: Vec<usize>,
    cache: Vec<OnceLock<Vec<TransitionDistribution>>>,
}

impl LocalActionMdp {
    pub fn new(sd: StochasticDigraph) -> Result<Self> {
        sd.require_standing_assumption()?;
        let counts = (0..sd.n())
            .map(|i| local_action_count(&sd, i))
            .collect::<Result<Vec<_>>>()?;
        let cache = (0..sd.n()).map(|_| OnceLock::new()).collect();
        Ok(Self { sd, counts, cache })
    }

    /// Keeps one action per distinct induced distribution (first tuple
    /// wins). Distributions are computed eagerly.
    pub fn deduplicated(sd: StochasticDigraph) -> Result<Self> {
        let full = Self::new(sd)?;
        let mut counts = Vec::with_capacity(full.sd.n());
        let cache: Vec<OnceLock<Vec<TransitionDistribution>>> = (0..full.sd.n())
            .map(|i| {
                let mut seen = HashSet::new();
                let kept: Vec<TransitionDistribution> = full
                    .distributions(i)
                    .iter()
                    .filter(|d| seen.insert(d.key()))
                    .cloned()
                    .collect();
                counts.push(kept.len());
                OnceLock::from(kept)
            })
            .collect();
        Ok(Self {
            sd: full.sd,
            counts,
            cache,
        })
    }

    pub fn digraph(&self) -> &StochasticDigraph {
        &self.sd
    }

    fn distributions(&self, i: usize) -> &[TransitionDistribution] {
        self.cache[i].get_or_init(|| {
            (0..self.counts[i])
                .map(|a| {
                    tuple_distribution(&self.sd, i, &decode_tuple(&self.sd, i, a))
                        .expect("decoded tuples are feasible")
                })
                .collect()
        })
    }

    /// Rows `(i, a, j, p(j|i,a))`, 0-based, ordered by `i`, `a`, `j`.
    pub fn listing(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut rows = Vec::new();
        for i in 0..self.sd.n() {
            for (a, d) in self.distributions(i).iter().enumerate() {
                rows.extend(d.outcomes().iter().map(|&(j, p)| (i, a, j, p)));
            }
        }
        rows
    }
}

impl Dynamics for LocalActionMdp {
    fn num_states(&self) -> usize {
        self.sd.n()
    }

    fn num_actions(&self, state: usize) -> usize {
        self.counts[state]
    }

    fn distribution(&self, state: usize, action: usize) -> &TransitionDistribution {
        &self.distributions(state)[action]
    }
}

/// MDP whose action `a` applies matrix `P_a` at every state.
#[derive(Debug, Clone)]
pub struct GlobalMatrixMdp {
    rows: Vec<Vec<TransitionDistribution>>,
}

impl GlobalMatrixMdp {
    pub fn new(set: &TransitionMatrixSet) -> Self {
        let rows = (0..set.n())
            .map(|i| {
                set.matrices
                    .iter()
                    .map(|p| {
                        TransitionDistribution::from_weighted(p.row(i).iter().copied().enumerate())
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }
}

impl Dynamics for GlobalMatrixMdp {
    fn num_states(&self) -> usize {
        self.rows.len()
    }

    fn num_actions(&self, state: usize) -> usize {
        self.rows[state].len()
    }

    fn distribution(&self, state: usize, action: usize) -> &TransitionDistribution {
        &self.rows[state][action]
    }
}

/// Explicitly tabulated dynamics.
#[derive(Debug, Clone)]
pub struct TabularDynamics {
    table: Vec<Vec<TransitionDistribution>>,
}

impl TabularDynamics {
    pub fn new(table: Vec<Vec<TransitionDistribution>>) -> Result<Self> {
        let n = table.len();
        for (s, actions) in table.iter().enumerate() {
            if actions.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "state {} has no actions",
                    s + 1
                )));
            }
            for (a, d) in actions.iter().enumerate() {
                if !d.is_valid() || d.outcomes().iter().any(|&(j, _)| j >= n) {
                    return Err(Error::InvalidDistribution(format!(
                        "transition from state {} under action {} is not a distribution over {n} states",
                        s + 1,
                        a + 1
                    )));
                }
            }
        }
        Ok(Self { table })
    }
}

impl Dynamics for TabularDynamics {
    fn num_states(&self) -> usize {
        self.table.len()
    }

    fn num_actions(&self, state: usize) -> usize {
        self.table[state].len()
    }

    fn distribution(&self, state: usize, action: usize) -> &TransitionDistribution {
        &self.table[state][action]
    }
}

/// Distinct distributions available at `state`, as grid keys.
pub fn distinct_distributions(d: &dyn Dynamics, state: usize) -> HashSet<Vec<(usize, i64)>> {
    (0..d.num_actions(state))
        .map(|a| d.distribution(state, a).key())
        .collect()
}
