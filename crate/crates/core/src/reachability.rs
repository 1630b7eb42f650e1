//! Weak reachability and strong recurrence probabilities by dynamic
//! programming on the state-local MDP of a target-augmented digraph.
//!
//! Visits are counted at steps `1..=k` only: a start node inside the target
//! does not count as a visit at time 0.

use ndarray::{s, Array2};

use crate::error::{Error, Result};
use crate::graph::{Digraph, StochasticDigraph};
use crate::mdp::{LocalActionMdp, MdpModel};
use crate::target::TargetSet;

/// Stopping rule of the infinite-horizon solver.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 100_000;

/// Relative slack below which two action values count as tied.
const TIE_TOLERANCE: f64 = 1e-12;

/// A digraph in which every edge into the target is redirected to a proxy
/// node, followed by an absorbing terminal node.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedDigraph {
    pub digraph: StochasticDigraph,
    /// 0-based `n` (1-based `n + 1`).
    pub target_proxy: usize,
    /// 0-based `n + 1` (1-based `n + 2`).
    pub terminal: usize,
    pub target: TargetSet,
}

impl AugmentedDigraph {
    /// Node count of the original graph.
    pub fn original_n(&self) -> usize {
        self.target_proxy
    }
}

pub fn augment_for_target(sd: &StochasticDigraph, target: &TargetSet) -> Result<AugmentedDigraph> {
    sd.require_standing_assumption()?;
    target.check_within(sd.n())?;
    let n = sd.n();
    let (proxy, terminal) = (n, n + 1);
    let graphs = sd
        .graphs()
        .iter()
        .map(|g| {
            let redirected = g.edges().map(|(i, j)| {
                if target.contains(j) {
                    (i, proxy)
                } else {
                    (i, j)
                }
            });
            Digraph::new(
                n + 2,
                redirected.chain([(proxy, terminal), (terminal, terminal)]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AugmentedDigraph {
        digraph: StochasticDigraph::new(n + 2, graphs, sd.mu().to_vec())?,
        target_proxy: proxy,
        terminal,
        target: target.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    WeakReach,
    StrongRecur,
    Custom,
}

/// `values[[k, x]]` for `k = 0..=K`, plus the greedy action per remaining
/// horizon when the table came from value iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    pub values: Array2<f64>,
    pub objective: Objective,
    /// `greedy[[k - 1, x]]` is the action taken at `x` with `k` steps to go.
    pub greedy: Option<Array2<usize>>,
}

impl ValueTable {
    pub fn horizon(&self) -> usize {
        self.values.nrows() - 1
    }

    pub fn value(&self, k: usize, x: usize) -> f64 {
        self.values[[k, x]]
    }

    /// The time-varying greedy policy recorded by value iteration.
    pub fn greedy_policy(&self) -> Option<Policy> {
        self.greedy.clone().map(Policy::TimeVarying)
    }

    fn restrict(mut self, states: usize) -> Self {
        self.values = self.values.slice(s![.., ..states]).to_owned();
        self.greedy = self.greedy.map(|g| g.slice(s![.., ..states]).to_owned());
        self
    }
}

/// A decision rule mapping states to actions.
#[derive(Debug, Clone, PartialEq)]
pub enum Policy {
    Deterministic(Vec<usize>),
    /// `probs[x][a]`.
    Stochastic(Vec<Vec<f64>>),
    /// `actions[[k - 1, x]]` with `k` steps remaining.
    TimeVarying(Array2<usize>),
}

impl Policy {
    pub fn uniform(m: &MdpModel) -> Self {
        Policy::Stochastic(
            (0..m.num_states())
                .map(|x| {
                    let c = m.num_actions(x);
                    vec![1.0 / c as f64; c]
                })
                .collect(),
        )
    }

    pub fn validate(&self, m: &MdpModel) -> Result<()> {
        let n = m.num_states();
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            Policy::Deterministic(actions) => {
                if actions.len() != n {
                    return bad(format!(
                        "policy covers {} states, model has {n}",
                        actions.len()
                    ));
                }
                for (x, &a) in actions.iter().enumerate() {
                    m.transition(x, a)?;
                }
            }
            Policy::Stochastic(probs) => {
                if probs.len() != n {
                    return bad(format!(
                        "policy covers {} states, model has {n}",
                        probs.len()
                    ));
                }
                for (x, row) in probs.iter().enumerate() {
                    let total: f64 = row.iter().sum();
                    if row.len() != m.num_actions(x)
                        || row.iter().any(|&p| p < 0.0)
                        || (total - 1.0).abs() > 1e-12
                    {
                        return bad(format!(
                            "policy row for state {} is not a distribution over its actions",
                            x + 1
                        ));
                    }
                }
            }
            Policy::TimeVarying(actions) => {
                if actions.ncols() != n {
                    return bad(format!(
                        "policy covers {} states, model has {n}",
                        actions.ncols()
                    ));
                }
                for ((_, x), &a) in actions.indexed_iter() {
                    m.transition(x, a)?;
                }
            }
        }
        Ok(())
    }

    /// `(action, probability)` pairs at state `x` with `k ≥ 1` steps to go.
    fn choices(&self, k: usize, x: usize) -> Vec<(usize, f64)> {
        match self {
            Policy::Deterministic(actions) => vec![(actions[x], 1.0)],
            Policy::Stochastic(probs) => probs[x]
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, p)| p > 0.0)
                .collect(),
            Policy::TimeVarying(actions) => {
                let row = (k - 1).min(actions.nrows() - 1);
                vec![(actions[[row, x]], 1.0)]
            }
        }
    }
}

fn action_value(m: &MdpModel, prev: &[f64], x: usize, a: usize) -> f64 {
    m.dist(x, a)
        .outcomes()
        .iter()
        .map(|&(j, p)| p * (m.reward(x, a, j) + prev[j]))
        .sum()
}

/// Maximising backup at `x`; ties go to the smallest action index.
fn best_action(m: &MdpModel, prev: &[f64], x: usize) -> (usize, f64) {
    let mut best = (0, action_value(m, prev, x, 0));
    for a in 1..m.num_actions(x) {
        let q = action_value(m, prev, x, a);
        if q > best.1 + TIE_TOLERANCE * best.1.abs().max(1.0) {
            best = (a, q);
        }
    }
    best
}

/// Exact finite-horizon backward recursion from `v(0, ·) = 0`.
pub fn value_iteration(m: &MdpModel, horizon: usize) -> ValueTable {
    let n = m.num_states();
    let mut values = Array2::zeros((horizon + 1, n));
    let mut greedy = Array2::zeros((horizon, n));
    let mut prev = vec![0.0; n];
    for k in 1..=horizon {
        let mut next = vec![0.0; n];
        for x in 0..n {
            let (a, v) = best_action(m, &prev, x);
            next[x] = v;
            greedy[[k - 1, x]] = a;
        }
        values.row_mut(k).assign(&ndarray::ArrayView1::from(&next));
        prev = next;
    }
    ValueTable {
        values,
        objective: Objective::Custom,
        greedy: Some(greedy),
    }
}

/// Exact `v_π` table for `k = 0..=horizon`.
pub fn policy_evaluation(m: &MdpModel, policy: &Policy, horizon: usize) -> Result<ValueTable> {
    policy.validate(m)?;
    let n = m.num_states();
    let mut values = Array2::zeros((horizon + 1, n));
    let mut prev = vec![0.0; n];
    for k in 1..=horizon {
        let next: Vec<f64> = (0..n)
            .map(|x| {
                policy
                    .choices(k, x)
                    .into_iter()
                    .map(|(a, pa)| pa * action_value(m, &prev, x, a))
                    .sum()
            })
            .collect();
        values.row_mut(k).assign(&ndarray::ArrayView1::from(&next));
        prev = next;
    }
    Ok(ValueTable {
        values,
        objective: Objective::Custom,
        greedy: None,
    })
}

/// Limit of value iteration with its greedy stationary policy.
#[derive(Debug, Clone, PartialEq)]
pub struct InfiniteHorizonSolution {
    pub values: Vec<f64>,
    pub greedy: Vec<usize>,
    pub iterations: usize,
}

/// Iterates the optimality backup until the max-norm change drops below
/// `tolerance`, or fails after `max_iterations`.
pub fn value_iteration_infinite(
    m: &MdpModel,
    tolerance: f64,
    max_iterations: usize,
) -> Result<InfiniteHorizonSolution> {
    let n = m.num_states();
    let mut values = vec![0.0; n];
    let mut greedy = vec![0; n];
    let mut delta = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let mut next = vec![0.0; n];
        for x in 0..n {
            let (a, v) = best_action(m, &values, x);
            next[x] = v;
            greedy[x] = a;
        }
        delta = next
            .iter()
            .zip(&values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        values = next;
        if delta < tolerance {
            return Ok(InfiniteHorizonSolution {
                values,
                greedy,
                iterations: iteration,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: max_iterations,
        delta,
    })
}

/// State-local MDP of the augmented digraph with reward `sign · 𝕀(j = proxy)`.
pub fn reach_model(aug: &AugmentedDigraph, sign: f64) -> Result<MdpModel> {
    let proxy = aug.target_proxy;
    Ok(
        MdpModel::new(LocalActionMdp::new(aug.digraph.clone())?).attach_reward(move |_, _, j| {
            if j == proxy {
                sign
            } else {
                0.0
            }
        }),
    )
}

/// Supremum over stochastic paths of the probability of visiting `target`
/// within `k` steps, for `k = 0..=horizon` and every original node.
pub fn weak_reachability(
    sd: &StochasticDigraph,
    target: &TargetSet,
    horizon: usize,
) -> Result<ValueTable> {
    let aug = augment_for_target(sd, target)?;
    let mut table = value_iteration(&reach_model(&aug, 1.0)?, horizon);
    table.objective = Objective::WeakReach;
    Ok(table.restrict(sd.n()))
}

/// Infimum over stochastic paths of the same probability. Internally this
/// maximises the negated reward; the table holds the (non-negative)
/// probability and the greedy policy is the minimising one.
pub fn strong_recurrence(
    sd: &StochasticDigraph,
    target: &TargetSet,
    horizon: usize,
) -> Result<ValueTable> {
    let aug = augment_for_target(sd, target)?;
    let mut table = value_iteration(&reach_model(&aug, -1.0)?, horizon);
    table.values.mapv_inplace(|v| 0.0 - v);
    table.objective = Objective::StrongRecur;
    Ok(table.restrict(sd.n()))
}

/// Infinite-horizon weak reachability (`sign = 1`) or strong recurrence
/// (`sign = -1`) probabilities, restricted to the original nodes.
pub fn reach_limit(
    sd: &StochasticDigraph,
    target: &TargetSet,
    strong: bool,
) -> Result<InfiniteHorizonSolution> {
    let aug = augment_for_target(sd, target)?;
    let sign = if strong { -1.0 } else { 1.0 };
    let mut sol = value_iteration_infinite(
        &reach_model(&aug, sign)?,
        CONVERGENCE_TOLERANCE,
        MAX_ITERATIONS,
    )?;
    sol.values.truncate(sd.n());
    sol.greedy.truncate(sd.n());
    if strong {
        sol.values.iter_mut().for_each(|v| *v = 0.0 - *v);
    }
    Ok(sol)
}
