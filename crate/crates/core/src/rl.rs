//! Tabular SARSA and Q-learning with ε-greedy exploration.
//!
//! Both learners sample episodes from an [`MdpModel`] and are fully
//! determined by their [`RlParams`] (including the seed). Random numbers
//! come from ChaCha8 ([`RNG_ALGORITHM`]).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mdp::MdpModel;
use crate::reachability::Policy;

pub const RNG_ALGORITHM: &str = "ChaCha8";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlParams {
    pub learning_rate: f64,
    pub epsilon: f64,
    pub episodes: usize,
    pub horizon_cap: usize,
    pub seed: u64,
    pub discount: f64,
}

impl Default for RlParams {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            epsilon: 0.1,
            episodes: 10_000,
            horizon_cap: 1_000,
            seed: 0,
            discount: 1.0,
        }
    }
}

impl RlParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return bad("learning rate must lie in (0, 1]");
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return bad("epsilon must lie in [0, 1]");
        }
        if self.episodes == 0 || self.horizon_cap == 0 {
            return bad("episodes and horizon cap must be positive");
        }
        if !(self.discount > 0.0 && self.discount <= 1.0) {
            return bad("discount must lie in (0, 1]");
        }
        Ok(())
    }
}

/// Action values and visit counts for every `(state, action)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    q: Vec<Vec<f64>>,
    visits: Vec<Vec<u64>>,
}

impl QTable {
    pub fn zeros(m: &MdpModel) -> Self {
        let q: Vec<Vec<f64>> = (0..m.num_states())
            .map(|s| vec![0.0; m.num_actions(s)])
            .collect();
        let visits = q.iter().map(|row| vec![0; row.len()]).collect();
        Self { q, visits }
    }

    pub fn get(&self, state: usize, action: usize) -> f64 {
        self.q[state][action]
    }

    pub fn row(&self, state: usize) -> &[f64] {
        &self.q[state]
    }

    pub fn visits(&self, state: usize, action: usize) -> u64 {
        self.visits[state][action]
    }

    pub fn max_value(&self, state: usize) -> f64 {
        self.q[state]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Greedy action, ties broken uniformly at random.
    fn greedy<R: Rng>(&self, state: usize, rng: &mut R) -> usize {
        let best = self.max_value(state);
        let ties = self.q[state].iter().filter(|&&v| v == best).count();
        let pick = if ties > 1 { rng.gen_range(0..ties) } else { 0 };
        self.q[state]
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == best)
            .nth(pick)
            .map(|(a, _)| a)
            .expect("at least one maximiser")
    }

    fn epsilon_greedy<R: Rng>(&self, state: usize, epsilon: f64, rng: &mut R) -> usize {
        if rng.gen::<f64>() < epsilon {
            rng.gen_range(0..self.q[state].len())
        } else {
            self.greedy(state, rng)
        }
    }
}

/// Draws `(next state, reward)` for `(state, action)`.
pub fn sample_transition<R: Rng>(
    m: &MdpModel,
    state: usize,
    action: usize,
    rng: &mut R,
) -> (usize, f64) {
    let outcomes = m.dist(state, action).outcomes();
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut next = outcomes[outcomes.len() - 1].0;
    for &(j, p) in outcomes {
        acc += p;
        if u < acc {
            next = j;
            break;
        }
    }
    (next, m.reward(state, action, next))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next: usize,
}

/// Rolls out `policy` from `start` until a terminal state or `horizon_cap` steps.
pub fn sample_episode<R, F>(
    m: &MdpModel,
    start: usize,
    policy: &Policy,
    is_terminal: F,
    rng: &mut R,
    horizon_cap: usize,
) -> Vec<Step>
where
    R: Rng,
    F: Fn(usize) -> bool,
{
    let mut steps = Vec::new();
    let mut state = start;
    for t in 0..horizon_cap {
        if is_terminal(state) {
            break;
        }
        let action = match policy {
            Policy::Deterministic(actions) => actions[state],
            Policy::Stochastic(probs) => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let row = &probs[state];
                row.iter()
                    .position(|&p| {
                        acc += p;
                        u < acc
                    })
                    .unwrap_or(row.len() - 1)
            }
            Policy::TimeVarying(actions) => {
                let remaining = horizon_cap - t;
                actions[[(remaining - 1).min(actions.nrows() - 1), state]]
            }
        };
        let (next, reward) = sample_transition(m, state, action, rng);
        steps.push(Step {
            state,
            action,
            reward,
            next,
        });
        state = next;
    }
    steps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sarsa,
    #[serde(rename = "qlearning")]
    QLearning,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sarsa => "sarsa",
            Algorithm::QLearning => "qlearning",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RlOutcome {
    pub table: QTable,
    /// `max_a Q(start, a)` after training.
    pub estimate: f64,
    /// The estimate after each episode.
    pub trace: Vec<f64>,
}

pub fn q_learning<F: Fn(usize) -> bool>(
    m: &MdpModel,
    start: usize,
    is_terminal: F,
    params: &RlParams,
) -> Result<RlOutcome> {
    train(m, start, is_terminal, params, Algorithm::QLearning)
}

pub fn sarsa<F: Fn(usize) -> bool>(
    m: &MdpModel,
    start: usize,
    is_terminal: F,
    params: &RlParams,
) -> Result<RlOutcome> {
    train(m, start, is_terminal, params, Algorithm::Sarsa)
}

pub fn train<F: Fn(usize) -> bool>(
    m: &MdpModel,
    start: usize,
    is_terminal: F,
    params: &RlParams,
    algorithm: Algorithm,
) -> Result<RlOutcome> {
    params.validate()?;
    if start >= m.num_states() {
        return Err(Error::InvalidNode {
            node: start + 1,
            n: m.num_states(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut table = QTable::zeros(m);
    let mut trace = Vec::with_capacity(params.episodes);
    let (lr, eps, gamma) = (params.learning_rate, params.epsilon, params.discount);

    for _ in 0..params.episodes {
        let mut state = start;
        if !is_terminal(state) {
            let mut action = table.epsilon_greedy(state, eps, &mut rng);
            for _ in 0..params.horizon_cap {
                let (next, reward) = sample_transition(m, state, action, &mut rng);
                let (bootstrap, next_action) = if is_terminal(next) {
                    (0.0, None)
                } else {
                    let a2 = table.epsilon_greedy(next, eps, &mut rng);
                    let v = match algorithm {
                        Algorithm::Sarsa => table.get(next, a2),
                        Algorithm::QLearning => table.max_value(next),
                    };
                    (v, Some(a2))
                };
                let q = &mut table.q[state][action];
                *q += lr * (reward + gamma * bootstrap - *q);
                table.visits[state][action] += 1;
                match next_action {
                    Some(a2) => {
                        state = next;
                        action = a2;
                    }
                    None => break,
                }
            }
        }
        trace.push(if is_terminal(start) {
            0.0
        } else {
            table.max_value(start)
        });
    }
    let estimate = trace.last().copied().unwrap_or(0.0);
    Ok(RlOutcome {
        table,
        estimate,
        trace,
    })
}
