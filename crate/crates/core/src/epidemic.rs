//! Agent-based SIR epidemic on a motion graph, encoded as an MDP whose
//! actions are the joint moves of all agents.
//!
//! A joint state lists `(status, position)` per agent. Its index is the
//! mixed-radix number whose digit for agent `i` is
//! `(status - 1) * κ + position`, agent 1 being the most significant digit,
//! so index 0 (1-based index 1) is "everyone susceptible at position 1".
//!
//! One step applies the epidemic update to the *current* configuration and
//! moves every agent along the chosen edge of the motion graph:
//! a susceptible agent sharing its position with `c` infected agents becomes
//! infected with probability `1 - (1 - α)^c`, an infected agent recovers
//! with probability `β`, and recovered agents stay recovered.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, StochasticDigraph};
use crate::mdp::{ActionTuple, Dynamics, MdpModel, TransitionDistribution};
use crate::reachability::{value_iteration_infinite, CONVERGENCE_TOLERANCE, MAX_ITERATIONS};
use crate::rl::{train, Algorithm, RlParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Susceptible,
    Infected,
    Recovered,
}

impl Status {
    /// 1, 2 or 3.
    pub fn code(self) -> u8 {
        match self {
            Status::Susceptible => 1,
            Status::Infected => 2,
            Status::Recovered => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Status::Susceptible),
            2 => Some(Status::Infected),
            3 => Some(Status::Recovered),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentState {
    pub status: Status,
    /// 0-based motion-graph node.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SirState {
    pub agents: Vec<AgentState>,
}

impl SirState {
    pub fn new(agents: Vec<AgentState>) -> Self {
        Self { agents }
    }

    /// Number of agents that are infected or recovered.
    pub fn theta(&self) -> usize {
        self.agents
            .iter()
            .filter(|a| a.status != Status::Susceptible)
            .count()
    }

    pub fn has_infected(&self) -> bool {
        self.agents.iter().any(|a| a.status == Status::Infected)
    }

    /// Number of infected agents other than `i` at agent `i`'s position.
    fn infected_contacts(&self, i: usize) -> usize {
        let pos = self.agents[i].pos;
        self.agents
            .iter()
            .enumerate()
            .filter(|&(j, a)| j != i && a.pos == pos && a.status == Status::Infected)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SirConfig {
    agents: usize,
    alpha: f64,
    beta: f64,
    motion: Digraph,
}

impl SirConfig {
    pub fn new(agents: usize, alpha: f64, beta: f64, motion: Digraph) -> Result<Self> {
        if agents == 0 {
            return Err(Error::Config("at least one agent is required".into()));
        }
        for (name, p) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} = {p} is not a probability")));
            }
        }
        if motion.n() == 0 {
            return Err(Error::Config("motion graph has no nodes".into()));
        }
        if let Some(x) = (0..motion.n()).find(|&x| motion.out_degree(x) == 0) {
            return Err(Error::Config(format!(
                "motion node {} has out-degree 0; agents there cannot move",
                x + 1
            )));
        }
        Ok(Self {
            agents,
            alpha,
            beta,
            motion,
        })
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn motion(&self) -> &Digraph {
        &self.motion
    }

    pub fn kappa(&self) -> usize {
        self.motion.n()
    }

    /// `(3κ)^N`, or `None` when it does not fit in `usize`.
    pub fn state_count(&self) -> Option<usize> {
        (3 * self.kappa()).checked_pow(u32::try_from(self.agents).ok()?)
    }

    pub fn validate_state(&self, state: &SirState) -> Result<()> {
        if state.agents.len() != self.agents {
            return Err(Error::Config(format!(
                "state has {} agents, configuration has {}",
                state.agents.len(),
                self.agents
            )));
        }
        if let Some(a) = state.agents.iter().find(|a| a.pos >= self.kappa()) {
            return Err(Error::Config(format!(
                "position {} is outside the motion graph ({} nodes)",
                a.pos + 1,
                self.kappa()
            )));
        }
        Ok(())
    }

    /// 0-based mixed-radix index of `state`.
    pub fn encode(&self, state: &SirState) -> Result<usize> {
        self.validate_state(state)?;
        self.state_count()
            .ok_or_else(|| Error::Config("state space does not fit in a machine word".into()))?;
        let radix = 3 * self.kappa();
        Ok(state.agents.iter().fold(0, |acc, a| {
            acc * radix + (a.status.code() as usize - 1) * self.kappa() + a.pos
        }))
    }

    pub fn decode(&self, index: usize) -> Result<SirState> {
        let total = self
            .state_count()
            .ok_or_else(|| Error::Config("state space does not fit in a machine word".into()))?;
        if index >= total {
            return Err(Error::Config(format!(
                "state index {} is out of range (1..={total})",
                index + 1
            )));
        }
        let radix = 3 * self.kappa();
        let mut rest = index;
        let mut agents = vec![
            AgentState {
                status: Status::Susceptible,
                pos: 0
            };
            self.agents
        ];
        for slot in agents.iter_mut().rev() {
            let digit = rest % radix;
            rest /= radix;
            *slot = AgentState {
                status: Status::from_code((digit / self.kappa()) as u8 + 1)
                    .expect("digit below 3κ"),
                pos: digit % self.kappa(),
            };
        }
        Ok(SirState { agents })
    }

    /// Joint moves available in `state`, lexicographic with agent 1 most significant.
    pub fn actions(&self, state: &SirState) -> Result<Vec<Vec<usize>>> {
        self.validate_state(state)?;
        let choices: Vec<&[usize]> = state
            .agents
            .iter()
            .map(|a| self.motion.out_neighborhood(a.pos))
            .collect::<Result<_>>()?;
        let count: usize = choices.iter().map(|c| c.len()).product();
        Ok((0..count)
            .map(|mut index| {
                let mut moves = vec![0; choices.len()];
                for (slot, options) in moves.iter_mut().zip(&choices).rev() {
                    *slot = options[index % options.len()];
                    index /= options.len();
                }
                moves
            })
            .collect())
    }

    fn check_move(&self, state: &SirState, moves: &[usize]) -> Result<()> {
        self.validate_state(state)?;
        if moves.len() != self.agents {
            return Err(Error::InvalidParameter(format!(
                "move has {} entries for {} agents",
                moves.len(),
                self.agents
            )));
        }
        for (a, &to) in state.agents.iter().zip(moves) {
            if !self.motion.has_edge(a.pos, to) {
                return Err(Error::InvalidParameter(format!(
                    "no motion edge from {} to {}",
                    a.pos + 1,
                    to + 1
                )));
            }
        }
        Ok(())
    }

    /// Epidemic outcome distribution of agent `i` given the current state.
    fn status_outcomes(&self, state: &SirState, i: usize) -> Vec<(Status, f64)> {
        match state.agents[i].status {
            Status::Susceptible => {
                let c = state.infected_contacts(i) as i32;
                let p = 1.0 - (1.0 - self.alpha).powi(c);
                vec![(Status::Susceptible, 1.0 - p), (Status::Infected, p)]
            }
            Status::Infected => vec![
                (Status::Infected, 1.0 - self.beta),
                (Status::Recovered, self.beta),
            ],
            Status::Recovered => vec![(Status::Recovered, 1.0)],
        }
    }

    /// Successor states with probabilities, from the per-agent product law.
    pub fn successors(&self, state: &SirState, moves: &[usize]) -> Result<Vec<(SirState, f64)>> {
        self.check_move(state, moves)?;
        let per_agent: Vec<Vec<(Status, f64)>> = (0..self.agents)
            .map(|i| {
                self.status_outcomes(state, i)
                    .into_iter()
                    .filter(|&(_, p)| p > 0.0)
                    .collect()
            })
            .collect();
        let mut out = vec![(Vec::with_capacity(self.agents), 1.0)];
        for (outcomes, &to) in per_agent.iter().zip(moves) {
            out = out
                .into_iter()
                .flat_map(|(prefix, p): (Vec<AgentState>, f64)| {
                    outcomes.iter().map(move |&(status, q)| {
                        let mut next = prefix.clone();
                        next.push(AgentState { status, pos: to });
                        (next, p * q)
                    })
                })
                .collect();
        }
        Ok(out
            .into_iter()
            .map(|(agents, p)| (SirState { agents }, p))
            .collect())
    }

    /// Distribution over 0-based state indices.
    pub fn transition(&self, state: &SirState, moves: &[usize]) -> Result<TransitionDistribution> {
        let succ = self.successors(state, moves)?;
        let indexed = succ
            .iter()
            .map(|(s, p)| Ok((self.encode(s)?, *p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransitionDistribution::from_weighted(indexed))
    }

    /// Number of binary draws per step: `N` infection draws and one recovery
    /// draw per agent.
    pub fn draw_count(&self) -> usize {
        self.agents * self.agents + self.agents
    }

    /// Successor under one explicit draw. `draws` is laid out as
    /// `[u_1, v_1, …, u_N, v_N]` with `u_i` holding `N` entries; `true`
    /// means the draw took value 2 (contact transmits / agent recovers).
    pub fn draw_successor(
        &self,
        state: &SirState,
        moves: &[usize],
        draws: &[bool],
    ) -> Result<SirState> {
        self.check_move(state, moves)?;
        let n = self.agents;
        if draws.len() != self.draw_count() {
            return Err(Error::InvalidParameter(format!(
                "expected {} draws, got {}",
                self.draw_count(),
                draws.len()
            )));
        }
        let agents = (0..n)
            .map(|i| {
                let block = &draws[i * (n + 1)..(i + 1) * (n + 1)];
                let (u, v) = (&block[..n], block[n]);
                let me = state.agents[i];
                let status = match me.status {
                    Status::Susceptible => {
                        let hit = (0..n).any(|j| {
                            j != i
                                && state.agents[j].pos == me.pos
                                && state.agents[j].status == Status::Infected
                                && u[j]
                        });
                        if hit {
                            Status::Infected
                        } else {
                            Status::Susceptible
                        }
                    }
                    Status::Infected => {
                        if v {
                            Status::Recovered
                        } else {
                            Status::Infected
                        }
                    }
                    Status::Recovered => Status::Recovered,
                };
                AgentState {
                    status,
                    pos: moves[i],
                }
            })
            .collect();
        Ok(SirState { agents })
    }

    /// Probability of one draw vector.
    pub fn draw_probability(&self, draws: &[bool]) -> f64 {
        let n = self.agents;
        draws
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let p = if k % (n + 1) == n {
                    self.beta
                } else {
                    self.alpha
                };
                if d {
                    p
                } else {
                    1.0 - p
                }
            })
            .product()
    }

    fn draws_of(&self, omega: usize) -> Vec<bool> {
        let m = self.draw_count();
        (0..m).map(|k| (omega >> (m - 1 - k)) & 1 == 1).collect()
    }

    /// The full stochastic digraph over all `(3κ)^N` joint states with one
    /// edge set per draw vector (`2^(N²+N)` of them). Edge set `ω` links
    /// every state to its successor under every joint move and draw `ω`.
    ///
    /// Only feasible for tiny populations; intended for cross-checking the
    /// analytic transition law.
    pub fn explicit_digraph(&self) -> Result<StochasticDigraph> {
        let m = self.draw_count();
        let n_states = self
            .state_count()
            .filter(|&c| c <= 1 << 16 && m <= 16)
            .ok_or_else(|| {
                Error::Config("explicit construction is limited to tiny populations".into())
            })?;
        let states = (0..n_states)
            .map(|x| self.decode(x))
            .collect::<Result<Vec<_>>>()?;
        let moves: Vec<Vec<Vec<usize>>> = states
            .iter()
            .map(|s| self.actions(s))
            .collect::<Result<_>>()?;
        let mut graphs = Vec::with_capacity(1 << m);
        let mut mu = Vec::with_capacity(1 << m);
        for omega in 0..1usize << m {
            let draws = self.draws_of(omega);
            let mut edges = Vec::new();
            for (x, s) in states.iter().enumerate() {
                for mv in &moves[x] {
                    edges.push((x, self.encode(&self.draw_successor(s, mv, &draws)?)?));
                }
            }
            graphs.push(Digraph::new(n_states, edges)?);
            mu.push(self.draw_probability(&draws));
        }
        StochasticDigraph::new(n_states, graphs, mu)
    }

    /// The tuple of the explicit digraph that applies `moves` whatever the
    /// draw, i.e. `ξ_ω = successor(state, moves, ω)` for every `ω`.
    pub fn explicit_action_tuple(&self, state: &SirState, moves: &[usize]) -> Result<ActionTuple> {
        (0..1usize << self.draw_count())
            .map(|omega| {
                let next = self.draw_successor(state, moves, &self.draws_of(omega))?;
                Ok(Some(self.encode(&next)?))
            })
            .collect()
    }
}

/// The SIR MDP restricted to the states reachable from an initial state.
/// Local state 0 is the initial state.
#[derive(Debug, Clone)]
pub struct SirMdp {
    config: SirConfig,
    states: Vec<SirState>,
    global: Vec<usize>,
    local: HashMap<usize, usize>,
    moves: Vec<Vec<Vec<usize>>>,
    table: Vec<Vec<TransitionDistribution>>,
}

impl SirMdp {
    /// Breadth-first closure of `x0` under all joint moves.
    pub fn build(config: &SirConfig, x0: &SirState) -> Result<Self> {
        let root = config.encode(x0)?;
        let mut states = vec![x0.clone()];
        let mut global = vec![root];
        let mut local = HashMap::from([(root, 0usize)]);
        let mut moves = Vec::new();
        let mut table = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let state = states[i].clone();
            let acts = config.actions(&state)?;
            let mut row = Vec::with_capacity(acts.len());
            for mv in &acts {
                let succ = config.successors(&state, mv)?;
                let mut weighted = Vec::with_capacity(succ.len());
                for (s, p) in succ {
                    let g = config.encode(&s)?;
                    let id = *local.entry(g).or_insert_with(|| {
                        states.push(s);
                        global.push(g);
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    });
                    weighted.push((id, p));
                }
                row.push(TransitionDistribution::from_weighted(weighted));
            }
            // BFS pops in index order, so rows line up with local indices.
            debug_assert_eq!(table.len(), i);
            moves.push(acts);
            table.push(row);
        }
        Ok(Self {
            config: config.clone(),
            states,
            global,
            local,
            moves,
            table,
        })
    }

    pub fn config(&self) -> &SirConfig {
        &self.config
    }

    pub fn state(&self, local: usize) -> &SirState {
        &self.states[local]
    }

    /// 0-based global index of a local state.
    pub fn global_index(&self, local: usize) -> usize {
        self.global[local]
    }

    pub fn local_index(&self, state: &SirState) -> Option<usize> {
        self.config
            .encode(state)
            .ok()
            .and_then(|g| self.local.get(&g).copied())
    }

    pub fn moves(&self, local: usize) -> &[Vec<usize>] {
        &self.moves[local]
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.theta() as f64).collect()
    }

    pub fn is_terminal(&self, local: usize) -> bool {
        !self.states[local].has_infected()
    }

    /// `ς_0 … ς_K`: expected θ under independent uniform moves of every agent.
    pub fn expected_infected(&self, horizon: usize) -> Vec<f64> {
        let theta = self.thetas();
        let mut rho = vec![0.0; self.states.len()];
        rho[0] = 1.0;
        let mut out = Vec::with_capacity(horizon + 1);
        for k in 0..=horizon {
            out.push(rho.iter().zip(&theta).map(|(p, t)| p * t).sum());
            if k == horizon {
                break;
            }
            let mut next = vec![0.0; rho.len()];
            for (i, &p) in rho.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                let share = p / self.table[i].len() as f64;
                for d in &self.table[i] {
                    for &(j, q) in d.outcomes() {
                        next[j] += share * q;
                    }
                }
            }
            rho = next;
        }
        out
    }

    /// The MDP with reward `sign · (θ(j) − θ(i))`.
    pub fn increment_model(self: &Arc<Self>, sign: f64) -> MdpModel {
        let theta = Arc::new(self.thetas());
        MdpModel::from_shared(Arc::clone(self) as Arc<dyn Dynamics>)
            .attach_reward(move |i, _, j| sign * (theta[j] - theta[i]))
    }
}

impl Dynamics for SirMdp {
    fn num_states(&self) -> usize {
        self.states.len()
    }

    fn num_actions(&self, state: usize) -> usize {
        self.table[state].len()
    }

    fn distribution(&self, state: usize, action: usize) -> &TransitionDistribution {
        &self.table[state][action]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Upper,
    Lower,
}

/// Asymptotic bounds on the cumulative number of infected agents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfectedBounds {
    pub theta0: f64,
    /// Optimal value for reward `θ(j) − θ(i)` (≥ 0).
    pub upper_increment: f64,
    /// Optimal value for reward `θ(i) − θ(j)` (≤ 0).
    pub lower_increment: f64,
    /// `θ(x0) + upper_increment`.
    pub upper: f64,
    /// `θ(x0) − lower_increment`.
    pub lower: f64,
}

impl InfectedBounds {
    pub fn get(&self, mode: BoundMode) -> f64 {
        match mode {
            BoundMode::Upper => self.upper,
            BoundMode::Lower => self.lower,
        }
    }
}

/// Optimal increment value for one mode, by infinite-horizon value iteration.
pub fn increment_value(mdp: &Arc<SirMdp>, mode: BoundMode) -> Result<f64> {
    let sign = match mode {
        BoundMode::Upper => 1.0,
        BoundMode::Lower => -1.0,
    };
    let sol = value_iteration_infinite(
        &mdp.increment_model(sign),
        CONVERGENCE_TOLERANCE,
        MAX_ITERATIONS,
    )?;
    Ok(sol.values[0])
}

pub fn infected_bounds_for(mdp: &Arc<SirMdp>) -> Result<InfectedBounds> {
    let theta0 = mdp.state(0).theta() as f64;
    let upper_increment = increment_value(mdp, BoundMode::Upper)?;
    let lower_increment = increment_value(mdp, BoundMode::Lower)?;
    Ok(InfectedBounds {
        theta0,
        upper_increment,
        lower_increment,
        upper: theta0 + upper_increment,
        lower: theta0 - lower_increment,
    })
}

pub fn infected_bounds(config: &SirConfig, x0: &SirState) -> Result<InfectedBounds> {
    infected_bounds_for(&Arc::new(SirMdp::build(config, x0)?))
}

pub fn infected_bound(config: &SirConfig, x0: &SirState, mode: BoundMode) -> Result<f64> {
    let mdp = Arc::new(SirMdp::build(config, x0)?);
    let theta0 = x0.theta() as f64;
    let v = increment_value(&mdp, mode)?;
    Ok(match mode {
        BoundMode::Upper => theta0 + v,
        BoundMode::Lower => theta0 - v,
    })
}

pub fn expected_infected_uniform(
    config: &SirConfig,
    x0: &SirState,
    horizon: usize,
) -> Result<Vec<f64>> {
    Ok(SirMdp::build(config, x0)?.expected_infected(horizon))
}

/// Learned estimates of both increment values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RlBoundEstimates {
    pub upper_increment: f64,
    pub lower_increment: f64,
    pub upper: f64,
    pub lower: f64,
}

/// Runs `algorithm` once per objective with the same parameters. Episodes
/// end when no agent is infected.
pub fn rl_bound_estimates(
    mdp: &Arc<SirMdp>,
    algorithm: Algorithm,
    params: &RlParams,
) -> Result<RlBoundEstimates> {
    let theta0 = mdp.state(0).theta() as f64;
    let estimate = |sign: f64| -> Result<f64> {
        let model = mdp.increment_model(sign);
        let m = Arc::clone(mdp);
        Ok(train(&model, 0, move |s| m.is_terminal(s), params, algorithm)?.estimate)
    };
    let upper_increment = estimate(1.0)?;
    let lower_increment = estimate(-1.0)?;
    Ok(RlBoundEstimates {
        upper_increment,
        lower_increment,
        upper: theta0 + upper_increment,
        lower: theta0 - lower_increment,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloSummary {
    pub samples: usize,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

/// Samples per work unit. Fixed so results do not depend on the thread count.
const MC_CHUNK: usize = 1024;

/// Simulates the agents directly: independent transmission draws per
/// infected contact, recovery draws, then uniform moves. Sample `s` uses
/// ChaCha8 seeded with `seed` on stream `s`.
pub fn monte_carlo(
    config: &SirConfig,
    x0: &SirState,
    horizon: usize,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<MonteCarloSummary> {
    config.validate_state(x0)?;
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "at least one sample is required".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let chunks: Vec<(usize, usize)> = (0..samples)
        .step_by(MC_CHUNK)
        .map(|start| (start, (start + MC_CHUNK).min(samples)))
        .collect();
    let partials: Vec<(Vec<f64>, Vec<f64>)> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(start, end)| {
                let mut sum = vec![0.0; horizon + 1];
                let mut sumsq = vec![0.0; horizon + 1];
                for s in start..end {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(s as u64);
                    for (k, theta) in simulate(config, x0, horizon, &mut rng)
                        .into_iter()
                        .enumerate()
                    {
                        let t = theta as f64;
                        sum[k] += t;
                        sumsq[k] += t * t;
                    }
                }
                (sum, sumsq)
            })
            .collect()
    });
    let mut sum = vec![0.0; horizon + 1];
    let mut sumsq = vec![0.0; horizon + 1];
    for (s, q) in &partials {
        for k in 0..=horizon {
            sum[k] += s[k];
            sumsq[k] += q[k];
        }
    }
    let n = samples as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let stderr = if samples < 2 {
        vec![0.0; horizon + 1]
    } else {
        sumsq
            .iter()
            .zip(&mean)
            .map(|(q, m)| {
                let var = ((q - n * m * m) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            })
            .collect()
    };
    Ok(MonteCarloSummary {
        samples,
        mean,
        stderr,
    })
}

/// One trajectory of θ for steps `0..=horizon`.
pub fn simulate<R: Rng>(
    config: &SirConfig,
    x0: &SirState,
    horizon: usize,
    rng: &mut R,
) -> Vec<usize> {
    let n = config.agents;
    let mut state = x0.clone();
    let mut thetas = Vec::with_capacity(horizon + 1);
    thetas.push(state.theta());
    for _ in 0..horizon {
        let mut next = state.clone();
        for i in 0..n {
            let me = state.agents[i];
            next.agents[i].status = match me.status {
                Status::Susceptible => {
                    let mut infected = false;
                    for j in 0..n {
                        let other = state.agents[j];
                        if j != i && other.pos == me.pos && other.status == Status::Infected {
                            infected |= rng.gen::<f64>() < config.alpha;
                        }
                    }
                    if infected {
                        Status::Infected
                    } else {
                        Status::Susceptible
                    }
                }
                Status::Infected if rng.gen::<f64>() < config.beta => Status::Recovered,
                other => other,
            };
            let options = config.motion.succ(me.pos);
            next.agents[i].pos = options[rng.gen_range(0..options.len())];
        }
        state = next;
        thetas.push(state.theta());
    }
    thetas
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Five-node ring 1–2–4–5–3–1, both directions, no self-loops.
    pub fn ring_motion() -> Digraph {
        let undirected = [(0, 1), (1, 3), (3, 4), (4, 2), (0, 2)];
        Digraph::new(5, undirected.iter().flat_map(|&(u, v)| [(u, v), (v, u)])).unwrap()
    }

    pub fn ring_config() -> SirConfig {
        SirConfig::new(3, 0.7, 0.3, ring_motion()).unwrap()
    }

    pub fn agent(status: u8, pos: usize) -> AgentState {
        AgentState {
            status: Status::from_code(status).unwrap(),
            pos: pos - 1,
        }
    }

    pub fn ring_x0() -> SirState {
        SirState::new(vec![agent(2, 1), agent(1, 1), agent(1, 2)])
    }

    /// Two positions, complete with self-loops.
    pub fn tiny_config(alpha: f64, beta: f64) -> SirConfig {
        let motion = Digraph::new(2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        SirConfig::new(2, alpha, beta, motion).unwrap()
    }
}
