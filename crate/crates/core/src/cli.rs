//! Command-line front end. [`dispatch`] parses arguments, runs one analysis,
//! writes its output and a run manifest, and returns the exit code.
//!
//! Exit codes: 0 on success, 1 on usage, file or parse errors, 2 when the
//! input violates a precondition of the analysis.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{compute_bound_matrices, reach_recursion, ReachKind};
use crate::decomposition::{enumerate_transition_matrices, DEFAULT_CAP};
use crate::epidemic::{infected_bounds_for, monte_carlo, rl_bound_estimates, SirMdp, SirState};
use crate::error::Error;
use crate::format::{format_decimal, format_probability};
use crate::graph::StochasticDigraph;
use crate::io::{graph_to_json, load_graph, load_sir};
use crate::mdp::{local_actions, LocalActionMdp};
use crate::reachability::{augment_for_target, reach_model, strong_recurrence, weak_reachability};
use crate::rl::{train, Algorithm, RlParams, RNG_ALGORITHM};
use crate::target::TargetSet;

#[derive(Debug, Parser)]
#[command(
    name = "stochreach",
    version,
    about = "Reachability analysis on stochastic digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Print probabilities as decimals instead of fractions.
    #[arg(long, global = true)]
    decimal: bool,

    /// Worker threads for Monte Carlo and seed sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Write the run manifest to FILE instead of stderr.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Check that no positive-probability edge set has a sink.
    ///
    /// Prints "ok" or the offending (node, edge set) pairs. With --augment,
    /// prints the repaired graph in canonical JSON instead.
    Validate(ValidateArgs),
    /// Lower and upper bound matrices L and M.
    ///
    /// JSON: {"lower": [[..]], "upper": [[..]]}. CSV columns: matrix,i,j,value.
    Bounds(BoundsArgs),
    /// Max/min reach recursion table. CSV columns: k,node,value.
    Recursion(RecursionArgs),
    /// Transition-matrix set as a JSON array of matrices.
    Pset(PsetArgs),
    /// State-local MDP transition table. CSV columns: i,a,j,p.
    Mdp(GraphArgs),
    /// Weak reachability or strong recurrence by value iteration. CSV columns: k,node,value.
    Reach(ReachArgs),
    /// SARSA or Q-learning estimate of a reach probability.
    ///
    /// JSON: {"algo", "seed", "episodes", "estimate", "start", "mode"}, or an
    /// array of them when --runs > 1. Trace CSV columns: episode,estimate.
    Rl(RlArgs),
    /// Epidemic analyses.
    #[command(subcommand)]
    Sir(SirCommand),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum SirCommand {
    /// Bounds on cumulative infections and the uniform-motion expectation.
    /// CSV columns: k,expected,lower,upper.
    Analyze(SirAnalyzeArgs),
    /// Monte Carlo estimate of cumulative infections. CSV columns: k,mean,stderr.
    Simulate(SirSimulateArgs),
    /// SARSA or Q-learning estimates of both bounds, next to the exact values.
    Rl(SirRlArgs),
}

#[derive(Debug, Args, Serialize)]
struct GraphArgs {
    /// Stochastic digraph JSON file.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct ValidateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    /// Add an absorbing node receiving every sink.
    #[arg(long)]
    augment: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: MatrixFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Upper,
    Lower,
}

#[derive(Debug, Args, Serialize)]
struct RecursionArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    /// Comma-separated 1-based target nodes.
    #[arg(long)]
    target: String,
    #[arg(long)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "upper")]
    kind: Kind,
}

#[derive(Debug, Args, Serialize)]
struct PsetArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    /// Refuse to enumerate more matrices than this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Drop repeated matrices.
    #[arg(long)]
    dedup: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Weak,
    Strong,
}

#[derive(Debug, Args, Serialize)]
struct ReachArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    #[arg(long)]
    target: String,
    #[arg(long)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "weak")]
    mode: Mode,
    /// Also write the greedy time-varying policy as JSON.
    #[arg(long, value_name = "FILE")]
    policy_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Algo {
    Sarsa,
    Qlearning,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Sarsa => Algorithm::Sarsa,
            Algo::Qlearning => Algorithm::QLearning,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct LearnArgs {
    #[arg(long, value_enum, default_value = "qlearning")]
    algo: Algo,
    #[arg(long, default_value_t = 10_000)]
    episodes: usize,
    #[arg(long, default_value_t = 0.1)]
    lr: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Episode length cap.
    #[arg(long, default_value_t = 1000)]
    horizon_cap: usize,
    /// Random seed; chosen at random and reported in the manifest when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Independent runs with seeds seed, seed+1, ….
    #[arg(long, default_value_t = 1)]
    runs: usize,
}

impl LearnArgs {
    fn params(&self, seed: u64) -> RlParams {
        RlParams {
            learning_rate: self.lr,
            epsilon: self.epsilon,
            episodes: self.episodes,
            horizon_cap: self.horizon_cap,
            seed,
            ..RlParams::default()
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct RlArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: GraphArgs,
    #[arg(long)]
    target: String,
    /// 1-based start node.
    #[arg(long, default_value_t = 1)]
    start: usize,
    #[arg(long, value_enum, default_value = "weak")]
    mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    learn: LearnArgs,
    /// Write the per-episode estimate of the first run as CSV.
    #[arg(long, value_name = "FILE")]
    trace_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct SirInput {
    /// SIR configuration JSON file.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct SirAnalyzeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: SirInput,
    #[arg(long, default_value_t = 50)]
    horizon: usize,
}

#[derive(Debug, Args, Serialize)]
struct SirSimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: SirInput,
    #[arg(long, default_value_t = 50)]
    horizon: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
struct SirRlArgs {
    #[command(flatten)]
    #[serde(flatten)]
    input: SirInput,
    #[command(flatten)]
    #[serde(flatten)]
    learn: LearnArgs,
}

/// Record of one run, sufficient to repeat it.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub argv: Vec<String>,
    /// Arguments that repeat the run, with the seed made explicit.
    pub replay: Vec<String>,
    /// SHA-256 of every input file, keyed by path.
    pub inputs: serde_json::Map<String, Value>,
    pub params: Value,
    pub seed: Option<u64>,
    pub rng: &'static str,
    pub tool_version: &'static str,
    pub output_sha256: String,
    pub wall_clock_seconds: f64,
    pub timestamp: u64,
}

struct Run {
    inputs: serde_json::Map<String, Value>,
    seed: Option<u64>,
    seed_was_given: bool,
    decimal: bool,
    threads: usize,
}

impl Run {
    fn hash_input(&mut self, path: &Path) -> Result<(), Error> {
        let bytes = std::fs::read(path).map_err(|source| Error::Read {
            path: path.display().to_string(),
            source,
        })?;
        self.inputs.insert(
            path.display().to_string(),
            Value::String(hex::encode(Sha256::digest(&bytes))),
        );
        Ok(())
    }

    fn graph(&mut self, args: &GraphArgs) -> Result<StochasticDigraph, Error> {
        self.hash_input(&args.graph)?;
        load_graph(&args.graph)
    }

    fn seed(&mut self, given: Option<u64>) -> u64 {
        let seed = given.unwrap_or_else(rand::random);
        self.seed = Some(seed);
        self.seed_was_given = given.is_some();
        seed
    }

    fn prob(&self, x: f64) -> String {
        format_probability(x, self.decimal)
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Error> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Bounds(_) => "bounds",
        Command::Recursion(_) => "recursion",
        Command::Pset(_) => "pset",
        Command::Mdp(_) => "mdp",
        Command::Reach(_) => "reach",
        Command::Rl(_) => "rl",
        Command::Sir(SirCommand::Analyze(_)) => "sir analyze",
        Command::Sir(SirCommand::Simulate(_)) => "sir simulate",
        Command::Sir(SirCommand::Rl(_)) => "sir rl",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Read { .. } | Error::Io(_) | Error::Parse { .. } => 1,
        _ => 2,
    }
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out` (unless `--out` is given) and diagnostics and the
/// manifest to `err` (unless `--manifest` is given).
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            if informational {
                let _ = out.write_all(text.as_bytes());
                return 0;
            }
            let _ = err.write_all(text.as_bytes());
            return 1;
        }
    };
    let started = Instant::now();
    let mut run = Run {
        inputs: serde_json::Map::new(),
        seed: None,
        seed_was_given: true,
        decimal: cli.decimal,
        threads: cli.threads,
    };
    let result = execute(&cli.command, &mut run);
    let text = match result {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 1;
        }
    } else if out.write_all(text.as_bytes()).is_err() {
        return 1;
    }

    let mut replay = argv.clone();
    if !run.seed_was_given {
        if let Some(seed) = run.seed {
            replay.extend(["--seed".to_string(), seed.to_string()]);
        }
    }
    let manifest = RunManifest {
        subcommand: subcommand_name(&cli.command).to_string(),
        argv,
        replay,
        inputs: run.inputs,
        params: json!({
            "command": serde_json::to_value(&cli.command).unwrap_or(Value::Null),
            "decimal": cli.decimal,
            "threads": cli.threads,
        }),
        seed: run.seed,
        rng: RNG_ALGORITHM,
        tool_version: env!("CARGO_PKG_VERSION"),
        output_sha256: hex::encode(Sha256::digest(text.as_bytes())),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
    };
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = err.write_all(body.as_bytes());
        }
    }
    0
}

fn execute(command: &Command, run: &mut Run) -> Result<String, Error> {
    match command {
        Command::Validate(a) => validate(a, run),
        Command::Bounds(a) => bounds(a, run),
        Command::Recursion(a) => recursion(a, run),
        Command::Pset(a) => pset(a, run),
        Command::Mdp(a) => mdp_table(a, run),
        Command::Reach(a) => reach(a, run),
        Command::Rl(a) => rl(a, run),
        Command::Sir(SirCommand::Analyze(a)) => sir_analyze(a, run),
        Command::Sir(SirCommand::Simulate(a)) => sir_simulate(a, run),
        Command::Sir(SirCommand::Rl(a)) => sir_rl(a, run),
    }
}

fn validate(a: &ValidateArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    if a.augment {
        return Ok(graph_to_json(&sd.augment_sink()));
    }
    sd.require_standing_assumption()?;
    Ok("ok\n".to_string())
}

fn matrix_json(m: &Array2<f64>, run: &Run) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|&x| {
                            if run.decimal {
                                json!(x)
                            } else {
                                json!(run.prob(x))
                            }
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// A matrix with one row per line.
fn rows_json(m: &Value) -> String {
    let rows: Vec<String> = m
        .as_array()
        .expect("matrix")
        .iter()
        .map(|r| format!("    {}", serde_json::to_string(r).expect("json")))
        .collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

fn bounds(a: &BoundsArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    let b = compute_bound_matrices(&sd);
    Ok(match a.format {
        MatrixFormat::Json => {
            format!(
                "{{\n  \"lower\": {},\n  \"upper\": {}\n}}\n",
                rows_json(&matrix_json(&b.lower, run)),
                rows_json(&matrix_json(&b.upper, run))
            )
        }
        MatrixFormat::Csv => {
            let mut s = String::from("matrix,i,j,value\n");
            for (name, m) in [("L", &b.lower), ("M", &b.upper)] {
                for ((i, j), &x) in m.indexed_iter() {
                    s += &format!("{name},{},{},{}\n", i + 1, j + 1, run.prob(x));
                }
            }
            s
        }
    })
}

fn table_csv(values: &Array2<f64>, run: &Run) -> String {
    let mut s = String::from("k,node,value\n");
    for ((k, x), &v) in values.indexed_iter() {
        s += &format!("{k},{},{}\n", x + 1, run.prob(v));
    }
    s
}

fn recursion(a: &RecursionArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    let target = TargetSet::parse_one_based(&a.target)?;
    let kind = match a.kind {
        Kind::Upper => ReachKind::Upper,
        Kind::Lower => ReachKind::Lower,
    };
    Ok(table_csv(
        &reach_recursion(&sd, &target, a.horizon, kind)?.values,
        run,
    ))
}

fn pset(a: &PsetArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    let set = enumerate_transition_matrices(&sd, a.cap)?;
    let matrices = if a.dedup {
        set.deduplicated()
    } else {
        set.matrices
    };
    let v = Value::Array(matrices.iter().map(|m| matrix_json(m, run)).collect());
    Ok(serde_json::to_string(&v).expect("json") + "\n")
}

fn mdp_table(a: &GraphArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(a)?;
    let mut s = String::from("i,a,j,p\n");
    for (i, act, j, p) in LocalActionMdp::new(sd)?.listing() {
        s += &format!("{},{},{},{}\n", i + 1, act + 1, j + 1, run.prob(p));
    }
    Ok(s)
}

fn reach(a: &ReachArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    let target = TargetSet::parse_one_based(&a.target)?;
    let table = match a.mode {
        Mode::Weak => weak_reachability(&sd, &target, a.horizon)?,
        Mode::Strong => strong_recurrence(&sd, &target, a.horizon)?,
    };
    if let (Some(path), Some(greedy)) = (&a.policy_out, &table.greedy) {
        let aug = augment_for_target(&sd, &target)?;
        let spaces = (0..sd.n())
            .map(|x| local_actions(&aug.digraph, x))
            .collect::<Result<Vec<_>, _>>()?;
        let node_label = |j: usize| {
            if j == aug.target_proxy {
                json!("target")
            } else {
                json!(j + 1)
            }
        };
        let steps: Vec<Value> = greedy
            .rows()
            .into_iter()
            .enumerate()
            .map(|(k, row)| {
                let actions: Vec<Value> = row
                    .iter()
                    .enumerate()
                    .map(|(x, &act)| {
                        let tuple: Vec<Value> = spaces[x].tuples[act]
                            .iter()
                            .map(|c| c.map_or(Value::Null, node_label))
                            .collect();
                        json!({"node": x + 1, "action": act + 1, "tuple": tuple})
                    })
                    .collect();
                json!({"steps_to_go": k + 1, "actions": actions})
            })
            .collect();
        let doc = json!({
            "mode": a.mode,
            "target": target.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "horizon": a.horizon,
            "policy": steps,
        });
        std::fs::write(
            path,
            serde_json::to_string_pretty(&doc).expect("json") + "\n",
        )?;
    }
    Ok(table_csv(&table.values, run))
}

fn rl(a: &RlArgs, run: &mut Run) -> Result<String, Error> {
    let sd = run.graph(&a.input)?;
    let target = TargetSet::parse_one_based(&a.target)?;
    if a.start == 0 || a.start > sd.n() {
        return Err(Error::InvalidNode {
            node: a.start,
            n: sd.n(),
        });
    }
    let aug = augment_for_target(&sd, &target)?;
    let sign = match a.mode {
        Mode::Weak => 1.0,
        Mode::Strong => -1.0,
    };
    let model = reach_model(&aug, sign)?;
    let (proxy, terminal) = (aug.target_proxy, aug.terminal);
    let seed = run.seed(a.learn.seed);
    let algo = Algorithm::from(a.learn.algo);
    let outcomes = run.pool()?.install(|| {
        (0..a.learn.runs.max(1) as u64)
            .into_par_iter()
            .map(|r| {
                let params = a.learn.params(seed.wrapping_add(r));
                train(
                    &model,
                    a.start - 1,
                    |s| s == proxy || s == terminal,
                    &params,
                    algo,
                )
                .map(|o| (params.seed, o))
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    if let Some(path) = &a.trace_out {
        let mut s = String::from("episode,estimate\n");
        for (e, v) in outcomes[0].1.trace.iter().enumerate() {
            s += &format!("{},{}\n", e + 1, format_decimal(sign * v));
        }
        std::fs::write(path, s)?;
    }
    let docs: Vec<Value> = outcomes
        .iter()
        .map(|(seed, o)| {
            json!({
                "algo": algo.name(),
                "seed": seed,
                "episodes": a.learn.episodes,
                "estimate": 0.0 + sign * o.estimate,
                "start": a.start,
                "mode": a.mode,
            })
        })
        .collect();
    Ok(single_or_array(docs))
}

fn single_or_array(mut docs: Vec<Value>) -> String {
    let v = if docs.len() == 1 {
        docs.remove(0)
    } else {
        Value::Array(docs)
    };
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn describe_state(s: &SirState) -> String {
    s.agents
        .iter()
        .map(|a| format!("({},{})", a.status.code(), a.pos + 1))
        .collect::<Vec<_>>()
        .join(",")
}

fn load_sir_input(
    input: &SirInput,
    run: &mut Run,
) -> Result<(crate::epidemic::SirConfig, SirState), Error> {
    run.hash_input(&input.config)?;
    let (cfg, x0) = load_sir(&input.config)?;
    let index = cfg.encode(&x0)?;
    run.inputs.insert(
        "x0".to_string(),
        json!({"agents": describe_state(&x0), "index": index + 1}),
    );
    Ok((cfg, x0))
}

fn sir_analyze(a: &SirAnalyzeArgs, run: &mut Run) -> Result<String, Error> {
    let (cfg, x0) = load_sir_input(&a.input, run)?;
    let mdp = Arc::new(SirMdp::build(&cfg, &x0)?);
    let b = infected_bounds_for(&mdp)?;
    let mut s = String::from("k,expected,lower,upper\n");
    for (k, e) in mdp.expected_infected(a.horizon).into_iter().enumerate() {
        s += &format!(
            "{k},{},{},{}\n",
            format_decimal(e),
            format_decimal(b.lower),
            format_decimal(b.upper)
        );
    }
    Ok(s)
}

fn sir_simulate(a: &SirSimulateArgs, run: &mut Run) -> Result<String, Error> {
    let (cfg, x0) = load_sir_input(&a.input, run)?;
    let seed = run.seed(a.seed);
    let mc = monte_carlo(&cfg, &x0, a.horizon, a.samples, seed, run.threads)?;
    let mut s = String::from("k,mean,stderr\n");
    for (k, (m, e)) in mc.mean.iter().zip(&mc.stderr).enumerate() {
        s += &format!("{k},{},{}\n", format_decimal(*m), format_decimal(*e));
    }
    Ok(s)
}

fn sir_rl(a: &SirRlArgs, run: &mut Run) -> Result<String, Error> {
    let (cfg, x0) = load_sir_input(&a.input, run)?;
    let mdp = Arc::new(SirMdp::build(&cfg, &x0)?);
    let exact = infected_bounds_for(&mdp)?;
    let seed = run.seed(a.learn.seed);
    let algo = Algorithm::from(a.learn.algo);
    let estimates = run.pool()?.install(|| {
        (0..a.learn.runs.max(1) as u64)
            .into_par_iter()
            .map(|r| {
                let params = a.learn.params(seed.wrapping_add(r));
                rl_bound_estimates(&mdp, algo, &params).map(|e| (params.seed, e))
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let docs = estimates
        .iter()
        .map(|(seed, e)| {
            json!({
                "algo": algo.name(),
                "seed": seed,
                "episodes": a.learn.episodes,
                "estimate": e,
                "exact": exact,
            })
        })
        .collect();
    Ok(single_or_array(docs))
}
