//! JSON file formats. Nodes, positions and statuses are 1-based on disk.
//!
//! Stochastic digraph:
//!
//! ```json
//! {"n": 4, "edge_sets": [[[1,2],[1,3]], [[1,3]]], "mu": ["2/3", "1/3"]}
//! ```
//!
//! `mu` entries may be numbers or strings holding `p/q` or a decimal.
//!
//! SIR configuration:
//!
//! ```json
//! {"N": 3, "alpha": 0.7, "beta": 0.3,
//!  "motion": {"kappa": 5, "edges": [[1,2],[2,4]], "directed": false},
//!  "x0": [[2,1],[1,1],[1,2]]}
//! ```

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::epidemic::{AgentState, SirConfig, SirState, Status};
use crate::error::{Error, Result};
use crate::graph::{parse_probability, Digraph, StochasticDigraph};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum Probability {
    Number(f64),
    Text(String),
}

impl Probability {
    fn value(&self) -> std::result::Result<f64, String> {
        match self {
            Probability::Number(x) if (0.0..=1.0).contains(x) => Ok(*x),
            Probability::Number(x) => Err(format!("{x} is outside [0, 1]")),
            Probability::Text(t) => parse_probability(t),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edge_sets: Vec<Vec<[usize; 2]>>,
    mu: Vec<Probability>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MotionFile {
    kappa: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    directed: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SirFile {
    #[serde(rename = "N")]
    agents: usize,
    alpha: Probability,
    beta: Probability,
    motion: MotionFile,
    x0: Vec<[usize; 2]>,
}

fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let message = if field == "." {
            e.inner().to_string()
        } else {
            format!("field `{field}`: {}", e.inner())
        };
        Error::Parse {
            path: origin.to_string(),
            message,
        }
    })
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_error(origin: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: origin.to_string(),
        message: message.into(),
    }
}

fn zero_based(origin: &str, field: &str, v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        return Err(parse_error(
            origin,
            format!("field `{field}`: node {v} is outside 1..={n}"),
        ));
    }
    Ok(v - 1)
}

/// Parses the stochastic-digraph format. `origin` names the source in errors.
pub fn parse_graph(text: &str, origin: &str) -> Result<StochasticDigraph> {
    let file: GraphFile = parse_json(text, origin)?;
    let mut edge_sets = Vec::with_capacity(file.edge_sets.len());
    for (s, edges) in file.edge_sets.iter().enumerate() {
        let mut set = Vec::with_capacity(edges.len());
        for (e, &[u, v]) in edges.iter().enumerate() {
            let field = format!("edge_sets[{s}][{e}]");
            set.push((
                zero_based(origin, &field, u, file.n)?,
                zero_based(origin, &field, v, file.n)?,
            ));
        }
        edge_sets.push(set);
    }
    let mu = file
        .mu
        .iter()
        .enumerate()
        .map(|(w, p)| {
            p.value()
                .map_err(|m| parse_error(origin, format!("field `mu[{w}]`: {m}")))
        })
        .collect::<Result<Vec<_>>>()?;
    StochasticDigraph::from_edge_lists(file.n, &edge_sets, mu)
}

pub fn load_graph(path: &Path) -> Result<StochasticDigraph> {
    parse_graph(&read_text(path)?, &path.display().to_string())
}

/// Exact textual form of a probability: `p/q` when that fraction evaluates
/// to exactly `x`, otherwise the shortest round-trip decimal.
fn exact_probability(x: f64) -> String {
    match crate::format::approximate_fraction(x) {
        Some((p, q)) if p as f64 / q as f64 == x => {
            if q == 1 {
                p.to_string()
            } else {
                format!("{p}/{q}")
            }
        }
        _ => crate::format::format_decimal(x),
    }
}

/// Canonical JSON: sorted 1-based edges, one edge set per line, `mu` as strings.
/// Loading the output reproduces the same digraph exactly.
pub fn graph_to_json(sd: &StochasticDigraph) -> String {
    let sets: Vec<String> = sd
        .graphs()
        .iter()
        .map(|g| {
            let edges: Vec<String> = g
                .edges()
                .map(|(u, v)| format!("[{},{}]", u + 1, v + 1))
                .collect();
            format!("    [{}]", edges.join(","))
        })
        .collect();
    let mu: Vec<String> = sd
        .mu()
        .iter()
        .map(|&m| format!("\"{}\"", exact_probability(m)))
        .collect();
    format!(
        "{{\n  \"n\": {},\n  \"edge_sets\": [\n{}\n  ],\n  \"mu\": [{}]\n}}\n",
        sd.n(),
        sets.join(",\n"),
        mu.join(", ")
    )
}

pub fn save_graph(sd: &StochasticDigraph, path: &Path) -> Result<()> {
    std::fs::write(path, graph_to_json(sd))?;
    Ok(())
}

/// Parses the SIR configuration format into the model and its initial state.
pub fn parse_sir(text: &str, origin: &str) -> Result<(SirConfig, SirState)> {
    let file: SirFile = parse_json(text, origin)?;
    let kappa = file.motion.kappa;
    let mut edges = Vec::new();
    for (e, &[u, v]) in file.motion.edges.iter().enumerate() {
        let field = format!("motion.edges[{e}]");
        let (u, v) = (
            zero_based(origin, &field, u, kappa)?,
            zero_based(origin, &field, v, kappa)?,
        );
        edges.push((u, v));
        if !file.motion.directed {
            edges.push((v, u));
        }
    }
    let prob = |p: &Probability, name: &str| {
        p.value()
            .map_err(|m| parse_error(origin, format!("field `{name}`: {m}")))
    };
    let config = SirConfig::new(
        file.agents,
        prob(&file.alpha, "alpha")?,
        prob(&file.beta, "beta")?,
        Digraph::new(kappa, edges)?,
    )?;
    if file.x0.len() != file.agents {
        return Err(parse_error(
            origin,
            format!(
                "field `x0`: {} agents listed, N = {}",
                file.x0.len(),
                file.agents
            ),
        ));
    }
    let agents = file
        .x0
        .iter()
        .enumerate()
        .map(|(i, &[sigma, pos])| {
            let field = format!("x0[{i}]");
            let status = u8::try_from(sigma)
                .ok()
                .and_then(Status::from_code)
                .ok_or_else(|| {
                    parse_error(
                        origin,
                        format!("field `{field}`: status {sigma} is not 1, 2 or 3"),
                    )
                })?;
            Ok(AgentState {
                status,
                pos: zero_based(origin, &field, pos, kappa)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((config, SirState::new(agents)))
}

pub fn load_sir(path: &Path) -> Result<(SirConfig, SirState)> {
    parse_sir(&read_text(path)?, &path.display().to_string())
}
