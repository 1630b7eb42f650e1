pub mod bounds;
pub mod cli;
pub mod decomposition;
pub mod epidemic;
pub mod error;
pub mod format;
pub mod graph;
pub mod io;
pub mod mdp;
pub mod reachability;
pub mod rl;
pub mod target;

pub use error::{Error, Result};
