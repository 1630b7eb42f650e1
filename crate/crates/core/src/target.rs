use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A nonempty set of 0-based target nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSet(BTreeSet<usize>);

impl TargetSet {
    pub fn new<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        Self(nodes.into_iter().collect())
    }

    /// Parses a comma-separated list of 1-based node numbers.
    pub fn parse_one_based(text: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let node: usize = part
                .parse()
                .map_err(|_| Error::InvalidTarget(format!("{part:?} is not a node number")))?;
            if node == 0 {
                return Err(Error::InvalidTarget("node numbers start at 1".into()));
            }
            set.insert(node - 1);
        }
        Ok(Self(set))
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.contains(&node)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidTarget("target set is empty".into()));
        }
        match self.0.iter().find(|&&x| x >= n) {
            Some(&x) => Err(Error::InvalidTarget(format!(
                "node {} is out of range for {n} nodes",
                x + 1
            ))),
            None => Ok(()),
        }
    }
}
