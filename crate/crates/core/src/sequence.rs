use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::quiver::Vertex;

/// A finite list of vertices to mutate at, left to right.
#[derive(
    Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct MutationSequence(Vec<Vertex>);

impl MutationSequence {
    pub fn new(entries: Vec<Vertex>) -> Self {
        Self(entries)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, v: Vertex) {
        self.0.push(v);
    }

    /// Cancels adjacent duplicates until none remain.
    pub fn reduce(&self) -> Self {
        let mut stack: Vec<Vertex> = Vec::with_capacity(self.0.len());
        for &v in &self.0 {
            if stack.last() == Some(&v) {
                stack.pop();
            } else {
                stack.push(v);
            }
        }
        Self(stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// The reversed sequence.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Concatenation `self · other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Relabels every entry through `sigma`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        Self(self.0.iter().map(|&v| sigma.apply(v)).collect())
    }

    /// Shifts every entry by `offset`.
    pub fn shifted(&self, offset: Vertex) -> Self {
        Self(self.0.iter().map(|&v| v + offset).collect())
    }
}

impl From<Vec<Vertex>> for MutationSequence {
    fn from(v: Vec<Vertex>) -> Self {
        Self(v)
    }
}

impl From<&[Vertex]> for MutationSequence {
    fn from(v: &[Vertex]) -> Self {
        Self(v.to_vec())
    }
}

impl<const N: usize> From<[Vertex; N]> for MutationSequence {
    fn from(v: [Vertex; N]) -> Self {
        Self(v.to_vec())
    }
}

impl FromIterator<Vertex> for MutationSequence {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MutationSequence {
    type Err = Error;

    /// Comma-separated labels; the empty string is the empty sequence.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<Vertex>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect()
    }
}
