//! Bounded exhaustive search for reddening sequences, and mutation-class
//! enumeration.
//!
//! The search runs depth-first over compact framed states. Work is split by
//! short prefixes and the partitions run under the chosen [`Strategy`];
//! results are sorted afterwards, so every strategy returns the same list.

use serde::Serialize;

use crate::classify::{explore, Exploration};
use crate::exec::{self, Strategy};
use crate::framing::ExtendedMatrix;
use crate::permutation::Permutation;
use crate::quiver::{Quiver, Vertex};
use crate::sequence::MutationSequence;

/// Branches whose entries exceed this bound are abandoned.
pub const WEIGHT_LIMIT: i64 = 1 << 40;

/// Length of the prefixes used to split the search into partitions.
const PARTITION_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_len: usize,
    /// Forbid mutating the same vertex twice in a row.
    pub reduced_only: bool,
    /// Only mutate green vertices (maximal green sequences).
    pub green_only: bool,
    /// Stop at the lexicographically first hit.
    pub first_only: bool,
}

impl SearchOptions {
    pub fn reddening(max_len: usize) -> Self {
        Self {
            max_len,
            reduced_only: true,
            green_only: false,
            first_only: false,
        }
    }

    pub fn maximal_green(max_len: usize) -> Self {
        Self {
            green_only: true,
            ..Self::reddening(max_len)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub sequence: MutationSequence,
    #[serde(serialize_with = "ser_perm")]
    pub permutation: Permutation,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SearchResult {
    /// Sorted lexicographically by sequence.
    pub hits: Vec<Hit>,
    /// Branches abandoned by the weight guardrail.
    pub overflowed_branches: u64,
    pub nodes: u64,
}

impl SearchResult {
    /// True when no branch was cut by the guardrail, so the hit list is
    /// every sequence within the bound.
    pub fn complete(&self) -> bool {
        self.overflowed_branches == 0
    }

    pub fn sequences(&self) -> Vec<MutationSequence> {
        self.hits.iter().map(|h| h.sequence.clone()).collect()
    }
}

struct Searcher<'a> {
    labels: &'a [Vertex],
    opts: SearchOptions,
}

#[derive(Default)]
struct Partial {
    hits: Vec<(Vec<usize>, Vec<usize>)>,
    overflowed: u64,
    nodes: u64,
}

impl Searcher<'_> {
    fn moves<'s>(&'s self, state: &'s ExtendedMatrix, path: &'s [usize]) -> impl Iterator<Item = usize> + 's {
        (0..state.rank()).filter(move |&k| {
            !(self.opts.reduced_only && path.last() == Some(&k))
                && (!self.opts.green_only || state.is_green(k))
        })
    }

    fn step(&self, state: &ExtendedMatrix, k: usize, out: &mut Partial) -> Option<ExtendedMatrix> {
        let mut next = state.clone();
        out.nodes += 1;
        if next.mutate(k).is_none() || next.max_weight() > WEIGHT_LIMIT {
            out.overflowed += 1;
            return None;
        }
        Some(next)
    }

    fn record(&self, state: &ExtendedMatrix, path: &[usize], out: &mut Partial) {
        if state.all_red() {
            let sigma = state
                .negative_permutation()
                .expect("an all-red C-matrix is minus a permutation matrix");
            out.hits.push((path.to_vec(), sigma));
        }
    }

    /// Depth-first from `state`, whose path is `path`. Returns true once a
    /// hit is found in `first_only` mode.
    fn dfs(&self, state: &ExtendedMatrix, path: &mut Vec<usize>, out: &mut Partial) -> bool {
        self.record(state, path, out);
        if self.opts.first_only && !out.hits.is_empty() {
            return true;
        }
        if path.len() == self.opts.max_len {
            return false;
        }
        let moves: Vec<usize> = self.moves(state, path).collect();
        for k in moves {
            if let Some(next) = self.step(state, k, out) {
                path.push(k);
                let done = self.dfs(&next, path, out);
                path.pop();
                if done {
                    return true;
                }
            }
        }
        false
    }

    fn to_hit(&self, (path, sigma): (Vec<usize>, Vec<usize>)) -> Hit {
        Hit {
            sequence: path.iter().map(|&k| self.labels[k]).collect(),
            permutation: Permutation::from_pairs(
                sigma.iter().enumerate().map(|(i, &j)| (self.labels[i], self.labels[j])),
            )
            .expect("positions form a bijection"),
        }
    }
}

/// Every sequence of length ≤ `max_len` allowed by the options whose final
/// framed state is all red, with its associated permutation.
pub fn search_reddening(q: &Quiver, opts: SearchOptions) -> SearchResult {
    search_reddening_with(Strategy::default(), q, opts)
}

pub fn search_reddening_with(strategy: Strategy, q: &Quiver, opts: SearchOptions) -> SearchResult {
    let labels = q.mutable_labels();
    let searcher = Searcher { labels: &labels, opts };
    let root = ExtendedMatrix::framed(q);

    // Expand the first levels sequentially; hits on the way are recorded.
    let split = PARTITION_DEPTH.min(opts.max_len);
    let mut head = Partial::default();
    let mut frontier: Vec<(ExtendedMatrix, Vec<usize>)> = vec![(root, Vec::new())];
    for _ in 0..split {
        let mut next_level = Vec::new();
        for (state, path) in &frontier {
            searcher.record(state, path, &mut head);
            for k in searcher.moves(state, path) {
                if let Some(next) = searcher.step(state, k, &mut head) {
                    let mut p = path.clone();
                    p.push(k);
                    next_level.push((next, p));
                }
            }
        }
        frontier = next_level;
    }

    let parts = exec::map(strategy, &frontier, |(state, path)| {
        let mut out = Partial::default();
        let mut path = path.clone();
        searcher.dfs(state, &mut path, &mut out);
        out
    });

    let mut all = head;
    for part in parts {
        all.hits.extend(part.hits);
        all.overflowed += part.overflowed;
        all.nodes += part.nodes;
    }
    all.hits.sort();
    if opts.first_only {
        all.hits.truncate(1);
    }
    SearchResult {
        hits: all.hits.into_iter().map(|h| searcher.to_hit(h)).collect(),
        overflowed_branches: all.overflowed,
        nodes: all.nodes,
    }
}

/// Breadth-first enumeration of the mutation class of `q` up to isomorphism.
pub fn enumerate_class(q: &Quiver, budget: usize) -> Exploration {
    enumerate_class_with(Strategy::default(), q, budget)
}

pub fn enumerate_class_with(strategy: Strategy, q: &Quiver, budget: usize) -> Exploration {
    explore(q, budget, strategy, |_| true)
}
