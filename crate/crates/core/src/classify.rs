//! Structural predicates (fork, key, pre-fork) and breadth-first exploration
//! of mutation classes up to isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::iso::{canonical_form, CanonicalForm};
use crate::quiver::{Quiver, Vertex};

/// Default node budget for class explorations.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ClassificationReport {
    pub acyclic: bool,
    pub abundant: bool,
    /// Points of return; nonempty exactly for forks.
    pub fork_returns: BTreeSet<Vertex>,
    /// `(k, k′, b[k][k′])` with `k < k′`; nonempty exactly for keys.
    pub key_pairs: BTreeSet<(Vertex, Vertex, i64)>,
    /// `((k, k′), r)` with `k < k′`; nonempty exactly for pre-forks.
    pub prefork_pairs: BTreeSet<((Vertex, Vertex), Vertex)>,
}

impl ClassificationReport {
    pub fn is_fork(&self) -> bool {
        !self.fork_returns.is_empty()
    }

    pub fn is_key(&self) -> bool {
        !self.key_pairs.is_empty()
    }

    pub fn is_prefork(&self) -> bool {
        !self.prefork_pairs.is_empty()
    }
}

/// Points of return of `q`, empty unless `q` is a fork.
///
/// A fork is abundant and not acyclic, and has a vertex `r` such that
/// `q ∖ r` is acyclic and every path `i → r → j` satisfies
/// `b[j][i] > max(b[i][r], b[r][j])`.
pub fn fork_returns(q: &Quiver) -> BTreeSet<Vertex> {
    let q = q.mutable_part();
    if !q.is_abundant() || q.is_acyclic() {
        return BTreeSet::new();
    }
    q.labels()
        .iter()
        .copied()
        .filter(|&r| is_return_point(&q, r))
        .collect()
}

fn is_return_point(q: &Quiver, r: Vertex) -> bool {
    if !q.delete(r).expect("r is a vertex").is_acyclic() {
        return false;
    }
    let labels = q.labels();
    labels.iter().all(|&i| {
        q.b(i, r) <= 0
            || labels
                .iter()
                .all(|&j| q.b(r, j) <= 0 || q.b(j, i) > q.b(i, r).max(q.b(r, j)))
    })
}

pub fn is_fork(q: &Quiver) -> bool {
    !fork_returns(q).is_empty()
}

/// `sign b[j][k] = sign b[j][k′]` for every other vertex `j`.
fn twins(q: &Quiver, k: Vertex, kp: Vertex) -> bool {
    q.labels()
        .iter()
        .filter(|&&j| j != k && j != kp)
        .all(|&j| q.b(j, k).signum() == q.b(j, kp).signum())
}

/// Evaluates every predicate exhaustively over vertices and vertex pairs.
pub fn classify(q: &Quiver) -> ClassificationReport {
    let q = q.mutable_part();
    let acyclic = q.is_acyclic();
    let abundant = q.is_abundant();
    let fork_returns = fork_returns(&q);
    let labels = q.labels();
    let mut key_pairs = BTreeSet::new();
    let mut prefork_pairs = BTreeSet::new();
    for (a, &k) in labels.iter().enumerate() {
        for &kp in &labels[a + 1..] {
            if !twins(&q, k, kp) {
                continue;
            }
            let without_k = q.delete(k).expect("vertex present");
            let without_kp = q.delete(kp).expect("vertex present");
            if acyclic
                && [&without_k, &without_kp]
                    .iter()
                    .all(|d| d.is_abundant() && d.is_acyclic())
            {
                key_pairs.insert((k, kp, q.b(k, kp)));
            }
            let shared = self::fork_returns(&without_k);
            for r in shared.intersection(&self::fork_returns(&without_kp)) {
                prefork_pairs.insert(((k, kp), *r));
            }
        }
    }
    let report = ClassificationReport {
        acyclic,
        abundant,
        fork_returns,
        key_pairs,
        prefork_pairs,
    };
    assert!(!report.is_fork() || report.abundant, "fork must be abundant");
    assert!(!report.is_key() || report.acyclic, "key must be acyclic");
    report
}

/// Outcome of a breadth-first class exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    /// Canonical forms in discovery order, i.e. by `(depth, form)`.
    pub forms: Vec<CanonicalForm>,
    /// First labeled quiver reached for each form.
    pub representatives: Vec<Quiver>,
    pub depths: Vec<usize>,
    /// True when the frontier emptied within the budget.
    pub exhausted: bool,
}

impl Exploration {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// Breadth-first search over mutations, deduplicated by canonical form and
/// restricted to quivers passing `keep`. Each level is expanded in sorted
/// form order, so the result does not depend on the strategy.
pub(crate) fn explore<F>(q: &Quiver, budget: usize, strategy: Strategy, keep: F) -> Exploration
where
    F: Fn(&Quiver) -> bool + Sync + Send,
{
    let start = q.mutable_part();
    let mut out = Exploration {
        forms: Vec::new(),
        representatives: Vec::new(),
        depths: Vec::new(),
        exhausted: true,
    };
    if budget == 0 {
        out.exhausted = false;
        return out;
    }
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let first = canonical_form(&start);
    seen.insert(first.clone());
    out.forms.push(first);
    out.representatives.push(start.clone());
    out.depths.push(0);
    let mut frontier = vec![start];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let expanded = exec::map(strategy, &frontier, |p| {
            p.mutable_labels()
                .into_iter()
                .filter_map(|v| p.mutate(v).ok())
                .filter(|n| keep(n))
                .map(|n| (canonical_form(&n), n))
                .collect::<Vec<_>>()
        });
        let mut level: BTreeMap<CanonicalForm, Quiver> = BTreeMap::new();
        for (form, quiver) in expanded.into_iter().flatten() {
            if !seen.contains(&form) {
                level.entry(form).or_insert(quiver);
            }
        }
        frontier = Vec::with_capacity(level.len());
        for (form, quiver) in level {
            if out.forms.len() >= budget {
                out.exhausted = false;
                return out;
            }
            seen.insert(form.clone());
            out.forms.push(form);
            out.representatives.push(quiver.clone());
            out.depths.push(depth);
            frontier.push(quiver);
        }
    }
    out
}

/// The forkless part of the class of `q`, up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForklessReport {
    pub exploration: Exploration,
    /// Indices into the exploration of the forms that are keys.
    pub keys: Vec<usize>,
}

pub fn forkless_explore(q: &Quiver, budget: usize) -> Result<ForklessReport> {
    forkless_explore_with(Strategy::default(), q, budget)
}

pub fn forkless_explore_with(strategy: Strategy, q: &Quiver, budget: usize) -> Result<ForklessReport> {
    if is_fork(q) {
        return Err(Error::ForkStart);
    }
    let exploration = explore(q, budget, strategy, |p| !is_fork(p));
    let keys = (0..exploration.len())
        .filter(|&i| classify(&exploration.representatives[i]).is_key())
        .collect();
    Ok(ForklessReport { exploration, keys })
}

/// Sources and sinks of the mutable part.
pub fn sources_and_sinks(q: &Quiver) -> (Vec<Vertex>, Vec<Vertex>) {
    let q = q.mutable_part();
    let labels = q.labels();
    let source = |v: Vertex| labels.iter().all(|&u| q.b(u, v) <= 0);
    let sink = |v: Vertex| labels.iter().all(|&u| q.b(v, u) <= 0);
    (
        labels.iter().copied().filter(|&v| source(v)).collect(),
        labels.iter().copied().filter(|&v| sink(v)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fork() -> Quiver {
        Quiver::from_arrows([1, 2, 3], &[(2, 1, 3), (3, 2, 8), (1, 3, 2)]).unwrap()
    }

    fn key() -> Quiver {
        Quiver::from_arrows(
            [1, 2, 3, 4],
            &[(2, 1, 2), (2, 3, 4), (1, 4, 2), (2, 4, 3), (3, 4, 4)],
        )
        .unwrap()
    }

    fn prefork() -> Quiver {
        Quiver::from_arrows(
            [1, 2, 3, 4],
            &[(2, 1, 2), (2, 3, 4), (1, 4, 8), (4, 2, 3), (3, 4, 5)],
        )
        .unwrap()
    }

    #[test]
    fn quiver_types() {
        let f = classify(&fork());
        assert_eq!(f.fork_returns, BTreeSet::from([1]));
        assert!(!f.is_key());

        let k = classify(&key());
        assert!(k.acyclic && !k.is_fork());
        assert_eq!(k.key_pairs, BTreeSet::from([(1, 3, 0)]));

        let p = classify(&prefork());
        assert!(p.prefork_pairs.contains(&((1, 3), 2)));
        assert!(!p.is_key());
    }

    #[test]
    fn abundant_acyclic_is_not_a_fork() {
        let q = Quiver::from_arrows([1, 2, 3], &[(1, 2, 2), (2, 3, 2), (1, 3, 2)]).unwrap();
        assert!(!is_fork(&q));
        assert!(is_fork(&q.mutate(2).unwrap()));
    }

    #[test]
    fn a2_forkless_part() {
        let a2 = Quiver::from_arrows([1, 2], &[(1, 2, 1)]).unwrap();
        let r = forkless_explore(&a2, DEFAULT_BUDGET).unwrap();
        assert!(r.exploration.exhausted);
        assert_eq!(r.exploration.len(), 1);
        assert_eq!(forkless_explore(&fork(), 10), Err(Error::ForkStart));
    }

    #[test]
    fn sources_sinks() {
        assert_eq!(sources_and_sinks(&key()), (vec![2], vec![4]));
    }
}
