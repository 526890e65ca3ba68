//! Isomorphism search and canonical forms.
//!
//! Both start from an iterated color refinement: a vertex's color is
//! repeatedly replaced by its old color together with the multiset of
//! `(neighbor color, b entry)` pairs until the partition stops splitting.
//! Isomorphisms must preserve colors, which prunes the backtracking; the
//! canonical form only permutes vertices inside a color class.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::permutation::Permutation;
use crate::quiver::Quiver;

type Signature = Vec<i64>;

fn initial_signature(q: &Quiver, i: usize, fix_frozen: bool) -> Signature {
    let n = q.n();
    let mut row: Vec<i64> = (0..n).map(|j| q.b_at(i, j)).filter(|&x| x != 0).collect();
    row.sort_unstable();
    let tag = if q.is_frozen_at(i) {
        if fix_frozen {
            // frozen vertices must map to themselves
            1 + i64::from(q.labels()[i])
        } else {
            1
        }
    } else {
        0
    };
    let mut sig = vec![tag];
    sig.extend(row);
    sig
}

fn refine_signature(q: &Quiver, colors: &[usize], i: usize) -> Signature {
    let n = q.n();
    let mut pairs: Vec<(i64, i64)> = (0..n)
        .filter(|&j| j != i && q.b_at(i, j) != 0)
        .map(|j| (colors[j] as i64, q.b_at(i, j)))
        .collect();
    pairs.sort_unstable();
    let mut sig = vec![colors[i] as i64];
    for (c, x) in pairs {
        sig.push(c);
        sig.push(x);
    }
    sig
}

/// Jointly refines the colorings of several quivers with a shared palette,
/// so colors are comparable across them. Colors are ranks of sorted
/// signatures, hence isomorphism-invariant.
fn refine_jointly(quivers: &[&Quiver], fix_frozen: bool) -> Vec<Vec<usize>> {
    let assign = |sigs: Vec<Vec<Signature>>| -> Vec<Vec<usize>> {
        let palette: BTreeSet<&Signature> = sigs.iter().flatten().collect();
        let rank: BTreeMap<&Signature, usize> =
            palette.into_iter().enumerate().map(|(k, s)| (s, k)).collect();
        sigs.iter()
            .map(|v| v.iter().map(|s| rank[s]).collect())
            .collect()
    };
    let count = |cs: &[Vec<usize>]| cs.iter().flatten().collect::<BTreeSet<_>>().len();

    let mut colors = assign(
        quivers
            .iter()
            .map(|q| (0..q.n()).map(|i| initial_signature(q, i, fix_frozen)).collect())
            .collect(),
    );
    loop {
        let next = assign(
            quivers
                .iter()
                .zip(&colors)
                .map(|(q, c)| (0..q.n()).map(|i| refine_signature(q, c, i)).collect())
                .collect(),
        );
        if count(&next) == count(&colors) {
            return next;
        }
        colors = next;
    }
}

/// Finds σ with `q1.apply_permutation(σ) == q2`, if one exists.
///
/// Both quivers must carry the same label set. Frozen vertices are held
/// fixed; mutable vertices map to mutable vertices. The search visits `q1`'s
/// vertices by ascending label and tries candidates by ascending label, so
/// the answer is deterministic.
pub fn find_isomorphism(q1: &Quiver, q2: &Quiver) -> Option<Permutation> {
    if q1.labels() != q2.labels() || q1.frozen_labels() != q2.frozen_labels() {
        return None;
    }
    if q1 == q2 {
        return Some(Permutation::identity());
    }
    let n = q1.n();
    let colors = refine_jointly(&[q1, q2], true);
    let (c1, c2) = (&colors[0], &colors[1]);
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return None;
    }

    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend_iso(q1, q2, c1, c2, 0, &mut assign, &mut used) {
        return None;
    }
    let sigma = Permutation::from_pairs(
        (0..n).map(|i| (q1.labels()[i], q2.labels()[assign[i]])),
    )
    .expect("assignment is a bijection");
    debug_assert_eq!(q1.apply_permutation(&sigma).as_ref(), Ok(q2));
    Some(sigma)
}

fn extend_iso(
    q1: &Quiver,
    q2: &Quiver,
    c1: &[usize],
    c2: &[usize],
    depth: usize,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = q1.n();
    if depth == n {
        return true;
    }
    let u = depth;
    for v in 0..n {
        if used[v] || c1[u] != c2[v] {
            continue;
        }
        let consistent = (0..depth).all(|w| q1.b_at(u, w) == q2.b_at(v, assign[w]));
        if !consistent {
            continue;
        }
        assign[u] = v;
        used[v] = true;
        if extend_iso(q1, q2, c1, c2, depth + 1, assign, used) {
            return true;
        }
        used[v] = false;
        assign[u] = usize::MAX;
    }
    false
}

/// True when the quivers agree up to relabeling (label sets may differ).
pub fn are_isomorphic(q1: &Quiver, q2: &Quiver) -> bool {
    q1.n() == q2.n() && canonical_form(q1) == canonical_form(q2)
}

/// An isomorphism-invariant byte encoding of a quiver.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex, for reports.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

/// Lexicographically minimal row-major encoding of the strictly lower
/// triangle of `b`, over all vertex orders that list color classes in
/// increasing color. Equal forms ⇔ isomorphic quivers (frozen status is
/// part of the encoding, frozen labels are not).
pub fn canonical_form(q: &Quiver) -> CanonicalForm {
    let n = q.n();
    let colors = refine_jointly(&[q], false).pop().expect("one coloring");
    let mut slots: Vec<usize> = colors.clone();
    slots.sort_unstable();

    // Twins: swapping them is an automorphism. Each vertex points at the
    // smallest member of its twin class.
    let twin_rep: Vec<usize> = (0..n)
        .map(|v| {
            (0..v)
                .find(|&u| {
                    colors[u] == colors[v]
                        && q.b_at(u, v) == 0
                        && (0..n).all(|x| x == u || x == v || q.b_at(u, x) == q.b_at(v, x))
                })
                .unwrap_or(v)
        })
        .collect();

    let mut search = CanonSearch {
        q,
        colors: &colors,
        slots: &slots,
        twin_rep: &twin_rep,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        current: Vec::with_capacity(n * n / 2),
        best: None,
        best_order: Vec::new(),
        updates: 0,
    };
    search.run(false);

    let order = search.best_order;
    let encoded = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(4 + n + 8 * encoded.len());
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for &v in &order {
        bytes.push(u8::from(q.is_frozen_at(v)));
    }
    for x in encoded {
        // Flip the sign bit so byte order matches numeric order.
        bytes.extend_from_slice(&((x as u64) ^ (1 << 63)).to_be_bytes());
    }
    CanonicalForm(bytes)
}

struct CanonSearch<'a> {
    q: &'a Quiver,
    colors: &'a [usize],
    slots: &'a [usize],
    twin_rep: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<i64>,
    best: Option<Vec<i64>>,
    best_order: Vec<usize>,
    updates: u64,
}

impl CanonSearch<'_> {
    /// `ahead` means the current prefix is already strictly smaller than the
    /// best encoding, so no comparison is needed below this node.
    fn run(&mut self, mut ahead: bool) {
        let n = self.q.n();
        let depth = self.order.len();
        if depth == n {
            self.best = Some(self.current.clone());
            self.best_order = self.order.clone();
            self.updates += 1;
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.used[v] || self.colors[v] != self.slots[depth] {
                continue;
            }
            let rep = self.twin_rep[v];
            if tried.contains(&rep) {
                continue;
            }
            tried.push(rep);
            let mark = self.current.len();
            for &w in &self.order {
                self.current.push(self.q.b_at(v, w));
            }
            let mut now_ahead = ahead;
            let keep = match (&self.best, ahead) {
                (Some(best), false) => {
                    match self.current[mark..].cmp(&best[mark..self.current.len()]) {
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Less => {
                            now_ahead = true;
                            true
                        }
                        std::cmp::Ordering::Equal => true,
                    }
                }
                _ => true,
            };
            if keep {
                self.order.push(v);
                self.used[v] = true;
                let before = self.updates;
                self.run(now_ahead);
                self.used[v] = false;
                self.order.pop();
                if self.updates != before {
                    // the prefix now equals the new best
                    ahead = false;
                }
            }
            self.current.truncate(mark);
        }
    }
}
