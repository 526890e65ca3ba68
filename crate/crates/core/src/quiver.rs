//! Labeled quivers stored as skew-symmetric exchange matrices.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::sequence::MutationSequence;

/// Vertex labels are opaque positive integers; they are never renumbered.
pub type Vertex = u32;

/// A labeled quiver without loops or oriented 2-cycles.
///
/// `b[i][j]` counts arrows `i → j` minus arrows `j → i`. Some vertices may be
/// frozen; each frozen vertex is paired with the mutable vertex it frames.
/// Arrows between two frozen vertices are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    labels: Vec<Vertex>,
    frozen: Vec<bool>,
    /// `(mutable, frozen)` pairs, sorted by the mutable label.
    frame: Vec<(Vertex, Vertex)>,
    b: Vec<i64>,
}

impl Quiver {
    /// The quiver with the given vertices and no arrows.
    pub fn isolated<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut labels: Vec<Vertex> = vertices.into_iter().collect();
        labels.sort_unstable();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if labels.first() == Some(&0) {
            return Err(Error::ZeroLabel);
        }
        let n = labels.len();
        Ok(Self {
            labels,
            frozen: vec![false; n],
            frame: Vec::new(),
            b: vec![0; n * n],
        })
    }

    /// Builds a quiver from `(source, target, multiplicity)` triples.
    ///
    /// Repeated triples accumulate; listing a pair in both directions is an
    /// error, as is a loop or a non-positive multiplicity.
    pub fn from_arrows<I>(vertices: I, arrows: &[(Vertex, Vertex, i64)]) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut q = Self::isolated(vertices)?;
        for &(s, t, m) in arrows {
            if s == t {
                return Err(Error::Loop(s));
            }
            if m <= 0 {
                return Err(Error::InvalidArgument(format!(
                    "arrow {s}->{t} has multiplicity {m}"
                )));
            }
            let i = q.index_or_err(s)?;
            let j = q.index_or_err(t)?;
            let cur = q.b[i * q.n() + j];
            if cur < 0 {
                return Err(Error::TwoCycle(s, t));
            }
            let next = cur.checked_add(m).ok_or(Error::Overflow("construction"))?;
            q.set(i, j, next);
        }
        Ok(q)
    }

    /// Builds a quiver from a square matrix whose rows follow `labels`.
    pub fn from_b_matrix(labels: &[Vertex], rows: &[Vec<i64>]) -> Result<Self> {
        let mut q = Self::isolated(labels.iter().copied())?;
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {n}x{n} matrix"
            )));
        }
        for (a, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if rows[c][a] != -x {
                    return Err(Error::NotSkewSymmetric(labels[a], labels[c]));
                }
                let i = q.index_of(labels[a]).expect("label present");
                let j = q.index_of(labels[c]).expect("label present");
                q.b[i * n + j] = x;
            }
        }
        Ok(q)
    }

    /// Attaches frozen partners. Used by the framing constructors and the
    /// file reader; frozen labels must already be vertices of `self`.
    pub fn with_frame(mut self, frame: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if !self.frame.is_empty() {
            return Err(Error::AlreadyFramed);
        }
        let mut seen = BTreeSet::new();
        for &(m, f) in &frame {
            let fi = self.index_or_err(f)?;
            self.index_or_err(m)?;
            if m == f || !seen.insert(m) || !seen.insert(f) {
                return Err(Error::InvalidArgument(format!(
                    "bad frame pair ({m}, {f})"
                )));
            }
            self.frozen[fi] = true;
        }
        for &(m, _) in &frame {
            if self.frozen[self.index_of(m).expect("checked")] {
                return Err(Error::InvalidArgument(format!(
                    "vertex {m} is both mutable and frozen"
                )));
            }
        }
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                if self.frozen[i] && self.frozen[j] {
                    self.b[i * n + j] = 0;
                }
            }
        }
        self.frame = frame;
        self.frame.sort_unstable();
        Ok(self)
    }

    /// Copy with additional isolated mutable vertices.
    pub(crate) fn with_extra_vertices(&self, extra: &[Vertex]) -> Result<Quiver> {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(extra);
        let mut q = Quiver::isolated(labels)?;
        let n = self.n();
        for i in 0..n {
            let a = q.index_of(self.labels[i]).expect("kept");
            q.frozen[a] = self.frozen[i];
            for j in 0..n {
                let c = q.index_of(self.labels[j]).expect("kept");
                let m = q.n();
                q.b[a * m + c] = self.b[i * n + j];
            }
        }
        q.frame = self.frame.clone();
        Ok(q)
    }

    /// Overwrites `b[s][t]` (and `b[t][s]`).
    pub(crate) fn set_weight(&mut self, s: Vertex, t: Vertex, x: i64) -> Result<()> {
        let i = self.index_or_err(s)?;
        let j = self.index_or_err(t)?;
        if i == j {
            return Err(Error::Loop(s));
        }
        self.set(i, j, x);
        Ok(())
    }

    #[inline]
    pub(crate) fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, x: i64) {
        let n = self.n();
        self.b[i * n + j] = x;
        self.b[j * n + i] = -x;
    }

    /// Position of `v` in the sorted label list.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    fn index_or_err(&self, v: Vertex) -> Result<usize> {
        self.index_of(v).ok_or(Error::UnknownVertex(v))
    }

    /// All labels (mutable and frozen), ascending.
    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn mutable_labels(&self) -> Vec<Vertex> {
        self.labels
            .iter()
            .zip(&self.frozen)
            .filter(|(_, &f)| !f)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn frozen_labels(&self) -> Vec<Vertex> {
        self.labels
            .iter()
            .zip(&self.frozen)
            .filter(|(_, &f)| f)
            .map(|(&v, _)| v)
            .collect()
    }

    /// `(mutable, frozen)` pairs.
    pub fn frame(&self) -> &[(Vertex, Vertex)] {
        &self.frame
    }

    pub fn has_frame(&self) -> bool {
        !self.frame.is_empty()
    }

    pub fn frozen_partner(&self, v: Vertex) -> Option<Vertex> {
        self.frame
            .binary_search_by_key(&v, |&(m, _)| m)
            .ok()
            .map(|k| self.frame[k].1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn is_frozen(&self, v: Vertex) -> bool {
        self.index_of(v).is_some_and(|i| self.frozen[i])
    }

    pub(crate) fn is_frozen_at(&self, i: usize) -> bool {
        self.frozen[i]
    }

    /// Number of mutable vertices.
    pub fn rank(&self) -> usize {
        self.frozen.iter().filter(|&&f| !f).count()
    }

    /// Signed arrow count `b[u][v]`. Panics on unknown labels.
    pub fn b(&self, u: Vertex, v: Vertex) -> i64 {
        let i = self.index_of(u).unwrap_or_else(|| panic!("unknown vertex {u}"));
        let j = self.index_of(v).unwrap_or_else(|| panic!("unknown vertex {v}"));
        self.b[i * self.n() + j]
    }

    #[inline]
    pub(crate) fn b_at(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n() + j]
    }

    /// Arrows with positive multiplicity, sorted by `(source, target)`.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex, i64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let x = self.b[i * n + j];
                if x > 0 {
                    out.push((self.labels[i], self.labels[j], x));
                }
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_weight(&self) -> i64 {
        self.b.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// The mutable part, frame dropped.
    pub fn mutable_part(&self) -> Quiver {
        if self.frame.is_empty() {
            return self.clone();
        }
        self.restrict(&self.mutable_labels())
            .expect("mutable labels are present")
    }

    /// Mutation at a mutable vertex.
    pub fn mutate(&self, v: Vertex) -> Result<Quiver> {
        let mut q = self.clone();
        q.mutate_in_place(v)?;
        Ok(q)
    }

    /// In-place mutation; on error `self` is left unchanged.
    pub fn mutate_in_place(&mut self, v: Vertex) -> Result<()> {
        let k = self.index_or_err(v)?;
        if self.frozen[k] {
            return Err(Error::FrozenVertex(v));
        }
        let n = self.n();
        let mut next = self.b.clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let bik = self.b[i * n + k];
            if bik == 0 {
                continue;
            }
            for j in (i + 1)..n {
                if j == k || (self.frozen[i] && self.frozen[j]) {
                    continue;
                }
                let bkj = self.b[k * n + j];
                let delta = if bik > 0 && bkj > 0 {
                    bik.checked_mul(bkj)
                } else if bik < 0 && bkj < 0 {
                    bik.checked_mul(bkj).and_then(i64::checked_neg)
                } else {
                    continue;
                }
                .ok_or(Error::Overflow("mutation"))?;
                let x = self.b[i * n + j]
                    .checked_add(delta)
                    .ok_or(Error::Overflow("mutation"))?;
                next[i * n + j] = x;
                next[j * n + i] = -x;
            }
        }
        for i in 0..n {
            next[i * n + k] = -self.b[i * n + k];
            next[k * n + i] = -self.b[k * n + i];
        }
        self.b = next;
        Ok(())
    }

    /// Left-to-right fold of [`Quiver::mutate`].
    pub fn mutate_seq(&self, seq: &MutationSequence) -> Result<Quiver> {
        let mut q = self.clone();
        for v in seq.iter() {
            q.mutate_in_place(v)?;
        }
        Ok(q)
    }

    /// All intermediate quivers, starting with `self`; `|seq| + 1` entries.
    pub fn trajectory(&self, seq: &MutationSequence) -> Result<Vec<Quiver>> {
        let mut out = Vec::with_capacity(seq.len() + 1);
        out.push(self.clone());
        for v in seq.iter() {
            let next = out.last().expect("nonempty").mutate(v)?;
            out.push(next);
        }
        Ok(out)
    }

    /// The full subquiver on `keep`. Frame pairs survive when both ends do.
    pub fn restrict(&self, keep: &[Vertex]) -> Result<Quiver> {
        let mut idx = Vec::with_capacity(keep.len());
        for &v in keep {
            idx.push(self.index_or_err(v)?);
        }
        idx.sort_unstable();
        idx.dedup();
        let m = idx.len();
        let n = self.n();
        let mut b = vec![0; m * m];
        for (a, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                b[a * m + c] = self.b[i * n + j];
            }
        }
        let labels: Vec<Vertex> = idx.iter().map(|&i| self.labels[i]).collect();
        let frozen: Vec<bool> = idx.iter().map(|&i| self.frozen[i]).collect();
        let kept: BTreeSet<Vertex> = labels.iter().copied().collect();
        let frame = self
            .frame
            .iter()
            .copied()
            .filter(|(m, f)| kept.contains(m) && kept.contains(f))
            .collect();
        Ok(Quiver {
            labels,
            frozen,
            frame,
            b,
        })
    }

    /// Removes one vertex.
    pub fn delete(&self, v: Vertex) -> Result<Quiver> {
        self.index_or_err(v)?;
        let keep: Vec<Vertex> = self.labels.iter().copied().filter(|&u| u != v).collect();
        self.restrict(&keep)
    }

    /// Relabels mutable vertices: `b'[σ(i)][σ(j)] = b[i][j]`; frozen vertices
    /// stay where they are.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<Quiver> {
        for v in sigma.support() {
            let i = self.index_or_err(v)?;
            if self.frozen[i] {
                return Err(Error::FrozenVertex(v));
            }
            let w = sigma.apply(v);
            let j = self.index_or_err(w)?;
            if self.frozen[j] {
                return Err(Error::FrozenVertex(w));
            }
        }
        let n = self.n();
        let target: Vec<usize> = self
            .labels
            .iter()
            .map(|&v| self.index_of(sigma.apply(v)).expect("checked"))
            .collect();
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[target[i] * n + target[j]] = self.b[i * n + j];
            }
        }
        Ok(Quiver {
            labels: self.labels.clone(),
            frozen: self.frozen.clone(),
            frame: self.frame.clone(),
            b,
        })
    }

    /// All arrows reversed.
    pub fn opposite(&self) -> Quiver {
        let mut q = self.clone();
        for x in &mut q.b {
            *x = -*x;
        }
        q
    }

    /// Every mutable label shifted by `offset` (frozen labels too).
    pub fn shifted(&self, offset: Vertex) -> Result<Quiver> {
        let labels: Vec<Vertex> = self.labels.iter().map(|&v| v + offset).collect();
        let mut q = Quiver::isolated(labels)?;
        q.b = self.b.clone();
        q.frozen = self.frozen.clone();
        q.frame = self
            .frame
            .iter()
            .map(|&(m, f)| (m + offset, f + offset))
            .collect();
        Ok(q)
    }

    /// True when no oriented cycle exists among the mutable vertices.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm over mutable vertices, always taking the smallest
    /// available source.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.n();
        let mutable: Vec<usize> = (0..n).filter(|&i| !self.frozen[i]).collect();
        let mut indeg = vec![0usize; n];
        for &i in &mutable {
            for &j in &mutable {
                if self.b[j * n + i] > 0 {
                    indeg[i] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = mutable.iter().copied().filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(mutable.len());
        while let Some(i) = ready.pop_first() {
            order.push(self.labels[i]);
            for &j in &mutable {
                if self.b[i * n + j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (order.len() == mutable.len()).then_some(order)
    }

    /// `|b[i][j]| ≥ 2` for every pair of distinct mutable vertices.
    pub fn is_abundant(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            self.frozen[i]
                || ((i + 1)..n).all(|j| self.frozen[j] || self.b[i * n + j].abs() >= 2)
        })
    }

    /// Checks the stored-matrix invariants; used by debug assertions and tests.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.b[i * n + i] != 0 {
                return Err(Error::Loop(self.labels[i]));
            }
            for j in 0..n {
                if self.b[i * n + j] != -self.b[j * n + i] {
                    return Err(Error::NotSkewSymmetric(self.labels[i], self.labels[j]));
                }
                if self.frozen[i] && self.frozen[j] && self.b[i * n + j] != 0 {
                    return Err(Error::InternalContradiction(format!(
                        "arrow between frozen {} and {}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows()
            .into_iter()
            .map(|(s, t, m)| {
                if m == 1 {
                    format!("{s}->{t}")
                } else {
                    format!("{s}->{t}:{m}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_prime() -> Quiver {
        Quiver::from_arrows([1, 2, 3], &[(1, 2, 1), (2, 3, 4), (1, 3, 5)]).unwrap()
    }

    #[test]
    fn mutate_key_example() {
        // Hand-applied mutation at 2: 1→2→3 contributes 1·4 to 1→3.
        let q = k_prime().mutate(2).unwrap();
        let expected =
            Quiver::from_arrows([1, 2, 3], &[(2, 1, 1), (3, 2, 4), (1, 3, 9)]).unwrap();
        assert_eq!(q, expected);
        let k = k_prime().mutate_seq(&[2, 3].into()).unwrap();
        let expected =
            Quiver::from_arrows([1, 2, 3], &[(1, 2, 35), (2, 3, 4), (3, 1, 9)]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn mutation_at_sink_only_reverses() {
        let q = Quiver::from_arrows([1, 2, 3], &[(1, 3, 2), (2, 3, 5), (1, 2, 1)]).unwrap();
        let m = q.mutate(3).unwrap();
        assert_eq!(m.b(3, 1), 2);
        assert_eq!(m.b(3, 2), 5);
        assert_eq!(m.b(1, 2), 1);
    }

    #[test]
    fn mutation_errors() {
        let q = k_prime();
        assert_eq!(q.mutate(9), Err(Error::UnknownVertex(9)));
        let framed = q
            .clone()
            .with_extra_vertices(&[101])
            .unwrap()
            .with_frame(vec![(1, 101)])
            .unwrap();
        assert_eq!(framed.mutate(101), Err(Error::FrozenVertex(101)));
    }

    #[test]
    fn overflow_is_reported() {
        let big = 1i64 << 40;
        let q = Quiver::from_arrows([1, 2, 3], &[(1, 2, big), (2, 3, big)]).unwrap();
        assert_eq!(q.mutate(2), Err(Error::Overflow("mutation")));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Quiver::from_arrows([1, 2], &[(1, 2, 1), (2, 1, 1)]),
            Err(Error::TwoCycle(2, 1))
        );
        assert_eq!(Quiver::from_arrows([1], &[(1, 1, 1)]), Err(Error::Loop(1)));
        assert_eq!(Quiver::isolated([1, 1]), Err(Error::DuplicateVertex(1)));
        assert_eq!(Quiver::isolated([0, 1]), Err(Error::ZeroLabel));
        assert!(Quiver::from_b_matrix(&[1, 2], &[vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn restriction_and_opposite() {
        let q = k_prime();
        assert_eq!(q.restrict(&[1, 2, 3]).unwrap(), q);
        assert_eq!(q.restrict(&[1, 3]).unwrap().b(1, 3), 5);
        assert_eq!(q.opposite().opposite(), q);
        assert_eq!(q.opposite().b(2, 1), 1);
        assert_eq!(q.restrict(&[4]), Err(Error::UnknownVertex(4)));
    }

    #[test]
    fn permutation_action() {
        let q = k_prime();
        assert_eq!(q.apply_permutation(&Permutation::identity()).unwrap(), q);
        let s = Permutation::from_cycles([[1, 2, 3]]).unwrap();
        let p = q.apply_permutation(&s).unwrap();
        assert_eq!(p.b(2, 3), 1);
        assert_eq!(p.apply_permutation(&s.inverse()).unwrap(), q);
        assert_ne!(p, q);
    }

    #[test]
    fn topological_order_prefers_small_labels() {
        let q = Quiver::from_arrows([1, 2, 3, 4], &[(3, 1, 1), (4, 2, 1)]).unwrap();
        assert_eq!(q.topological_order(), Some(vec![3, 1, 4, 2]));
        let cyc = Quiver::from_arrows([1, 2, 3], &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]).unwrap();
        assert!(!cyc.is_acyclic());
    }
}
