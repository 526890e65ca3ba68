//! Framed and coframed extensions, C-matrices, and vertex colors.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;
use crate::permutation::Permutation;
use crate::quiver::{Quiver, Vertex};
use crate::sequence::MutationSequence;

/// Offset added to a mutable label to get its frozen partner: the smallest
/// power of ten that is at least ten times the largest label.
pub fn frame_offset(q: &Quiver) -> Vertex {
    let max = q.labels().last().copied().unwrap_or(1);
    let mut p: Vertex = 1;
    while p < max {
        p *= 10;
    }
    p * 10
}

fn attach_frame(q: &Quiver, sign: i64) -> Result<Quiver> {
    if q.has_frame() || !q.frozen_labels().is_empty() {
        return Err(Error::AlreadyFramed);
    }
    let offset = frame_offset(q);
    let mutable = q.mutable_labels();
    let partners: Vec<Vertex> = mutable
        .iter()
        .map(|&v| v.checked_add(offset).ok_or(Error::Overflow("frame labels")))
        .collect::<Result<_>>()?;
    let mut out = q.with_extra_vertices(&partners)?;
    for (&v, &p) in mutable.iter().zip(&partners) {
        out.set_weight(v, p, sign)?;
    }
    out.with_frame(mutable.into_iter().zip(partners).collect())
}

/// Adds a frozen `i′` and an arrow `i → i′` for every vertex `i`.
pub fn framed(q: &Quiver) -> Result<Quiver> {
    attach_frame(q, 1)
}

/// Adds a frozen `i′` and an arrow `i′ → i` for every vertex `i`.
pub fn coframed(q: &Quiver) -> Result<Quiver> {
    attach_frame(q, -1)
}

/// Arrow counts from mutable `i` to frozen `j′`, indexed by `(i, j)`.
///
/// Rows are sign-coherent and nonzero by construction; [`CMatrix::new`]
/// rejects anything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CMatrix(LabeledMatrix);

impl CMatrix {
    pub fn new(m: LabeledMatrix) -> Result<Self> {
        for (i, &v) in m.row_labels().iter().enumerate() {
            row_color(m.row(i), v)?;
        }
        Ok(Self(m))
    }

    pub fn identity(labels: &[Vertex]) -> Self {
        let mut m = LabeledMatrix::zeros(labels.to_vec(), labels.to_vec());
        for i in 0..labels.len() {
            m.set_at(i, i, 1);
        }
        Self(m)
    }

    pub fn matrix(&self) -> &LabeledMatrix {
        &self.0
    }

    pub fn labels(&self) -> &[Vertex] {
        self.0.row_labels()
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> Option<i64> {
        self.0.get(i, j)
    }

    pub fn color(&self, v: Vertex) -> Result<Color> {
        let i = self
            .labels()
            .iter()
            .position(|&x| x == v)
            .ok_or(Error::UnknownVertex(v))?;
        row_color(self.0.row(i), v)
    }

    pub fn all_red(&self) -> bool {
        (0..self.labels().len()).all(|i| self.0.row(i).iter().all(|&x| x <= 0))
    }

    pub fn all_green(&self) -> bool {
        (0..self.labels().len()).all(|i| self.0.row(i).iter().all(|&x| x >= 0))
    }

    /// σ with `C = −P_σ`, i.e. `C[σ(i)][i] = −1`; `None` when `C` has any
    /// other shape.
    pub fn negative_permutation(&self) -> Option<Permutation> {
        let labels = self.labels();
        let n = labels.len();
        let mut pairs = Vec::with_capacity(n);
        for col in 0..n {
            let mut hit = None;
            for row in 0..n {
                match self.0.at(row, col) {
                    0 => {}
                    -1 if hit.is_none() => hit = Some(row),
                    _ => return None,
                }
            }
            pairs.push((labels[col], labels[hit?]));
        }
        Permutation::from_pairs(pairs).ok()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.0.to_rows()
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Color of a mutable vertex in a framed state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Green => "green",
            Color::Red => "red",
        })
    }
}

pub(crate) fn row_color(row: &[i64], v: Vertex) -> Result<Color> {
    let pos = row.iter().any(|&x| x > 0);
    let neg = row.iter().any(|&x| x < 0);
    match (pos, neg) {
        (true, false) => Ok(Color::Green),
        (false, true) => Ok(Color::Red),
        (true, true) => Err(Error::SignCoherenceViolation(v)),
        (false, false) => Err(Error::ZeroRow(v)),
    }
}

/// Reads the C-matrix of a framed state.
pub fn c_matrix_of(state: &Quiver) -> Result<CMatrix> {
    if !state.has_frame() {
        return Err(Error::NotFramed);
    }
    let frame = state.frame();
    let mutable: Vec<Vertex> = frame.iter().map(|&(m, _)| m).collect();
    let mut m = LabeledMatrix::zeros(mutable.clone(), mutable);
    for (i, &(u, _)) in frame.iter().enumerate() {
        for (j, &(_, fj)) in frame.iter().enumerate() {
            m.set_at(i, j, state.b(u, fj));
        }
    }
    CMatrix::new(m)
}

/// The C-matrix of `s` applied to the principal framing of `q`.
///
/// Sign-coherence is checked after every step.
pub fn c_matrix(q: &Quiver, s: &MutationSequence) -> Result<CMatrix> {
    let mut state = framed(q)?;
    for v in s.iter() {
        state.mutate_in_place(v)?;
        c_matrix_of(&state)?;
    }
    c_matrix_of(&state)
}

/// Color of mutable `v` in a framed state.
pub fn vertex_color(state: &Quiver, v: Vertex) -> Result<Color> {
    if !state.has_frame() {
        return Err(Error::NotFramed);
    }
    if state.is_frozen(v) {
        return Err(Error::FrozenVertex(v));
    }
    let row: Vec<i64> = state
        .frame()
        .iter()
        .map(|&(_, f)| state.b(v, f))
        .collect();
    row_color(&row, v)
}

/// Mutable rows of a framed exchange matrix, `n × 2n`: the first `n`
/// columns are the mutable vertices, the last `n` their frozen partners.
///
/// This is all the data mutation at mutable vertices touches, so searches
/// work on it directly instead of on full framed quivers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    n: usize,
    data: Vec<i64>,
}

impl ExtendedMatrix {
    /// Principal framing of the mutable part of `q`; vertex `i` is the
    /// `i`-th mutable label.
    pub fn framed(q: &Quiver) -> Self {
        let labels = q.mutable_labels();
        let n = labels.len();
        let mut data = vec![0; 2 * n * n];
        for (i, &u) in labels.iter().enumerate() {
            for (j, &v) in labels.iter().enumerate() {
                data[i * 2 * n + j] = q.b(u, v);
            }
            data[i * 2 * n + n + i] = 1;
        }
        Self { n, data }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * 2 * self.n + j]
    }

    /// Frozen part of row `i`.
    #[inline]
    pub fn c_row(&self, i: usize) -> &[i64] {
        let w = 2 * self.n;
        &self.data[i * w + self.n..(i + 1) * w]
    }

    pub fn is_green(&self, i: usize) -> bool {
        self.c_row(i).iter().any(|&x| x > 0)
    }

    pub fn all_red(&self) -> bool {
        (0..self.n).all(|i| self.c_row(i).iter().all(|&x| x <= 0))
    }

    /// σ with `C = −P_σ`, on positions.
    pub fn negative_permutation(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for col in 0..n {
            for row in 0..n {
                match self.c_row(row)[col] {
                    0 => {}
                    -1 if sigma[col] == usize::MAX && !used[row] => {
                        sigma[col] = row;
                        used[row] = true;
                    }
                    _ => return None,
                }
            }
            if sigma[col] == usize::MAX {
                return None;
            }
        }
        Some(sigma)
    }

    pub fn max_weight(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Mutation at position `k`; `None` on overflow, leaving `self` in an
    /// unspecified state.
    pub fn mutate(&mut self, k: usize) -> Option<()> {
        let n = self.n;
        let w = 2 * n;
        let row_k: Vec<i64> = self.data[k * w..(k + 1) * w].to_vec();
        for i in 0..n {
            if i == k {
                continue;
            }
            let bik = self.data[i * w + k];
            if bik == 0 {
                continue;
            }
            for (j, &bkj) in row_k.iter().enumerate() {
                if j == k {
                    continue;
                }
                let delta = if bik > 0 && bkj > 0 {
                    bik.checked_mul(bkj)?
                } else if bik < 0 && bkj < 0 {
                    bik.checked_mul(bkj)?.checked_neg()?
                } else {
                    continue;
                };
                let cell = &mut self.data[i * w + j];
                *cell = cell.checked_add(delta)?;
            }
            self.data[i * w + k] = -bik;
        }
        for x in &mut self.data[k * w..(k + 1) * w] {
            *x = -*x;
        }
        Some(())
    }
}
