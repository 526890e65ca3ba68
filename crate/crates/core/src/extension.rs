//! Triangular extensions and the mutation cycles they carry.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::framing::c_matrix;
use crate::iso::find_isomorphism;
use crate::matrix::LabeledMatrix;
use crate::permutation::Permutation;
use crate::quiver::{Quiver, Vertex};
use crate::reddening::{is_reddening, source_sequence};
use crate::sequence::MutationSequence;

/// `T →ᴬ H`: the disjoint union of `t` and `h` plus `a[u][v]` arrows `u → v`
/// for `u ∈ T`, `v ∈ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    t: Quiver,
    h: Quiver,
    a: LabeledMatrix,
}

impl ExtensionSpec {
    /// Validates the parts; `a` may list its rows and columns in any order.
    pub fn new(t: Quiver, h: Quiver, a: LabeledMatrix) -> Result<Self> {
        for part in [&t, &h] {
            if let Some(&f) = part.frozen_labels().first() {
                return Err(Error::FrozenVertex(f));
            }
        }
        if let Some(&v) = t.labels().iter().find(|&&v| h.contains(v)) {
            return Err(Error::LabelCollision(v));
        }
        let a = reindex(&a, t.labels(), h.labels())?;
        for (i, &u) in a.row_labels().iter().enumerate() {
            for (j, &v) in a.col_labels().iter().enumerate() {
                let value = a.at(i, j);
                if value < 0 {
                    return Err(Error::NegativeEntry { row: u, col: v, value });
                }
            }
        }
        Ok(Self { t, h, a })
    }

    /// Builds `a` from `(t, h, multiplicity)` triples.
    pub fn from_arrows(t: Quiver, h: Quiver, cross: &[(Vertex, Vertex, i64)]) -> Result<Self> {
        let mut a = LabeledMatrix::zeros(t.labels().to_vec(), h.labels().to_vec());
        for &(u, v, m) in cross {
            let i = t.index_of(u).ok_or(Error::UnknownVertex(u))?;
            let j = h.index_of(v).ok_or(Error::UnknownVertex(v))?;
            a.set_at(i, j, a.at(i, j) + m);
        }
        Self::new(t, h, a)
    }

    pub fn t(&self) -> &Quiver {
        &self.t
    }

    pub fn h(&self) -> &Quiver {
        &self.h
    }

    /// Rows follow the sorted labels of `T`, columns those of `H`.
    pub fn a(&self) -> &LabeledMatrix {
        &self.a
    }
}

fn reindex(a: &LabeledMatrix, rows: &[Vertex], cols: &[Vertex]) -> Result<LabeledMatrix> {
    let mismatch = || {
        Error::DimensionMismatch(format!(
            "cross matrix must have rows {rows:?} and columns {cols:?}"
        ))
    };
    let mut sorted_rows = a.row_labels().to_vec();
    let mut sorted_cols = a.col_labels().to_vec();
    sorted_rows.sort_unstable();
    sorted_cols.sort_unstable();
    if sorted_rows != rows || sorted_cols != cols {
        return Err(mismatch());
    }
    let mut out = LabeledMatrix::zeros(rows.to_vec(), cols.to_vec());
    for (i, &u) in rows.iter().enumerate() {
        for (j, &v) in cols.iter().enumerate() {
            out.set_at(i, j, a.get(u, v).ok_or_else(mismatch)?);
        }
    }
    Ok(out)
}

/// The quiver `T →ᴬ H`.
pub fn triangular_extension(spec: &ExtensionSpec) -> Result<Quiver> {
    let mut q = spec.t.with_extra_vertices(spec.h.labels())?;
    for (u, v, m) in spec.h.arrows() {
        q.set_weight(u, v, m)?;
    }
    for (i, &u) in spec.a.row_labels().iter().enumerate() {
        for (j, &v) in spec.a.col_labels().iter().enumerate() {
            q.set_weight(u, v, spec.a.at(i, j))?;
        }
    }
    Ok(q)
}

/// `C_s · A`, which equals the `T × H` block of the extension after `s`.
pub fn predicted_cross_block(spec: &ExtensionSpec, s: &MutationSequence) -> Result<LabeledMatrix> {
    if let Some(v) = s.iter().find(|&v| !spec.t.contains(v)) {
        return Err(Error::UnknownVertex(v));
    }
    c_matrix(&spec.t, s)?.matrix().mul(&spec.a)
}

/// The `T × H` block of `q`, read off directly.
pub fn cross_block(q: &Quiver, t_labels: &[Vertex], h_labels: &[Vertex]) -> LabeledMatrix {
    let mut out = LabeledMatrix::zeros(t_labels.to_vec(), h_labels.to_vec());
    for (i, &u) in t_labels.iter().enumerate() {
        for (j, &v) in h_labels.iter().enumerate() {
            out.set_at(i, j, q.b(u, v));
        }
    }
    out
}

/// Trajectory facts about a mutation sequence run from a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub length: usize,
    pub is_reduced: bool,
    pub closes_equal: bool,
    /// σ with `q.apply_permutation(σ)` equal to the final quiver.
    #[serde(serialize_with = "ser_opt_perm")]
    pub closes_iso: Option<Permutation>,
    /// Reduced, closed, and no quiver visited twice before returning.
    pub simple: bool,
    pub all_abundant: bool,
    pub trajectory_hashes: Vec<u64>,
}

fn ser_opt_perm<S: serde::Serializer>(p: &Option<Permutation>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// Hash of a labeled quiver (labels, frozen flags and matrix).
pub fn labeled_hash(q: &Quiver) -> u64 {
    let mut h = DefaultHasher::new();
    q.hash(&mut h);
    h.finish()
}

pub fn verify_cycle(q: &Quiver, s: &MutationSequence) -> Result<CycleReport> {
    verify_cycle_with(Strategy::default(), q, s)
}

pub fn verify_cycle_with(strategy: Strategy, q: &Quiver, s: &MutationSequence) -> Result<CycleReport> {
    let traj = q.trajectory(s)?;
    let last = traj.last().expect("trajectory starts with q");
    let closes_equal = last == q;
    let closes_iso = if closes_equal {
        Some(Permutation::identity())
    } else {
        find_isomorphism(q, last)
    };
    let is_reduced = s.is_reduced();
    let interior = &traj[..traj.len() - 1];
    let distinct = interior.iter().collect::<HashSet<_>>().len() == interior.len();
    let flags = exec::map(strategy, &traj, |x| (labeled_hash(x), x.is_abundant()));
    Ok(CycleReport {
        length: s.len(),
        is_reduced,
        closes_equal,
        closes_iso,
        simple: !s.is_empty() && is_reduced && closes_equal && distinct,
        all_abundant: flags.iter().all(|f| f.1),
        trajectory_hashes: flags.into_iter().map(|f| f.0).collect(),
    })
}

/// A verified cycle together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltCycle {
    pub quiver: Quiver,
    pub sequence: MutationSequence,
    pub report: CycleReport,
}

fn reddening_perm(q: &Quiver, s: &MutationSequence, what: &str) -> Result<Permutation> {
    is_reddening(q, s)?.ok_or_else(|| Error::NotReddening(format!("{what} = {s}")))
}

fn finish(quiver: Quiver, sequence: MutationSequence) -> Result<BuiltCycle> {
    let report = verify_cycle(&quiver, &sequence)?;
    if !report.closes_equal {
        return Err(Error::VerificationFailed(format!(
            "sequence of length {} does not return to the extension",
            sequence.len()
        )));
    }
    Ok(BuiltCycle { quiver, sequence, report })
}

/// Cycle `M_T M_H` on `T →ᴬ H` when both factors redden with the identity.
pub fn build_cycle_equal(
    t: &Quiver,
    m_t: &MutationSequence,
    h: &Quiver,
    m_h: &MutationSequence,
    a: &LabeledMatrix,
) -> Result<BuiltCycle> {
    let spec = ExtensionSpec::new(t.clone(), h.clone(), a.clone())?;
    for (part, m, name) in [(t, m_t, "m_t"), (h, m_h, "m_h")] {
        let p = reddening_perm(part, m, name)?;
        if !p.is_identity() {
            return Err(Error::NonIdentityPermutation(
                if name == "m_t" { "m_t" } else { "m_h" },
                p.to_string(),
            ));
        }
    }
    finish(triangular_extension(&spec)?, m_t.then(m_h))
}

/// `M_T M_H ρ(M_T) σ(M_H) ⋯ ρ^{k−1}(M_T) σ^{k−1}(M_H)` with
/// `k = lcm(ord ρ, ord σ)`.
pub fn build_cycle_general(
    t: &Quiver,
    m_t: &MutationSequence,
    h: &Quiver,
    m_h: &MutationSequence,
    a: &LabeledMatrix,
) -> Result<BuiltCycle> {
    let spec = ExtensionSpec::new(t.clone(), h.clone(), a.clone())?;
    let rho = reddening_perm(t, m_t, "m_t")?;
    let sigma = reddening_perm(h, m_h, "m_h")?;
    let k = rho.order().lcm(&sigma.order());
    let mut seq = MutationSequence::empty();
    let mut rho_i = Permutation::identity();
    let mut sigma_i = Permutation::identity();
    for _ in 0..k {
        seq = seq.then(&m_t.relabel(&rho_i)).then(&m_h.relabel(&sigma_i));
        rho_i = rho.compose(&rho_i);
        sigma_i = sigma.compose(&sigma_i);
    }
    finish(triangular_extension(&spec)?, seq)
}

/// Cycle `reduce(m⁻¹ S_T m n⁻¹ S_H n)` on `μ_m(T) →ᴬ μ_n(H)` for acyclic
/// `t`, `h` with source sequences `S_T`, `S_H`.
pub fn build_acyclic_cycle(
    t: &Quiver,
    m: &MutationSequence,
    h: &Quiver,
    n: &MutationSequence,
    a: &LabeledMatrix,
) -> Result<BuiltCycle> {
    let s_t = source_sequence(t)?;
    let s_h = source_sequence(h)?;
    let t2 = t.mutate_seq(m)?;
    let h2 = h.mutate_seq(n)?;
    let spec = ExtensionSpec::new(t2, h2, a.clone())?;
    let seq = m
        .inverse()
        .then(&s_t)
        .then(m)
        .then(&n.inverse())
        .then(&s_h)
        .then(n)
        .reduce();
    finish(triangular_extension(&spec)?, seq)
}

/// True when every quiver along `s` from `T →ᵃ Iₖ` is distinct. The `k`
/// isolated vertices get fresh consecutive labels above those of `t`, taken
/// in the column order of `a`.
pub fn is_distinguishing(t: &Quiver, s: &MutationSequence, a: &LabeledMatrix) -> Result<bool> {
    let start = t.labels().last().copied().unwrap_or(0) + 1;
    let k = a.col_labels().len() as Vertex;
    let fresh: Vec<Vertex> = (start..start + k).collect();
    let mut relabeled = LabeledMatrix::zeros(a.row_labels().to_vec(), fresh.clone());
    for i in 0..a.row_labels().len() {
        for j in 0..fresh.len() {
            relabeled.set_at(i, j, a.at(i, j));
        }
    }
    let spec = ExtensionSpec::new(t.clone(), Quiver::isolated(fresh)?, relabeled)?;
    let traj = triangular_extension(&spec)?.trajectory(s)?;
    Ok(traj.iter().collect::<HashSet<_>>().len() == traj.len())
}
