//! Parametric quiver families with their reddening sequences and cycles.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::quiver::{Quiver, Vertex};
use crate::sequence::MutationSequence;

/// `u_k(a)` with `u₋₁ = 0`, `u₀ = 1`, `u_k = a·u_{k−1} − u_{k−2}`.
pub fn chebyshev_u(k: i64, a: i64) -> Result<i64> {
    if k < -1 {
        return Err(Error::InvalidArgument(format!("u_{k} is undefined")));
    }
    let (mut prev, mut cur) = (0i64, 1i64);
    if k == -1 {
        return Ok(0);
    }
    for _ in 0..k {
        let next = a
            .checked_mul(cur)
            .and_then(|x| x.checked_sub(prev))
            .ok_or(Error::Overflow("chebyshev recursion"))?;
        prev = cur;
        cur = next;
    }
    if a >= 2 {
        assert!(cur > 0, "u_{k}({a}) must be positive");
    }
    Ok(cur)
}

/// A quiver with a mutation cycle and the permutation used to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCycle {
    pub quiver: Quiver,
    pub cycle: MutationSequence,
    pub permutation: Permutation,
}

/// The 4-vertex Chebyshev family: `3 →α 4`, `1 →c 3`, `2 →b 3`, `4 →β 1`,
/// `1 →a 2`, `2 →γ 4`, with cycle `L, 4, σ(L⁻¹), 3` where `L = 2,1,2,…`
/// has length `k` and `σ = (1,2)(3,4)`.
pub fn fordy_marsh(a: i64, b: i64, c: i64, k: i64) -> Result<FamilyCycle> {
    if a < 2 || b < 2 || c < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "need a, b, c ≥ 2 and k ≥ 1, got ({a}, {b}, {c}, {k})"
        )));
    }
    let u = |i: i64| chebyshev_u(i, a);
    let of = || Error::Overflow("Chebyshev weights");
    let alpha = u(k)?.checked_sub(u(k - 2)?).ok_or_else(of)?;
    let beta = u(k - 1)?
        .checked_mul(b)
        .zip(u(k)?.checked_mul(c))
        .and_then(|(x, y)| x.checked_add(y))
        .ok_or_else(of)?;
    let gamma = u(k - 2)?
        .checked_mul(b)
        .zip(u(k - 1)?.checked_mul(c))
        .and_then(|(x, y)| x.checked_add(y))
        .ok_or_else(of)?;
    let quiver = Quiver::from_arrows(
        [1, 2, 3, 4],
        &[(3, 4, alpha), (1, 3, c), (2, 3, b), (4, 1, beta), (1, 2, a), (2, 4, gamma)],
    )?;
    let l: MutationSequence = (0..k).map(|i| if i % 2 == 0 { 2 } else { 1 }).collect();
    let permutation = Permutation::from_cycles([[1, 2], [3, 4]]).expect("disjoint");
    let cycle = l
        .then(&MutationSequence::from([4]))
        .then(&l.inverse().relabel(&permutation))
        .then(&MutationSequence::from([3]));
    Ok(FamilyCycle {
        quiver,
        cycle,
        permutation,
    })
}

/// The triangulated grid `R_{k,ℓ}` with row-major labels: arrows point
/// left along rows, up along columns, and diagonally down-right.
pub fn grid_quiver(k: u32, l: u32) -> Result<Quiver> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("grid sides must be positive".into()));
    }
    let label = |r: u32, c: u32| (r - 1) * l + c;
    let mut arrows = Vec::new();
    for r in 1..=k {
        for c in 1..=l {
            if c > 1 {
                arrows.push((label(r, c), label(r, c - 1), 1));
            }
            if r > 1 {
                arrows.push((label(r, c), label(r - 1, c), 1));
            }
            if r < k && c < l {
                arrows.push((label(r, c), label(r + 1, c + 1), 1));
            }
        }
    }
    Quiver::from_arrows(1..=k * l, &arrows)
}

/// For `i = 1..=ℓ`: the leftmost `i` vertices of every row, bottom row
/// first, each row right to left. Length `C(ℓ+1, 2)·k`.
pub fn grid_reddening(k: u32, l: u32) -> MutationSequence {
    let mut out = MutationSequence::empty();
    for i in 1..=l {
        for r in (1..=k).rev() {
            for c in (1..=i).rev() {
                out.push((r - 1) * l + c);
            }
        }
    }
    out
}

/// `T_k` with its maximal green sequence and associated permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedSphere {
    pub quiver: Quiver,
    pub sequence: MutationSequence,
    pub permutation: Permutation,
    /// Vertex names: `v1`, `u1`, `w1`, `s`, `t`, `s̄`, `t̄`, …
    pub names: BTreeMap<Vertex, String>,
}

impl PuncturedSphere {
    /// Label of a named vertex.
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.iter().find(|(_, n)| n.as_str() == name).map(|(&v, _)| v)
    }
}

/// The quiver `T_k` on `3(k−2)` vertices. With `m = k − 3`, labels are
/// `v_i = i`, `u_i = m + i`, `w_i = 2m + i`, then `s, t, s̄, t̄`.
pub fn punctured_sphere(k: u32) -> Result<PuncturedSphere> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("need k ≥ 4, got {k}")));
    }
    let m = k - 3;
    let v = |i: u32| i;
    let u = |i: u32| m + i;
    let w = |i: u32| 2 * m + i;
    let (s, t, sb, tb) = (3 * m, 3 * m + 1, 3 * m + 2, 3 * m + 3);

    let mut names = BTreeMap::new();
    for i in 1..=m {
        names.insert(v(i), format!("v{i}"));
        names.insert(u(i), format!("u{i}"));
    }
    for i in 1..m {
        names.insert(w(i), format!("w{i}"));
    }
    for (x, n) in [(s, "s"), (t, "t"), (sb, "s̄"), (tb, "t̄")] {
        names.insert(x, n.to_string());
    }

    let mut arrows = vec![
        (s, v(1), 1),
        (v(m), t, 1),
        (t, u(m), 1),
        (u(1), s, 1),
        (v(1), sb, 1),
        (sb, u(1), 1),
        (u(m), tb, 1),
        (tb, v(m), 1),
    ];
    for i in 1..m {
        arrows.extend([
            (v(i), v(i + 1), 1),
            (u(i + 1), u(i), 1),
            (v(i + 1), w(i), 1),
            (w(i), v(i), 1),
            (u(i), w(i), 1),
            (w(i), u(i + 1), 1),
        ]);
    }
    let quiver = Quiver::from_arrows(names.keys().copied(), &arrows)?;

    let ws: Vec<Vertex> = (1..m).map(w).collect();
    let mut seq: Vec<Vertex> = ws.clone();
    seq.extend([sb, tb]);
    for i in 1..=m {
        seq.extend([u(i), v(i)]);
    }
    seq.extend(&ws);
    seq.extend([s, t]);
    seq.extend((1..=m).map(v));
    seq.push(tb);
    seq.extend((1..=m).rev().map(u));
    seq.push(sb);
    seq.extend((2..=m).map(u));
    seq.push(tb);
    seq.extend((1..=m).rev().map(v));

    let mut cycles = vec![vec![u(1), v(1), sb, s], vec![t, tb]];
    cycles.extend((2..=m).map(|i| vec![v(i), u(i)]));
    let permutation = Permutation::from_cycles(cycles).expect("disjoint cycles");

    Ok(PuncturedSphere {
        quiver,
        sequence: seq.into(),
        permutation,
        names,
    })
}

/// The 4-vertex torus quiver dominated by `a`; `a = 1` is the plain one.
pub fn dreaded_torus(a: i64) -> Result<Quiver> {
    if a < 1 {
        return Err(Error::InvalidArgument(format!("need a ≥ 1, got {a}")));
    }
    Quiver::from_arrows(
        [1, 2, 3, 4],
        &[(3, 4, 2 * a), (1, 3, a), (2, 3, 1), (4, 1, 1), (1, 2, a), (4, 2, a)],
    )
}

/// The maximal green sequence shared by every [`dreaded_torus`].
pub fn dreaded_torus_mgs() -> MutationSequence {
    MutationSequence::from([1, 3, 4, 2, 1, 3])
}

/// The oriented square `1 →a 2 →b 3 →a 4 →b 1`.
pub fn box_quiver(a: i64, b: i64) -> Result<Quiver> {
    Quiver::from_arrows([1, 2, 3, 4], &[(1, 2, a), (2, 3, b), (3, 4, a), (4, 1, b)])
}
