//! Reddening and maximal green sequences.

use crate::error::{Error, Result};
use crate::framing::{c_matrix_of, framed, vertex_color, CMatrix, Color};
use crate::permutation::Permutation;
use crate::quiver::Quiver;
use crate::sequence::MutationSequence;

/// Reads the verdict off a final C-matrix: `Some(σ)` when every vertex is
/// red, in which case `C = −P_σ` must hold.
pub fn permutation_of(c: &CMatrix) -> Result<Option<Permutation>> {
    if !c.all_red() {
        return Ok(None);
    }
    c.negative_permutation().map(Some).ok_or_else(|| {
        Error::InternalContradiction(format!(
            "all vertices red but C is not minus a permutation matrix:\n{c}"
        ))
    })
}

/// The associated permutation of `s` if it is a reddening sequence of `q`.
///
/// σ sends `i` to the unique `j` with `C[j][i] = −1`, so that
/// `mutate_seq(q, s) = q.apply_permutation(σ)`.
pub fn is_reddening(q: &Quiver, s: &MutationSequence) -> Result<Option<Permutation>> {
    let state = framed(q)?.mutate_seq(s)?;
    permutation_of(&c_matrix_of(&state)?)
}

/// The associated permutation of `s` if it is a maximal green sequence.
pub fn is_maximal_green(q: &Quiver, s: &MutationSequence) -> Result<Option<Permutation>> {
    let mut state = framed(q)?;
    for v in s.iter() {
        if vertex_color(&state, v)? != Color::Green {
            return Ok(None);
        }
        state.mutate_in_place(v)?;
    }
    permutation_of(&c_matrix_of(&state)?)
}

/// `reduce(m⁻¹ · s · σ(m))`, a reddening sequence of `mutate_seq(q, m)`
/// whenever `s` is one of `q` with permutation σ.
pub fn conjugate_reddening(
    s: &MutationSequence,
    sigma: &Permutation,
    m: &MutationSequence,
) -> MutationSequence {
    m.inverse().then(s).then(&m.relabel(sigma)).reduce()
}

/// Mutates each vertex once in topological order, smallest source first.
pub fn source_sequence(q: &Quiver) -> Result<MutationSequence> {
    q.topological_order()
        .map(MutationSequence::from)
        .ok_or(Error::CyclicQuiver)
}
