//! Quiver mutation, reddening sequences, and mutation cycles built from
//! triangular extensions.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod extension;
pub mod exec;
pub mod framing;
pub mod io;
pub mod iso;
pub mod matrix;
pub mod permutation;
pub mod quiver;
pub mod reddening;
pub mod search;
pub mod sequence;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use framing::{c_matrix, coframed, framed, vertex_color, CMatrix, Color};
pub use iso::{are_isomorphic, canonical_form, find_isomorphism, CanonicalForm};
pub use matrix::LabeledMatrix;
pub use permutation::Permutation;
pub use quiver::{Quiver, Vertex};
pub use reddening::{
    conjugate_reddening, is_maximal_green, is_reddening, source_sequence,
};
pub use sequence::MutationSequence;
