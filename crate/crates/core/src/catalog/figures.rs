//! Fixed quivers and sequences, stored as explicit arrow lists.

use crate::matrix::LabeledMatrix;
use crate::quiver::{Quiver, Vertex};
use crate::sequence::MutationSequence;

use super::families::{dreaded_torus, punctured_sphere};

fn quiver<I: IntoIterator<Item = Vertex>>(vertices: I, arrows: &[(Vertex, Vertex, i64)]) -> Quiver {
    Quiver::from_arrows(vertices, arrows).expect("transcription is a valid quiver")
}

fn seq(entries: &[Vertex]) -> MutationSequence {
    MutationSequence::from(entries)
}

fn shift(arrows: &[(Vertex, Vertex, i64)], by: Vertex) -> Vec<(Vertex, Vertex, i64)> {
    arrows.iter().map(|&(s, t, m)| (s + by, t + by, m)).collect()
}

/// Oriented 4-cycle extended by the arrow `5 → 6`.
pub fn fig1_quiver() -> Quiver {
    quiver(
        1..=6,
        &[
            (1, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (4, 1, 1),
            (5, 6, 1),
            (5, 1, 7),
            (5, 4, 2),
            (6, 2, 5),
            (6, 3, 5),
        ],
    )
}

pub fn fig1_cycle() -> MutationSequence {
    seq(&[5, 6, 1, 2, 1, 3, 2, 4, 2, 1])
}

pub fn k_prime() -> Quiver {
    quiver(1..=3, &[(1, 2, 1), (2, 3, 4), (1, 3, 5)])
}

pub fn k_quiver() -> Quiver {
    quiver(1..=3, &[(1, 2, 35), (2, 3, 4), (3, 1, 9)])
}

pub fn k_m() -> MutationSequence {
    seq(&[3, 2, 1, 2, 3, 2, 3])
}

pub fn k_m_prime() -> MutationSequence {
    seq(&[3, 2, 1, 2, 3, 1, 2, 1, 2, 3])
}

/// The 15-vertex half-finite quiver: twelve recurrent vertices plus an
/// oriented triangle on 13, 14, 15.
pub fn half_finite_ext_15() -> Quiver {
    quiver(
        1..=15,
        &[
            (4, 7, 2),
            (10, 7, 1),
            (10, 1, 1),
            (4, 1, 3),
            (2, 5, 3),
            (8, 5, 2),
            (2, 11, 1),
            (8, 11, 1),
            (6, 9, 2),
            (12, 3, 1),
            (12, 9, 1),
            (6, 3, 3),
            (1, 2, 1),
            (3, 2, 1),
            (7, 8, 1),
            (9, 8, 1),
            (5, 4, 1),
            (5, 6, 1),
            (11, 10, 1),
            (11, 12, 1),
            (1, 13, 1),
            (2, 14, 1),
            (3, 15, 1),
            (13, 14, 1),
            (14, 15, 1),
            (15, 13, 1),
        ],
    )
}

pub fn half_finite_12() -> Quiver {
    half_finite_ext_15()
        .restrict(&(1..=12).collect::<Vec<_>>())
        .expect("labels present")
}

pub fn half_finite_triangle() -> Quiver {
    half_finite_ext_15().restrict(&[13, 14, 15]).expect("labels present")
}

/// Even vertices, then odd vertices.
pub fn half_finite_open() -> MutationSequence {
    seq(&[2, 4, 6, 8, 10, 12])
}

pub fn half_finite_closed() -> MutationSequence {
    seq(&[1, 3, 5, 7, 9, 11])
}

pub fn half_finite_mgs() -> MutationSequence {
    let (o, c) = (half_finite_open(), half_finite_closed());
    o.then(&c).then(&o).then(&c)
}

/// The three triangle sequences, each with the permutation it induces.
pub fn half_finite_triangle_sequences() -> [MutationSequence; 3] {
    [
        seq(&[14, 15, 14, 13, 14]),
        seq(&[13, 14, 15, 13]),
        seq(&[13, 15, 13, 14, 13]),
    ]
}

fn dt_arrows() -> Vec<(Vertex, Vertex, i64)> {
    dreaded_torus(1).expect("a = 1").arrows()
}

/// Two copies of the dreaded torus joined by `2 → 5`, `3 → 7`, `4 → 8`.
pub fn two_torus() -> Quiver {
    let mut arrows = dt_arrows();
    arrows.extend(shift(&dt_arrows(), 4));
    arrows.extend([(2, 5, 1), (3, 7, 1), (4, 8, 1)]);
    quiver(1..=8, &arrows)
}

pub fn two_torus_cycle() -> MutationSequence {
    seq(&[
        1, 3, 4, 2, 1, 3, 5, 7, 8, 6, 5, 7, 4, 2, 1, 3, 4, 2, 8, 6, 5, 7, 8, 6,
    ])
}

/// The two-torus extended by a third copy on 9..=12.
pub fn three_torus() -> Quiver {
    let mut arrows = two_torus().arrows();
    arrows.extend(shift(&dt_arrows(), 8));
    arrows.extend([(6, 11, 1), (6, 9, 1), (8, 11, 1)]);
    quiver(1..=12, &arrows)
}

/// `S, 9,11,12,10,9,11, S, 12,10,9,11,12,10` with `S` the two-torus cycle.
pub fn three_torus_stated() -> MutationSequence {
    let s = two_torus_cycle();
    s.then(&seq(&[9, 11, 12, 10, 9, 11]))
        .then(&s)
        .then(&seq(&[12, 10, 9, 11, 12, 10]))
}

/// `M_T, M_H, M_T′, σ(M_H)` where `M_T M_T′` splits the two-torus cycle
/// after its first twelve terms.
pub fn three_torus_cycle() -> MutationSequence {
    let s = two_torus_cycle();
    let (head, tail) = s.as_slice().split_at(12);
    seq(head)
        .then(&seq(&[9, 11, 12, 10, 9, 11]))
        .then(&seq(tail))
        .then(&seq(&[12, 10, 9, 11, 12, 10]))
}

pub fn r_prime() -> Quiver {
    quiver(
        1..=8,
        &[
            (2, 6, 1),
            (3, 2, 1),
            (4, 8, 1),
            (1, 2, 1),
            (1, 4, 1),
            (1, 5, 1),
            (6, 1, 1),
            (6, 3, 1),
            (7, 4, 1),
            (8, 1, 1),
            (8, 7, 1),
            (5, 6, 1),
            (5, 8, 1),
        ],
    )
}

pub fn r_prime_sequence() -> MutationSequence {
    seq(&[5, 1, 7, 4, 1, 8, 7, 5, 4, 2, 1, 6, 5, 4, 3, 2, 1, 3, 5])
}

/// Eight vertices; there is no vertex 6.
pub fn r_double_prime() -> Quiver {
    quiver(
        [1, 2, 3, 4, 5, 7, 8, 9],
        &[
            (1, 2, 1),
            (3, 1, 1),
            (4, 8, 1),
            (4, 1, 1),
            (5, 4, 1),
            (5, 9, 1),
            (2, 5, 1),
            (2, 3, 1),
            (7, 4, 1),
            (8, 5, 1),
            (8, 7, 1),
            (9, 2, 1),
            (9, 8, 1),
        ],
    )
}

pub fn r_double_prime_sequence() -> MutationSequence {
    seq(&[
        7, 4, 1, 8, 7, 5, 4, 1, 9, 8, 7, 2, 5, 4, 3, 1, 7, 8, 5, 3, 1, 7,
    ])
}

fn banff_arrows() -> Vec<(Vertex, Vertex, i64)> {
    vec![
        (1, 2, 2),
        (2, 3, 1),
        (2, 4, 1),
        (3, 1, 1),
        (3, 4, 1),
        (4, 1, 1),
        (4, 5, 1),
        (5, 3, 1),
        (6, 5, 1),
    ]
}

pub fn banff_q() -> Quiver {
    quiver(1..=6, &banff_arrows())
}

/// Sequence after which vertex 4 is a source of the mutated quiver.
pub fn banff_m() -> MutationSequence {
    seq(&[2, 5, 4, 1, 4, 2, 1, 6, 5, 4, 5, 3])
}

/// Reddening sequence of `μ_M(Q)`.
pub fn banff_s() -> MutationSequence {
    seq(&[4, 1, 3, 2, 3, 6, 1, 5, 3, 1])
}

/// `reduce(M S M⁻¹)`.
pub fn banff_n() -> MutationSequence {
    banff_m().then(&banff_s()).then(&banff_m().inverse()).reduce()
}

/// `R″ →ᴬ Q` with the Banff quiver relabelled onto 10..=15; rows of `A`
/// follow the labels of `R″`.
pub fn banff_extension_parts() -> (Quiver, Quiver, LabeledMatrix) {
    let t = r_double_prime();
    let h = quiver(10..=15, &shift(&banff_arrows(), 9));
    let mut rows = vec![vec![0; 6]; 8];
    let row = |v: Vertex| t.index_of(v).expect("vertex of R″");
    for (u, v, m) in [(8, 15, 1), (3, 15, 1), (8, 11, 3), (3, 11, 3), (5, 12, 1), (2, 12, 1)] {
        rows[row(u)][(v - 10) as usize] = m;
    }
    let a = LabeledMatrix::from_rows(t.labels().to_vec(), (10..=15).collect(), &rows)
        .expect("8 x 6 block");
    (t, h, a)
}

/// Cross arrows from `R_{3,3}` to `T₅` (by vertex name).
pub const T5_R33_CROSS: [(Vertex, &str); 13] = [
    (1, "t"),
    (1, "u1"),
    (1, "w1"),
    (2, "v1"),
    (3, "s̄"),
    (3, "w1"),
    (4, "t̄"),
    (5, "v1"),
    (5, "t̄"),
    (6, "s"),
    (7, "v2"),
    (7, "w1"),
    (8, "w1"),
];

/// `R_{3,3} →ᴬ T₅` with `T₅` relabelled onto 10..=18.
pub fn t5_r33_parts() -> (Quiver, Quiver, MutationSequence, LabeledMatrix) {
    let t = super::families::grid_quiver(3, 3).expect("3 x 3");
    let t5 = punctured_sphere(5).expect("k = 5");
    let h = t5.quiver.shifted(9).expect("no overflow");
    let m_h = t5.sequence.shifted(9);
    let mut a = vec![vec![0; 9]; 9];
    for (u, name) in T5_R33_CROSS {
        let v = t5.vertex(name).expect("named vertex");
        a[(u - 1) as usize][(v - 1) as usize] += 1;
    }
    let a = LabeledMatrix::from_rows((1..=9).collect(), (10..=18).collect(), &a).expect("9 x 9");
    (t, h, m_h, a)
}

pub fn fork_example() -> Quiver {
    quiver(1..=3, &[(2, 1, 3), (3, 2, 8), (1, 3, 2)])
}

pub fn key_example() -> Quiver {
    quiver(1..=4, &[(2, 1, 2), (2, 3, 4), (1, 4, 2), (2, 4, 3), (3, 4, 4)])
}

pub fn prefork_example() -> Quiver {
    quiver(1..=4, &[(2, 1, 2), (2, 3, 4), (1, 4, 8), (4, 2, 3), (3, 4, 5)])
}

pub fn infinite_reduced_key() -> Quiver {
    quiver(1..=4, &[(2, 1, 2), (2, 3, 2), (4, 1, 2), (2, 4, 2), (4, 3, 2)])
}

pub fn infinite_reduced_key_sequences() -> [MutationSequence; 2] {
    [seq(&[2, 4, 3, 1]), seq(&[4, 1, 3, 1, 3, 4, 2, 4, 3, 1])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcriptions_are_well_formed() {
        for q in [
            fig1_quiver(),
            k_prime(),
            k_quiver(),
            half_finite_ext_15(),
            two_torus(),
            three_torus(),
            r_prime(),
            r_double_prime(),
            banff_q(),
            fork_example(),
            key_example(),
            prefork_example(),
            infinite_reduced_key(),
        ] {
            q.check_invariants().unwrap();
        }
        assert_eq!(half_finite_12().labels().len(), 12);
        assert_eq!(r_double_prime().labels().len(), 8);
        assert!(!r_double_prime().contains(6));
        assert_eq!(three_torus().arrows().len(), 24);
        let (t, h, a) = banff_extension_parts();
        assert_eq!(t.labels().len() + h.labels().len(), 14);
        assert_eq!(a.shape(), (8, 6));
        assert_eq!(a.get(8, 11), Some(3));
        assert_eq!(a.get(2, 12), Some(1));
        assert_eq!(a.entries().filter(|&e| e != 0).count(), 6);
    }

    #[test]
    fn banff_n_length() {
        assert_eq!(banff_n().len(), 34);
    }

    #[test]
    fn t5_cross_block() {
        let (_, h, _, a) = t5_r33_parts();
        assert_eq!(h.labels(), (10..=18).collect::<Vec<_>>().as_slice());
        assert_eq!(a.entries().sum::<i64>(), 13);
    }
}
