//! Seed-pinned property suites, 1000 cases each.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use redcycle::classify::fork_returns;
use redcycle::extension::{cross_block, predicted_cross_block, triangular_extension, ExtensionSpec};
use redcycle::framing::c_matrix_of;
use redcycle::io::{quiver_from_json, quiver_to_json};
use redcycle::search::{search_reddening, SearchOptions};
use redcycle::{
    c_matrix, canonical_form, conjugate_reddening, find_isomorphism, framed, is_reddening,
    Error, LabeledMatrix, MutationSequence, Permutation, Quiver, Vertex,
};

fn config(seed: u64) -> Config {
    Config {
        cases: 1000,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Upper-triangle entries in `-w..=w` for labels `1..=n`.
fn quiver(n: std::ops::RangeInclusive<usize>, w: i64) -> impl Strategy<Value = Quiver> {
    n.prop_flat_map(move |n| proptest::collection::vec(-w..=w, n * (n - 1) / 2))
        .prop_map(|upper| {
            let n = (1..).find(|k| k * (k - 1) / 2 == upper.len()).unwrap();
            let mut rows = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = it.next().unwrap();
                    rows[i][j] = x;
                    rows[j][i] = -x;
                }
            }
            let labels: Vec<Vertex> = (1..=n as Vertex).collect();
            Quiver::from_b_matrix(&labels, &rows).unwrap()
        })
}

fn with_seq(
    n: std::ops::RangeInclusive<usize>,
    w: i64,
    len: usize,
) -> impl Strategy<Value = (Quiver, MutationSequence)> {
    quiver(n, w).prop_flat_map(move |q| {
        let k = q.labels().len() as Vertex;
        (Just(q), proptest::collection::vec(1..=k, 0..=len))
            .prop_map(|(q, s)| (q, MutationSequence::from(s)))
    })
}

/// Abundant acyclic quiver in the order `1 < 2 < … < n`.
fn abundant_acyclic() -> impl Strategy<Value = Quiver> {
    (3usize..=5)
        .prop_flat_map(|n| proptest::collection::vec(2i64..=6, n * (n - 1) / 2))
        .prop_map(|weights| {
            let n = (1..).find(|k| k * (k - 1) / 2 == weights.len()).unwrap() as Vertex;
            let mut arrows = Vec::new();
            let mut it = weights.into_iter();
            for i in 1..=n {
                for j in i + 1..=n {
                    arrows.push((i, j, it.next().unwrap()));
                }
            }
            Quiver::from_arrows(1..=n, &arrows).unwrap()
        })
}

fn skip_overflow<T>(r: Result<T, Error>) -> Result<T, TestCaseError> {
    match r {
        Err(Error::Overflow(_)) => Err(TestCaseError::reject("overflow")),
        other => Ok(other.unwrap()),
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0001))]
    #[test]
    fn mutation_is_an_involution((q, k) in quiver(2..=7, 4).prop_flat_map(|q| {
        let n = q.labels().len() as Vertex;
        (Just(q), 1..=n)
    })) {
        let once = q.mutate(k).unwrap();
        once.check_invariants().unwrap();
        prop_assert_eq!(once.mutate(k).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0002))]
    #[test]
    fn restriction_commutes_with_mutation(
        (q, keep, k) in quiver(3..=7, 3).prop_flat_map(|q| {
            let labels = q.labels().to_vec();
            let most = labels.len().min(4);
            (Just(q), proptest::sample::subsequence(labels, 1..=most))
        }).prop_flat_map(|(q, keep)| {
            let pick = proptest::sample::select(keep.clone());
            (Just(q), Just(keep), pick)
        })
    ) {
        let left = q.mutate(k).unwrap().restrict(&keep).unwrap();
        let right = q.restrict(&keep).unwrap().mutate(k).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0003))]
    #[test]
    fn framed_trajectories_are_sign_coherent((q, s) in with_seq(2..=5, 3, 10)) {
        let f = framed(&q).unwrap();
        let traj = skip_overflow(f.trajectory(&s))?;
        for state in &traj {
            let c = c_matrix_of(state).unwrap();
            for row in c.to_rows() {
                prop_assert!(row.iter().all(|&x| x >= 0) || row.iter().all(|&x| x <= 0));
                prop_assert!(row.iter().any(|&x| x != 0));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]
    #[test]
    fn cross_block_is_c_times_a(
        (t, s) in with_seq(2..=4, 3, 8),
        h in quiver(1..=3, 3),
        entries in proptest::collection::vec(0i64..=3, 12),
    ) {
        let shift = 10;
        let h = h.shifted(shift).unwrap();
        let rows: Vec<Vec<i64>> = t
            .labels()
            .iter()
            .enumerate()
            .map(|(i, _)| (0..h.labels().len()).map(|j| entries[i * 3 + j]).collect())
            .collect();
        let a = LabeledMatrix::from_rows(t.labels().to_vec(), h.labels().to_vec(), &rows).unwrap();
        let spec = ExtensionSpec::new(t.clone(), h.clone(), a).unwrap();
        let ext = triangular_extension(&spec).unwrap();
        let after = skip_overflow(ext.mutate_seq(&s))?;
        let predicted = skip_overflow(predicted_cross_block(&spec, &s))?;
        prop_assert_eq!(cross_block(&after, t.labels(), h.labels()), predicted);
        let c = skip_overflow(c_matrix(&t, &s))?;
        for row in c.to_rows() {
            prop_assert!(row.iter().all(|&x| x >= 0) || row.iter().all(|&x| x <= 0));
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0005))]
    #[test]
    fn all_red_states_are_minus_permutations(q in quiver(2..=3, 2)) {
        let hits = search_reddening(&q, SearchOptions::reddening(6)).hits;
        for hit in hits {
            let c = c_matrix(&q, &hit.sequence).unwrap();
            for (i, &u) in c.labels().iter().enumerate() {
                for (j, &v) in c.labels().iter().enumerate() {
                    let expected = if hit.permutation.apply(v) == u { -1 } else { 0 };
                    prop_assert_eq!(c.matrix().at(i, j), expected);
                }
            }
            prop_assert_eq!(
                q.mutate_seq(&hit.sequence).unwrap(),
                q.apply_permutation(&hit.permutation).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0006))]
    #[test]
    fn conjugation_preserves_reddening(
        (q, m) in with_seq(2..=3, 2, 4),
    ) {
        let hits = search_reddening(&q, SearchOptions::reddening(5)).hits;
        for hit in hits.iter().take(4) {
            let conj = conjugate_reddening(&hit.sequence, &hit.permutation, &m);
            let target = skip_overflow(q.mutate_seq(&m))?;
            let got = skip_overflow(is_reddening(&target, &conj))?;
            prop_assert_eq!(got, Some(hit.permutation.clone()));
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0007))]
    #[test]
    fn non_return_mutation_keeps_forks((q, v) in abundant_acyclic().prop_flat_map(|q| {
        let n = q.labels().len() as Vertex;
        (Just(q), 2..n)
    })) {
        let f = q.mutate(v).unwrap();
        let returns = fork_returns(&f);
        prop_assume!(!returns.is_empty());
        for &r in &returns {
            for &k in f.labels().iter().filter(|&&k| k != r) {
                let g = f.mutate(k).unwrap();
                prop_assert!(fork_returns(&g).contains(&k), "r = {}, k = {}", r, k);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0008))]
    #[test]
    fn canonical_form_agrees_with_isomorphism(
        q in quiver(2..=7, 2),
        other in quiver(2..=7, 2),
        shuffle in proptest::collection::vec(any::<u32>(), 7),
    ) {
        let labels = q.labels().to_vec();
        let mut image = labels.clone();
        image.sort_by_key(|&v| shuffle[(v - 1) as usize]);
        let pi = Permutation::from_pairs(labels.iter().copied().zip(image)).unwrap();
        let moved = q.apply_permutation(&pi).unwrap();
        prop_assert_eq!(canonical_form(&q), canonical_form(&moved));
        let sigma = find_isomorphism(&q, &moved);
        prop_assert!(sigma.is_some());
        prop_assert_eq!(q.apply_permutation(&sigma.unwrap()).unwrap(), moved);

        let same_size = other.labels() == q.labels();
        let iso = find_isomorphism(&q, &other);
        if same_size {
            prop_assert_eq!(iso.is_some(), canonical_form(&q) == canonical_form(&other));
        }
        if let Some(s) = iso {
            prop_assert_eq!(q.apply_permutation(&s).unwrap(), other);
        }
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0009))]
    #[test]
    fn reduce_is_idempotent(s in proptest::collection::vec(1u32..=4, 0..30)) {
        let s = MutationSequence::from(s);
        let r = s.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(r.inverse().inverse(), r);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_000a))]
    #[test]
    fn json_round_trip((q, s) in with_seq(1..=6, 5, 3), frame in any::<bool>()) {
        let q = skip_overflow(q.mutate_seq(&s))?;
        let q = if frame { framed(&q).unwrap() } else { q };
        let text = quiver_to_json(&q);
        prop_assert_eq!(quiver_from_json(&text).unwrap(), q.clone());
        prop_assert_eq!(quiver_to_json(&quiver_from_json(&text).unwrap()), text);
    }
}

/// The suites above, for callers that report on them together.
#[allow(dead_code)]
pub fn all() -> Vec<(&'static str, fn())> {
    vec![
        ("mutation involution", mutation_is_an_involution),
        ("restriction commutes with mutation", restriction_commutes_with_mutation),
        ("sign-coherence along framed trajectories", framed_trajectories_are_sign_coherent),
        ("cross block equals C times A", cross_block_is_c_times_a),
        ("C = -P at all-red states", all_red_states_are_minus_permutations),
        ("conjugation preserves reddening", conjugation_preserves_reddening),
        ("fork closure under non-return mutation", non_return_mutation_keeps_forks),
        ("canonical form agrees with isomorphism", canonical_form_agrees_with_isomorphism),
        ("reduce is idempotent", reduce_is_idempotent),
        ("JSON round trip", json_round_trip),
    ]
}
