//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Three parts are known to fail as stated; they are listed in
//! `KNOWN_FAILURES` and must keep failing, so a change in either direction
//! is noticed. Every other part must pass.

#[path = "properties.rs"]
mod properties;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;

use redcycle::catalog::families::{
    box_quiver, dreaded_torus, dreaded_torus_mgs, fordy_marsh, grid_quiver, grid_reddening,
    punctured_sphere,
};
use redcycle::catalog::figures;
use redcycle::classify::{forkless_explore, sources_and_sinks, DEFAULT_BUDGET};
use redcycle::extension::{build_cycle_general, verify_cycle, BuiltCycle};
use redcycle::search::{search_reddening, SearchOptions};
use redcycle::{is_maximal_green, is_reddening, MutationSequence, Permutation, Quiver, Vertex};

type Part = (String, Result<(), String>);

/// `(criterion, part)` pairs that fail with the data as stated.
const KNOWN_FAILURES: [(u32, &str); 3] =
    [(5, "Rdoubleprime"), (7, "three-torus stated"), (10, "a = 0")];

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn part(name: impl Into<String>, r: Result<(), String>) -> Part {
    (name.into(), r)
}

fn perm(cycles: &[&[Vertex]]) -> Permutation {
    Permutation::from_cycles(cycles.iter().map(|c| c.to_vec())).unwrap()
}

fn seq(v: &[Vertex]) -> MutationSequence {
    MutationSequence::from(v)
}

/// Exact matrix mutation on arbitrary-precision entries.
fn oracle_mutate(b: &mut [Vec<BigInt>], k: usize) {
    let n = b.len();
    let m = b[0].len();
    let row_k = b[k].clone();
    let zero = BigInt::from(0);
    for i in 0..n {
        if i == k {
            continue;
        }
        let bik = b[i][k].clone();
        for j in 0..m {
            if j == k {
                continue;
            }
            let bkj = &row_k[j];
            if bik > zero && *bkj > zero {
                b[i][j] += &bik * bkj;
            } else if bik < zero && *bkj < zero {
                b[i][j] -= &bik * bkj;
            }
        }
        b[i][k] = -bik;
    }
    for x in b[k].iter_mut() {
        *x = -x.clone();
    }
}

fn oracle_matrix(q: &Quiver) -> Vec<Vec<BigInt>> {
    let l = q.labels();
    l.iter().map(|&u| l.iter().map(|&v| BigInt::from(q.b(u, v))).collect()).collect()
}

/// Closure and distinctness of a cycle, recomputed with the oracle.
fn oracle_cycle(q: &Quiver, s: &MutationSequence) -> (bool, bool) {
    let start = oracle_matrix(q);
    let mut b = start.clone();
    let mut seen = HashSet::new();
    let mut distinct = true;
    for v in s.iter() {
        distinct &= seen.insert(b.clone());
        oracle_mutate(&mut b, q.index_of(v).unwrap());
    }
    (b == start, distinct)
}

/// Every reduced sequence of length ≤ `max_len` ending all red, found by
/// exhaustive arbitrary-precision search.
fn oracle_reddening(q: &Quiver, max_len: usize) -> Vec<Vec<usize>> {
    let n = q.labels().len();
    let mut ext: Vec<Vec<BigInt>> = oracle_matrix(q)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| BigInt::from((i == j) as i64)));
            row
        })
        .collect();
    fn all_red(ext: &[Vec<BigInt>], n: usize) -> bool {
        let zero = BigInt::from(0);
        ext.iter().all(|r| r[n..].iter().all(|x| *x <= zero))
    }
    fn go(ext: &mut Vec<Vec<BigInt>>, n: usize, path: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if all_red(ext, n) {
            out.push(path.clone());
        }
        if path.len() == max {
            return;
        }
        for k in 0..n {
            if path.last() == Some(&k) {
                continue;
            }
            let saved = ext.clone();
            oracle_mutate(ext, k);
            path.push(k);
            go(ext, n, path, max, out);
            path.pop();
            *ext = saved;
        }
    }
    let mut out = Vec::new();
    go(&mut ext, n, &mut Vec::new(), max_len, &mut out);
    out
}

fn simple_cycle(name: &str, built: Result<BuiltCycle, redcycle::Error>, length: usize) -> Part {
    let r = built.map_err(|e| e.to_string()).and_then(|b| {
        let (closes, distinct) = oracle_cycle(&b.quiver, &b.sequence);
        check(
            b.report.simple && b.report.length == length && closes && distinct,
            || format!("length {}, simple {}, oracle closes {closes}", b.report.length, b.report.simple),
        )
    });
    part(name, r)
}

fn criterion_1() -> Vec<Part> {
    let q = figures::fig1_quiver();
    let s = figures::fig1_cycle();
    let r = verify_cycle(&q, &s).unwrap();
    let (closes, distinct) = oracle_cycle(&q, &s);
    vec![part(
        "fig1",
        check(
            q.mutate_seq(&s).unwrap() == q && r.simple && r.length == 10 && closes && distinct,
            || format!("{r:?}"),
        ),
    )]
}

fn criterion_2() -> Vec<Part> {
    let k = figures::k_quiver();
    vec![
        part(
            "mu_{2,3}(K') = K",
            check(figures::k_prime().mutate_seq(&seq(&[2, 3])).unwrap() == k, || "differs".into()),
        ),
        part(
            "M",
            check(
                is_reddening(&k, &figures::k_m()).unwrap() == Some(Permutation::identity()),
                || "wrong permutation".into(),
            ),
        ),
        part(
            "M'",
            check(
                is_reddening(&k, &figures::k_m_prime()).unwrap() == Some(perm(&[&[1, 2]])),
                || "wrong permutation".into(),
            ),
        ),
    ]
}

fn criterion_3() -> Vec<Part> {
    (1..=4)
        .map(|a| {
            let got = is_maximal_green(&dreaded_torus(a).unwrap(), &dreaded_torus_mgs()).unwrap();
            part(
                format!("a = {a}"),
                check(got == Some(perm(&[&[1, 4], &[2, 3]])), || format!("{got:?}")),
            )
        })
        .collect()
}

fn criterion_4() -> Vec<Part> {
    let mut parts = Vec::new();
    for k in 1..=4u32 {
        for l in 1..=4u32 {
            let s = grid_reddening(k, l);
            let ok = is_reddening(&grid_quiver(k, l).unwrap(), &s).unwrap().is_some();
            let len = (l * (l + 1) / 2 * k) as usize;
            parts.push(part(
                format!("R({k},{l})"),
                check(ok && s.len() == len, || format!("reddening {ok}, length {}", s.len())),
            ));
        }
    }
    let s33 = seq(&[7, 4, 1, 8, 7, 5, 4, 2, 1, 9, 8, 7, 6, 5, 4, 3, 2, 1]);
    let got = is_reddening(&grid_quiver(3, 3).unwrap(), &s33).unwrap();
    parts.push(part(
        "R(3,3) sequence and permutation",
        check(
            grid_reddening(3, 3) == s33 && got == Some(perm(&[&[1, 3], &[4, 6], &[7, 9]])),
            || format!("{got:?}"),
        ),
    ));
    parts
}

fn criterion_5() -> Vec<Part> {
    let p1 = is_reddening(&figures::r_prime(), &figures::r_prime_sequence()).unwrap();
    let p2 = is_reddening(&figures::r_double_prime(), &figures::r_double_prime_sequence()).unwrap();
    vec![
        part(
            "Rprime",
            check(p1 == Some(perm(&[&[1, 3], &[4, 6], &[7, 8]])), || format!("{p1:?}")),
        ),
        part(
            "Rdoubleprime",
            check(p2 == Some(perm(&[&[2, 5], &[3, 8], &[4, 9, 7]])), || {
                format!("computed {}", p2.map_or("none".into(), |p| p.to_string()))
            }),
        ),
    ]
}

fn criterion_6() -> Vec<Part> {
    let t5 = punctured_sphere(5).unwrap();
    let n = |x: &str| t5.vertex(x).unwrap();
    let sigma = perm(&[&[n("u1"), n("v1"), n("s̄"), n("s")], &[n("t"), n("t̄")], &[n("u2"), n("v2")]]);
    let got = is_maximal_green(&t5.quiver, &t5.sequence).unwrap();
    let mut parts = vec![part("T5", check(got == Some(sigma), || format!("{got:?}")))];
    for k in [4, 6] {
        let t = punctured_sphere(k).unwrap();
        let got = is_maximal_green(&t.quiver, &t.sequence).unwrap();
        parts.push(part(format!("T{k}"), check(got.is_some(), || "not maximal green".into())));
    }
    parts
}

fn criterion_7() -> Vec<Part> {
    let mut parts = Vec::new();
    let q = figures::half_finite_12();
    let tri = figures::half_finite_triangle();
    let a = redcycle::extension::cross_block(&figures::half_finite_ext_15(), q.labels(), tri.labels());
    for (m, len) in figures::half_finite_triangle_sequences().iter().zip([58, 56, 174]) {
        let built = build_cycle_general(&q, &figures::half_finite_mgs(), &tri, m, &a);
        parts.push(simple_cycle(&format!("half-finite {len}"), built, len));
    }
    let (t, h, m_h, a) = figures::t5_r33_parts();
    parts.push(simple_cycle("T5 and R33", build_cycle_general(&t, &grid_reddening(3, 3), &h, &m_h, &a), 152));
    let (t, h, a) = figures::banff_extension_parts();
    let n = figures::banff_n().shifted(9);
    parts.push(simple_cycle(
        "R'' and Banff",
        build_cycle_general(&t, &figures::r_double_prime_sequence(), &h, &n, &a),
        336,
    ));
    let two = figures::two_torus();
    let s = figures::two_torus_cycle();
    let (closes, _) = oracle_cycle(&two, &s);
    parts.push(part(
        "two-torus 24",
        check(s.len() == 24 && two.mutate_seq(&s).unwrap() == two && closes, || "does not close".into()),
    ));
    let three = figures::three_torus();
    let stated = figures::three_torus_stated();
    let (closes, _) = oracle_cycle(&three, &stated);
    parts.push(part(
        "three-torus stated",
        check(closes, || format!("the {}-term sequence does not return to the quiver", stated.len())),
    ));
    parts
}

fn criterion_8() -> Vec<Part> {
    let m = seq(&[2, 5, 4, 1, 4, 2, 1, 6, 5, 4, 5, 3]);
    let s = seq(&[4, 1, 3, 2, 3, 6, 1, 5, 3, 1]);
    let n = m.then(&s).then(&m.inverse()).reduce();
    let got = is_reddening(&figures::banff_q(), &n).unwrap();
    vec![part(
        "N",
        check(n.len() == 34 && got == Some(Permutation::identity()), || {
            format!("length {}, permutation {got:?}", n.len())
        }),
    )]
}

fn has_oriented_4_cycle(q: &Quiver) -> bool {
    let l = q.labels();
    let (a, rest) = (l[0], &l[1..]);
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .any(|p| {
            let c = [a, rest[p[0]], rest[p[1]], rest[p[2]]];
            (0..4).all(|i| q.b(c[i], c[(i + 1) % 4]) > 0)
        })
}

fn criterion_9() -> Vec<Part> {
    let mut parts = Vec::new();
    for a in [2, 3] {
        for b in [2, 3] {
            for c in [2, 3] {
                for k in 1..=5 {
                    let fm = fordy_marsh(a, b, c, k).unwrap();
                    let r = verify_cycle(&fm.quiver, &fm.cycle).unwrap();
                    let (closes, distinct) = oracle_cycle(&fm.quiver, &fm.cycle);
                    let traj = fm.quiver.trajectory(&fm.cycle).unwrap();
                    let shapes = traj.iter().all(|x| has_oriented_4_cycle(x) && x.is_abundant());
                    parts.push(part(
                        format!("({a},{b},{c},{k})"),
                        check(
                            r.closes_equal
                                && r.simple
                                && closes
                                && distinct
                                && r.length == 2 * k as usize + 2
                                && shapes,
                            || format!("{r:?}, shapes {shapes}"),
                        ),
                    ));
                }
            }
        }
    }
    parts
}

/// Deletes windows `i,j,i,j` with `b[i][j] = 0`, then reduces, until stable.
fn remove_commuting_squares(q: &Quiver, s: &[Vertex]) -> Vec<Vertex> {
    let mut cur = s.to_vec();
    loop {
        let hit = cur.windows(4).position(|w| {
            w[0] == w[2] && w[1] == w[3] && w[0] != w[1] && q.b(w[0], w[1]) == 0
        });
        match hit {
            Some(i) => {
                cur.drain(i..i + 4);
                cur = MutationSequence::from(cur).reduce().as_slice().to_vec();
            }
            None => return cur,
        }
    }
}

fn criterion_10() -> Vec<Part> {
    let expected: [(i64, Vec<Vec<Vertex>>); 5] = [
        (0, vec![vec![1, 2], vec![2, 1]]),
        (1, vec![vec![1, 2], vec![2, 1, 2]]),
        (2, vec![vec![1, 2]]),
        (3, vec![vec![1, 2]]),
        (4, vec![vec![1, 2]]),
    ];
    expected
        .into_iter()
        .map(|(a, want)| {
            let q = if a == 0 {
                Quiver::isolated([1, 2]).unwrap()
            } else {
                Quiver::from_arrows([1, 2], &[(1, 2, a)]).unwrap()
            };
            let r = search_reddening(&q, SearchOptions::reddening(6));
            let got: Vec<Vec<Vertex>> = r.hits.iter().map(|h| h.sequence.as_slice().to_vec()).collect();
            let oracle: Vec<Vec<Vertex>> = oracle_reddening(&q, 6)
                .into_iter()
                .map(|p| p.into_iter().map(|i| q.labels()[i]).collect())
                .collect();
            let mut oracle_sorted = oracle.clone();
            oracle_sorted.sort();
            part(
                format!("a = {a}"),
                check(got == want && oracle_sorted == want && r.complete(), || {
                    format!("search {got:?}, oracle {oracle_sorted:?}")
                }),
            )
        })
        .chain(std::iter::once({
            let q = Quiver::isolated([1, 2]).unwrap();
            let r = search_reddening(&q, SearchOptions::reddening(6));
            let mut short: Vec<Vec<Vertex>> = r
                .hits
                .iter()
                .map(|h| remove_commuting_squares(&q, h.sequence.as_slice()))
                .collect();
            short.sort();
            short.dedup();
            part(
                "a = 0 up to removing 4-cycles",
                check(short == vec![vec![1, 2], vec![2, 1]], || format!("{short:?}")),
            )
        }))
        .collect()
}

fn criterion_11() -> Vec<Part> {
    let r = forkless_explore(&figures::key_example(), DEFAULT_BUDGET).unwrap();
    let shapes: Vec<(Vec<Vertex>, Vec<Vertex>)> =
        r.keys.iter().map(|&i| sources_and_sinks(&r.exploration.representatives[i])).collect();
    let pairwise_distinct = shapes.iter().collect::<HashSet<_>>().len() == shapes.len();
    let ok = r.exploration.exhausted
        && r.keys.len() == 3
        && pairwise_distinct
        && shapes.iter().all(|(so, si)| !so.is_empty() && !si.is_empty());
    vec![part(
        "key census",
        check(ok, || {
            format!(
                "exhausted {}, {} forms, {} keys, sources/sinks {shapes:?}",
                r.exploration.exhausted,
                r.exploration.len(),
                r.keys.len()
            )
        }),
    )]
}

fn criterion_12() -> Vec<Part> {
    properties::all()
        .into_iter()
        .map(|(name, run)| {
            let r = catch_unwind(AssertUnwindSafe(run)).map_err(|e| {
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into())
            });
            part(name, r)
        })
        .collect()
}

fn criterion_13() -> Vec<Part> {
    let q = box_quiver(2, 2).unwrap();
    let r = search_reddening(&q, SearchOptions::reddening(10));
    let oracle = oracle_reddening(&q, 10);
    vec![part(
        "box(2,2)",
        check(r.hits.is_empty() && oracle.is_empty(), || {
            format!("search {} hits, oracle {} hits", r.hits.len(), oracle.len())
        }),
    )]
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Vec<Part>); 13] = [
        (1, "extension cycle of length 10", criterion_1),
        (2, "K, K' and their reddening sequences", criterion_2),
        (3, "dreaded torus maximal green sequence", criterion_3),
        (4, "grid reddening sequences", criterion_4),
        (5, "plabic permutations", criterion_5),
        (6, "punctured sphere maximal green sequences", criterion_6),
        (7, "cycle lengths", criterion_7),
        (8, "conjugated reddening sequence", criterion_8),
        (9, "Chebyshev cycle family", criterion_9),
        (10, "rank-2 reddening sequences", criterion_10),
        (11, "key census", criterion_11),
        (12, "property suites", criterion_12),
        (13, "box quiver has no short reddening sequence", criterion_13),
    ];
    let mut failing = Vec::new();
    for (id, title, run) in criteria {
        let parts = run();
        let failed: Vec<&Part> = parts.iter().filter(|p| p.1.is_err()).collect();
        if failed.is_empty() {
            println!("PASS {id:>2} {title} ({} checks)", parts.len());
        } else {
            let why: Vec<String> = failed
                .iter()
                .map(|(n, r)| format!("{n}: {}", r.as_ref().unwrap_err()))
                .collect();
            println!("FAIL {id:>2} {title}: {}", why.join("; "));
        }
        failing.extend(failed.iter().map(|(n, _)| (id, n.clone())));
    }
    let known: Vec<(u32, String)> = KNOWN_FAILURES.iter().map(|&(i, n)| (i, n.to_string())).collect();
    assert_eq!(failing, known, "failing parts differ from the recorded known failures");
}
