//! Named quivers, sequences and the facts claimed about them.
//!
//! Every item carries its data plus a list of checks. The expected values
//! are stored as transcribed and recomputed by [`CatalogItem::verify`].

pub mod families;
pub mod figures;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{classify, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::extension::{build_cycle_general, verify_cycle};
use crate::iso::find_isomorphism;
use crate::matrix::LabeledMatrix;
use crate::permutation::Permutation;
use crate::quiver::{Quiver, Vertex};
use crate::reddening::{is_maximal_green, is_reddening};
use crate::search::{enumerate_class, search_reddening, SearchOptions};
use crate::sequence::MutationSequence;

pub use families::{
    box_quiver, chebyshev_u, dreaded_torus, dreaded_torus_mgs, fordy_marsh, grid_quiver,
    grid_reddening, punctured_sphere, FamilyCycle, PuncturedSphere,
};

/// Structural type asserted by a [`Check::Kind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Fork,
    Key,
    Prefork,
}

/// A claim about the data of an item; quivers and sequences are named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    /// `μ_seq(from) = to` exactly.
    MutatesTo { from: String, seq: String, to: String },
    /// `μ_seq(quiver)` is the opposite quiver.
    Opposite { quiver: String, seq: String },
    /// Reddening (or maximal green) with the given permutation and length.
    Reddening {
        quiver: String,
        seq: String,
        green: bool,
        permutation: Option<Permutation>,
        length: Option<usize>,
    },
    /// The sequence returns the quiver to itself exactly.
    Cycle { quiver: String, seq: String, length: usize, simple: bool },
    /// The general construction on `t →ᴬ h` yields a simple cycle of the
    /// given length.
    BuiltCycle {
        t: String,
        m_t: String,
        h: String,
        m_h: String,
        a: LabeledMatrix,
        length: usize,
        extension: Option<String>,
    },
    /// `μ_seq(quiver)` is isomorphic to `target` with `deleted` removed.
    Subquiver { quiver: String, seq: String, target: String, deleted: Vertex },
    Kind { quiver: String, kind: Kind },
    /// The mutation class has exactly this many isomorphism classes.
    ClassSize { quiver: String, size: usize },
    /// The bounded search finds no reduced reddening sequence of length at
    /// most `max_len`; branches cut by the weight limit are reported.
    NoReddening { quiver: String, max_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

/// A named bundle of quivers, sequences and checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogItem {
    pub name: &'static str,
    pub summary: &'static str,
    pub quivers: BTreeMap<String, Quiver>,
    pub sequences: BTreeMap<String, MutationSequence>,
    pub checks: Vec<Check>,
}

/// Stable item names, in registry order.
pub const NAMES: [&str; 19] = [
    "fig1_extension",
    "key_K_and_Kprime",
    "half_finite_12",
    "half_finite_ext_15",
    "dreaded_torus",
    "two_torus",
    "three_torus",
    "T5",
    "T5_R33_extension",
    "R33",
    "Rprime",
    "Rdoubleprime",
    "banff_Q",
    "banff_extension_14",
    "quiver_types",
    "box_quiver",
    "infinite_reduced_key",
    "fordy_marsh",
    "grid_family",
];

/// Looks up a registry item by name.
pub fn paper_item(name: &str) -> Result<CatalogItem> {
    let mut item = CatalogItem {
        name: NAMES
            .iter()
            .find(|&&n| n == name)
            .copied()
            .ok_or_else(|| Error::UnknownName(name.to_string()))?,
        summary: "",
        quivers: BTreeMap::new(),
        sequences: BTreeMap::new(),
        checks: Vec::new(),
    };
    build(&mut item);
    Ok(item)
}

/// Every registry item, in registry order.
pub fn all_items() -> Vec<CatalogItem> {
    NAMES.iter().map(|n| paper_item(n).expect("registered")).collect()
}

fn s(x: &str) -> String {
    x.to_string()
}

fn perm<const N: usize>(cycles: &[[Vertex; N]]) -> Permutation {
    Permutation::from_cycles(cycles.iter().map(|c| c.to_vec())).expect("disjoint cycles")
}

fn perm_of(cycles: &[&[Vertex]]) -> Permutation {
    Permutation::from_cycles(cycles.iter().map(|c| c.to_vec())).expect("disjoint cycles")
}

impl CatalogItem {
    fn q(&mut self, name: &str, q: Quiver) {
        self.quivers.insert(s(name), q);
    }

    fn seq(&mut self, name: &str, m: MutationSequence) {
        self.sequences.insert(s(name), m);
    }

    fn reddening(&mut self, quiver: &str, seq: &str, green: bool, p: Option<Permutation>) {
        self.checks.push(Check::Reddening {
            quiver: s(quiver),
            seq: s(seq),
            green,
            permutation: p,
            length: None,
        });
    }

    fn quiver(&self, name: &str) -> Result<&Quiver> {
        self.quivers.get(name).ok_or_else(|| Error::UnknownName(s(name)))
    }

    fn sequence(&self, name: &str) -> Result<&MutationSequence> {
        self.sequences.get(name).ok_or_else(|| Error::UnknownName(s(name)))
    }

    /// Recomputes every check.
    pub fn verify(&self) -> Vec<CheckOutcome> {
        self.checks
            .iter()
            .map(|c| {
                let description = describe(c);
                match self.run(c) {
                    Ok((passed, detail)) => CheckOutcome { description, passed, detail },
                    Err(e) => CheckOutcome {
                        description,
                        passed: false,
                        detail: format!("error: {e}"),
                    },
                }
            })
            .collect()
    }

    pub fn passes(&self) -> bool {
        self.verify().iter().all(|o| o.passed)
    }

    fn run(&self, check: &Check) -> Result<(bool, String)> {
        Ok(match check {
            Check::MutatesTo { from, seq, to } => {
                let got = self.quiver(from)?.mutate_seq(self.sequence(seq)?)?;
                (&got == self.quiver(to)?, format!("arrows {:?}", got.arrows()))
            }
            Check::Opposite { quiver, seq } => {
                let q = self.quiver(quiver)?;
                let got = q.mutate_seq(self.sequence(seq)?)?;
                (got == q.opposite(), format!("arrows {:?}", got.arrows()))
            }
            Check::Reddening { quiver, seq, green, permutation, length } => {
                let q = self.quiver(quiver)?;
                let m = self.sequence(seq)?;
                let got = if *green { is_maximal_green(q, m)? } else { is_reddening(q, m)? };
                let Some(sigma) = got else {
                    return Ok((false, s("not reddening")));
                };
                let perm_ok = permutation.as_ref().map_or(true, |p| p == &sigma);
                let len_ok = length.map_or(true, |l| l == m.len());
                (
                    perm_ok && len_ok,
                    format!("permutation {sigma}, length {}", m.len()),
                )
            }
            Check::Cycle { quiver, seq, length, simple } => {
                let r = verify_cycle(self.quiver(quiver)?, self.sequence(seq)?)?;
                (
                    r.closes_equal && r.length == *length && (!simple || r.simple),
                    format!(
                        "length {}, closes {}, simple {}",
                        r.length, r.closes_equal, r.simple
                    ),
                )
            }
            Check::BuiltCycle { t, m_t, h, m_h, a, length, extension } => {
                let built = build_cycle_general(
                    self.quiver(t)?,
                    self.sequence(m_t)?,
                    self.quiver(h)?,
                    self.sequence(m_h)?,
                    a,
                )?;
                let same = match extension {
                    Some(name) => &built.quiver == self.quiver(name)?,
                    None => true,
                };
                let r = &built.report;
                (
                    same && r.simple && r.length == *length,
                    format!("length {}, simple {}", r.length, r.simple),
                )
            }
            Check::Subquiver { quiver, seq, target, deleted } => {
                let got = self.quiver(quiver)?.mutate_seq(self.sequence(seq)?)?;
                let tgt = self.quiver(target)?.delete(*deleted)?;
                match find_isomorphism(&got, &tgt) {
                    Some(p) => (true, format!("isomorphic via {p}")),
                    None => (false, s("not isomorphic")),
                }
            }
            Check::Kind { quiver, kind } => {
                let r = classify(self.quiver(quiver)?);
                let ok = match kind {
                    Kind::Fork => r.is_fork(),
                    Kind::Key => r.is_key(),
                    Kind::Prefork => r.is_prefork(),
                };
                (
                    ok,
                    format!(
                        "returns {:?}, keys {:?}, pre-forks {:?}",
                        r.fork_returns, r.key_pairs, r.prefork_pairs
                    ),
                )
            }
            Check::ClassSize { quiver, size } => {
                let e = enumerate_class(self.quiver(quiver)?, DEFAULT_BUDGET);
                (
                    e.exhausted && e.len() == *size,
                    format!("{} forms, exhausted {}", e.len(), e.exhausted),
                )
            }
            Check::NoReddening { quiver, max_len } => {
                let r = search_reddening(self.quiver(quiver)?, SearchOptions::reddening(*max_len));
                (
                    r.hits.is_empty(),
                    format!(
                        "{} hits, {} nodes, {} branches cut by the weight limit",
                        r.hits.len(),
                        r.nodes,
                        r.overflowed_branches
                    ),
                )
            }
        })
    }
}

fn describe(c: &Check) -> String {
    match c {
        Check::MutatesTo { from, seq, to } => format!("mutating {from} along {seq} gives {to}"),
        Check::Opposite { quiver, seq } => format!("{seq} takes {quiver} to its opposite"),
        Check::Reddening { quiver, seq, green, permutation, length } => {
            let mut out = format!(
                "{seq} is {} for {quiver}",
                if *green { "maximal green" } else { "reddening" }
            );
            if let Some(p) = permutation {
                out += &format!(" with permutation {p}");
            }
            if let Some(l) = length {
                out += &format!(" and length {l}");
            }
            out
        }
        Check::Cycle { quiver, seq, length, simple } => format!(
            "{seq} is a{} cycle of {quiver} of length {length}",
            if *simple { " simple" } else { "" }
        ),
        Check::BuiltCycle { t, h, length, .. } => {
            format!("general construction on {t} -> {h} gives a simple cycle of length {length}")
        }
        Check::Subquiver { quiver, seq, target, deleted } => {
            format!("mutating {quiver} along {seq} gives {target} minus vertex {deleted}")
        }
        Check::Kind { quiver, kind } => {
            format!("{quiver} is a {}", format!("{kind:?}").to_lowercase())
        }
        Check::ClassSize { quiver, size } => {
            format!("the mutation class of {quiver} has {size} isomorphism classes")
        }
        Check::NoReddening { quiver, max_len } => {
            format!("{quiver} has no reduced reddening sequence of length at most {max_len}")
        }
    }
}

fn build(item: &mut CatalogItem) {
    use figures::*;
    match item.name {
        "fig1_extension" => {
            item.summary = "a 4-cycle extended by an arrow, with a simple cycle of length 10";
            item.q("Q", fig1_quiver());
            item.seq("M", fig1_cycle());
            item.checks.push(Check::Cycle { quiver: s("Q"), seq: s("M"), length: 10, simple: true });
        }
        "key_K_and_Kprime" => {
            item.summary = "K and K' related by two mutations, with two reddening sequences of K";
            item.q("K", k_quiver());
            item.q("Kprime", k_prime());
            item.seq("(2,3)", MutationSequence::from([2, 3]));
            item.seq("M", k_m());
            item.seq("Mprime", k_m_prime());
            item.checks.push(Check::MutatesTo { from: s("Kprime"), seq: s("(2,3)"), to: s("K") });
            item.reddening("K", "M", false, Some(Permutation::identity()));
            item.reddening("K", "Mprime", false, Some(perm(&[[1, 2]])));
        }
        "half_finite_12" => {
            item.summary = "a recurrent quiver on 12 vertices";
            item.q("Q", half_finite_12());
            item.seq("S_open", half_finite_open());
            item.seq("S_closed", half_finite_closed());
            item.seq("S", half_finite_mgs());
            item.checks.push(Check::Opposite { quiver: s("Q"), seq: s("S_open") });
            item.checks.push(Check::Opposite { quiver: s("Q"), seq: s("S_closed") });
            item.reddening("Q", "S", true, Some(perm(&[[1, 3], [4, 6], [7, 9], [10, 12]])));
        }
        "half_finite_ext_15" => {
            item.summary = "the recurrent quiver extended by an oriented triangle";
            item.q("P", half_finite_ext_15());
            item.q("Q", half_finite_12());
            item.q("triangle", half_finite_triangle());
            item.seq("S", half_finite_mgs());
            let perms = [Permutation::identity(), perm(&[[13, 15]]), perm(&[[13, 15, 14]])];
            let lengths = [58, 56, 174];
            let a = LabeledMatrix::from_rows(
                (1..=12).collect(),
                vec![13, 14, 15],
                &(1..=12)
                    .map(|r| (13..=15).map(|c| i64::from(r + 12 == c)).collect())
                    .collect::<Vec<_>>(),
            )
            .expect("12 x 3");
            for (i, m) in half_finite_triangle_sequences().into_iter().enumerate() {
                let name = format!("M{}", i + 1);
                item.seq(&name, m);
                item.reddening("triangle", &name, false, Some(perms[i].clone()));
                item.checks.push(Check::BuiltCycle {
                    t: s("Q"),
                    m_t: s("S"),
                    h: s("triangle"),
                    m_h: name,
                    a: a.clone(),
                    length: lengths[i],
                    extension: Some(s("P")),
                });
            }
        }
        "dreaded_torus" => {
            item.summary = "the dreaded torus and its dominated variants";
            item.seq("S", dreaded_torus_mgs());
            for a in 1..=4 {
                let name = format!("a={a}");
                item.q(&name, dreaded_torus(a).expect("a ≥ 1"));
                item.reddening(&name, "S", true, Some(perm(&[[1, 4], [2, 3]])));
            }
            item.checks.push(Check::ClassSize { quiver: s("a=1"), size: 1 });
        }
        "two_torus" => {
            item.summary = "two dreaded tori joined triangularly";
            item.q("Q", two_torus());
            item.seq("S", two_torus_cycle());
            item.checks.push(Check::Cycle { quiver: s("Q"), seq: s("S"), length: 24, simple: false });
        }
        "three_torus" => {
            item.summary = "three dreaded tori joined triangularly";
            item.q("Q", three_torus());
            item.seq("stated", three_torus_stated());
            item.seq("M", three_torus_cycle());
            item.checks.push(Check::Cycle { quiver: s("Q"), seq: s("stated"), length: 60, simple: false });
            item.checks.push(Check::Cycle { quiver: s("Q"), seq: s("M"), length: 36, simple: true });
        }
        "T5" => {
            item.summary = "the punctured-sphere quiver T5";
            let t5 = punctured_sphere(5).expect("k = 5");
            let n = |x: &str| t5.vertex(x).expect("named vertex");
            let sigma = perm_of(&[
                &[n("u1"), n("v1"), n("s̄"), n("s")],
                &[n("t"), n("t̄")],
                &[n("u2"), n("v2")],
            ]);
            item.q("T5", t5.quiver.clone());
            item.seq("S", t5.sequence.clone());
            item.reddening("T5", "S", true, Some(sigma));
        }
        "T5_R33_extension" => {
            item.summary = "the 3x3 grid extended by T5";
            let (t, h, m_h, a) = t5_r33_parts();
            item.q("R33", t);
            item.q("T5", h);
            item.seq("S", grid_reddening(3, 3));
            item.seq("M", m_h);
            item.checks.push(Check::BuiltCycle {
                t: s("R33"),
                m_t: s("S"),
                h: s("T5"),
                m_h: s("M"),
                a,
                length: 152,
                extension: None,
            });
        }
        "R33" => {
            item.summary = "the 3x3 triangulated grid";
            item.q("R33", grid_quiver(3, 3).expect("3 x 3"));
            item.seq("S", grid_reddening(3, 3));
            item.reddening("R33", "S", false, Some(perm(&[[1, 3], [4, 6], [7, 9]])));
        }
        "Rprime" => {
            item.summary = "R' with its reddening sequence";
            item.q("Rprime", r_prime());
            item.q("R33", grid_quiver(3, 3).expect("3 x 3"));
            item.seq("S", r_prime_sequence());
            item.seq("(5,1)", MutationSequence::from([5, 1]));
            item.reddening("Rprime", "S", false, Some(perm(&[[1, 3], [4, 6], [7, 8]])));
            item.checks.push(Check::Subquiver {
                quiver: s("Rprime"),
                seq: s("(5,1)"),
                target: s("R33"),
                deleted: 9,
            });
        }
        "Rdoubleprime" => {
            item.summary = "R'' with its reddening sequence";
            item.q("Rdoubleprime", r_double_prime());
            item.q("R33", grid_quiver(3, 3).expect("3 x 3"));
            item.seq("S", r_double_prime_sequence());
            item.seq("(2,6)", MutationSequence::from([2, 6]));
            item.reddening(
                "Rdoubleprime",
                "S",
                false,
                Some(perm_of(&[&[2, 5], &[3, 8], &[4, 9, 7]])),
            );
            item.checks.push(Check::Subquiver {
                quiver: s("Rdoubleprime"),
                seq: s("(2,6)"),
                target: s("R33"),
                deleted: 6,
            });
        }
        "banff_Q" => {
            item.summary = "a quiver whose reddening sequence is built by conjugation";
            item.q("Q", banff_q());
            item.q("muM(Q)", banff_q().mutate_seq(&banff_m()).expect("valid"));
            item.seq("M", banff_m());
            item.seq("S", banff_s());
            item.seq("N", banff_n());
            item.reddening("muM(Q)", "S", false, None);
            item.checks.push(Check::Reddening {
                quiver: s("Q"),
                seq: s("N"),
                green: false,
                permutation: Some(Permutation::identity()),
                length: Some(34),
            });
        }
        "banff_extension_14" => {
            item.summary = "R'' extended by the conjugation example on 10..=15";
            let (t, h, a) = banff_extension_parts();
            item.q("Rdoubleprime", t);
            item.q("Q", h);
            item.seq("S", r_double_prime_sequence());
            item.seq("N", banff_n().shifted(9));
            item.checks.push(Check::BuiltCycle {
                t: s("Rdoubleprime"),
                m_t: s("S"),
                h: s("Q"),
                m_h: s("N"),
                a,
                length: 336,
                extension: None,
            });
        }
        "quiver_types" => {
            item.summary = "a fork, a key and a pre-fork";
            item.q("fork", fork_example());
            item.q("key", key_example());
            item.q("prefork", prefork_example());
            for (q, kind) in [("fork", Kind::Fork), ("key", Kind::Key), ("prefork", Kind::Prefork)] {
                item.checks.push(Check::Kind { quiver: s(q), kind });
            }
        }
        "box_quiver" => {
            item.summary = "the oriented square with weights (2,2)";
            item.q("Q", box_quiver(2, 2).expect("valid"));
            item.checks.push(Check::NoReddening { quiver: s("Q"), max_len: 10 });
        }
        "infinite_reduced_key" => {
            item.summary = "a key with two reddening sequences";
            item.q("Q", infinite_reduced_key());
            let [a, b] = infinite_reduced_key_sequences();
            item.seq("S", a);
            item.seq("N", b);
            item.reddening("Q", "S", false, None);
            item.reddening("Q", "N", false, None);
            item.checks.push(Check::Kind { quiver: s("Q"), kind: Kind::Key });
        }
        "fordy_marsh" => {
            item.summary = "the Chebyshev cycle family at a = b = c = 2, k = 3";
            let fm = fordy_marsh(2, 2, 2, 3).expect("valid parameters");
            item.q("Q", fm.quiver);
            item.seq("M", fm.cycle);
            item.checks.push(Check::Cycle { quiver: s("Q"), seq: s("M"), length: 8, simple: true });
        }
        "grid_family" => {
            item.summary = "triangulated grids up to 4x4";
            for k in 1..=4 {
                for l in 1..=4 {
                    let name = format!("R{k}{l}");
                    item.q(&name, grid_quiver(k, l).expect("positive sides"));
                    let m = grid_reddening(k, l);
                    let len = (l * (l + 1) / 2 * k) as usize;
                    item.seq(&name, m);
                    item.checks.push(Check::Reddening {
                        quiver: name.clone(),
                        seq: name,
                        green: false,
                        permutation: None,
                        length: Some(len),
                    });
                }
            }
        }
        other => unreachable!("{other} is listed but not built"),
    }
}
