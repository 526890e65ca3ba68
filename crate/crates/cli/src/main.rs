//! `redcycle`: mutate quivers, check reddening sequences, build and verify
//! mutation cycles.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on
//! malformed input.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use redcycle::catalog::{self, CatalogItem};
use redcycle::classify::{classify, forkless_explore_with, sources_and_sinks, DEFAULT_BUDGET};
use redcycle::extension::{
    build_acyclic_cycle, build_cycle_equal, build_cycle_general, is_distinguishing,
    verify_cycle_with, BuiltCycle, ExtensionSpec,
};
use redcycle::io::{quiver_from_json, quiver_to_json, quiver_to_value, to_dot};
use redcycle::search::{enumerate_class_with, search_reddening_with, SearchOptions, SearchResult};
use redcycle::{
    c_matrix, is_maximal_green, is_reddening, Error, LabeledMatrix, MutationSequence, Quiver,
    Strategy, Vertex,
};

#[derive(Parser)]
#[command(name = "redcycle", version, about = "Quiver mutation, reddening sequences and mutation cycles")]
struct Cli {
    /// Print JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run library calls on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Quiver file (JSON); `-` reads standard input.
    #[arg(long = "in", value_name = "FILE")]
    input: String,
}

#[derive(Args)]
struct SeqArg {
    /// Comma-separated vertex labels.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Remove adjacent repeats before use.
    #[arg(long)]
    reduce: bool,
}

#[derive(Args)]
struct Budget {
    /// Maximum number of isomorphism classes to visit.
    #[arg(long, env = "REDCYCLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: Input,
    /// Longest sequence to consider.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Allow the same vertex twice in a row.
    #[arg(long)]
    non_reduced: bool,
    /// Stop at the lexicographically first hit.
    #[arg(long)]
    first: bool,
}

#[derive(Args)]
struct ExtensionArgs {
    /// Tail quiver file.
    #[arg(long = "tail", value_name = "FILE")]
    tail: String,
    /// Head quiver file.
    #[arg(long = "head", value_name = "FILE")]
    head: String,
    /// Cross arrows `t:h:mult`, comma-separated.
    #[arg(long, default_value = "")]
    cross: String,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate along a sequence and print the result.
    Mutate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        seq: SeqArg,
    },
    /// C-matrix after a sequence.
    Cmatrix {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Check a reddening sequence and print its permutation.
    ReddeningVerify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        seq: SeqArg,
        /// Also require every step to mutate a green vertex.
        #[arg(long)]
        green: bool,
    },
    /// Bounded search for reddening sequences.
    ReddeningSearch(SearchArgs),
    /// Bounded search for maximal green sequences.
    MgsSearch(SearchArgs),
    /// Build a mutation cycle on a triangular extension.
    CycleBuild {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Check whether a sequence is a mutation cycle.
    CycleVerify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Fork, key and pre-fork predicates.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Explore the forkless part of the mutation class.
    Forkless {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
    /// Enumerate the mutation class up to isomorphism.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check that a matrix distinguishes the quivers along a sequence.
    Distinguishing {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        seq: SeqArg,
        /// Rows separated by `;`, entries by `,`; rows follow the sorted labels.
        #[arg(long)]
        matrix: String,
    },
    /// Named quivers and their recorded facts.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verify catalog items.
    Verify {
        /// Item name, or `all`.
        #[arg(long)]
        catalog: String,
    },
    /// Graphviz source for a quiver.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Graph name.
        #[arg(long, default_value = "Q")]
        name: String,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// `M_T M_H`, both with identity permutation.
    Equal {
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Reddening sequence of the tail
        #[arg(long, allow_hyphen_values = true)]
        m_t: String,
        /// Reddening sequence of the head
        #[arg(long, allow_hyphen_values = true)]
        m_h: String,
    },
    /// `M_T M_H ρ(M_T) σ(M_H) …` up to the lcm of the orders.
    General {
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Reddening sequence of the tail
        #[arg(long, allow_hyphen_values = true)]
        m_t: String,
        /// Reddening sequence of the head
        #[arg(long, allow_hyphen_values = true)]
        m_h: String,
    },
    /// Conjugated source sequences on `μ_m(T) → μ_n(H)`.
    Acyclic {
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Sequence applied to the acyclic tail
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        m: String,
        /// Sequence applied to the acyclic head
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        n: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Item names.
    List,
    /// Data of one item.
    Show { name: String },
    /// Recompute the checks of one item, or `all`.
    Verify { name: String },
}

/// Failure of a command, mapped to an exit status.
enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotReddening(_)
            | Error::NonIdentityPermutation(..)
            | Error::VerificationFailed(_) => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    json: bool,
    strategy: Strategy,
    out: String,
}

impl Ctx {
    fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    fn emit(&mut self, value: Value, text: impl FnOnce(&mut Ctx)) {
        if self.json {
            let s = serde_json::to_string_pretty(&value).expect("json value");
            self.line(s);
        } else {
            text(self);
        }
    }
}

fn read_quiver(path: &str) -> Result<Quiver, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
    };
    Ok(quiver_from_json(&text)?)
}

fn parse_seq(arg: &SeqArg) -> Result<MutationSequence, Failure> {
    let s: MutationSequence = arg.seq.parse()?;
    Ok(if arg.reduce { s.reduce() } else { s })
}

fn parse_cross(text: &str) -> Result<Vec<(Vertex, Vertex, i64)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split(':').collect();
            let bad = || Failure::Input(format!("cross arrow {t:?} is not t:h:mult"));
            if parts.len() != 3 {
                return Err(bad());
            }
            Ok((
                parts[0].parse().map_err(|_| bad())?,
                parts[1].parse().map_err(|_| bad())?,
                parts[2].parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Failure::Input(format!("bad matrix entry {x:?}")))
                })
                .collect()
        })
        .collect()
}

fn rows_value(rows: &[Vec<i64>]) -> Value {
    json!(rows)
}

fn search(ctx: &mut Ctx, args: &SearchArgs, green: bool) -> Outcome {
    let q = read_quiver(&args.input.input)?;
    let mut opts = if green {
        SearchOptions::maximal_green(args.max_len)
    } else {
        SearchOptions::reddening(args.max_len)
    };
    opts.reduced_only = !args.non_reduced;
    opts.first_only = args.first;
    let r: SearchResult = search_reddening_with(ctx.strategy, &q, opts);
    let value = serde_json::to_value(&r).expect("serializable");
    ctx.emit(value, |c| {
        for h in &r.hits {
            c.line(format!("{}  {}", h.sequence, h.permutation));
        }
        c.line(format!(
            "{} hits, {} nodes, {} branches cut by the weight limit",
            r.hits.len(),
            r.nodes,
            r.overflowed_branches
        ));
    });
    Ok(())
}

fn report_built(ctx: &mut Ctx, built: BuiltCycle) -> Outcome {
    let r = &built.report;
    let value = json!({
        "quiver": quiver_to_value(&built.quiver),
        "sequence": built.sequence.to_string(),
        "report": r,
    });
    ctx.emit(value, |c| {
        c.line(quiver_to_json(&built.quiver));
        c.line(built.sequence.to_string());
        c.line(format!(
            "length {}, closes {}, simple {}, all abundant {}",
            r.length, r.closes_equal, r.simple, r.all_abundant
        ));
    });
    Ok(())
}

fn extension(ext: &ExtensionArgs) -> Result<(Quiver, Quiver, LabeledMatrix), Failure> {
    let t = read_quiver(&ext.tail)?;
    let h = read_quiver(&ext.head)?;
    let spec = ExtensionSpec::from_arrows(t.clone(), h.clone(), &parse_cross(&ext.cross)?)?;
    Ok((t, h, spec.a().clone()))
}

fn item_value(item: &CatalogItem) -> Value {
    json!({
        "name": item.name,
        "summary": item.summary,
        "quivers": item.quivers.iter().map(|(k, q)| (k.clone(), quiver_to_value(q))).collect::<serde_json::Map<_, _>>(),
        "sequences": item.sequences.iter().map(|(k, s)| (k.clone(), json!(s.to_string()))).collect::<serde_json::Map<_, _>>(),
    })
}

fn verify_items(ctx: &mut Ctx, name: &str) -> Outcome {
    let items = if name == "all" {
        catalog::all_items()
    } else {
        vec![catalog::paper_item(name)?]
    };
    let mut failed = 0;
    let mut reports = Vec::new();
    for item in &items {
        let outcomes = item.verify();
        failed += outcomes.iter().filter(|o| !o.passed).count();
        reports.push((item.name, outcomes));
    }
    let value = json!(reports
        .iter()
        .map(|(n, o)| json!({"name": n, "checks": o}))
        .collect::<Vec<_>>());
    ctx.emit(value, |c| {
        for (n, outcomes) in &reports {
            for o in outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                c.line(format!("{tag} {n}: {} ({})", o.description, o.detail));
            }
        }
    });
    if failed > 0 {
        Err(Failure::Verification(format!("{failed} check(s) failed")))
    } else {
        Ok(())
    }
}

fn run(cli: Cli, ctx: &mut Ctx) -> Outcome {
    match cli.command {
        Command::Mutate { input, seq } => {
            let q = read_quiver(&input.input)?;
            let out = q.mutate_seq(&parse_seq(&seq)?)?;
            ctx.line(if ctx.json {
                serde_json::to_string_pretty(&quiver_to_value(&out)).expect("json value")
            } else {
                quiver_to_json(&out)
            });
        }
        Command::Cmatrix { input, seq } => {
            let q = read_quiver(&input.input)?;
            let c = c_matrix(&q, &parse_seq(&seq)?)?;
            let value = json!({"labels": c.labels(), "rows": rows_value(&c.to_rows())});
            ctx.emit(value, |x| x.line(c.to_string().trim_end()));
        }
        Command::ReddeningVerify { input, seq, green } => {
            let q = read_quiver(&input.input)?;
            let s = parse_seq(&seq)?;
            let got = if green { is_maximal_green(&q, &s)? } else { is_reddening(&q, &s)? };
            let value = json!({
                "reddening": got.is_some(),
                "permutation": got.as_ref().map(|p| p.to_string()),
            });
            ctx.emit(value, |c| match &got {
                Some(p) => c.line(format!("reddening, permutation {p}")),
                None => c.line("not reddening"),
            });
            if got.is_none() {
                return Err(Failure::Verification(format!("{s} is not reddening")));
            }
        }
        Command::ReddeningSearch(args) => search(ctx, &args, false)?,
        Command::MgsSearch(args) => search(ctx, &args, true)?,
        Command::CycleBuild { kind } => {
            let built = match kind {
                BuildKind::Equal { ext, m_t, m_h } => {
                    let (t, h, a) = extension(&ext)?;
                    build_cycle_equal(&t, &m_t.parse()?, &h, &m_h.parse()?, &a)?
                }
                BuildKind::General { ext, m_t, m_h } => {
                    let (t, h, a) = extension(&ext)?;
                    build_cycle_general(&t, &m_t.parse()?, &h, &m_h.parse()?, &a)?
                }
                BuildKind::Acyclic { ext, m, n } => {
                    let t = read_quiver(&ext.tail)?;
                    let h = read_quiver(&ext.head)?;
                    let (m, n): (MutationSequence, MutationSequence) = (m.parse()?, n.parse()?);
                    let spec = ExtensionSpec::from_arrows(
                        t.mutate_seq(&m)?,
                        h.mutate_seq(&n)?,
                        &parse_cross(&ext.cross)?,
                    )?;
                    build_acyclic_cycle(&t, &m, &h, &n, spec.a())?
                }
            };
            report_built(ctx, built)?;
        }
        Command::CycleVerify { input, seq } => {
            let q = read_quiver(&input.input)?;
            let s = parse_seq(&seq)?;
            let r = verify_cycle_with(ctx.strategy, &q, &s)?;
            ctx.emit(json!(r), |c| {
                c.line(format!(
                    "length {}, reduced {}, closes {}, simple {}, all abundant {}",
                    r.length, r.is_reduced, r.closes_equal, r.simple, r.all_abundant
                ));
                if let (false, Some(p)) = (r.closes_equal, &r.closes_iso) {
                    c.line(format!("closes up to the relabelling {p}"));
                }
            });
            if !r.closes_equal {
                return Err(Failure::Verification("sequence does not close".into()));
            }
            if !r.is_reduced {
                return Err(Failure::Verification("sequence is not reduced".into()));
            }
        }
        Command::Classify { input } => {
            let q = read_quiver(&input.input)?;
            let r = classify(&q);
            ctx.emit(json!(r), |c| {
                c.line(format!("acyclic {}, abundant {}", r.acyclic, r.abundant));
                c.line(format!("fork {} {:?}", r.is_fork(), r.fork_returns));
                c.line(format!("key {} {:?}", r.is_key(), r.key_pairs));
                c.line(format!("pre-fork {} {:?}", r.is_prefork(), r.prefork_pairs));
            });
        }
        Command::Forkless { input, budget } => {
            let q = read_quiver(&input.input)?;
            let r = forkless_explore_with(ctx.strategy, &q, budget.budget)?;
            let keys: Vec<Value> = r
                .keys
                .iter()
                .map(|&i| {
                    let k = &r.exploration.representatives[i];
                    let (sources, sinks) = sources_and_sinks(k);
                    json!({"quiver": quiver_to_value(k), "sources": sources, "sinks": sinks})
                })
                .collect();
            let value = json!({
                "forms": r.exploration.len(),
                "exhausted": r.exploration.exhausted,
                "keys": keys,
            });
            ctx.emit(value, |c| {
                c.line(format!(
                    "{} forkless classes, exhausted {}, {} keys",
                    r.exploration.len(),
                    r.exploration.exhausted,
                    r.keys.len()
                ));
                for &i in &r.keys {
                    let k = &r.exploration.representatives[i];
                    let (sources, sinks) = sources_and_sinks(k);
                    c.line(format!("{}  sources {sources:?} sinks {sinks:?}", quiver_to_json(k)));
                }
            });
        }
        Command::Enumerate { input, budget } => {
            let q = read_quiver(&input.input)?;
            let e = enumerate_class_with(ctx.strategy, &q, budget.budget);
            let value = json!({
                "forms": e.len(),
                "exhausted": e.exhausted,
                "max_depth": e.depths.last(),
            });
            ctx.emit(value, |c| {
                c.line(format!("{} classes, exhausted {}", e.len(), e.exhausted));
            });
        }
        Command::Distinguishing { input, seq, matrix } => {
            let t = read_quiver(&input.input)?;
            let rows = parse_matrix(&matrix)?;
            let cols = rows.first().map_or(0, Vec::len) as Vertex;
            let a = LabeledMatrix::from_rows(t.labels().to_vec(), (1..=cols).collect(), &rows)?;
            let ok = is_distinguishing(&t, &parse_seq(&seq)?, &a)?;
            ctx.emit(json!({"distinguishing": ok}), |c| {
                c.line(if ok { "distinguishing" } else { "not distinguishing" })
            });
            if !ok {
                return Err(Failure::Verification("a quiver repeats along the sequence".into()));
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let items = catalog::all_items();
                let value = json!(items
                    .iter()
                    .map(|i| json!({"name": i.name, "summary": i.summary}))
                    .collect::<Vec<_>>());
                ctx.emit(value, |c| {
                    for i in &items {
                        c.line(format!("{:22} {}", i.name, i.summary));
                    }
                });
            }
            CatalogAction::Show { name } => {
                let item = catalog::paper_item(&name)?;
                ctx.emit(item_value(&item), |c| {
                    c.line(format!("{}: {}", item.name, item.summary));
                    for (k, q) in &item.quivers {
                        c.line(format!("quiver {k} = {}", quiver_to_json(q)));
                    }
                    for (k, s) in &item.sequences {
                        c.line(format!("sequence {k} = {s}"));
                    }
                });
            }
            CatalogAction::Verify { name } => verify_items(ctx, &name)?,
        },
        Command::Verify { catalog } => verify_items(ctx, &catalog)?,
        Command::ExportDot { input, name } => {
            let q = read_quiver(&input.input)?;
            ctx.out.push_str(&to_dot(&q, &name));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        json: cli.json,
        strategy: if cli.sequential { Strategy::Sequential } else { Strategy::Parallel },
        out: String::new(),
    };
    let result = run(cli, &mut ctx);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(ctx.out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
