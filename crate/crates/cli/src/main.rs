//! `primegraph`: classify graphs as prime graphs, build witness groups, run
//! the element-order oracle and the dual-graph tools.
//!
//! Exit codes: 0 accept or success, 1 principled rejection, 2 malformed
//! input or exceeded limits.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use primegraph::classify::{
    is_cubefree_realizable, is_metanilpotent_realizable, is_npowerfree_solvable_realizable, is_psl2_cubefree_prime_graph,
    is_solvable_cubefree_realizable, is_solvable_realizable, pseudo_solvable_check, cubefree_nonsolvable_at,
    CubefreeOptions, PrimeLabeledGraph, DEFAULT_Q_BOUND,
};
use primegraph::dualgraph::{delta_of, gamma_of, recover_delta, DivisorClosedSet};
use primegraph::graphcore::io::{digraph_to_dot, parse_graph, to_dot};
use primegraph::graphcore::canonical_orientation;
use primegraph::groups::{element_orders, prime_graph_of, GroupSpec};
use primegraph::realize::{
    realize_cubefree_nonsolvable, realize_npowerfree_certificate, realize_squarefree, Realization, SquarefreeOptions,
};
use primegraph::{selftest, Coloring, Error, Graph};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "primegraph", version, about = "Prime graphs of finite groups: classifiers, realizers and oracle")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a graph is the prime graph of a group in a class.
    Classify {
        kind: ClassifyKind,
        /// Graph file (JSON or edge list); `-` reads standard input.
        input: PathBuf,
        #[command(flatten)]
        opts: ClassifyOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Build a group (or order certificate) with the given prime graph.
    Realize {
        kind: RealizeKind,
        input: PathBuf,
        #[command(flatten)]
        opts: RealizeOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Run the element-order oracle on a group spec.
    Group {
        kind: GroupKind,
        input: PathBuf,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Common divisor graphs of divisor-closed sets.
    Dual {
        kind: DualKind,
        /// `forward`: JSON array of integers. `recover`: a graph.
        input: PathBuf,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Replay the bundled worked examples.
    Selftest {
        /// Read fixtures from this directory instead of the bundled copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyKind {
    Solvable,
    Metanilpotent,
    Npowerfree,
    CubefreeSolvable,
    Cubefree,
    Psl2Cubefree,
    PseudoSolvable,
}

#[derive(Clone, Copy, ValueEnum)]
enum RealizeKind {
    Squarefree,
    NpowerfreeCert,
    CubefreeNonsolvable,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Eo,
    PrimeGraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualKind {
    Forward,
    Recover,
}

#[derive(Args)]
struct ClassifyOpts {
    /// The input is the complement of the graph to classify.
    #[arg(long)]
    complement: bool,
    /// Exponent bound for `npowerfree`.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_Q_BOUND)]
    q_bound: u64,
    /// Let the characteristic be a shared prime in the cube-free search.
    #[arg(long)]
    char_in_s: bool,
}

#[derive(Args)]
struct RealizeOpts {
    #[arg(long)]
    n: Option<u64>,
    /// Never use the prime 2.
    #[arg(long)]
    odd_only: bool,
    /// Comma-separated primes that must not appear.
    #[arg(long, value_delimiter = ',')]
    avoid: Vec<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_Q_BOUND)]
    q_bound: u64,
    /// Use this characteristic instead of the smallest feasible one.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    char_in_s: bool,
    /// Check the result with the element-order oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct OutOpts {
    /// JSON output (the default for everything except selftest).
    #[arg(long)]
    json: bool,
    /// Graphviz output instead of JSON.
    #[arg(long)]
    dot: bool,
}

/// Result of a subcommand: exit status plus what to print.
struct Outcome {
    accept: bool,
    json: Value,
    dot: Option<String>,
}

impl Outcome {
    fn new(accept: bool, payload: &impl Serialize) -> Result<Outcome, Error> {
        Ok(Outcome { accept, json: serde_json::to_value(payload)?, dot: None })
    }

    fn with_dot(mut self, dot: String) -> Outcome {
        self.dot = Some(dot);
        self
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    parse_graph(&read_text(path)?)
}

fn coloring_dot(c: &Graph, coloring: &Coloring) -> Result<String, Error> {
    Ok(digraph_to_dot(&canonical_orientation(c, coloring)?, "orientation"))
}

fn classify(kind: ClassifyKind, input: &Path, o: &ClassifyOpts) -> Result<Outcome, Error> {
    let g = read_graph(input)?;
    let f = if o.complement { g.complement() } else { g };
    let c = f.complement();
    let cube_opts = CubefreeOptions { q_bound: o.q_bound, char_in_s: o.char_in_s };
    let out = match kind {
        ClassifyKind::Solvable => {
            let v = is_solvable_realizable(&f)?;
            let dot = match v.witness() {
                Some(w) => coloring_dot(&c, &w.coloring)?,
                None => to_dot(&c, "complement"),
            };
            Outcome::new(v.is_accept(), &v)?.with_dot(dot)
        }
        ClassifyKind::Metanilpotent => {
            let v = is_metanilpotent_realizable(&f)?;
            Outcome::new(v.is_accept(), &v)?.with_dot(to_dot(&c, "complement"))
        }
        ClassifyKind::Npowerfree => {
            let n = o.n.ok_or_else(|| Error::Parse("npowerfree needs --n".into()))?;
            let v = is_npowerfree_solvable_realizable(&f, n)?;
            let dot = match v.witness() {
                Some(w) => coloring_dot(&c, &w.coloring)?,
                None => to_dot(&c, "complement"),
            };
            let mut out = Outcome::new(v.is_accept(), &v)?.with_dot(dot);
            if let Some(rep) = v.obstruction() {
                out.json["case_table"] = json!(rep.case_table());
            }
            out
        }
        ClassifyKind::CubefreeSolvable => {
            let v = is_solvable_cubefree_realizable(&f)?;
            Outcome::new(v.is_accept(), &v)?.with_dot(to_dot(&c, "complement"))
        }
        ClassifyKind::Cubefree => {
            let r = is_cubefree_realizable(&f, &cube_opts)?;
            Outcome::new(r.is_accept(), &r)?.with_dot(to_dot(&c, "complement"))
        }
        ClassifyKind::Psl2Cubefree => {
            let r = is_psl2_cubefree_prime_graph(&f, o.q_bound);
            let payload = match r {
                Some((q, profile)) => json!({"verdict": "accept", "q": q, "profile": profile}),
                None => json!({"verdict": "reject", "q_bound": o.q_bound}),
            };
            Outcome::new(r.is_some(), &payload)?.with_dot(to_dot(&c, "complement"))
        }
        ClassifyKind::PseudoSolvable => {
            let r = pseudo_solvable_check(&PrimeLabeledGraph::from_prime_labels(f)?)?;
            Outcome::new(r.condition_a && r.condition_b, &r)?.with_dot(to_dot(&c, "complement"))
        }
    };
    Ok(out)
}

fn realization_outcome(r: &Realization, f: &Graph, verify: bool) -> Result<Outcome, Error> {
    let mut out = Outcome::new(true, r)?;
    if verify {
        let ok = r.verify(f)?;
        out.json["verified"] = json!(ok);
        out.accept = ok;
    }
    Ok(out.with_dot(to_dot(&r.expected_prime_graph(f)?, "prime_graph")))
}

fn realize(kind: RealizeKind, input: &Path, o: &RealizeOpts) -> Result<Outcome, Error> {
    let f = read_graph(input)?;
    let avoid: BTreeSet<u64> = o.avoid.iter().copied().collect();
    match kind {
        RealizeKind::Squarefree => {
            let opts = SquarefreeOptions { odd_only: o.odd_only, avoid, seed: o.seed };
            realization_outcome(&realize_squarefree(&f, &opts)?, &f, o.verify)
        }
        RealizeKind::NpowerfreeCert => {
            let n = o.n.ok_or_else(|| Error::Parse("npowerfree-cert needs --n".into()))?;
            let cert = realize_npowerfree_certificate(&f, n)?;
            Outcome::new(true, &cert)
        }
        RealizeKind::CubefreeNonsolvable => {
            let opts = CubefreeOptions { q_bound: o.q_bound, char_in_s: o.char_in_s };
            let w = match o.q {
                Some(q) => cubefree_nonsolvable_at(&f, q, &opts)?,
                None => is_cubefree_realizable(&f, &opts)?.nonsolvable().cloned(),
            };
            match w {
                Some(w) => {
                    let mut out = realization_outcome(&realize_cubefree_nonsolvable(&f, &w, &avoid)?, &f, o.verify)?;
                    out.json["witness"] = serde_json::to_value(&w)?;
                    Ok(out)
                }
                None => Outcome::new(false, &json!({"verdict": "reject", "reason": "no non-solvable cube-free case applies"})),
            }
        }
    }
}

fn group(kind: GroupKind, input: &Path) -> Result<Outcome, Error> {
    let spec: GroupSpec = serde_json::from_str(&read_text(input)?)?;
    match kind {
        GroupKind::Eo => Outcome::new(true, &element_orders(&spec)?),
        GroupKind::PrimeGraph => {
            let pg = prime_graph_of(&spec)?;
            let dot = to_dot(&pg.graph, "prime_graph");
            Ok(Outcome::new(true, &pg.graph)?.with_dot(dot))
        }
    }
}

fn dual(kind: DualKind, input: &Path) -> Result<Outcome, Error> {
    match kind {
        DualKind::Forward => {
            let x: DivisorClosedSet = serde_json::from_str(&read_text(input)?)?;
            let (gamma, delta) = (gamma_of(&x), delta_of(&x));
            let dot = to_dot(&gamma, "gamma") + &to_dot(&delta, "delta");
            Ok(Outcome::new(true, &json!({"gamma": gamma, "delta": delta}))?.with_dot(dot))
        }
        DualKind::Recover => {
            let g = read_graph(input)?;
            let r = recover_delta(&g);
            let dot = to_dot(r.delta().unwrap_or(&g), if r.is_recovered() { "delta" } else { "gamma" });
            Ok(Outcome::new(r.is_recovered(), &r)?.with_dot(dot))
        }
    }
}

/// Rejections that the library reports as failed preconditions are
/// principled answers, not malformed input.
fn is_rejection(e: &Error) -> bool {
    matches!(e, Error::Precondition(_))
}

fn emit(res: Result<Outcome, Error>, out: &OutOpts) -> ExitCode {
    match res {
        Ok(o) => {
            match (&o.dot, out.dot) {
                (Some(d), true) => print!("{d}"),
                _ => println!("{}", serde_json::to_string_pretty(&o.json).expect("values serialize")),
            }
            ExitCode::from(if o.accept { 0 } else { 1 })
        }
        Err(e) if is_rejection(&e) => {
            println!("{}", json!({"verdict": "reject", "reason": e.to_string()}));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Classify { kind, input, opts, out } => emit(classify(kind, &input, &opts), &out),
        Cmd::Realize { kind, input, opts, out } => emit(realize(kind, &input, &opts), &out),
        Cmd::Group { kind, input, out } => emit(group(kind, &input), &out),
        Cmd::Dual { kind, input, out } => emit(dual(kind, &input), &out),
        Cmd::Selftest { fixtures, json } => {
            let rep = selftest::run(fixtures.as_deref());
            if json {
                println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
            } else {
                for i in &rep.items {
                    println!("{} {}: {}", if i.passed { "PASS" } else { "FAIL" }, i.name, i.detail);
                }
            }
            ExitCode::from(if rep.passed() { 0 } else { 1 })
        }
    }
}
