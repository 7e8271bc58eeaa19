//! Bundled example inputs (the figure1/figure2 graphs, the figure1 case table
//! and a few small graphs and groups) and the comparison of the figure1 case
//! table with a rejection report.

use std::collections::BTreeSet;
use std::path::Path;

use crate::classify::{CaseOutcome, NpfReport};
use crate::error::{Error, Result};
use crate::graphcore::Graph;

/// Name and contents of every bundled fixture.
pub const BUNDLED: &[(&str, &str)] = &[
    ("figure1.json", include_str!("../fixtures/figure1.json")),
    ("figure1_cases.txt", include_str!("../fixtures/figure1_cases.txt")),
    ("figure2.json", include_str!("../fixtures/figure2.json")),
    ("groetzsch.json", include_str!("../fixtures/groetzsch.json")),
    ("groups20.json", include_str!("../fixtures/groups20.json")),
    ("psl2_5.json", include_str!("../fixtures/psl2_5.json")),
    ("pseudo_triangle_edge27.json", include_str!("../fixtures/pseudo_triangle_edge27.json")),
    ("pseudo_triangle_isolated7.json", include_str!("../fixtures/pseudo_triangle_isolated7.json")),
];

/// Fixture text, from `dir` when given, else the bundled copy.
pub fn read(name: &str, dir: Option<&Path>) -> Result<String> {
    match dir {
        Some(d) => Ok(std::fs::read_to_string(d.join(name))?),
        None => BUNDLED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::Parse(format!("no bundled fixture {name}"))),
    }
}

pub fn graph(name: &str, dir: Option<&Path>) -> Result<Graph> {
    Ok(serde_json::from_str(&read(name, dir)?)?)
}

/// The Figure 1 graph. It is stated as a complement: the prime graph under
/// test is its complement.
pub fn figure1_complement() -> Graph {
    graph("figure1.json", None).expect("bundled fixture parses")
}

/// The Figure 2 common divisor graph.
pub fn figure2() -> Graph {
    graph("figure2.json", None).expect("bundled fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedOutcome {
    /// Per Green/Blue coloring, the vertex ending 2-paths from both reds.
    Endpoints(Vec<String>),
    Cycle(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedCase {
    pub red: Vec<String>,
    pub outcome: ExpectedOutcome,
}

/// Parses lines `[a,b]: (c,d)` and `[a]: (uvwxy)`; `#` starts a comment.
/// Cycles of multi-character labels use `-` separators.
pub fn parse_case_table(text: &str) -> Result<Vec<ExpectedCase>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("case table line {}: {raw:?}", i + 1));
        let (red, rest) = line.split_once(':').ok_or_else(bad)?;
        let red = red.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let body = rest.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let red: Vec<String> = red.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let outcome = if body.contains(',') {
            ExpectedOutcome::Endpoints(body.split(',').map(|s| s.trim().to_string()).collect())
        } else if body.contains('-') {
            ExpectedOutcome::Cycle(body.split('-').map(str::to_string).collect())
        } else {
            ExpectedOutcome::Cycle(body.chars().map(String::from).collect())
        };
        out.push(ExpectedCase { red, outcome });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseCheck {
    pub red: Vec<String>,
    pub ok: bool,
    pub detail: String,
}

fn same_cycle(a: &[String], b: &[String]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let rev: Vec<String> = b.iter().rev().cloned().collect();
    (0..n).any(|s| (0..n).all(|i| a[i] == b[(s + i) % n]) || (0..n).all(|i| a[i] == rev[(s + i) % n]))
}

fn is_cycle_avoiding(c: &Graph, cyc: &[String], red: &[String]) -> bool {
    let idx: Option<Vec<usize>> = cyc.iter().map(|l| c.index_of(l)).collect();
    let Some(idx) = idx else { return false };
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    distinct.len() == idx.len()
        && idx.len() >= 3
        && cyc.iter().all(|l| !red.contains(l))
        && (0..idx.len()).all(|i| c.has_edge(idx[i], idx[(i + 1) % idx.len()]))
}

/// Compares a rejection report for the Figure 1 complement `c` with the
/// tabulated cases.
///
/// Endpoint pairs are compared as sets, because the order of the two
/// Green/Blue colorings in the table is not consistent. Two-red cycles must
/// match up to rotation and reflection. A one-red remainder contains several
/// 5-cycles, so there the tabulated cycle must be a 5-cycle avoiding the red
/// vertex and the reported cycle must have the same length.
pub fn check_case_table(c: &Graph, report: &NpfReport, table: &[ExpectedCase]) -> Vec<CaseCheck> {
    let mut out = Vec::new();
    for pc in table {
        let reds: Vec<&str> = pc.red.iter().map(String::as_str).collect();
        let (ok, detail) = match (report.case(&reds), &pc.outcome) {
            (None, _) => (false, "case missing from report".to_string()),
            (Some(case), ExpectedOutcome::Endpoints(want)) => match &case.outcome {
                CaseOutcome::Exhausted { attempts } => {
                    let per: Vec<BTreeSet<&str>> = attempts
                        .iter()
                        .map(|a| a.failures.iter().map(|f| f.blue_vertex.as_str()).collect())
                        .collect();
                    let got: BTreeSet<&str> = per.iter().flatten().copied().collect();
                    let want_set: BTreeSet<&str> = want.iter().map(String::as_str).collect();
                    let ok = per.iter().all(|s| s.len() == 1) && attempts.len() == want.len() && got == want_set;
                    (ok, format!("endpoints {got:?}, expected {want_set:?}"))
                }
                CaseOutcome::OddCycle { cycle } => (false, format!("odd cycle {cycle:?}, expected endpoints")),
            },
            (Some(case), ExpectedOutcome::Cycle(want)) => match &case.outcome {
                CaseOutcome::OddCycle { cycle } => {
                    let ok = if pc.red.len() >= 2 {
                        same_cycle(cycle, want)
                    } else {
                        is_cycle_avoiding(c, want, &pc.red)
                            && is_cycle_avoiding(c, cycle, &pc.red)
                            && cycle.len() == want.len()
                    };
                    (ok, format!("cycle {cycle:?}, tabulated {want:?}"))
                }
                CaseOutcome::Exhausted { .. } => (false, "bipartite remainder, expected a cycle".to_string()),
            },
        };
        out.push(CaseCheck { red: pc.red.clone(), ok, detail });
    }
    out
}

/// The red sets of size one and two that the report covers.
pub fn reported_red_sets(report: &NpfReport) -> BTreeSet<Vec<String>> {
    report.cases.iter().filter(|c| !c.red.is_empty()).map(|c| c.red.clone()).collect()
}
