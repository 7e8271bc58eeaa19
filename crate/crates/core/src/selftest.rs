//! Built-in checks against the worked examples, run by `primegraph selftest`.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::classify::{is_npowerfree_solvable_realizable, is_solvable_realizable};
use crate::dualgraph::{recover_delta, RejectReason};
use crate::error::{Error, Result};
use crate::fixtures::{self, check_case_table, parse_case_table};
use crate::graphcore::Graph;
use crate::groups::{dickson_eo, element_orders, element_orders_brute, prime_graph_of, GroupSpec};
use crate::numtheory::psl2_cubefree_profile;
use crate::realize::{realize_npowerfree_certificate, realize_squarefree, SquarefreeOptions};

#[derive(Clone, Debug, Serialize)]
pub struct SelftestItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelftestReport {
    pub items: Vec<SelftestItem>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

type Check = fn(Option<&Path>) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("figure1-solvable", figure1_solvable),
    ("figure1-cases-n5", |d| figure1_cases(d, 5)),
    ("figure1-cases-n4", |d| figure1_cases(d, 4)),
    ("figure1-certificate-n7", figure1_certificate),
    ("figure2-missing-subset", figure2_missing_subset),
    ("psl2-profiles", psl2_profiles),
    ("dickson-spectra", dickson_spectra),
    ("squarefree-roundtrip", squarefree_roundtrip),
    ("psl2-5-prime-graph", psl2_5_prime_graph),
    ("groups20-oracle", groups20_oracle),
];

/// Runs every check; an error inside one check fails only that item.
pub fn run(fixtures_dir: Option<&Path>) -> SelftestReport {
    let items = CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = check(fixtures_dir).unwrap_or_else(|e| (false, format!("error: {e}")));
            SelftestItem { name: name.to_string(), passed, detail }
        })
        .collect();
    SelftestReport { items }
}

fn figure1(dir: Option<&Path>) -> Result<Graph> {
    fixtures::graph("figure1.json", dir)
}

fn figure1_solvable(dir: Option<&Path>) -> Result<(bool, String)> {
    let c = figure1(dir)?;
    let v = is_solvable_realizable(&c.complement())?;
    Ok((v.is_accept(), format!("accept = {}", v.is_accept())))
}

fn figure1_cases(dir: Option<&Path>, n: u64) -> Result<(bool, String)> {
    let c = figure1(dir)?;
    let table = parse_case_table(&fixtures::read("figure1_cases.txt", dir)?)?;
    let v = is_npowerfree_solvable_realizable(&c.complement(), n)?;
    let Some(rep) = v.obstruction() else {
        return Ok((false, "accepted, expected rejection".into()));
    };
    let checks = check_case_table(&c, rep, &table);
    let bad: Vec<String> = checks.iter().filter(|k| !k.ok).map(|k| format!("{:?}: {}", k.red, k.detail)).collect();
    let want: BTreeSet<Vec<String>> = table.iter().map(|p| p.red.clone()).collect();
    let same_cases = fixtures::reported_red_sets(rep) == want;
    let ok = bad.is_empty() && same_cases && rep.triangle.is_none();
    let detail = if ok { format!("{} cases match", checks.len()) } else { format!("same case set = {same_cases}; {}", bad.join("; ")) };
    Ok((ok, detail))
}

fn figure1_certificate(dir: Option<&Path>) -> Result<(bool, String)> {
    let c = figure1(dir)?;
    let cert = realize_npowerfree_certificate(&c.complement(), 7)?;
    let exps: Vec<String> = cert.factors.iter().map(|f| format!("{}^{}", f.prime, f.exp)).collect();
    Ok((cert.is_nth_power_free(), exps.join(" ")))
}

fn figure2_missing_subset(dir: Option<&Path>) -> Result<(bool, String)> {
    let g = fixtures::graph("figure2.json", dir)?;
    let r = recover_delta(&g);
    let values: BTreeSet<u64> = r.values().values().copied().collect();
    let ok = r.reason() == Some(RejectReason::MissingSubset) && values == BTreeSet::from([2, 3, 5, 6, 30]);
    Ok((ok, format!("{:?}, values {values:?}", r.reason())))
}

fn psl2_profiles(_: Option<&Path>) -> Result<(bool, String)> {
    let p5 = psl2_cubefree_profile(5).map(|p| (p.m, p.n));
    let p13 = psl2_cubefree_profile(13).map(|p| (p.m, p.n));
    let p7 = psl2_cubefree_profile(7);
    let ok = p5 == Some((1, 1)) && p13 == Some((2, 1)) && p7.is_none();
    Ok((ok, format!("q=5 {p5:?}, q=13 {p13:?}, q=7 {:?}", p7.map(|p| (p.m, p.n)))))
}

fn dickson_spectra(_: Option<&Path>) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for q in [5u64, 7, 11, 13, 17] {
        let spec = GroupSpec::psl2(q);
        if dickson_eo(q)? != element_orders(&spec)? {
            bad.push(q);
        }
    }
    Ok((bad.is_empty(), format!("mismatches at q in {bad:?}")))
}

fn squarefree_roundtrip(_: Option<&Path>) -> Result<(bool, String)> {
    let mut cases = Vec::new();
    for (n, edges) in [
        (2usize, vec![(0usize, 1usize)]),
        (3, vec![(0, 1), (1, 2)]),
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        (5, vec![(0, 1), (0, 2), (3, 4)]),
    ] {
        let comp = Graph::from_index_edges(n, &edges)?;
        let f = comp.complement();
        let r = realize_squarefree(&f, &SquarefreeOptions::default())?;
        cases.push(r.verify(&f)?);
    }
    Ok((cases.iter().all(|&b| b), format!("{cases:?}")))
}

fn psl2_5_prime_graph(dir: Option<&Path>) -> Result<(bool, String)> {
    let spec: GroupSpec = serde_json::from_str(&fixtures::read("psl2_5.json", dir)?)?;
    let pg = prime_graph_of(&spec)?;
    let ok = pg.primes == vec![2, 3, 5] && pg.graph.edge_count() == 0;
    Ok((ok, format!("primes {:?}, {} edges", pg.primes, pg.graph.edge_count())))
}

fn groups20_oracle(dir: Option<&Path>) -> Result<(bool, String)> {
    let specs: Vec<GroupSpec> = serde_json::from_str(&fixtures::read("groups20.json", dir)?)?;
    let mut bad = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        let eo = element_orders(s)?;
        if !eo.is_divisor_closed() || eo != element_orders_brute(s)? {
            bad.push(i);
        }
    }
    if specs.is_empty() {
        return Err(Error::Parse("groups20.json is empty".into()));
    }
    Ok((bad.is_empty(), format!("{} groups, mismatches {bad:?}", specs.len())))
}

/// Fixture directory from `PRIMEGRAPH_FIXTURES`, if set.
pub fn fixtures_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("PRIMEGRAPH_FIXTURES").map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_selftest_passes() {
        let r = run(None);
        for i in &r.items {
            assert!(i.passed, "{}: {}", i.name, i.detail);
        }
        assert_eq!(r.items.len(), CHECKS.len());
    }

    #[test]
    fn missing_directory_fails_items_not_run() {
        let r = run(Some(Path::new("/nonexistent-fixture-dir")));
        assert!(!r.passed());
        assert!(r.items.iter().any(|i| i.name == "psl2-profiles" && i.passed));
    }
}
