//! One PASS/FAIL line per acceptance criterion, with wall-clock time.
//! Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::chromatic_number;
use primegraph::classify::{
    is_metanilpotent_realizable, is_npowerfree_solvable_realizable, is_solvable_cubefree_realizable,
    is_solvable_realizable, pseudo_solvable_check, PrimeLabeledGraph, PseudoViolation,
};
use primegraph::dualgraph::{contract, delta_of, gamma_of, random_divisor_closed, recover_delta, DivisorClosedSet, RejectReason};
use primegraph::fixtures::{self, check_case_table, parse_case_table, reported_red_sets};
use primegraph::graphcore::{is_isomorphic, is_triangle_free};
use primegraph::groups::{dickson_eo, element_orders, prime_graph_of, GroupSpec};
use primegraph::numtheory::{factorize, is_prime, psl2_cubefree_profile};
use primegraph::realize::{realize_squarefree, SquarefreeOptions};
use primegraph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn figure1_replay() -> Outcome {
    let c = fixtures::figure1_complement();
    let f = c.complement();
    let table = parse_case_table(&fixtures::read("figure1_cases.txt", None).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let two = table.iter().filter(|p| p.red.len() == 2).count();
    let one = table.iter().filter(|p| p.red.len() == 1).count();
    ensure(two == 16 && one == 8, || format!("fixture has {two} two-red and {one} one-red cases"))?;
    for n in [5, 4] {
        let v = is_npowerfree_solvable_realizable(&f, n).map_err(|e| e.to_string())?;
        let rep = v.obstruction().ok_or(format!("n={n} accepted"))?;
        let bad: Vec<_> = check_case_table(&c, rep, &table).into_iter().filter(|k| !k.ok).collect();
        ensure(bad.is_empty(), || format!("n={n}: {bad:?}"))?;
        let want: BTreeSet<Vec<String>> = table.iter().map(|p| p.red.clone()).collect();
        ensure(reported_red_sets(rep) == want, || format!("n={n}: case sets differ"))?;
        let table = rep.case_table();
        ensure(table.iter().any(|l| l.starts_with("[0,1]: (")), || "no [0,1] row".into())?;
    }
    ensure(is_solvable_realizable(&f).map_err(|e| e.to_string())?.is_accept(), || "solvable rejected".into())?;
    Ok("24 cases at n=5 and n=4; solvable accepts".into())
}

fn figure2_replay() -> Outcome {
    let g = fixtures::figure2();
    let r = recover_delta(&g);
    ensure(r.reason() == Some(RejectReason::MissingSubset), || format!("got {:?}", r.reason()))?;
    let values: BTreeSet<u64> = r.values().values().copied().collect();
    ensure(values == BTreeSet::from([2, 3, 5, 6, 30]), || format!("values {values:?}"))?;
    let merged: Vec<Vec<String>> = contract(&g).classes.into_iter().filter(|c| c.len() > 1).collect();
    ensure(merged == vec![vec!["A".to_string(), "A'".to_string()]], || format!("merged {merged:?}"))?;
    Ok("MissingSubset, values {2,3,5,6,30}, merged [A, A']".into())
}

fn realizer_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut largest = 0u128;
    for i in 0..200 {
        let n = rng.gen_range(1..=6);
        let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.gen_bool(0.6) {
                    edges.push((u, v));
                }
            }
        }
        let f = Graph::from_index_edges(n, &edges).unwrap().complement();
        let r = realize_squarefree(&f, &SquarefreeOptions::default()).map_err(|e| format!("sample {i}: {e}"))?;
        largest = largest.max(r.spec.order().unwrap_or(u128::MAX));
        let got = prime_graph_of(&r.spec).map_err(|e| format!("sample {i}: {e}"))?;
        let want = r.expected_prime_graph(&f).map_err(|e| e.to_string())?;
        ensure(got.graph.same_labeled(&want) && is_isomorphic(&got.graph, &f), || format!("sample {i}: mismatch for {f:?}"))?;
    }
    Ok(format!("200/200, largest order {largest}"))
}

fn dickson() -> Outcome {
    for q in [5, 7, 11, 13] {
        let a = dickson_eo(q).map_err(|e| e.to_string())?;
        let b = element_orders(&GroupSpec::psl2(q)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("q={q}: {a:?} vs {b:?}"))?;
    }
    Ok("q in {5,7,11,13}".into())
}

fn profiles() -> Outcome {
    let p = |q| psl2_cubefree_profile(q).map(|p| (p.m, p.n));
    ensure(p(5) == Some((1, 1)) && p(13) == Some((2, 1)) && p(7).is_none(), || format!("{:?} {:?} {:?}", p(5), p(13), p(7)))?;
    let mut with_profile = 0;
    for q in (5..10_000u64).filter(|&q| is_prime(q)) {
        if psl2_cubefree_profile(q).is_some() {
            with_profile += 1;
            let order = q * (q * q - 1) / 2;
            ensure(factorize(order).max_exponent() <= 2, || format!("q={q}: order {order} not cube-free"))?;
        }
    }
    Ok(format!("{with_profile} primes below 10^4 have a profile, all cube-free"))
}

fn lattice() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77);
    let mut accepted = [0usize; 4];
    for i in 0..1000 {
        let n = rng.gen_range(1..=11);
        let density = rng.gen_range(0.1..0.5);
        let mut c = Graph::from_index_edges(n, &[]).unwrap();
        let triangle_free = i % 2 == 0;
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    c.add_edge(u, v).unwrap();
                    if triangle_free && is_triangle_free(&c).is_some() {
                        c = remove_edge(&c, u, v);
                    }
                }
            }
        }
        let f = c.complement();
        let e = |r: primegraph::Result<bool>| r.map_err(|e| format!("sample {i}: {e}"));
        let npf: Vec<bool> = (2..=6)
            .map(|k| e(is_npowerfree_solvable_realizable(&f, k).map(|v| v.is_accept())))
            .collect::<Result<_, _>>()?;
        let meta = e(is_metanilpotent_realizable(&f).map(|v| v.is_accept()))?;
        let cube = e(is_solvable_cubefree_realizable(&f).map(|v| v.is_accept()))?;
        let solv = e(is_solvable_realizable(&f).map(|v| v.is_accept()))?;
        ensure(npf[0] == meta, || format!("sample {i}: n=2 vs metanilpotent"))?;
        ensure(npf[1] == cube, || format!("sample {i}: n=3 vs cube-free solvable"))?;
        ensure(npf[2] == npf[3], || format!("sample {i}: n=4 vs n=5"))?;
        ensure(npf.windows(2).all(|w| !w[0] || w[1]), || format!("sample {i}: not monotone {npf:?}"))?;
        ensure(npf.iter().all(|&a| !a || solv), || format!("sample {i}: npowerfree without solvable"))?;
        for (slot, &a) in accepted.iter_mut().zip([meta, cube, npf[3], solv].iter()) {
            *slot += a as usize;
        }
    }
    Ok(format!("1000 samples, accepts meta/cube/n5/solvable = {accepted:?}"))
}

fn remove_edge(g: &Graph, a: usize, b: usize) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&e| e != (a.min(b), a.max(b))).collect();
    Graph::from_index_edges(g.n(), &edges).unwrap()
}

fn dual_roundtrip() -> Outcome {
    for seed in 0..500u64 {
        let x = random_divisor_closed(seed, 1 + (seed as usize % 6), 30 + seed * 3).map_err(|e| e.to_string())?;
        let r = recover_delta(&gamma_of(&x));
        let d = r.delta().ok_or_else(|| format!("seed {seed}: rejected {:?}", r.reason()))?;
        ensure(is_isomorphic(d, &delta_of(&x)), || format!("seed {seed}: not isomorphic"))?;
    }
    let specs: Vec<GroupSpec> = serde_json::from_str(&fixtures::read("groups20.json", None).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(specs.len() == 20, || format!("{} fixture groups", specs.len()))?;
    for (i, s) in specs.iter().enumerate() {
        let eo = DivisorClosedSet::new(element_orders(s).map_err(|e| format!("group {i}: {e}"))?.0).map_err(|e| e.to_string())?;
        let pg = prime_graph_of(s).map_err(|e| format!("group {i}: {e}"))?;
        ensure(delta_of(&eo).same_labeled(&pg.graph), || format!("group {i}: delta differs"))?;
    }
    Ok("500 sets recovered; 20 groups agree".into())
}

fn pseudo() -> Outcome {
    let load = |name: &str| -> Result<PrimeLabeledGraph, String> {
        let c = fixtures::graph(name, None).map_err(|e| e.to_string())?;
        PrimeLabeledGraph::from_prime_labels(c.complement()).map_err(|e| e.to_string())
    };
    let r = pseudo_solvable_check(&load("pseudo_triangle_edge27.json")?).map_err(|e| e.to_string())?;
    ensure(!r.condition_b, || "edge 2-7 fixture passes condition B".into())?;
    ensure(r.violations.iter().any(|v| matches!(v, PseudoViolation::TwoPEdges { edges } if edges == &vec![(2, 7)])), || format!("{:?}", r.violations))?;
    let r = pseudo_solvable_check(&load("pseudo_triangle_isolated7.json")?).map_err(|e| e.to_string())?;
    ensure(r.condition_a && r.condition_b, || format!("isolated 7 fixture: {r:?}"))?;
    let gz = fixtures::graph("groetzsch.json", None).map_err(|e| e.to_string())?;
    let r = pseudo_solvable_check(&PrimeLabeledGraph::from_prime_labels(gz.complement()).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (a, b) = (gz.index_of("3").unwrap(), gz.index_of("5").unwrap());
    let reduced = remove_edge(&gz, a, b);
    let expected = is_triangle_free(&reduced).is_none() && chromatic_number(&reduced) <= 3;
    ensure(r.condition_a == expected, || format!("condition A {} but oracle says {expected}", r.condition_a))?;
    ensure(chromatic_number(&gz) == 4, || "Groetzsch fixture is not 4-chromatic".into())?;
    Ok(format!("Groetzsch: condition A = {}, condition B = {}", r.condition_a, r.condition_b))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("figure-1 replay", figure1_replay, Duration::from_secs(1)),
        ("figure-2 replay", figure2_replay, Duration::from_secs(1)),
        ("realizer roundtrip", realizer_roundtrip, Duration::from_secs(60)),
        ("dickson cross-check", dickson, Duration::from_secs(10)),
        ("psl2 profile table", profiles, Duration::from_secs(5)),
        ("classifier lattice", lattice, Duration::from_secs(120)),
        ("dual roundtrip", dual_roundtrip, Duration::from_secs(30)),
        ("pseudo-solvable checks", pseudo, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit:?} budget")),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!("{} {}. {name} ({:.3}s): {detail}", if ok { "PASS" } else { "FAIL" }, i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
