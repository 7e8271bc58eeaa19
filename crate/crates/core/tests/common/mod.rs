#![allow(dead_code)]

use primegraph::Graph;
use proptest::prelude::*;

/// Random simple graph on `0..n` for `n <= max_n`, each pair an edge with
/// roughly the given density (percent).
pub fn arb_graph(max_n: usize, density: u32) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(0u32..100, pairs).prop_map(move |coins| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if coins[k] < density {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_index_edges(n, &edges).unwrap()
        })
    })
}

/// Random graph whose complement is bipartite: two sides, random cross edges.
pub fn arb_bipartite_complement(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, side, coins)| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if side[u] != side[v] && coins[u * n + v] {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_index_edges(n, &edges).unwrap().complement()
        })
}

/// Random permutation of `0..n`.
pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Exact chromatic number by dynamic programming over vertex subsets.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    let full = (1usize << n) - 1;
    let adj: Vec<usize> = (0..n).map(|v| g.neighbors(v).fold(0, |m, w| m | (1 << w))).collect();
    let independent: Vec<bool> = (0..=full)
        .map(|s| (0..n).all(|v| s & (1 << v) == 0 || adj[v] & s == 0))
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let t = sub | low;
            if independent[t] && best[s ^ t] != usize::MAX {
                best[s] = best[s].min(best[s ^ t] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Isomorphism by trying every bijection; for tiny graphs only.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || a.degree(i) != b.degree(j) {
                continue;
            }
            if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                used[j] = true;
                map.push(j);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.n() == b.n() && a.edge_count() == b.edge_count() && go(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

/// Random triangle-free graph: edges offered in random order, kept unless
/// they close a triangle.
pub fn arb_triangle_free(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        (Just(n), Just(pairs).prop_shuffle(), 0usize..=n * n / 4 + 1).prop_map(|(n, pairs, budget)| {
            let mut g = Graph::from_index_edges(n, &[]).unwrap();
            let mut added = 0;
            for (u, v) in pairs {
                if added == budget {
                    break;
                }
                if !(0..n).any(|w| g.has_edge(u, w) && g.has_edge(v, w)) {
                    g.add_edge(u, v).unwrap();
                    added += 1;
                }
            }
            g
        })
    })
}
