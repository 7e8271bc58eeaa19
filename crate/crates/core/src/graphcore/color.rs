use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A total vertex coloring with colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<usize>) -> Self {
        Coloring { k, colors }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.colors.iter().all(|&c| c < self.k)
            && g.edges().into_iter().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// Vertex indices grouped by color, `k` classes (possibly empty).
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn class_labels(&self, g: &Graph) -> Vec<Vec<String>> {
        self.classes()
            .into_iter()
            .map(|c| c.into_iter().map(|v| g.label(v).to_string()).collect())
            .collect()
    }
}

/// First triangle in lexicographic index order, if any.
pub fn is_triangle_free(g: &Graph) -> Option<[usize; 3]> {
    for (a, b) in g.edges() {
        for c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Exact k-coloring by backtracking. Vertices are visited by decreasing
/// degree (ties by index); colors are tried in increasing order with the
/// usual "no new color beyond max+1" symmetry break, so the result is the
/// first coloring in that search order.
pub fn k_color(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    g.check_cap()?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(Coloring::new(k, Vec::new())));
    }
    let masks = g.masks();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    // class_masks[c] = vertices currently colored c
    let mut class_masks = vec![0u64; k];
    let mut colors = vec![usize::MAX; n];

    fn search(
        pos: usize,
        used: usize,
        order: &[usize],
        masks: &[u64],
        class_masks: &mut [u64],
        colors: &mut [usize],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        let k = class_masks.len();
        for c in 0..k.min(used + 1) {
            if class_masks[c] & masks[v] != 0 {
                continue;
            }
            class_masks[c] |= 1 << v;
            colors[v] = c;
            if search(pos + 1, used.max(c + 1), order, masks, class_masks, colors) {
                return true;
            }
            class_masks[c] &= !(1 << v);
        }
        colors[v] = usize::MAX;
        false
    }

    if search(0, 0, &order, &masks, &mut class_masks, &mut colors) {
        Ok(Some(Coloring::new(k, colors)))
    } else {
        Ok(None)
    }
}

/// BFS 2-coloring restricted to `active` vertices. Each component's first
/// vertex (by index) gets color 0. On failure returns the shortest odd
/// cycle inside the active set.
pub(crate) fn two_color_active(g: &Graph, active: &[bool]) -> std::result::Result<Vec<Option<usize>>, Vec<usize>> {
    let n = g.n();
    let mut color: Vec<Option<usize>> = vec![None; n];
    for s in 0..n {
        if !active[s] || color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for w in g.neighbors(u) {
                if !active[w] {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(1 - cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Err(shortest_odd_cycle_active(g, active)
                            .expect("a 2-coloring conflict implies an odd cycle"));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color)
}

/// Components of the subgraph induced by `active`, each sorted, ordered by
/// smallest member.
pub(crate) fn components_active(g: &Graph, active: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !active[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if active[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Shortest odd cycle, canonical form: starts at its smallest vertex and
/// is the lexicographically first such vertex sequence.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    shortest_odd_cycle_active(g, &vec![true; g.n()])
}

fn bfs_dist(g: &Graph, s: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if allowed(w) && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub(crate) fn shortest_odd_cycle_active(g: &Graph, active: &[bool]) -> Option<Vec<usize>> {
    let n = g.n();
    // Length of the shortest odd closed walk, which is a shortest odd cycle.
    let mut best = usize::MAX;
    for s in (0..n).filter(|&s| active[s]) {
        let dist = bfs_dist(g, s, &|w| active[w]);
        for (u, v) in g.edges() {
            if active[u] && active[v] && dist[u] != usize::MAX && dist[u] == dist[v] {
                best = best.min(2 * dist[u] + 1);
            }
        }
    }
    if best == usize::MAX {
        return None;
    }
    // Lexicographically first cycle of that length: anchor at the smallest
    // vertex, walk only through larger vertices.
    for s in (0..n).filter(|&s| active[s]) {
        let allowed = |w: usize| active[w] && w >= s;
        let dist = bfs_dist(g, s, &allowed);
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        if extend_cycle(g, best, &allowed, &dist, &mut path, &mut on_path) {
            return Some(path);
        }
    }
    unreachable!("an odd closed walk of minimum length is a cycle")
}

fn extend_cycle(
    g: &Graph,
    len: usize,
    allowed: &dyn Fn(usize) -> bool,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(last, path[0]);
    }
    for w in g.neighbors(last) {
        if !allowed(w) || on_path[w] || dist[w] == usize::MAX {
            continue;
        }
        // remaining steps after w: len - path.len() - 1 more vertices, then close
        if path.len() + dist[w] > len {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if extend_cycle(g, len, allowed, dist, path, on_path) {
            return true;
        }
        path.pop();
        on_path[w] = false;
    }
    false
}

/// 2-coloring by BFS (first vertex of each component gets color 0), or the
/// shortest odd cycle as the rejection witness.
pub fn is_bipartite(g: &Graph) -> std::result::Result<Coloring, Vec<usize>> {
    two_color_active(g, &vec![true; g.n()])
        .map(|c| Coloring::new(2, c.into_iter().map(Option::unwrap).collect()))
}

/// First vertex `v` (by index) such that `g - v` is bipartite, with the
/// 2-coloring of `g.without_vertex(v)`.
pub fn bipartite_after_one_vertex(g: &Graph) -> Option<(usize, Coloring)> {
    let n = g.n();
    let mut active = vec![true; n];
    for v in 0..n {
        active[v] = false;
        if let Ok(c) = two_color_active(g, &active) {
            let colors = c.into_iter().flatten().collect();
            return Some((v, Coloring::new(2, colors)));
        }
        active[v] = true;
    }
    None
}

/// Maximal connected induced subgraphs, ordered by smallest vertex index.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    components_active(g, &vec![true; g.n()])
        .into_iter()
        .map(|c| g.induced_subgraph(&c))
        .collect()
}

/// Exact isomorphism test by backtracking with degree pruning. Intended for
/// the small graphs this crate deals with.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let (dav, dbv) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dav[v]));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        i: usize,
        order: &[usize],
        a: &Graph,
        b: &Graph,
        dav: &[usize],
        dbv: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for w in 0..b.n() {
            if used[w] || dav[v] != dbv[w] {
                continue;
            }
            let consistent = order[..i].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(i + 1, order, a, b, dav, dbv, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }

    go(0, &order, a, b, &dav, &dbv, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures_for_tests::*;

    #[test]
    fn triangles() {
        assert_eq!(is_triangle_free(&complete(3)), Some([0, 1, 2]));
        assert_eq!(is_triangle_free(&cycle(5)), None);
        assert_eq!(is_triangle_free(&figure1()), None);
    }

    #[test]
    fn figure1_three_coloring() {
        let g = figure1();
        let c = k_color(&g, 3).unwrap().expect("3-colorable");
        assert!(c.is_proper(&g));
        // the partition {0,1} | {2,3,4} | {5,6,7} is also proper
        let reference = Coloring::new(3, vec![0, 0, 1, 1, 1, 2, 2, 2]);
        assert!(reference.is_proper(&g));
        assert!(k_color(&g, 2).unwrap().is_none());
    }

    #[test]
    fn small_colorings() {
        assert!(k_color(&cycle(5), 2).unwrap().is_none());
        let e = Graph::from_index_edges(4, &[]).unwrap();
        let c = k_color(&e, 1).unwrap().unwrap();
        assert_eq!(c.classes(), vec![vec![0, 1, 2, 3]]);
        assert!(k_color(&e, 0).is_err());
    }

    #[test]
    fn oversize_is_an_error() {
        let g = Graph::from_index_edges(33, &[]).unwrap();
        assert!(matches!(k_color(&g, 3), Err(Error::Oversize { .. })));
    }

    #[test]
    fn bipartite_and_odd_cycles() {
        let c4 = is_bipartite(&cycle(4)).unwrap();
        assert!(c4.is_proper(&cycle(4)));
        let w = is_bipartite(&cycle(5)).unwrap_err();
        assert_eq!(w, vec![0, 1, 2, 3, 4]);
        // {2,4,5,6,7} of figure1: edges 2-5, 4-5, 4-6, 4-7, a tree
        let sub = figure1().induced_subgraph(&[2, 4, 5, 6, 7]);
        assert!(is_bipartite(&sub).is_ok());
    }

    #[test]
    fn one_vertex_removal() {
        let (v, c) = bipartite_after_one_vertex(&cycle(5)).unwrap();
        assert_eq!(v, 0);
        assert!(c.is_proper(&cycle(5).without_vertex(0)));
        let two_c5 = disjoint_union(&cycle(5), &cycle(5));
        assert!(bipartite_after_one_vertex(&two_c5).is_none());
        assert!(bipartite_after_one_vertex(&complete(4)).is_none());
    }

    #[test]
    fn components() {
        let e = Graph::with_vertices(["2", "3", "5"]).unwrap();
        let cs = connected_components(&e);
        assert_eq!(cs.len(), 3);
        let g = disjoint_union(&complete(3), &complete(2));
        let sizes: Vec<usize> = connected_components(&g).iter().map(Graph::n).collect();
        assert_eq!(sizes, vec![3, 2]);
    }

    #[test]
    fn isomorphism() {
        assert!(is_isomorphic(&cycle(5), &cycle(5).permuted(&[4, 2, 0, 3, 1])));
        assert!(!is_isomorphic(&cycle(6), &disjoint_union(&complete(3), &complete(3))));
    }
}
