use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Coloring, Graph};
use crate::error::{Error, Result};

/// The three classes of a canonical orientation. Color indices 0, 1, 2 of a
/// [`Coloring`] map to Red, Green, Blue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rgb {
    Red,
    Green,
    Blue,
}

impl Rgb {
    pub fn from_index(c: usize) -> Option<Rgb> {
        match c {
            0 => Some(Rgb::Red),
            1 => Some(Rgb::Green),
            2 => Some(Rgb::Blue),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// An orientation of a simple graph: at most one arc per unordered pair.
#[derive(Clone, Debug)]
pub struct Digraph {
    graph: Graph,
    out: Vec<BTreeSet<usize>>,
    inc: Vec<BTreeSet<usize>>,
}

impl Digraph {
    /// Empty orientation on the vertices of `g` (no arcs).
    pub fn on_vertices(g: &Graph) -> Digraph {
        let n = g.n();
        Digraph {
            graph: Graph::with_vertices(g.labels().iter().cloned()).expect("labels are unique"),
            out: vec![BTreeSet::new(); n],
            inc: vec![BTreeSet::new(); n],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || self.out[v].contains(&u) || self.out[u].contains(&v) {
            return Err(Error::InvalidGraph(format!("arc {u}->{v} conflicts with existing arcs")));
        }
        self.out[u].insert(v);
        self.inc[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn label(&self, v: usize) -> &str {
        self.graph.label(v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().copied()
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[v].iter().copied()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
            .collect()
    }

    /// All directed paths with exactly `len` arcs on distinct vertices.
    pub fn directed_paths(&self, len: usize) -> Vec<Vec<usize>> {
        fn walk(d: &Digraph, len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if path.len() == len + 1 {
                out.push(path.clone());
                return;
            }
            let last = *path.last().unwrap();
            for w in d.out_neighbors(last) {
                if !path.contains(&w) {
                    path.push(w);
                    walk(d, len, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..self.n() {
            walk(self, len, &mut vec![s], &mut out);
        }
        out
    }
}

/// Orient every edge Red→Green, Green→Blue, Red→Blue. The coloring must be
/// a proper coloring with `k = 3`; empty classes are allowed.
pub fn canonical_orientation(g: &Graph, c: &Coloring) -> Result<Digraph> {
    if c.k != 3 || !c.is_proper(g) {
        return Err(Error::ImproperColoring { k: 3 });
    }
    let mut d = Digraph::on_vertices(g);
    for (u, v) in g.edges() {
        if c.colors[u] < c.colors[v] {
            d.add_arc(u, v)?;
        } else {
            d.add_arc(v, u)?;
        }
    }
    Ok(d)
}

/// Every `s` with some `w` such that `s→w→target`, all three distinct.
/// A direct arc `s→target` does not count.
pub fn directed_two_path_sources(d: &Digraph, target: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for w in d.in_neighbors(target) {
        for s in d.in_neighbors(w) {
            if s != target {
                out.insert(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures_for_tests::*;

    fn reference_coloring() -> Coloring {
        Coloring::new(3, vec![0, 0, 1, 1, 1, 2, 2, 2])
    }

    #[test]
    fn single_arc_red_to_green() {
        let g = Graph::from_edges(["r", "g"], [("r", "g")]).unwrap();
        let d = canonical_orientation(&g, &Coloring::new(3, vec![0, 1])).unwrap();
        assert_eq!(d.arcs(), vec![(0, 1)]);
    }

    #[test]
    fn improper_coloring_rejected() {
        let g = Graph::from_edges(["a", "b"], [("a", "b")]).unwrap();
        assert!(canonical_orientation(&g, &Coloring::new(3, vec![1, 1])).is_err());
        assert!(canonical_orientation(&g, &Coloring::new(2, vec![0, 1])).is_err());
    }

    #[test]
    fn figure1_orientation_has_no_three_paths() {
        let g = figure1();
        let d = canonical_orientation(&g, &reference_coloring()).unwrap();
        assert_eq!(d.arcs().len(), 12);
        for (u, v) in d.arcs() {
            assert!(reference_coloring().colors[u] < reference_coloring().colors[v]);
        }
        assert!(d.directed_paths(3).is_empty());
    }

    #[test]
    fn two_path_sources_figure1() {
        let d = canonical_orientation(&figure1(), &reference_coloring()).unwrap();
        assert_eq!(directed_two_path_sources(&d, 5), BTreeSet::from([0, 1]));
        assert!(directed_two_path_sources(&d, 7).is_empty());
    }

    #[test]
    fn star_has_no_two_paths() {
        let star = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = canonical_orientation(&star, &Coloring::new(3, vec![0, 2, 2, 2])).unwrap();
        for leaf in 1..4 {
            assert!(directed_two_path_sources(&d, leaf).is_empty());
        }
    }

    #[test]
    fn c5_with_classes_2_2_1() {
        let c5 = cycle(5);
        // 0-1-2-3-4-0 : colors R G R G B
        let d = canonical_orientation(&c5, &Coloring::new(3, vec![0, 1, 0, 1, 2])).unwrap();
        assert!(d.directed_paths(3).is_empty());
        assert!(!d.directed_paths(2).is_empty());
    }
}
