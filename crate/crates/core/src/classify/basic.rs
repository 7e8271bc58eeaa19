use serde::{Deserialize, Serialize};

use super::{labels_of, Verdict};
use crate::error::Result;
use crate::graphcore::{bipartite_after_one_vertex, is_bipartite, is_triangle_free, k_color, Coloring, Graph};

/// Why a complement fails one of the coloring-based characterizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    Triangle { vertices: [String; 3] },
    /// Exhaustive search found no proper 3-coloring.
    NotThreeColorable,
    OddCycle { cycle: Vec<String> },
    /// Every single-vertex deletion leaves an odd cycle.
    NoBipartizingVertex,
}

/// A proper coloring of the complement, with its classes spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringWitness {
    pub coloring: Coloring,
    pub classes: Vec<Vec<String>>,
}

impl ColoringWitness {
    fn new(g: &Graph, coloring: Coloring) -> Self {
        let classes = coloring.class_labels(g);
        ColoringWitness { coloring, classes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubefreeSolvableWitness {
    /// `None` only for the empty graph.
    pub removed: Option<String>,
    /// 2-coloring classes of the complement minus `removed`.
    pub classes: Vec<Vec<String>>,
}

pub(crate) fn triangle(c: &Graph) -> Option<Obstruction> {
    is_triangle_free(c).map(|t| Obstruction::Triangle {
        vertices: t.map(|v| c.label(v).to_string()),
    })
}

/// Solvable groups: the complement is triangle-free and 3-colorable.
pub fn is_solvable_realizable(f: &Graph) -> Result<Verdict<ColoringWitness, Obstruction>> {
    f.check_cap()?;
    let c = f.complement();
    if let Some(t) = triangle(&c) {
        return Ok(Verdict::Reject { obstruction: t });
    }
    Ok(match k_color(&c, 3)? {
        Some(col) => Verdict::Accept { witness: ColoringWitness::new(&c, col) },
        None => Verdict::Reject { obstruction: Obstruction::NotThreeColorable },
    })
}

/// Metanilpotent groups (equivalently square-free order, and the other
/// classes sharing the same characterization): the complement is bipartite.
pub fn is_metanilpotent_realizable(f: &Graph) -> Result<Verdict<ColoringWitness, Obstruction>> {
    f.check_cap()?;
    let c = f.complement();
    Ok(match is_bipartite(&c) {
        Ok(col) => Verdict::Accept { witness: ColoringWitness::new(&c, col) },
        Err(cycle) => Verdict::Reject { obstruction: Obstruction::OddCycle { cycle: labels_of(&c, cycle) } },
    })
}

/// Solvable groups of cube-free order: the complement is triangle-free and
/// becomes bipartite after deleting one vertex.
pub fn is_solvable_cubefree_realizable(f: &Graph) -> Result<Verdict<CubefreeSolvableWitness, Obstruction>> {
    f.check_cap()?;
    let c = f.complement();
    if let Some(t) = triangle(&c) {
        return Ok(Verdict::Reject { obstruction: t });
    }
    if c.is_empty() {
        return Ok(Verdict::Accept { witness: CubefreeSolvableWitness { removed: None, classes: vec![vec![], vec![]] } });
    }
    Ok(match bipartite_after_one_vertex(&c) {
        Some((v, col)) => Verdict::Accept {
            witness: CubefreeSolvableWitness {
                removed: Some(c.label(v).to_string()),
                classes: col.class_labels(&c.without_vertex(v)),
            },
        },
        None => Verdict::Reject { obstruction: Obstruction::NoBipartizingVertex },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures_for_tests::*;

    fn groetzsch() -> Graph {
        // Mycielskian of the 5-cycle 0..4: shadows 5..9, apex 10.
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, 5 + (i + 1) % 5));
            e.push((i, 5 + (i + 4) % 5));
            e.push((5 + i, 10));
        }
        Graph::from_index_edges(11, &e).unwrap()
    }

    #[test]
    fn solvable_examples() {
        let v = is_solvable_realizable(&figure1().complement()).unwrap();
        let w = v.witness().unwrap();
        assert!(w.coloring.is_proper(&figure1()));

        let edgeless = Graph::with_vertices(["p", "q", "r"]).unwrap();
        match is_solvable_realizable(&edgeless).unwrap() {
            Verdict::Reject { obstruction: Obstruction::Triangle { vertices } } => {
                assert_eq!(vertices, ["p", "q", "r"].map(String::from))
            }
            other => panic!("{other:?}"),
        }

        let g = groetzsch();
        assert_eq!(g.edge_count(), 20);
        assert!(is_triangle_free(&g).is_none());
        assert_eq!(
            is_solvable_realizable(&g.complement()).unwrap(),
            Verdict::Reject { obstruction: Obstruction::NotThreeColorable }
        );
    }

    #[test]
    fn metanilpotent_examples() {
        assert!(is_metanilpotent_realizable(&complete(5)).unwrap().is_accept());
        match is_metanilpotent_realizable(&cycle(5).complement()).unwrap() {
            Verdict::Reject { obstruction: Obstruction::OddCycle { cycle } } => assert_eq!(cycle.len(), 5),
            other => panic!("{other:?}"),
        }
        assert!(is_metanilpotent_realizable(&cycle(4).complement()).unwrap().is_accept());
    }

    #[test]
    fn cubefree_solvable_examples() {
        let v = is_solvable_cubefree_realizable(&cycle(5).complement()).unwrap();
        assert_eq!(v.witness().unwrap().removed.as_deref(), Some("0"));
        let two = disjoint_union(&cycle(5), &cycle(5));
        assert_eq!(
            is_solvable_cubefree_realizable(&two.complement()).unwrap(),
            Verdict::Reject { obstruction: Obstruction::NoBipartizingVertex }
        );
        assert!(is_solvable_cubefree_realizable(&complete(4)).unwrap().is_accept());
        assert!(is_solvable_cubefree_realizable(&Graph::new()).unwrap().is_accept());
    }

    #[test]
    fn oversize_is_an_error() {
        assert!(is_solvable_realizable(&complete(33)).is_err());
    }
}
