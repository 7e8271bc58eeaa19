//! Necessary conditions for pseudo-solvable groups (composition factors
//! cyclic or A5). Passing both conditions does not certify realizability.

use serde::{Deserialize, Serialize};

use super::PrimeLabeledGraph;
use crate::error::Result;
use crate::graphcore::{is_triangle_free, k_color, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PseudoViolation {
    /// Triangle left in the complement after deleting the 3–5 edge.
    Triangle { primes: [u64; 3] },
    NotThreeColorable,
    /// {2,3,5} is a triangle of the complement and 2 has these other
    /// complement neighbours.
    TwoPEdges { edges: Vec<(u64, u64)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoSolvableReport {
    /// Complement minus the 3–5 edge is triangle-free and 3-colorable.
    pub condition_a: bool,
    /// Not both: {2,3,5} a complement triangle and some complement edge 2–p
    /// with p ∉ {2,3,5}.
    pub condition_b: bool,
    pub violations: Vec<PseudoViolation>,
}

pub fn pseudo_solvable_check(f: &PrimeLabeledGraph) -> Result<PseudoSolvableReport> {
    f.graph.check_cap()?;
    let c = f.graph.complement();
    let v = |p: u64| f.vertex_of(p);
    let mut violations = Vec::new();

    let mut reduced = Graph::with_vertices(c.labels().iter().cloned())?;
    let drop = match (v(3), v(5)) {
        (Some(a), Some(b)) => Some((a.min(b), a.max(b))),
        _ => None,
    };
    for e in c.edges() {
        if Some(e) != drop {
            reduced.add_edge(e.0, e.1)?;
        }
    }
    let condition_a = if let Some(t) = is_triangle_free(&reduced) {
        violations.push(PseudoViolation::Triangle { primes: t.map(|i| f.primes[i]) });
        false
    } else if k_color(&reduced, 3)?.is_none() {
        violations.push(PseudoViolation::NotThreeColorable);
        false
    } else {
        true
    };

    let condition_b = match (v(2), v(3), v(5)) {
        (Some(a), Some(b), Some(d)) if c.has_edge(a, b) && c.has_edge(a, d) && c.has_edge(b, d) => {
            let edges: Vec<(u64, u64)> = c
                .neighbors(a)
                .map(|w| f.primes[w])
                .filter(|p| ![2, 3, 5].contains(p))
                .map(|p| (2, p))
                .collect();
            if edges.is_empty() {
                true
            } else {
                violations.push(PseudoViolation::TwoPEdges { edges });
                false
            }
        }
        _ => true,
    };
    Ok(PseudoSolvableReport { condition_a, condition_b, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_complement(vs: &[&str], edges: &[(&str, &str)]) -> PrimeLabeledGraph {
        let c = Graph::from_edges(vs.iter().copied(), edges.iter().copied()).unwrap();
        PrimeLabeledGraph::from_prime_labels(c.complement()).unwrap()
    }

    #[test]
    fn triangle_plus_isolated_seven() {
        let f = from_complement(&["2", "3", "5", "7"], &[("2", "3"), ("3", "5"), ("2", "5")]);
        let r = pseudo_solvable_check(&f).unwrap();
        assert!(r.condition_a && r.condition_b);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn triangle_plus_two_seven_edge() {
        let f = from_complement(&["2", "3", "5", "7"], &[("2", "3"), ("3", "5"), ("2", "5"), ("2", "7")]);
        let r = pseudo_solvable_check(&f).unwrap();
        assert!(!r.condition_b);
        assert!(r.violations.contains(&PseudoViolation::TwoPEdges { edges: vec![(2, 7)] }));
    }

    #[test]
    fn k4_fails_a() {
        let vs = ["2", "3", "5", "7"];
        let mut e = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                e.push((vs[i], vs[j]));
            }
        }
        let r = pseudo_solvable_check(&from_complement(&vs, &e)).unwrap();
        assert!(!r.condition_a);
        assert!(matches!(r.violations[0], PseudoViolation::Triangle { .. }));
    }
}
