//! Realizability verdicts for the group classes whose prime graphs have a
//! known characterization. Every classifier takes the candidate prime graph
//! `F` and works on its complement.

mod basic;
mod cubefree;
mod npf;
mod pseudo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::numtheory::is_prime;

pub use basic::{
    is_metanilpotent_realizable, is_solvable_cubefree_realizable, is_solvable_realizable, ColoringWitness,
    CubefreeSolvableWitness, Obstruction,
};
pub use cubefree::{
    cubefree_nonsolvable_at, is_cubefree_realizable, is_psl2_cubefree_prime_graph, CubeFreeVerdict, CubefreeOptions,
    CubefreeReport, NonSolvableMiss, NonSolvableWitness, DEFAULT_Q_BOUND,
};
pub use npf::{
    is_npowerfree_solvable_realizable, BlueCheck, CaseOutcome, ColoringAttempt, NpfCase, NpfReport, NpfWitness,
    PermFailure,
};
pub use pseudo::{pseudo_solvable_check, PseudoSolvableReport, PseudoViolation};

/// Outcome of a classifier: an accepting witness or a rejecting obstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict<A, R> {
    Accept { witness: A },
    Reject { obstruction: R },
}

impl<A, R> Verdict<A, R> {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }

    pub fn witness(&self) -> Option<&A> {
        match self {
            Verdict::Accept { witness } => Some(witness),
            Verdict::Reject { .. } => None,
        }
    }

    pub fn obstruction(&self) -> Option<&R> {
        match self {
            Verdict::Accept { .. } => None,
            Verdict::Reject { obstruction } => Some(obstruction),
        }
    }
}

/// A graph whose vertices carry distinct primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeLabeledGraph {
    pub graph: Graph,
    pub primes: Vec<u64>,
}

impl PrimeLabeledGraph {
    pub fn new(graph: Graph, primes: Vec<u64>) -> Result<Self> {
        if primes.len() != graph.n() {
            return Err(Error::InvalidGraph(format!(
                "{} primes for {} vertices",
                primes.len(),
                graph.n()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &p in &primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidGraph(format!("prime {p} labels two vertices")));
            }
        }
        Ok(PrimeLabeledGraph { graph, primes })
    }

    /// Reads each vertex label as its prime.
    pub fn from_prime_labels(graph: Graph) -> Result<Self> {
        let primes = graph
            .labels()
            .iter()
            .map(|l| l.trim().parse::<u64>().map_err(|_| Error::NotPrime(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, primes)
    }

    pub fn vertex_of(&self, p: u64) -> Option<usize> {
        self.primes.iter().position(|&x| x == p)
    }
}

pub(crate) fn labels_of(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| g.label(v).to_string()).collect()
}

pub(crate) fn indices_of(g: &Graph, labels: &[String]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| g.index_of(l).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {l:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_labels_validated() {
        let g = Graph::from_edges(["2", "3", "5"], [("2", "3")]).unwrap();
        let p = PrimeLabeledGraph::from_prime_labels(g.clone()).unwrap();
        assert_eq!(p.primes, vec![2, 3, 5]);
        assert_eq!(p.vertex_of(5), Some(2));
        let bad = Graph::with_vertices(["2", "9"]).unwrap();
        assert!(matches!(PrimeLabeledGraph::from_prime_labels(bad), Err(Error::NotPrime(_))));
        assert!(PrimeLabeledGraph::new(g, vec![2, 2, 3]).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v: Verdict<u32, String> = Verdict::Accept { witness: 3 };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"accept","witness":3}"#);
        let r: Verdict<u32, String> = serde_json::from_str(r#"{"verdict":"reject","obstruction":"x"}"#).unwrap();
        assert_eq!(r.obstruction().map(String::as_str), Some("x"));
    }
}
