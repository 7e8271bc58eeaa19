//! Constructive witnesses: concrete groups for bipartite complements and
//! for the non-solvable cube-free case, and symbolic order certificates for
//! the nth-power-free case.

mod certificate;
mod nonsolvable;
mod squarefree;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::groups::{prime_graph_of, GroupSpec};

pub use certificate::{realize_npowerfree_certificate, CertFactor, OrderCertificate};
pub use nonsolvable::realize_cubefree_nonsolvable;
pub use squarefree::{realize_squarefree, SquarefreeOptions};

/// A group together with the prime standing for each vertex of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub spec: GroupSpec,
    pub vertex_primes: IndexMap<String, u64>,
}

impl Realization {
    /// `f` with every vertex renamed to its prime.
    pub fn expected_prime_graph(&self, f: &Graph) -> Result<Graph> {
        f.relabeled(|l| self.vertex_primes.get(l).map_or_else(|| format!("?{l}"), u64::to_string))
    }

    /// Runs the element-order oracle and compares its prime graph with `f`
    /// under the vertex map.
    pub fn verify(&self, f: &Graph) -> Result<bool> {
        if self.vertex_primes.len() != f.n() || f.labels().iter().any(|l| !self.vertex_primes.contains_key(l)) {
            return Err(Error::Precondition("vertex map does not cover the graph".into()));
        }
        let got = prime_graph_of(&self.spec)?;
        Ok(got.graph.same_labeled(&self.expected_prime_graph(f)?))
    }
}
