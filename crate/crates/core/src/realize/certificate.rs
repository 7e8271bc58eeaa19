use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::{indices_of, is_npowerfree_solvable_realizable, Verdict};
use crate::error::{Error, Result};
use crate::graphcore::{canonical_orientation, directed_two_path_sources, Graph};
use crate::numtheory::is_prime;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFactor {
    pub prime: u64,
    pub exp: u64,
    pub vertex: String,
}

/// Symbolic group order `∏ prime^exp`, one factor per vertex of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub n: u64,
    pub factors: Vec<CertFactor>,
}

impl OrderCertificate {
    /// Every exponent is below `n` and the primes are distinct primes.
    pub fn is_nth_power_free(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.factors
            .iter()
            .all(|f| f.exp >= 1 && f.exp < self.n && is_prime(f.prime) && seen.insert(f.prime))
    }

    pub fn exponent_of(&self, vertex: &str) -> Option<u64> {
        self.factors.iter().find(|f| f.vertex == vertex).map(|f| f.exp)
    }
}

/// Order certificate from the accepting coloring: a vertex that ends no
/// directed 2-path gets exponent 1, any other vertex `v` gets the product of
/// the red labels in `R(v)`. Red vertices keep their labels; the rest take
/// the smallest unused primes in vertex order.
pub fn realize_npowerfree_certificate(f: &Graph, n: u64) -> Result<OrderCertificate> {
    let w = match is_npowerfree_solvable_realizable(f, n)? {
        Verdict::Accept { witness } => witness,
        Verdict::Reject { .. } => {
            return Err(Error::Precondition(format!("no solvable group of {n}th-power-free order has this prime graph")))
        }
    };
    let c = f.complement();
    let red = indices_of(&c, &w.red)?;
    let d = canonical_orientation(&c, &w.coloring)?;
    let mut prime = vec![0u64; c.n()];
    for (i, &r) in red.iter().enumerate() {
        prime[r] = w.red_labels[i];
    }
    let used: BTreeSet<u64> = w.red_labels.iter().copied().collect();
    let mut fresh = (2u64..).filter(|&p| is_prime(p) && !used.contains(&p));
    for v in 0..c.n() {
        if prime[v] == 0 {
            prime[v] = fresh.next().unwrap();
        }
    }
    let factors = (0..c.n())
        .map(|v| {
            let exp = directed_two_path_sources(&d, v).iter().map(|&s| prime[s]).product::<u64>();
            CertFactor { prime: prime[v], exp, vertex: c.label(v).to_string() }
        })
        .collect();
    let cert = OrderCertificate { n, factors };
    debug_assert!(cert.is_nth_power_free());
    Ok(cert)
}
