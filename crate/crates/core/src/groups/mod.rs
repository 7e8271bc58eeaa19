//! Brute-force finite-group oracle: element orders of every [`GroupSpec`]
//! variant, and the prime graphs they induce.

mod enumerate;
mod spec;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::PrimeLabeledGraph;
use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::numtheory::{divisors, is_prime, lcm, prime_divisors};
pub use spec::{GroupSpec, ORDER_CAP, PSL2_Q_CAP};

use enumerate::Enumerator;

/// The set of element orders of a group. Always contains 1 and is closed
/// under taking divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EoSet(pub BTreeSet<u64>);

impl EoSet {
    pub fn contains(&self, n: u64) -> bool {
        self.0.contains(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_divisor_closed(&self) -> bool {
        self.0.contains(&1) && self.0.iter().all(|&m| divisors(m).iter().all(|d| self.0.contains(d)))
    }

    /// `{lcm(a, b) : a ∈ self, b ∈ other}`: the eo-set of a direct product.
    pub fn lcm_closure(&self, other: &EoSet) -> EoSet {
        let mut out = BTreeSet::new();
        for a in self.iter() {
            for b in other.iter() {
                out.insert(lcm(a, b));
            }
        }
        EoSet(out)
    }
}

/// Exact element orders. Products are combined by lcm-closure of their
/// factors; cyclic groups contribute their divisors; semidirect products and
/// PSL(2,q) are enumerated element by element.
pub fn element_orders(spec: &GroupSpec) -> Result<EoSet> {
    spec.validate()?;
    let eo = match spec {
        GroupSpec::Cyclic { n } => EoSet(divisors(*n).into_iter().collect()),
        GroupSpec::Product { factors } => {
            let mut acc = EoSet(BTreeSet::from([1]));
            for f in factors {
                acc = acc.lcm_closure(&element_orders(f)?);
            }
            acc
        }
        GroupSpec::Semidirect { .. } | GroupSpec::Psl2 { .. } => enumerate_checked(spec)?,
    };
    assert!(eo.is_divisor_closed(), "element orders must be divisor-closed");
    Ok(eo)
}

fn enumerate_checked(spec: &GroupSpec) -> Result<EoSet> {
    let e = Enumerator::new(spec)?;
    let (eo, count) = e.orders();
    let order = spec.order().expect("capped");
    if count as u128 != order {
        return Err(Error::InvalidGroup(format!("enumerated {count} elements, expected {order}")));
    }
    Ok(EoSet(eo))
}

/// Element orders by walking the whole group, products included. Agrees
/// with [`element_orders`]; exists to test the lcm-closure shortcut.
pub fn element_orders_brute(spec: &GroupSpec) -> Result<EoSet> {
    enumerate_checked(spec)
}

/// Dickson: the element orders of PSL(2,q) are the divisors of q, (q−1)/2
/// and (q+1)/2.
pub fn dickson_eo(q: u64) -> Result<EoSet> {
    if q < 5 || !is_prime(q) {
        return Err(Error::Precondition(format!("dickson_eo needs a prime q >= 5, got {q}")));
    }
    let mut s = BTreeSet::new();
    for m in [q, (q - 1) / 2, (q + 1) / 2] {
        s.extend(divisors(m));
    }
    Ok(EoSet(s))
}

/// Prime graph from the oracle: vertices are the primes dividing the group
/// order, `p–q` an edge iff some element order is divisible by `pq`.
pub fn prime_graph_of(spec: &GroupSpec) -> Result<PrimeLabeledGraph> {
    let eo = element_orders(spec)?;
    let order = spec.order().ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for m in eo.iter() {
        primes.extend(prime_divisors(m));
    }
    // Cauchy: every prime divisor of |G| is an element order.
    let from_order: BTreeSet<u64> = prime_divisors_u128(order);
    if primes != from_order {
        return Err(Error::InvalidGroup(format!(
            "primes of element orders {primes:?} differ from primes of the order {from_order:?}"
        )));
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut g = Graph::with_vertices(primes.iter().map(u64::to_string))?;
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            let pq = primes[i] * primes[j];
            if eo.iter().any(|m| m % pq == 0) {
                g.add_edge(i, j)?;
            }
        }
    }
    PrimeLabeledGraph::new(g, primes)
}

fn prime_divisors_u128(mut n: u128) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            out.insert(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n as u64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::is_isomorphic;

    fn set(xs: &[u64]) -> EoSet {
        EoSet(xs.iter().copied().collect())
    }

    #[test]
    fn small_eo_examples() {
        assert_eq!(element_orders(&GroupSpec::psl2(5)).unwrap(), set(&[1, 2, 3, 5]));
        let s3 = GroupSpec::Semidirect { qs: vec![3], ps: vec![2], action: vec![vec![2]] };
        assert_eq!(element_orders(&s3).unwrap(), set(&[1, 2, 3]));
        assert_eq!(element_orders(&GroupSpec::cyclic(1)).unwrap(), set(&[1]));
    }

    #[test]
    fn dickson_examples_and_matrix_oracle() {
        assert_eq!(dickson_eo(5).unwrap(), set(&[1, 2, 3, 5]));
        assert_eq!(dickson_eo(7).unwrap(), set(&[1, 2, 3, 4, 7]));
        assert_eq!(dickson_eo(13).unwrap(), set(&[1, 2, 3, 6, 7, 13]));
        for q in [5, 7, 11, 13] {
            assert_eq!(dickson_eo(q).unwrap(), element_orders(&GroupSpec::psl2(q)).unwrap(), "q={q}");
        }
        assert!(dickson_eo(9).is_err());
    }

    #[test]
    fn prime_graph_examples() {
        let a5 = prime_graph_of(&GroupSpec::psl2(5)).unwrap();
        assert_eq!(a5.graph.labels(), &["2", "3", "5"]);
        assert_eq!(a5.graph.edge_count(), 0);

        let c6 = prime_graph_of(&GroupSpec::product(vec![GroupSpec::cyclic(2), GroupSpec::cyclic(3)])).unwrap();
        assert_eq!(c6.graph.edges(), vec![(0, 1)]);

        let l13 = prime_graph_of(&GroupSpec::psl2(13)).unwrap();
        let expect = Graph::from_edges(["2", "3", "7", "13"], [("2", "3")]).unwrap();
        assert!(l13.graph.same_labeled(&expect));
        let comps = crate::graphcore::connected_components(&l13.graph);
        assert_eq!(comps.len(), 3);
        assert!(is_isomorphic(&l13.graph, &expect));
    }

    #[test]
    fn product_lcm_closure_matches_walk() {
        let toys = [
            GroupSpec::product(vec![
                GroupSpec::Semidirect { qs: vec![7], ps: vec![3], action: vec![vec![2]] },
                GroupSpec::cyclic(6),
            ]),
            GroupSpec::product(vec![
                GroupSpec::Semidirect { qs: vec![5, 11], ps: vec![2], action: vec![vec![4, 10]] },
                GroupSpec::cyclic(9),
                GroupSpec::cyclic(2),
            ]),
            GroupSpec::product(vec![GroupSpec::psl2(5), GroupSpec::cyclic(7)]),
        ];
        for t in &toys {
            assert!(t.order().unwrap() <= 10_000);
            assert_eq!(element_orders(t).unwrap(), element_orders_brute(t).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn semidirect_edges_follow_action() {
        // C_3 acts on C_7 (2 has order 3 mod 7) and trivially on C_13.
        let spec = GroupSpec::Semidirect { qs: vec![7, 13], ps: vec![3], action: vec![vec![2, 1]] };
        let g = prime_graph_of(&spec).unwrap();
        assert_eq!(g.primes, vec![3, 7, 13]);
        assert!(!g.graph.has_edge(0, 1));
        assert!(g.graph.has_edge(0, 2));
        assert!(g.graph.has_edge(1, 2));
    }
}
