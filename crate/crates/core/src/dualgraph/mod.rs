//! Common divisor graphs Γ(X), prime vertex graphs Δ(X), and recovery of
//! Δ from Γ by contracting equal closed neighbourhoods and reading the
//! neighbourhood-containment poset.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::numtheory::{divisors, first_primes, gcd, prime_divisors, primes_below};

/// A set of positive integers containing 1 and every divisor of each
/// member. Serialized as a JSON array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct DivisorClosedSet(BTreeSet<u64>);

impl DivisorClosedSet {
    pub fn new(members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let s: BTreeSet<u64> = members.into_iter().collect();
        if s.contains(&0) {
            return Err(Error::InvalidSet("0 is not a positive integer".into()));
        }
        if !s.contains(&1) {
            return Err(Error::InvalidSet("1 is missing".into()));
        }
        if let Some((m, d)) = first_missing_divisor(&s) {
            return Err(Error::InvalidSet(format!("{d} divides {m} but is missing")));
        }
        Ok(DivisorClosedSet(s))
    }

    /// The smallest divisor-closed set containing `members`.
    pub fn closure(members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut s = BTreeSet::from([1]);
        for m in members {
            if m == 0 {
                return Err(Error::InvalidSet("0 is not a positive integer".into()));
            }
            s.extend(divisors(m));
        }
        Ok(DivisorClosedSet(s))
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<u64>> for DivisorClosedSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        DivisorClosedSet::new(v)
    }
}

impl From<DivisorClosedSet> for Vec<u64> {
    fn from(s: DivisorClosedSet) -> Self {
        s.0.into_iter().collect()
    }
}

fn first_missing_divisor(s: &BTreeSet<u64>) -> Option<(u64, u64)> {
    s.iter().find_map(|&m| divisors(m).into_iter().find(|d| !s.contains(d)).map(|d| (m, d)))
}

pub fn is_divisor_closed(x: &BTreeSet<u64>) -> bool {
    !x.contains(&0) && first_missing_divisor(x).is_none()
}

/// Γ(X): vertices `X \ {1}` (labeled by value, increasing), edges between
/// distinct members with a common factor.
pub fn gamma_of(x: &DivisorClosedSet) -> Graph {
    let vs: Vec<u64> = x.0.iter().copied().filter(|&m| m > 1).collect();
    let mut g = Graph::with_vertices(vs.iter().map(u64::to_string)).expect("distinct values");
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if gcd(vs[i], vs[j]) > 1 {
                g.add_edge(i, j).expect("fresh edge");
            }
        }
    }
    g
}

/// Δ(X): the primes dividing members of X, `p–q` joined when `pq` divides
/// some member.
pub fn delta_of(x: &DivisorClosedSet) -> Graph {
    let mut primes = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for &m in &x.0 {
        let ps = prime_divisors(m);
        for (i, &p) in ps.iter().enumerate() {
            primes.insert(p);
            for &q in &ps[i + 1..] {
                pairs.insert((p, q));
            }
        }
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut g = Graph::with_vertices(primes.iter().map(u64::to_string)).expect("distinct primes");
    for (p, q) in pairs {
        g.add_edge_by_label(&p.to_string(), &q.to_string()).expect("known primes");
    }
    g
}

fn closed_neighbourhoods(g: &Graph) -> Vec<BTreeSet<usize>> {
    (0..g.n())
        .map(|v| {
            let mut s: BTreeSet<usize> = g.neighbors(v).collect();
            s.insert(v);
            s
        })
        .collect()
}

/// Vertices grouped by identical closed neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    /// Induced on each class's first vertex.
    pub graph: Graph,
    /// Members of each class, in the order of `graph`'s vertices.
    pub classes: Vec<Vec<String>>,
}

pub fn contract(gamma: &Graph) -> Contraction {
    let nb = closed_neighbourhoods(gamma);
    let mut by_nb: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..gamma.n() {
        let id = *by_nb.entry(&nb[v]).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[id].push(v);
    }
    let reps: Vec<usize> = members.iter().map(|c| c[0]).collect();
    Contraction {
        graph: gamma.induced_subgraph(&reps),
        classes: members
            .iter()
            .map(|c| c.iter().map(|&v| gamma.label(v).to_string()).collect())
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectReason {
    PosetValueInconsistency,
    MissingSubset,
    AdjacencyMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum RecoveryResult {
    Recovered {
        delta: Graph,
        /// Value of each contracted vertex (keyed by its representative).
        values: IndexMap<String, u64>,
        classes: Vec<Vec<String>>,
    },
    Rejected {
        reason: RejectReason,
        /// Contracted vertices where the check failed.
        vertices: Vec<String>,
        /// For `MissingSubset`: the value with no vertex.
        missing: Option<u64>,
        values: IndexMap<String, u64>,
        classes: Vec<Vec<String>>,
    },
}

impl RecoveryResult {
    pub fn is_recovered(&self) -> bool {
        matches!(self, RecoveryResult::Recovered { .. })
    }

    pub fn delta(&self) -> Option<&Graph> {
        match self {
            RecoveryResult::Recovered { delta, .. } => Some(delta),
            RecoveryResult::Rejected { .. } => None,
        }
    }

    pub fn values(&self) -> &IndexMap<String, u64> {
        match self {
            RecoveryResult::Recovered { values, .. } | RecoveryResult::Rejected { values, .. } => values,
        }
    }

    pub fn reason(&self) -> Option<RejectReason> {
        match self {
            RecoveryResult::Recovered { .. } => None,
            RecoveryResult::Rejected { reason, .. } => Some(*reason),
        }
    }
}

/// The neighbourhood-containment poset of a contracted graph with the
/// prime set of each vertex (indices of minimal elements below it).
pub(crate) struct Poset {
    pub leq: Vec<Vec<bool>>,
    pub minimal: Vec<usize>,
    pub primes_below: Vec<BTreeSet<usize>>,
}

pub(crate) fn poset(g: &Graph) -> Poset {
    let nb = closed_neighbourhoods(g);
    let n = g.n();
    let leq: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| nb[u].is_subset(&nb[v])).collect()).collect();
    let minimal: Vec<usize> = (0..n).filter(|&v| (0..n).all(|u| u == v || !leq[u][v])).collect();
    let primes_below = (0..n)
        .map(|v| minimal.iter().enumerate().filter(|(_, &m)| leq[m][v]).map(|(i, _)| i).collect())
        .collect();
    Poset { leq, minimal, primes_below }
}

/// Recovers Δ from a common divisor graph, or rejects it.
///
/// Contract, order the classes by closed-neighbourhood containment, give
/// the minimal classes the first primes, and value every class by the
/// product of the minimal classes below it. Checks, in order: values are
/// distinct and containment matches the order; every prime set minus one
/// prime is again some class's prime set; adjacency equals overlap of prime
/// sets.
pub fn recover_delta(gamma: &Graph) -> RecoveryResult {
    let con = contract(gamma);
    let g = &con.graph;
    let n = g.n();
    let pos = poset(g);
    let primes = first_primes(pos.minimal.len());
    let value = |v: usize| pos.primes_below[v].iter().map(|&i| primes[i]).product::<u64>();
    let values: IndexMap<String, u64> = (0..n).map(|v| (g.label(v).to_string(), value(v))).collect();
    let reject = |reason, vs: Vec<usize>, missing| RecoveryResult::Rejected {
        reason,
        vertices: vs.into_iter().map(|v| g.label(v).to_string()).collect(),
        missing,
        values: values.clone(),
        classes: con.classes.clone(),
    };

    let mut seen: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
    for v in 0..n {
        if let Some(&u) = seen.get(&pos.primes_below[v]) {
            return reject(RejectReason::PosetValueInconsistency, vec![u, v], None);
        }
        seen.insert(&pos.primes_below[v], v);
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && pos.leq[u][v] != pos.primes_below[u].is_subset(&pos.primes_below[v]) {
                return reject(RejectReason::PosetValueInconsistency, vec![u, v], None);
            }
        }
    }

    for v in 0..n {
        let set: Vec<usize> = pos.primes_below[v].iter().copied().collect();
        if set.len() < 2 {
            continue;
        }
        for drop in (0..set.len()).rev() {
            let sub: BTreeSet<usize> = set.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &p)| p).collect();
            if !seen.contains_key(&sub) {
                let missing = sub.iter().map(|&i| primes[i]).product();
                return reject(RejectReason::MissingSubset, vec![v], Some(missing));
            }
        }
    }

    for u in 0..n {
        for v in u + 1..n {
            let overlap = !pos.primes_below[u].is_disjoint(&pos.primes_below[v]);
            if g.has_edge(u, v) != overlap {
                return reject(RejectReason::AdjacencyMismatch, vec![u, v], None);
            }
        }
    }

    let present: BTreeSet<u64> = values.values().copied().collect();
    let mut delta = Graph::with_vertices(primes.iter().map(u64::to_string)).expect("distinct primes");
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if present.contains(&(primes[i] * primes[j])) {
                delta.add_edge(i, j).expect("fresh edge");
            }
        }
    }
    RecoveryResult::Recovered { delta, values, classes: con.classes }
}

/// Deterministic pseudo-random divisor-closed set: up to `max_prime_count`
/// primes not exceeding `max_value`, a random selection of their products
/// up to `max_value`, closed under divisors.
pub fn random_divisor_closed(seed: u64, max_prime_count: usize, max_value: u64) -> Result<DivisorClosedSet> {
    if max_prime_count == 0 || max_value == 0 {
        return Err(Error::Precondition("bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = primes_below(max_value.saturating_add(1).min(1000));
    pool.shuffle(&mut rng);
    let k = rng.gen_range(1..=max_prime_count).min(pool.len());
    let chosen = &pool[..k];
    let mut smooth = vec![1u64];
    for &p in chosen {
        let mut next = Vec::new();
        for &s in &smooth {
            let mut x = s;
            while let Some(y) = x.checked_mul(p).filter(|&y| y <= max_value) {
                next.push(y);
                x = y;
            }
        }
        smooth.extend(next);
    }
    smooth.sort_unstable();
    let keep: Vec<u64> = smooth.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    DivisorClosedSet::closure(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::is_isomorphic;

    fn set(xs: &[u64]) -> DivisorClosedSet {
        DivisorClosedSet::new(xs.iter().copied()).unwrap()
    }

    fn figure2() -> Graph {
        Graph::from_edges(
            ["A", "A'", "B", "C", "D", "E"],
            [
                ("E", "D"), ("E", "B"), ("E", "A'"), ("E", "A"), ("D", "C"),
                ("D", "B"), ("D", "A'"), ("D", "A"), ("A'", "A"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_of(&set(&[1, 2, 3, 6]));
        assert_eq!(g.labels(), &["2", "3", "6"]);
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
        assert!(gamma_of(&set(&[1])).is_empty());
        assert_eq!(gamma_of(&set(&[1, 2, 3, 5])).edge_count(), 0);
    }

    #[test]
    fn delta_examples() {
        let d = delta_of(&set(&[1, 2, 3, 6]));
        assert_eq!(d.edges(), vec![(0, 1)]);
        let d = delta_of(&set(&[1, 2, 3, 5]));
        assert_eq!((d.n(), d.edge_count()), (3, 0));
        let d = delta_of(&set(&[1, 7]));
        assert_eq!((d.n(), d.edge_count()), (1, 0));
    }

    #[test]
    fn divisor_closed_checks() {
        assert!(is_divisor_closed(&BTreeSet::from([1, 2, 3, 6])));
        assert!(!is_divisor_closed(&BTreeSet::from([1, 6])));
        assert!(DivisorClosedSet::new([1, 6]).is_err());
        assert!(DivisorClosedSet::new([2]).is_err());
        let s: DivisorClosedSet = serde_json::from_str("[1,2,4]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,2,4]");
        assert!(serde_json::from_str::<DivisorClosedSet>("[1,4]").is_err());
    }

    #[test]
    fn contraction_examples() {
        let c = contract(&figure2());
        assert_eq!(c.graph.n(), 5);
        assert_eq!(c.classes[0], vec!["A", "A'"]);
        assert!(c.classes[1..].iter().all(|k| k.len() == 1));
        let c = contract(&gamma_of(&set(&[1, 2, 4])));
        assert_eq!(c.graph.n(), 1);
        let p = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(contract(&p).graph, p);
    }

    #[test]
    fn figure2_rejected_missing_subset() {
        let r = recover_delta(&figure2());
        match &r {
            RecoveryResult::Rejected { reason, vertices, missing, values, classes } => {
                assert_eq!(*reason, RejectReason::MissingSubset);
                assert_eq!(vertices, &vec!["D".to_string()]);
                assert_eq!(*missing, Some(10));
                let v: Vec<u64> = ["A", "B", "C", "E", "D"].iter().map(|k| values[*k]).collect();
                assert_eq!(v, vec![2, 3, 5, 6, 30]);
                assert_eq!(classes[0], vec!["A", "A'"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn recovery_examples() {
        let x = set(&[1, 2, 3, 6]);
        let r = recover_delta(&gamma_of(&x));
        assert!(is_isomorphic(r.delta().unwrap(), &delta_of(&x)));
        let three = Graph::with_vertices(["a", "b", "c"]).unwrap();
        let d = recover_delta(&three);
        assert_eq!(d.delta().unwrap().n(), 3);
        assert_eq!(d.delta().unwrap().edge_count(), 0);
        assert!(recover_delta(&Graph::new()).is_recovered());
    }

    #[test]
    fn path_values_collide() {
        // a ≤ b and d ≤ c, so b's prime set equals a's.
        let p = Graph::from_edges(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(recover_delta(&p).reason(), Some(RejectReason::PosetValueInconsistency));
    }

    #[test]
    fn adjacency_mismatch_detected() {
        // In C4 every vertex is minimal, yet neighbours get disjoint primes.
        let c4 = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        match recover_delta(&c4) {
            RecoveryResult::Rejected { reason, vertices, .. } => {
                assert_eq!(reason, RejectReason::AdjacencyMismatch);
                assert_eq!(vertices, vec!["0", "1"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generator_contract() {
        let a = random_divisor_closed(0, 3, 100).unwrap();
        assert!(is_divisor_closed(a.members()));
        assert!(a.members().iter().all(|&m| m <= 100));
        assert_eq!(a, random_divisor_closed(0, 3, 100).unwrap());
        let b = random_divisor_closed(5, 1, 7).unwrap();
        assert!(b.members().iter().all(|&m| m == 1 || prime_divisors(m).len() == 1));
        assert!(random_divisor_closed(1, 0, 10).is_err());
    }
}
