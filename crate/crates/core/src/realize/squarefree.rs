use std::collections::BTreeSet;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Realization;
use crate::error::{Error, Result};
use crate::graphcore::{components_active, is_bipartite, Graph};
use crate::groups::GroupSpec;
use crate::numtheory::{dirichlet_prime, pow_mod};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarefreeOptions {
    /// Never use the prime 2.
    pub odd_only: bool,
    /// Primes that must not be used.
    pub avoid: BTreeSet<u64>,
    /// Shuffles the order in which vertices receive primes.
    pub seed: Option<u64>,
}

/// First `g^((q−1)/p) mod q`, `g = 2, 3, …`, different from 1: a unit of
/// order exactly `p` when `p | q − 1`.
pub(crate) fn unit_of_order(p: u64, q: u64) -> u64 {
    (2..q)
        .map(|g| pow_mod(g, (q - 1) / p, q))
        .find(|&a| a != 1)
        .expect("q ≡ 1 mod p has units of order p")
}

/// Square-free group `U ⋊ T` whose prime graph is `f`.
///
/// The complement is 2-colored; in each component the smaller side (ties:
/// the side of the component's first vertex) is red and its edges point to
/// the other side. Red vertices with an arc form `T` (primes `p_j`), all
/// other vertices form `U` (primes `q_k`). Each `q_k ≡ 1` modulo the product
/// of the `p_j` joined to it, and `C_{p_j}` acts fixed-point-freely on
/// `C_{q_k}` exactly along complement edges.
pub fn realize_squarefree(f: &Graph, opts: &SquarefreeOptions) -> Result<Realization> {
    f.check_cap()?;
    let c = f.complement();
    let two = is_bipartite(&c).map_err(|_| Error::Precondition("complement is not bipartite".into()))?;
    let n = c.n();
    let mut red = vec![false; n];
    for comp in components_active(&c, &vec![true; n]) {
        let first = two.colors[comp[0]];
        let same = comp.iter().filter(|&&v| two.colors[v] == first).count();
        let red_color = if same <= comp.len() - same { first } else { 1 - first };
        for &v in &comp {
            red[v] = two.colors[v] == red_color;
        }
    }
    let mut out_verts: Vec<usize> = (0..n).filter(|&v| red[v] && c.degree(v) > 0).collect();
    let mut in_verts: Vec<usize> = (0..n).filter(|&v| !(red[v] && c.degree(v) > 0)).collect();
    if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        out_verts.shuffle(&mut rng);
        in_verts.shuffle(&mut rng);
    }

    let mut used = opts.avoid.clone();
    if opts.odd_only {
        used.insert(2);
    }
    let mut prime = vec![0u64; n];
    for &v in &out_verts {
        let p = dirichlet_prime(1, 0, &used, 1)?;
        used.insert(p);
        prime[v] = p;
    }
    for &v in &in_verts {
        let modulus: u64 = c.neighbors(v).map(|w| prime[w]).product();
        let q = dirichlet_prime(modulus, 1, &used, 1)?;
        used.insert(q);
        prime[v] = q;
    }
    out_verts.sort_unstable();
    in_verts.sort_unstable();

    let spec = if out_verts.is_empty() {
        GroupSpec::product(in_verts.iter().map(|&v| GroupSpec::cyclic(prime[v])).collect())
    } else {
        let action = out_verts
            .iter()
            .map(|&j| {
                in_verts
                    .iter()
                    .map(|&k| if c.has_edge(j, k) { unit_of_order(prime[j], prime[k]) } else { 1 })
                    .collect()
            })
            .collect();
        GroupSpec::Semidirect {
            qs: in_verts.iter().map(|&v| prime[v]).collect(),
            ps: out_verts.iter().map(|&v| prime[v]).collect(),
            action,
        }
    };
    spec.validate()?;
    let vertex_primes: IndexMap<String, u64> = (0..n).map(|v| (c.label(v).to_string(), prime[v])).collect();
    Ok(Realization { spec, vertex_primes })
}
