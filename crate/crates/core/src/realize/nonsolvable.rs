use std::collections::BTreeSet;

use indexmap::IndexMap;

use super::{realize_squarefree, Realization, SquarefreeOptions};
use crate::classify::{indices_of, NonSolvableWitness};
use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::groups::GroupSpec;
use crate::numtheory::factorize;

/// Primes of one half of |PSL(2,q)| split into those a shared vertex may
/// take (odd, exponent one) and the rest.
fn split_half(m: u64) -> (Vec<u64>, Vec<u64>) {
    let f = factorize(m);
    let shareable = f.0.iter().filter(|&&(p, e)| p != 2 && e == 1).map(|&(p, _)| p).collect();
    let others = f.0.iter().filter(|&&(p, e)| p == 2 || e != 1).map(|&(p, _)| p).collect();
    (shareable, others)
}

/// Assigns the half's primes: shared vertices take shareable primes first,
/// core vertices take whatever remains.
fn assign_half(
    core: &[String],
    shared: &[String],
    half: u64,
    map: &mut IndexMap<String, u64>,
    cyclics: &mut Vec<u64>,
) -> Result<()> {
    let (shareable, others) = split_half(half);
    if shared.len() > shareable.len() {
        return Err(Error::Precondition(format!(
            "{} shared vertices but only {} eligible primes in {half}",
            shared.len(),
            shareable.len()
        )));
    }
    for (v, &p) in shared.iter().zip(&shareable) {
        map.insert(v.clone(), p);
        cyclics.push(p);
    }
    let rest: Vec<u64> = shareable[shared.len()..].iter().chain(&others).copied().collect();
    if rest.len() != core.len() {
        return Err(Error::Precondition(format!("core side has {} vertices for {} primes", core.len(), rest.len())));
    }
    let mut rest = rest;
    rest.sort_unstable();
    for (v, &p) in core.iter().zip(&rest) {
        map.insert(v.clone(), p);
    }
    Ok(())
}

/// `PSL(2,q) × M × ∏ C_s`: `M` is an odd square-free group realizing the
/// bipartite part with primes outside |PSL(2,q)|, and one central `C_s` per
/// shared vertex.
pub fn realize_cubefree_nonsolvable(f: &Graph, w: &NonSolvableWitness, avoid: &BTreeSet<u64>) -> Result<Realization> {
    w.validate(f)?;
    let q = w.q;
    let mut map: IndexMap<String, u64> = IndexMap::new();
    let mut cyclics = Vec::new();
    map.insert(w.characteristic.clone(), q);
    if w.characteristic_in_s {
        cyclics.push(q);
    }
    assign_half(&w.minus_side, &w.s_minus, (q - 1) / 2, &mut map, &mut cyclics)?;
    assign_half(&w.plus_side, &w.s_plus, (q + 1) / 2, &mut map, &mut cyclics)?;

    let mut factors = vec![GroupSpec::psl2(q)];
    if !w.bipartite_part.is_empty() {
        let part = f.induced_subgraph(&indices_of(f, &w.bipartite_part)?);
        let mut av = avoid.clone();
        for m in [q, (q - 1) / 2, (q + 1) / 2] {
            av.extend(factorize(m).primes());
        }
        let r = realize_squarefree(&part, &SquarefreeOptions { odd_only: true, avoid: av, seed: None })?;
        factors.push(r.spec);
        map.extend(r.vertex_primes);
    }
    factors.extend(cyclics.into_iter().map(GroupSpec::cyclic));
    let vertex_primes = f.labels().iter().map(|l| (l.clone(), map[l])).collect();
    Ok(Realization { spec: GroupSpec::product(factors), vertex_primes })
}
