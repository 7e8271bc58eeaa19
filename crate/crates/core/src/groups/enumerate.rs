//! Element-order enumeration using nothing but the group law.

use std::collections::BTreeSet;

use smallvec::SmallVec;

use super::spec::{GroupSpec, ORDER_CAP, PSL2_Q_CAP};
use crate::error::{Error, Result};
use crate::numtheory::gcd;

pub(crate) type Elem = SmallVec<[u64; 8]>;

/// A group whose elements are coded as points of a mixed-radix index space.
/// Not every index need be an element (PSL(2,q) uses a sparse encoding).
enum Part {
    Cyclic(u64),
    Semidirect {
        qs: Vec<u64>,
        ps: Vec<u64>,
        /// `pow[j][k][t] = action[j][k]^t mod qs[k]`
        pow: Vec<Vec<Vec<u64>>>,
    },
    Psl2(u64),
}

impl Part {
    fn width(&self) -> usize {
        match self {
            Part::Cyclic(_) => 1,
            Part::Semidirect { qs, ps, .. } => qs.len() + ps.len(),
            Part::Psl2(_) => 4,
        }
    }

    fn radices(&self) -> Vec<u64> {
        match self {
            Part::Cyclic(n) => vec![*n],
            Part::Semidirect { qs, ps, .. } => qs.iter().chain(ps).copied().collect(),
            Part::Psl2(q) => vec![*q; 4],
        }
    }

    fn identity(&self, out: &mut Elem) {
        match self {
            Part::Psl2(_) => out.extend([1, 0, 0, 1]),
            _ => out.extend(std::iter::repeat(0).take(self.width())),
        }
    }

    fn is_member(&self, x: &[u64]) -> bool {
        match self {
            Part::Psl2(q) => {
                let q = *q;
                let det = (x[0] * x[3] + q * q - x[1] * x[2] % q) % q;
                det == 1 && psl_canonical(q, x) == x
            }
            _ => true,
        }
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut Elem) {
        match self {
            Part::Cyclic(n) => out.push((a[0] + b[0]) % n),
            Part::Semidirect { qs, ps, pow } => {
                let nq = qs.len();
                let (ua, ta) = a.split_at(nq);
                let (ub, tb) = b.split_at(nq);
                for (k, &q) in qs.iter().enumerate() {
                    let mut m = 1;
                    for (j, &t) in ta.iter().enumerate() {
                        m = m * pow[j][k][t as usize] % q;
                    }
                    out.push((ua[k] + m * ub[k]) % q);
                }
                for (j, &p) in ps.iter().enumerate() {
                    out.push((ta[j] + tb[j]) % p);
                }
            }
            Part::Psl2(q) => {
                let q = *q;
                let m = [
                    (a[0] * b[0] + a[1] * b[2]) % q,
                    (a[0] * b[1] + a[1] * b[3]) % q,
                    (a[2] * b[0] + a[3] * b[2]) % q,
                    (a[2] * b[1] + a[3] * b[3]) % q,
                ];
                out.extend(psl_canonical(q, &m));
            }
        }
    }
}

/// The lexicographically smaller of `M` and `−M`.
fn psl_canonical(q: u64, m: &[u64]) -> [u64; 4] {
    let a = [m[0], m[1], m[2], m[3]];
    let neg = a.map(|x| (q - x) % q);
    a.min(neg)
}

/// A direct product of enumerable parts.
pub(crate) struct Enumerator {
    parts: Vec<Part>,
    radices: Vec<u64>,
}

impl Enumerator {
    pub(crate) fn new(spec: &GroupSpec) -> Result<Enumerator> {
        spec.validate()?;
        let order = spec.order().unwrap_or(u128::MAX);
        if order > ORDER_CAP as u128 {
            return Err(Error::OrderCapExceeded { order, cap: ORDER_CAP });
        }
        let mut parts = Vec::new();
        flatten(spec, &mut parts)?;
        let radices = parts.iter().flat_map(Part::radices).collect();
        Ok(Enumerator { parts, radices })
    }

    fn space(&self) -> u64 {
        self.radices.iter().product()
    }

    fn decode(&self, mut i: u64, out: &mut Elem) {
        out.clear();
        for &r in self.radices.iter().rev() {
            out.push(i % r);
            i /= r;
        }
        out.reverse();
    }

    fn encode(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.radices).fold(0, |acc, (&c, &r)| acc * r + c)
    }

    fn identity(&self) -> Elem {
        let mut e = Elem::new();
        for p in &self.parts {
            p.identity(&mut e);
        }
        e
    }

    fn is_member(&self, x: &[u64]) -> bool {
        let mut off = 0;
        self.parts.iter().all(|p| {
            let w = p.width();
            let ok = p.is_member(&x[off..off + w]);
            off += w;
            ok
        })
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        let mut out = Elem::new();
        let mut off = 0;
        for p in &self.parts {
            let w = p.width();
            p.mul(&a[off..off + w], &b[off..off + w], &mut out);
            off += w;
        }
        out
    }

    /// Order of `x` by repeated multiplication.
    #[cfg(test)]
    pub(crate) fn order_of(&self, x: &[u64]) -> u64 {
        let id = self.identity();
        let mut y: Elem = x.into();
        let mut k = 1;
        while y != id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    /// Walks every element, collecting element orders. Each unvisited `x`
    /// has its cyclic subgroup traced once: if `x` has order `k` then `x^i`
    /// has order `k / gcd(i, k)`, and all those powers are marked visited.
    /// Returns the eo-set and the number of elements seen.
    pub(crate) fn orders(&self) -> (BTreeSet<u64>, u64) {
        let space = self.space();
        let mut visited = vec![0u64; (space as usize).div_ceil(64)];
        let mark = |v: &mut Vec<u64>, i: u64| v[(i / 64) as usize] |= 1 << (i % 64);
        let seen = |v: &Vec<u64>, i: u64| v[(i / 64) as usize] >> (i % 64) & 1 == 1;
        let id = self.identity();
        let mut eo = BTreeSet::new();
        let mut count = 0u64;
        let mut x = Elem::new();
        let mut powers: Vec<u64> = Vec::new();
        for i in 0..space {
            if seen(&visited, i) {
                continue;
            }
            self.decode(i, &mut x);
            if !self.is_member(&x) {
                continue;
            }
            powers.clear();
            let mut y = x.clone();
            loop {
                powers.push(self.encode(&y));
                if y == id {
                    break;
                }
                y = self.mul(&y, &x);
            }
            let k = powers.len() as u64;
            for (idx, &code) in powers.iter().enumerate() {
                if !seen(&visited, code) {
                    mark(&mut visited, code);
                    count += 1;
                    let e = idx as u64 + 1;
                    eo.insert(k / gcd(e, k));
                }
            }
        }
        (eo, count)
    }

    /// One order computation per element, no power sharing. Slower; used to
    /// cross-check [`Enumerator::orders`].
    #[cfg(test)]
    pub(crate) fn orders_naive(&self) -> (BTreeSet<u64>, u64) {
        let mut eo = BTreeSet::new();
        let mut count = 0;
        let mut x = Elem::new();
        for i in 0..self.space() {
            self.decode(i, &mut x);
            if self.is_member(&x) {
                eo.insert(self.order_of(&x));
                count += 1;
            }
        }
        (eo, count)
    }
}

fn flatten(spec: &GroupSpec, parts: &mut Vec<Part>) -> Result<()> {
    match spec {
        GroupSpec::Cyclic { n } => parts.push(Part::Cyclic(*n)),
        GroupSpec::Product { factors } => {
            for f in factors {
                flatten(f, parts)?;
            }
        }
        GroupSpec::Semidirect { qs, ps, action } => {
            let pow = ps
                .iter()
                .enumerate()
                .map(|(j, &p)| {
                    qs.iter()
                        .enumerate()
                        .map(|(k, &q)| {
                            let mut row = Vec::with_capacity(p as usize);
                            let mut x = 1;
                            for _ in 0..p {
                                row.push(x);
                                x = x * action[j][k] % q;
                            }
                            row
                        })
                        .collect()
                })
                .collect();
            parts.push(Part::Semidirect { qs: qs.clone(), ps: ps.clone(), pow });
        }
        GroupSpec::Psl2 { q } => {
            if *q > PSL2_Q_CAP {
                return Err(Error::InvalidGroup(format!(
                    "PSL(2,{q}) exceeds the enumeration cap q <= {PSL2_Q_CAP}"
                )));
            }
            parts.push(Part::Psl2(*q));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_orders_both_ways() {
        let e = Enumerator::new(&GroupSpec::Semidirect { qs: vec![3], ps: vec![2], action: vec![vec![2]] }).unwrap();
        assert_eq!(e.orders(), (BTreeSet::from([1, 2, 3]), 6));
        assert_eq!(e.orders_naive(), (BTreeSet::from([1, 2, 3]), 6));
    }

    #[test]
    fn psl2_counts() {
        for q in [5u64, 7, 11] {
            let e = Enumerator::new(&GroupSpec::Psl2 { q }).unwrap();
            let (fast, n) = e.orders();
            assert_eq!(n, q * (q * q - 1) / 2);
            assert_eq!(e.orders_naive(), (fast, n));
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            Enumerator::new(&GroupSpec::Cyclic { n: ORDER_CAP + 1 }),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(Enumerator::new(&GroupSpec::Psl2 { q: 37 }).is_err());
    }

    #[test]
    fn mixed_product_matches_naive() {
        let spec = GroupSpec::product(vec![
            GroupSpec::Semidirect { qs: vec![7], ps: vec![3], action: vec![vec![2]] },
            GroupSpec::cyclic(4),
        ]);
        let e = Enumerator::new(&spec).unwrap();
        assert_eq!(e.orders(), e.orders_naive());
        assert_eq!(e.orders().1, 84);
    }
}
