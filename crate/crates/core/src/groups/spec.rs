use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, pow_mod};

/// Largest group order the enumerating oracle will walk.
pub const ORDER_CAP: u64 = 20_000_000;

/// Largest field size for PSL(2,q) matrix enumeration.
pub const PSL2_Q_CAP: u64 = 31;

/// A finite group the oracle can enumerate.
///
/// `Semidirect` is `U ⋊ T` with `U = ∏ Z_{qs[k]}` and `T = ∏ Z_{ps[j]}`; the
/// generator of `Z_{ps[j]}` multiplies coordinate `k` of `U` by
/// `action[j][k]` modulo `qs[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic { n: u64 },
    Product { factors: Vec<GroupSpec> },
    Semidirect { qs: Vec<u64>, ps: Vec<u64>, action: Vec<Vec<u64>> },
    Psl2 { q: u64 },
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    pub fn psl2(q: u64) -> Self {
        GroupSpec::Psl2 { q }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGroup(m));
        match self {
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return bad("cyclic group of order 0".into());
                }
            }
            GroupSpec::Product { factors } => {
                for f in factors {
                    f.validate()?;
                }
            }
            GroupSpec::Semidirect { qs, ps, action } => {
                let mut seen = std::collections::BTreeSet::new();
                for &p in qs.iter().chain(ps) {
                    if !is_prime(p) {
                        return bad(format!("{p} is not prime"));
                    }
                    if !seen.insert(p) {
                        return bad(format!("prime {p} repeated"));
                    }
                }
                if action.len() != ps.len() || action.iter().any(|row| row.len() != qs.len()) {
                    return bad(format!("action must be {}x{}", ps.len(), qs.len()));
                }
                for (j, row) in action.iter().enumerate() {
                    for (k, &a) in row.iter().enumerate() {
                        let (p, q) = (ps[j], qs[k]);
                        if a == 0 || a >= q {
                            return bad(format!("action[{j}][{k}] = {a} is not a unit mod {q}"));
                        }
                        if a != 1 && multiplicative_order(a, q) != p {
                            return bad(format!("action[{j}][{k}] = {a} does not have order {p} mod {q}"));
                        }
                    }
                }
            }
            GroupSpec::Psl2 { q } => {
                if *q < 5 || !is_prime(*q) {
                    return bad(format!("PSL(2,{q}) needs a prime q >= 5"));
                }
            }
        }
        Ok(())
    }

    /// Group order, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupSpec::Cyclic { n } => Some(*n as u128),
            GroupSpec::Product { factors } => {
                factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.order()?))
            }
            GroupSpec::Semidirect { qs, ps, .. } => {
                qs.iter().chain(ps).try_fold(1u128, |acc, &p| acc.checked_mul(p as u128))
            }
            GroupSpec::Psl2 { q } => {
                let q = *q as u128;
                Some(q * (q * q - 1) / 2)
            }
        }
    }

    /// True iff the action entry is a valid nontrivial unit; exposed for
    /// callers that build specs by hand.
    pub fn acts_nontrivially(a: u64, p: u64, q: u64) -> bool {
        a != 1 && pow_mod(a, p, q) == 1
    }
}
