//! Integer routines: primality, factorization, power-freeness, prime search
//! in residue classes, and the cube-free profile of PSL(2,q).

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit for [`dirichlet_prime`] searches.
pub const DIRICHLET_BOUND: u64 = 1_000_000_000;

const TRIAL_LIMIT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the first twelve prime bases are enough for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization with primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// The product, or `None` on 64-bit overflow.
    pub fn value(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if sieve[i] {
                out.push(i as u64);
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        out
    })
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, m) = (2u64, 128u64);
    let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = (1..)
        .find_map(|c| pollard_brent(n, c))
        .expect("rho finds a factor of a composite");
    split_large(d, out);
    split_large(n / d, out);
}

/// Complete factorization: trial division up to 10^6, then Pollard rho.
/// `factorize(1)` and `factorize(0)` are empty.
pub fn factorize(mut n: u64) -> Factorization {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return Factorization(out);
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
            if is_prime(n) {
                break;
            }
        }
    }
    if n > 1 {
        let mut rest = Vec::new();
        split_large(n, &mut rest);
        rest.sort_unstable();
        for q in rest {
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
    }
    Factorization(out)
}

/// Distinct prime divisors.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).primes().collect()
}

/// Product of the distinct prime divisors.
pub fn radical(n: u64) -> u64 {
    factorize(n).primes().product()
}

/// True iff no prime appears in `n` with exponent `e` or more.
pub fn is_nth_power_free(n: u64, e: u32) -> bool {
    factorize(n).max_exponent() < e
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in &factorize(n).0 {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(k).collect()
}

/// All primes `p < n`.
pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| is_prime(p)).collect()
}

/// Product of the first `k` primes, `None` on overflow.
pub fn primorial(k: usize) -> Option<u64> {
    first_primes(k).into_iter().try_fold(1u64, |a, p| a.checked_mul(p))
}

/// Smallest prime `p > lower` with `p ≡ residue (mod modulus)` and `p` not in
/// `avoid`. Gives up past [`DIRICHLET_BOUND`].
pub fn dirichlet_prime(modulus: u64, residue: u64, avoid: &BTreeSet<u64>, lower: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let r = residue % modulus;
    if gcd(r, modulus) != 1 {
        return Err(Error::Precondition(format!("residue {residue} is not a unit mod {modulus}")));
    }
    let exhausted = || Error::DirichletExhausted { modulus, residue, bound: DIRICHLET_BOUND };
    // first candidate > lower in the class
    let start = lower.checked_add(1).ok_or_else(exhausted)?;
    let mut c = start + (r + modulus - start % modulus) % modulus;
    while c <= DIRICHLET_BOUND {
        if is_prime(c) && !avoid.contains(&c) {
            return Ok(c);
        }
        c = c.checked_add(modulus).ok_or_else(exhausted)?;
    }
    Err(exhausted())
}

/// Shape of the prime graph of PSL(2,q) when its order is cube-free:
/// `m` primes divide (q−1)/2 and `n` primes divide (q+1)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PslProfile {
    pub q: u64,
    pub m: usize,
    pub n: usize,
}

impl PslProfile {
    /// True iff `{m, n}` equals `{a, b}` as a multiset.
    pub fn matches(&self, a: usize, b: usize) -> bool {
        (self.m, self.n) == (a, b) || (self.m, self.n) == (b, a)
    }

    pub fn minus_half(&self) -> u64 {
        (self.q - 1) / 2
    }

    pub fn plus_half(&self) -> u64 {
        (self.q + 1) / 2
    }
}

pub fn psl2_cubefree_profile(q: u64) -> Option<PslProfile> {
    if q < 5 || !is_prime(q) || !matches!(q % 8, 3 | 5) {
        return None;
    }
    if !is_nth_power_free(q - 1, 3) || !is_nth_power_free(q + 1, 3) {
        return None;
    }
    Some(PslProfile {
        q,
        m: prime_divisors((q - 1) / 2).len(),
        n: prime_divisors((q + 1) / 2).len(),
    })
}
