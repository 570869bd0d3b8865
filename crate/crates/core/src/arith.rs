//! Elementary number theory: sieve, factorization, prime sums.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Sieve limit; orders arising at desk scale are far below this squared.
pub const SIEVE_LIMIT: usize = 1_000_000;

struct Sieve {
    /// Smallest prime factor of each index (0 and 1 map to 0).
    spf: Vec<u32>,
    primes: Vec<u64>,
}

fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        let mut primes = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                let ip = i as u64 * p;
                if p > si || ip > SIEVE_LIMIT as u64 {
                    break;
                }
                spf[ip as usize] = p as u32;
            }
        }
        Sieve { spf, primes }
    })
}

/// Primes up to the sieve limit, ascending.
pub fn primes() -> &'static [u64] {
    &sieve().primes
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let ps = primes();
    if count <= ps.len() {
        return ps[..count].to_vec();
    }
    let mut out = ps.to_vec();
    let mut c = *out.last().unwrap() + 2;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += 2;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if (n as usize) <= SIEVE_LIMIT {
        return sieve().spf[n as usize] as u64 == n;
    }
    factorize(n).map(|f| f.factors.len() == 1 && f.factors[0].1 == 1).unwrap_or(false)
}

/// Prime factorization `value = prod p_i^{n_i}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
    pub value: u64,
}

impl Factorization {
    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The maximal prime powers `p^{n_p}` exactly dividing the value.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Recomputes the product of the prime powers.
    pub fn reconstruct(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// Factorizes `n` by sieve lookup below the limit and trial division above it.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::OutOfRange("cannot factorize 0".into()));
    }
    let s = sieve();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let push = |p: u64, factors: &mut Vec<(u64, u32)>| match factors.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => factors.push((p, 1)),
    };
    if rest as usize > SIEVE_LIMIT {
        for &p in &s.primes {
            if p * p > rest {
                break;
            }
            while rest % p == 0 {
                push(p, &mut factors);
                rest /= p;
            }
            if rest as usize <= SIEVE_LIMIT {
                break;
            }
        }
        if rest as usize > SIEVE_LIMIT {
            let mut d = *s.primes.last().unwrap() + 2;
            while d.saturating_mul(d) <= rest {
                while rest % d == 0 {
                    push(d, &mut factors);
                    rest /= d;
                }
                d += 2;
            }
            if rest > 1 && rest as usize > SIEVE_LIMIT {
                push(rest, &mut factors);
                rest = 1;
            }
        }
    }
    while rest > 1 {
        let p = s.spf[rest as usize] as u64;
        push(p, &mut factors);
        rest /= p;
    }
    Ok(Factorization { factors, value: n })
}

/// Number of distinct prime divisors of every integer in `0..=n`.
pub fn omega_table(n: usize) -> Vec<u8> {
    let mut omega = vec![0u8; n + 1];
    for p in 2..=n {
        if omega[p] == 0 {
            let mut k = p;
            while k <= n {
                omega[k] += 1;
                k += p;
            }
        }
    }
    omega
}

/// Sum of the first `k + 1` primes: the smallest degree in which `Sym(m)`
/// has an element without a regular cycle on k-sets.
pub fn nk_threshold(k: u64) -> u64 {
    first_primes(k as usize + 1).iter().sum()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, lcm)
}
