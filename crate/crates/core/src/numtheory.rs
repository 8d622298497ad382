//! Elementary number theory on machine integers.
//!
//! Everything here targets desk-scale inputs (n up to about 10^6), so
//! factorization is plain trial division. Set-valued results are sorted.

use num_integer::Integer;

use crate::error::{domain, Result};

/// Canonical factorization `p_1^k_1 ... p_l^k_l` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime-power components `p^k`, in factor order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().iter().product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k == 1)
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return domain(format!("factorize requires n >= 2, got {n}"));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

pub fn is_prime(n: u64) -> bool {
    match n {
        0 | 1 => false,
        _ => factorize(n).map(|f| f.factors == [(n, 1)]).unwrap_or(false),
    }
}

/// `n = p^k` for a single prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n).ok()?;
    match f.factors.as_slice() {
        &[pk] => Some(pk),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let f = factorize(n).expect("n >= 2");
    f.factors
        .iter()
        .map(|&(p, k)| (p - 1) * p.pow(k - 1))
        .product()
}

pub fn mobius(n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let f = factorize(n).expect("n >= 2");
    if f.is_squarefree() {
        if f.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i32> {
    if p % 2 == 0 || !is_prime(p) {
        return domain(format!("legendre symbol needs an odd prime, got {p}"));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u64)
}

/// `U(n)`: residues in `[1, n-1]` coprime to `n`.
pub fn units_mod(n: u64) -> Vec<u64> {
    (1..n).filter(|u| u.gcd(&n) == 1).collect()
}

/// `Q_n`: squares of units modulo `n`, found by squaring every unit.
pub fn square_units(n: u64) -> Vec<u64> {
    let mut q: Vec<u64> = units_mod(n)
        .into_iter()
        .map(|u| ((u as u128 * u as u128) % n as u128) as u64)
        .collect();
    q.sort_unstable();
    q.dedup();
    q
}

/// `T_n = Q_n ∪ (-Q_n)`.
pub fn signed_square_units(n: u64) -> Vec<u64> {
    let q = square_units(n);
    let mut t: Vec<u64> = q.iter().flat_map(|&x| [x, (n - x) % n]).collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// Whether `-1` is a square of a unit modulo `p^k`.
pub fn minus_one_is_square(p: u64, k: u32) -> bool {
    (p == 2 && k == 1) || (p % 2 == 1 && p % 4 == 1)
}

/// Chinese remaindering over pairwise coprime moduli.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<u64> {
    let mut value = 0u128;
    let mut modulus = 1u128;
    for &(a, m) in residues {
        if m == 0 {
            return domain("crt modulus must be positive");
        }
        if (modulus as u64).gcd(&m) != 1 {
            return domain(format!("crt moduli not coprime: {m} against {modulus}"));
        }
        let m128 = m as u128;
        // value + modulus * s ≡ a (mod m)
        let inv = inverse_mod((modulus % m128) as u64, m).expect("coprime") as u128;
        let delta = ((a as u128 % m128) + m128 - value % m128) % m128;
        let s = delta * inv % m128;
        value += modulus * s;
        modulus *= m128;
    }
    Ok(value as u64)
}

/// Splits `m = s^2 d` with `d` squarefree.
pub fn squarefree_decompose(m: u64) -> (u64, u64) {
    if m < 2 {
        return (1, m.max(1));
    }
    let f = factorize(m).expect("m >= 2");
    f.factors.iter().fold((1, 1), |(s, d), &(p, k)| {
        (s * p.pow(k / 2), if k % 2 == 1 { d * p } else { d })
    })
}
