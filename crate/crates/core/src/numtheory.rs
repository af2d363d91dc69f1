//! Integer kernels: prime parts, Hall parts, multiplicative orders and
//! geometric sums modulo `n`.
//!
//! All residues are canonical representatives in `[0, n)`. Inputs stay at
//! desk scale (well below 2^32), so products are formed in `u128` only where
//! a modulus might exceed 2^32.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1 % n;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    acc
}

/// Canonical residue of a signed integer.
pub fn residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(n as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(residue(e.x as i128, n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(value: u64) -> Self {
        assert!(value >= 1, "factorization of zero");
        let mut factors = Vec::new();
        let mut m = value;
        let mut push = |p: u64, m: &mut u64| {
            let mut e = 0;
            while *m % p == 0 {
                *m /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(2, &mut m);
        push(3, &mut m);
        // 6k +- 1 wheel
        let mut d = 5;
        while d * d <= m {
            push(d, &mut m);
            push(d + 2, &mut m);
            d += 6;
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Factorization { value, factors }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn prime_power(&self, p: u64) -> u64 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(1, |&(q, e)| q.pow(e))
    }
}

/// Set of prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    Factorization::of(n).primes().collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let f = Factorization::of(n);
    let mut out = vec![1u64];
    for &(p, e) in &f.factors {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for idx in 0..len {
                out.push(out[idx] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    Factorization::of(n)
        .factors
        .iter()
        .fold(1, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Largest power of the prime `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("p-part of zero"));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    Ok(p_part_unchecked(n, p))
}

#[inline]
pub(crate) fn p_part_unchecked(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// Product of the `p`-parts of `n` over `p` in `primes`; the complement is
/// `n / hall_part(n, primes)`.
pub fn hall_part(n: u64, primes: &[u64]) -> u64 {
    let mut seen: Vec<u64> = primes.iter().copied().filter(|&p| p > 1).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.into_iter().map(|p| p_part_unchecked(n, p)).product()
}

/// Hall part of `n` for the primes accepted by `keep`.
pub(crate) fn hall_part_by(n: u64, mut keep: impl FnMut(u64) -> bool) -> u64 {
    Factorization::of(n)
        .factors
        .iter()
        .filter(|&&(p, _)| keep(p))
        .map(|&(p, e)| p.pow(e))
        .product()
}

/// Multiplicative order of `b` modulo `m`; `mult_order(b, 1) == 1`.
pub fn mult_order(b: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    if m == 1 {
        return Ok(1);
    }
    let b = b % m;
    if gcd(b, m) != 1 {
        return Err(Error::invalid(format!("gcd({b}, {m}) != 1")));
    }
    let mut t = euler_phi(m);
    for q in prime_divisors(t) {
        while t % q == 0 && pow_mod(b, t / q, m) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// Order of the residue `x` in the additive group `Z_n`.
#[inline]
pub fn additive_order(x: u64, n: u64) -> u64 {
    n / gcd(n, x % n)
}

/// `1 + beta + ... + beta^(m-1)` modulo `n`, without dividing by `beta - 1`.
pub fn sigma_mod(beta: u64, m: u64, n: u64) -> u64 {
    sigma_pow_mod(beta, m, n).0
}

/// Returns `(sigma(beta, m), beta^m)` modulo `n`.
pub(crate) fn sigma_pow_mod(beta: u64, m: u64, n: u64) -> (u64, u64) {
    if n == 1 {
        return (0, 0);
    }
    let beta = beta % n;
    let (mut sigma, mut power) = (0u64, 1 % n);
    if m == 0 {
        return (sigma, power);
    }
    // walk the bits of m from the top; (sigma, power) tracks (sigma(t), beta^t)
    for bit in (0..64 - m.leading_zeros()).rev() {
        // t -> 2t
        sigma = mul_mod(sigma, (1 + power) % n, n);
        power = mul_mod(power, power, n);
        if (m >> bit) & 1 == 1 {
            // 2t -> 2t + 1
            sigma = (sigma + power) % n;
            power = mul_mod(power, beta, n);
        }
    }
    (sigma, power)
}

/// The `r`-part of `n^m - 1` for a prime `r` dividing `n - 1`.
pub fn lifted_power_p_part(n: i64, m: u64, r: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("exponent must be positive"));
    }
    if !is_prime(r) {
        return Err(Error::invalid(format!("{r} is not prime")));
    }
    if n == 1 || (n == -1 && m % 2 == 0) {
        return Err(Error::invalid("n^m - 1 vanishes"));
    }
    let n_minus = (n as i128 - 1).unsigned_abs() as u64;
    if n_minus % r != 0 {
        return Err(Error::invalid(format!("{r} does not divide {n} - 1")));
    }
    let m_r = p_part_unchecked(m, r);
    if r == 2 && m % 2 == 0 && residue(n as i128, 4) == 3 {
        let n_plus = (n as i128 + 1).unsigned_abs() as u64;
        Ok(p_part_unchecked(n_plus, 2) * m_r)
    } else {
        Ok(p_part_unchecked(n_minus, r) * m_r)
    }
}

/// Solves the system `x = r_t (mod m_t)` for pairwise coprime moduli.
pub(crate) fn crt(parts: &[(u64, u64)]) -> u64 {
    let mut x: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in parts {
        if m == 1 {
            continue;
        }
        // x + modulus * t = r (mod m)
        let inv = inv_mod(modulus % m, m).expect("moduli must be coprime");
        let diff = residue(r as i128 - x as i128, m);
        let t = mul_mod(diff, inv, m);
        x += modulus * t;
        modulus *= m;
        x %= modulus;
    }
    x
}
