//! `GF(p^d)` by polynomial arithmetic with exp/log tables.
//!
//! An element `c_0 + c_1 x + ... + c_(d-1) x^(d-1)` is encoded as the integer
//! `c_0 + c_1 p + ... + c_(d-1) p^(d-1)`, so the prime field sits at codes
//! `0..p` and addition is digitwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors};

/// Largest field order handled.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteField {
    pub p: u64,
    pub d: u32,
    /// Low-to-high coefficients of the monic modulus, leading 1 included.
    pub modulus: Vec<u64>,
    pub primitive: u32,
    #[serde(skip)]
    exp_table: Vec<u32>,
    #[serde(skip)]
    log_table: Vec<u32>,
}

fn digits(mut code: u64, p: u64, d: usize) -> Vec<u64> {
    let mut out = vec![0; d];
    for c in out.iter_mut() {
        *c = code % p;
        code /= p;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m` over `F_p`, low-to-high coefficients.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (t, &c) in m[..dm].iter().enumerate() {
                r[off + t] = (r[off + t] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0; a.len() + b.len()];
    for (s, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (t, &y) in b.iter().enumerate() {
            prod[s + t] = (prod[s + t] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Irreducibility by trial division by every monic polynomial of degree at
/// most `deg / 2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for dd in 1..=deg / 2 {
        for code in 0..p.pow(dd as u32) {
            let mut f = digits(code, p, dd);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `d` whose coefficient tuple
/// `(c_0, ..., c_(d-1))` is lexicographically smallest.
fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
    let q = p.pow(d as u32);
    for rank in 0..q {
        // c_0 is the most significant position in the order
        let mut coeffs = digits(rank, p, d);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(p: u64, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::ResourceLimit(format!("{p}^{d} exceeds {MAX_ORDER}")))?;
        let du = d as usize;
        let modulus = smallest_irreducible(p, du);
        let mul = |a: u64, b: u64| {
            undigits(&poly_mul_mod(&digits(a, p, du), &digits(b, p, du), &modulus, p), p)
        };
        let pow = |mut base: u64, mut e: u64| {
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = q - 1;
        let cofactors: Vec<u64> = prime_divisors(order).into_iter().map(|r| order / r).collect();
        let primitive = (1..q)
            .find(|&g| cofactors.iter().all(|&c| pow(g, c) != 1))
            .expect("the multiplicative group is cyclic");

        let mut exp_table = Vec::with_capacity(order as usize);
        let mut log_table = vec![u32::MAX; q as usize];
        let mut cur = 1;
        for t in 0..order {
            exp_table.push(cur as u32);
            log_table[cur as usize] = t as u32;
            cur = mul(cur, primitive);
        }
        debug_assert_eq!(cur, 1);
        Ok(FiniteField { p, d, modulus, primitive: primitive as u32, exp_table, log_table })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.d)
    }

    /// `primitive^t`.
    pub fn exp(&self, t: u64) -> u32 {
        self.exp_table[(t % (self.order() - 1)) as usize]
    }

    /// Discrete logarithm of a non-zero element.
    pub fn log(&self, x: u32) -> u64 {
        assert!(x != 0, "log of zero");
        self.log_table[x as usize] as u64
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp(self.log(a) + self.log(b))
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.exp(self.log(x) * self.p)
        }
    }

    fn digitwise(&self, mut a: u32, mut b: u32, f: impl Fn(u64, u64) -> u64) -> u32 {
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.d {
            let p = self.p as u32;
            out += f((a % p) as u64, (b % p) as u64) * scale;
            a /= p;
            b /= p;
            scale *= self.p;
        }
        out as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        assert_eq!(f9.primitive, 4);
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!((f5.modulus.clone(), f5.primitive), (vec![0, 1], 2));
        let f16 = FiniteField::new(2, 4).unwrap();
        assert_eq!(f16.modulus, vec![1, 0, 0, 1, 1]);
        assert_eq!(f16.exp(15), 1);
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 17).is_err());
    }

    #[test]
    fn tables_are_inverse() {
        let f = FiniteField::new(3, 3).unwrap();
        for x in 1..27 {
            assert_eq!(f.exp(f.log(x)), x);
        }
        for x in 0..27 {
            assert_eq!(f.sub(f.add(x, 13), 13), x);
            assert_eq!(f.frobenius(f.frobenius(f.frobenius(x))), x);
        }
    }
}
