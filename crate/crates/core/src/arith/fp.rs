use std::fmt;

use rand::Rng;

use super::int::Int;
use super::ring::{Field, Ring};
use crate::error::ArithError;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo prime `p`; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
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

/// Uniform prime from `[lo, hi]` by rejection sampling.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> Result<u64, ArithError> {
    if lo > hi {
        return Err(ArithError::EmptyPrimeInterval { lo, hi });
    }
    // Bounded attempts keep a prime-free interval from looping forever.
    let width = hi - lo + 1;
    let attempts = 4096 * (64 - width.leading_zeros() as u64 + 1);
    for _ in 0..attempts {
        let c = rng.random_range(lo..=hi);
        if is_prime(c) {
            return Ok(c);
        }
    }
    if (lo..=hi).any(is_prime) {
        loop {
            let c = rng.random_range(lo..=hi);
            if is_prime(c) {
                return Ok(c);
            }
        }
    }
    Err(ArithError::EmptyPrimeInterval { lo, hi })
}

/// A certified prime modulus, used to mint field elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp { v: (v as i128).rem_euclid(self.p as i128) as u64, p: self.p }
    }

    pub fn from_u64(&self, v: u64) -> Fp {
        Fp { v: v % self.p, p: self.p }
    }

    pub fn zero(&self) -> Fp {
        Fp { v: 0, p: self.p }
    }

    pub fn one(&self) -> Fp {
        Fp { v: 1 % self.p, p: self.p }
    }

    pub fn elems(&self, vs: &[i64]) -> Vec<Fp> {
        vs.iter().map(|&v| self.elem(v)).collect()
    }
}

/// Element of a prime field; the modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    #[inline]
    pub fn value(&self) -> u64 {
        self.v
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }

    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: add_mod(self.v, rhs.v, self.p), p: self.p }
    }

    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: sub_mod(self.v, rhs.v, self.p), p: self.p }
    }

    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { v: mul_mod(self.v, rhs.v, self.p), p: self.p }
    }

    fn neg(&self) -> Self {
        Fp { v: sub_mod(0, self.v, self.p), p: self.p }
    }

    fn from_int(&self, v: &Int) -> Self {
        Fp { v: v.rem_euclid_u64(self.p), p: self.p }
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Field::div(self, rhs)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(PrimeField::new(21).is_err());
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(19).unwrap();
        let a = f.elem(-4);
        assert_eq!(a.value(), 15);
        assert_eq!(a.mul(&a.inv().unwrap()), f.one());
        assert_eq!(f.zero().inv(), None);
        assert_eq!(f.elem(3).pow(18), f.one());
    }

    #[test]
    fn sampled_primes_in_range() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_prime(&mut rng, 100_000, 1_000_000).unwrap();
            assert!(is_prime(p) && (100_000..=1_000_000).contains(&p));
        }
        assert!(random_prime(&mut rng, 24, 28).is_err());
    }
}
