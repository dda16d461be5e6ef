use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::ring::Ring;

/// Arbitrary-precision integer with an inline fast path for values that fit
/// in an `i64`.
///
/// The representation is normalised: `Large` never holds a value that fits
/// in `i64`, so derived equality on the enum would also be correct, but
/// `PartialEq` is written out to keep that invariant local to this module.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Large(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Large(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Large(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Large(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Large(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            Ring::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::from_big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Least nonnegative residue modulo `m > 0`.
    pub fn rem_euclid_u64(&self, m: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(m as i128) as u64,
            Int::Large(b) => {
                let r = b.mod_floor(&BigInt::from(m));
                r.to_u64().expect("residue fits in u64")
            }
        }
    }

    /// Floor division with remainder; `None` when `rhs` is zero.
    pub fn div_rem(&self, rhs: &Int) -> Option<(Int, Int)> {
        if rhs.is_zero() {
            return None;
        }
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if !(*a == i64::MIN && *b == -1) {
                return Some((Int::Small(a / b), Int::Small(a % b)));
            }
        }
        let (q, r) = self.to_big().div_rem(&rhs.to_big());
        Some((Int::from_big(q), Int::from_big(r)))
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Large(a), Int::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => v.hash(state),
            Int::Large(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Large(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::from_big(BigInt::from_str(s)?))
    }
}

impl Ring for Int {
    fn zero_like(&self) -> Self {
        Int::ZERO
    }

    fn one_like(&self) -> Self {
        Int::ONE
    }

    fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    fn add(&self, rhs: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }

    fn sub(&self, rhs: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }

    fn neg(&self) -> Self {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Large(b) => Int::from_big(-(**b).clone()),
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, rhs) {
            if let Some(r) = a.checked_add(*b) {
                *a = r;
                return;
            }
        }
        *self = Ring::add(self, rhs);
    }

    fn from_int(&self, v: &Int) -> Self {
        v.clone()
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs)?;
        r.is_zero().then_some(q)
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        Ring::add(&self, &rhs)
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        Ring::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX);
        let sum = Ring::add(&big, &Int::ONE);
        assert!(matches!(sum, Int::Large(_)));
        let back = Ring::sub(&sum, &Int::ONE);
        assert!(matches!(back, Int::Small(_)));
        assert_eq!(back, big);
    }

    #[test]
    fn min_negation_and_division() {
        let m = Int::from(i64::MIN);
        let n = Ring::neg(&m);
        assert_eq!(n.to_string(), "9223372036854775808");
        assert_eq!(m.exact_div(&Int::from(-1)), Some(n));
        assert_eq!(Int::from(7).exact_div(&Int::from(2)), None);
        assert_eq!(Int::from(7).exact_div(&Int::ZERO), None);
    }

    #[test]
    fn gcd_and_residue() {
        assert_eq!(Int::from(-12).gcd(&Int::from(18)), Int::from(6));
        assert_eq!(Int::from(-3).rem_euclid_u64(7), 4);
        let big: Int = "-100000000000000000000000".parse().unwrap();
        assert_eq!(big.rem_euclid_u64(7), (7 - (100000000000000000000000u128 % 7) as u64) % 7);
    }
}
