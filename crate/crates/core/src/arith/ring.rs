use std::fmt;

use super::int::Int;

/// A commutative ring with exact (possibly failing) division.
///
/// Elements are self-describing: `zero_like`/`one_like` produce constants in
/// the same ring as `self`, which lets runtime-parameterised rings such as
/// `Fp` (modulus carried per element) or `MultiPoly` (indeterminate count
/// carried per polynomial) take part in generic code without a context value.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Image of an integer in the ring of `self`.
    fn from_int(&self, v: &Int) -> Self;

    /// `Some(q)` with `q * rhs == self`, or `None` when no such `q` exists
    /// (including division by zero).
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self = Ring::sub(self, rhs);
    }

    fn mul_assign(&mut self, rhs: &Self) {
        *self = Ring::mul(self, rhs);
    }

    /// Size measure used by pivot selection in fraction-free elimination.
    fn weight(&self) -> usize {
        usize::from(!self.is_zero())
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc.mul_assign(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}
