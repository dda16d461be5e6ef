//! Somos and Gale-Robinson sequences over any coefficient domain.

mod dump;
mod master;
mod ops;

use std::collections::VecDeque;
use std::fmt;

pub use dump::{dump_sequence, DumpTerm};
pub use master::{master_gale_robinson, master_sequence, master_sequence_in, Layout};
pub use ops::{
    apply_symmetry, decimate, detect_period, detect_period_capped, interleave, reduce_type, symmetry_basis,
    ReducedType, SymmetryBasis, SymmetryElem, DEFAULT_PERIOD_CAP,
};

use crate::arith::{Fp, Int, Rational, RatFunc, Ring, ZPoly};
use crate::error::SeqError;

/// Short name of a coefficient domain, as printed in dumps.
pub trait DomainTag {
    fn domain_tag() -> &'static str;
}

impl DomainTag for Rational {
    fn domain_tag() -> &'static str {
        "rational"
    }
}

impl DomainTag for Fp {
    fn domain_tag() -> &'static str {
        "fp"
    }
}

impl DomainTag for Int {
    fn domain_tag() -> &'static str {
        "integer"
    }
}

impl DomainTag for ZPoly {
    fn domain_tag() -> &'static str {
        "laurent"
    }
}

impl DomainTag for RatFunc<Int> {
    fn domain_tag() -> &'static str {
        "ratfunc"
    }
}

/// Gale-Robinson type `(n1, n2, n3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GRType {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl GRType {
    pub fn new(n1: usize, n2: usize, n3: usize) -> Result<Self, SeqError> {
        if n1 == 0 || n2 == 0 || n3 == 0 {
            return Err(SeqError::InvalidType(format!("({n1},{n2},{n3}) has a zero entry")));
        }
        Ok(GRType { n1, n2, n3 })
    }

    pub fn order(&self) -> usize {
        self.n1 + self.n2 + self.n3
    }

    pub fn entries(&self) -> [usize; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(num_integer::gcd(self.n1, self.n2), self.n3) == 1
    }

    pub fn is_proper(&self) -> bool {
        self.is_primitive() && self.n1 != self.n2 && self.n2 != self.n3 && self.n1 != self.n3
    }
}

impl fmt::Display for GRType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.n2, self.n3)
    }
}

/// Quadratic recurrence `s_i s_{i+n} = sum_k c_k s_{i+p_k} s_{i+n-p_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence<T> {
    order: usize,
    pairs: Vec<(usize, T)>,
}

impl<T: Ring> Recurrence<T> {
    /// Plain Somos recurrence; `coeffs[j-1]` multiplies `s_{i+j} s_{i+n-j}`.
    pub fn somos(order: usize, coeffs: Vec<T>) -> Result<Self, SeqError> {
        if order < 2 {
            return Err(SeqError::InvalidOrder(order));
        }
        if coeffs.len() != order / 2 {
            return Err(SeqError::CoefficientCount { expected: order / 2, found: coeffs.len() });
        }
        Ok(Recurrence { order, pairs: coeffs.into_iter().enumerate().map(|(j, c)| (j + 1, c)).collect() })
    }

    pub fn gale_robinson(t: GRType, coeffs: Vec<T>) -> Result<Self, SeqError> {
        if coeffs.len() != 3 {
            return Err(SeqError::CoefficientCount { expected: 3, found: coeffs.len() });
        }
        Ok(Recurrence { order: t.order(), pairs: t.entries().into_iter().zip(coeffs).collect() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn pairs(&self) -> &[(usize, T)] {
        &self.pairs
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Recurrence<U> {
        Recurrence { order: self.order, pairs: self.pairs.iter().map(|(p, c)| (*p, f(c))).collect() }
    }

    /// `sum_k c_k w[p_k] w[n - p_k]` for a window `w` of length `n + 1`.
    pub fn rhs(&self, w: impl Fn(usize) -> T) -> T {
        let mut acc: Option<T> = None;
        for (p, c) in &self.pairs {
            let t = c.mul(&w(*p)).mul(&w(self.order - p));
            match acc.as_mut() {
                Some(a) => a.add_assign(&t),
                None => acc = Some(t),
            }
        }
        acc.expect("recurrence has at least one pair")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryReason {
    /// The divisor term is zero.
    ZeroDivisor,
    /// The divisor is nonzero but does not divide the numerator exactly.
    NotDivisible,
}

/// Where and why extension stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub index: i64,
    pub reason: BoundaryReason,
}

/// Realised terms on an integer interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Terms<T> {
    pub base: i64,
    pub vals: Vec<T>,
}

impl<T> Terms<T> {
    pub fn new(base: i64, vals: Vec<T>) -> Self {
        Terms { base, vals }
    }

    pub fn get(&self, i: i64) -> Option<&T> {
        let k = i - self.base;
        if k < 0 {
            return None;
        }
        self.vals.get(k as usize)
    }

    pub fn lo(&self) -> i64 {
        self.base
    }

    /// Last realised index (`lo - 1` when empty).
    pub fn hi(&self) -> i64 {
        self.base + self.vals.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= self.lo() && i <= self.hi()
    }
}

/// Lazily extended sequence with explicit interval bookkeeping.
#[derive(Clone, Debug)]
pub struct SeqView<T> {
    rec: Recurrence<T>,
    base: i64,
    terms: VecDeque<T>,
    forward_stop: Option<Boundary>,
    backward_stop: Option<Boundary>,
}

impl<T: Ring> SeqView<T> {
    /// Sequence with seed `s_base, ..., s_{base+n-1}`.
    pub fn new(rec: Recurrence<T>, seed: Vec<T>, base: i64) -> Result<Self, SeqError> {
        if seed.len() != rec.order {
            return Err(SeqError::SeedLength { expected: rec.order, found: seed.len() });
        }
        Ok(SeqView { rec, base, terms: seed.into(), forward_stop: None, backward_stop: None })
    }

    /// Wrap already computed terms; callers use `residuals` to validate.
    pub fn from_terms(rec: Recurrence<T>, terms: Terms<T>) -> Self {
        SeqView { rec, base: terms.base, terms: terms.vals.into(), forward_stop: None, backward_stop: None }
    }

    pub fn recurrence(&self) -> &Recurrence<T> {
        &self.rec
    }

    pub fn order(&self) -> usize {
        self.rec.order
    }

    pub fn lo(&self) -> i64 {
        self.base
    }

    pub fn hi(&self) -> i64 {
        self.base + self.terms.len() as i64 - 1
    }

    pub fn get(&self, i: i64) -> Option<&T> {
        let k = i - self.base;
        if k < 0 {
            return None;
        }
        self.terms.get(k as usize)
    }

    pub fn forward_stop(&self) -> Option<Boundary> {
        self.forward_stop
    }

    pub fn backward_stop(&self) -> Option<Boundary> {
        self.backward_stop
    }

    pub fn terms(&self) -> Terms<T> {
        Terms::new(self.base, self.terms.iter().cloned().collect())
    }

    fn divide(num: &T, den: &T, index: i64) -> Result<T, Boundary> {
        if den.is_zero() {
            return Err(Boundary { index, reason: BoundaryReason::ZeroDivisor });
        }
        num.exact_div(den).ok_or(Boundary { index, reason: BoundaryReason::NotDivisible })
    }

    /// Compute one more term at the top; `false` once blocked.
    pub fn step_forward(&mut self) -> bool {
        if self.forward_stop.is_some() {
            return false;
        }
        let n = self.rec.order;
        let len = self.terms.len();
        let i0 = len - n; // window start, relative
        let num = self.rec.rhs(|k| if k == n { unreachable!() } else { self.terms[i0 + k].clone() });
        let target = self.hi() + 1;
        match Self::divide(&num, &self.terms[i0], target) {
            Ok(v) => {
                self.terms.push_back(v);
                true
            }
            Err(b) => {
                self.forward_stop = Some(b);
                false
            }
        }
    }

    /// Compute one more term at the bottom; `false` once blocked.
    pub fn step_backward(&mut self) -> bool {
        if self.backward_stop.is_some() {
            return false;
        }
        let n = self.rec.order;
        // New s_{lo-1} from the window [lo-1, lo-1+n]; offsets shift by one.
        let num = self.rec.rhs(|k| if k == 0 { unreachable!() } else { self.terms[k - 1].clone() });
        let target = self.lo() - 1;
        match Self::divide(&num, &self.terms[n - 1], target) {
            Ok(v) => {
                self.terms.push_front(v);
                self.base -= 1;
                true
            }
            Err(b) => {
                self.backward_stop = Some(b);
                false
            }
        }
    }

    /// Realise as much of `[lo, hi]` as division permits.
    pub fn extend_to(&mut self, lo: i64, hi: i64) -> &mut Self {
        while self.hi() < hi && self.step_forward() {}
        while self.lo() > lo && self.step_backward() {}
        self
    }

    /// Extension that reports the first boundary met inside the request.
    pub fn extend_checked(&mut self, lo: i64, hi: i64) -> Result<&mut Self, SeqError> {
        self.extend_to(lo, hi);
        if self.hi() < hi {
            return Err(SeqError::Division(self.forward_stop.expect("stopped early")));
        }
        if self.lo() > lo {
            return Err(SeqError::Division(self.backward_stop.expect("stopped early")));
        }
        Ok(self)
    }

    /// Residual `-s_i s_{i+n} + sum_k c_k s_{i+p} s_{i+n-p}` of every fully
    /// realised window, as `(i, residual)` for the nonzero ones.
    pub fn residuals(&self) -> Vec<(i64, T)> {
        let n = self.rec.order;
        let mut bad = Vec::new();
        if self.terms.len() <= n {
            return bad;
        }
        for i0 in 0..self.terms.len() - n {
            let rhs = self.rec.rhs(|k| self.terms[i0 + k].clone());
            let r = rhs.sub(&self.terms[i0].mul(&self.terms[i0 + n]));
            if !r.is_zero() {
                bad.push((self.base + i0 as i64, r));
            }
        }
        bad
    }

    pub fn residuals_vanish(&self) -> bool {
        self.residuals().is_empty()
    }
}

/// Sequence over a field or integral domain with the given Somos data.
pub fn somos<T: Ring>(coeffs: Vec<T>, seed: Vec<T>) -> Result<SeqView<T>, SeqError> {
    let n = seed.len();
    SeqView::new(Recurrence::somos(n, coeffs)?, seed, 0)
}

pub fn gale_robinson<T: Ring>(t: GRType, coeffs: Vec<T>, seed: Vec<T>) -> Result<SeqView<T>, SeqError> {
    SeqView::new(Recurrence::gale_robinson(t, coeffs)?, seed, 0)
}

/// Unit Somos sequence over the rationals: all coefficients and seed terms 1.
pub fn unit_sequence(n: usize) -> Result<SeqView<Rational>, SeqError> {
    let one = crate::arith::rational::rat(1);
    somos(vec![one.clone(); n / 2], vec![one; n])
}

/// Unit sequence over a prime field.
pub fn unit_sequence_fp(n: usize, field: crate::arith::PrimeField) -> Result<SeqView<Fp>, SeqError> {
    somos(vec![field.one(); n / 2], vec![field.one(); n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn ints(s: &SeqView<Rational>, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|i| s.get(i).unwrap().to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn unit_values() {
        let mut s6 = unit_sequence(6).unwrap();
        s6.extend_to(-1, 11);
        assert_eq!(ints(&s6, 6, 11), vec![3, 5, 9, 23, 75, 421]);
        assert_eq!(ints(&s6, -1, -1), vec![3]);
        let mut s7 = unit_sequence(7).unwrap();
        s7.extend_to(0, 11);
        assert_eq!(ints(&s7, 7, 11), vec![3, 5, 9, 17, 41]);
        let mut s4 = unit_sequence(4).unwrap();
        s4.extend_to(0, 8);
        assert_eq!(ints(&s4, 0, 8), vec![1, 1, 1, 1, 2, 3, 7, 23, 59]);
        assert!(s4.residuals_vanish());
    }

    #[test]
    fn gale_robinson_values() {
        let one = rat(1);
        let t = GRType::new(1, 3, 4).unwrap();
        let mut s = gale_robinson(t, vec![one.clone(); 3], vec![one.clone(); 8]).unwrap();
        s.extend_to(0, 10);
        assert_eq!(ints(&s, 8, 10), vec![3, 5, 7]);
        let t = GRType::new(1, 2, 3).unwrap();
        let mut g = gale_robinson(t, vec![one.clone(); 3], vec![one; 6]).unwrap();
        g.extend_to(-5, 20);
        let mut u = unit_sequence(6).unwrap();
        u.extend_to(-5, 20);
        assert_eq!(g.terms(), u.terms());
    }

    #[test]
    fn division_failure_is_recorded() {
        let f = crate::arith::PrimeField::new(7).unwrap();
        // Somos-4 over F_7 with a zero in the seed blocks the first step.
        let mut s = somos(vec![f.one(), f.one()], f.elems(&[0, 1, 1, 1])).unwrap();
        s.extend_to(0, 10);
        assert_eq!(s.hi(), 3);
        assert_eq!(s.forward_stop(), Some(Boundary { index: 4, reason: BoundaryReason::ZeroDivisor }));
        assert!(s.extend_checked(0, 10).is_err());
    }
}
