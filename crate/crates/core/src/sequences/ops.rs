use std::collections::BTreeMap;

use super::{GRType, SeqView, Terms};
use crate::arith::fp::{add_mod, inv_mod, mul_mod};
use crate::arith::{Fp, Ring};
use crate::error::SeqError;

/// Default bound on the number of states visited by period detection.
pub const DEFAULT_PERIOD_CAP: usize = 1_000_000;

/// The subsequence `k -> s_{residue + d k}` of the realised terms.
pub fn decimate<T: Clone>(seq: &Terms<T>, d: usize, residue: usize) -> Result<Terms<T>, SeqError> {
    if d == 0 || residue >= d {
        return Err(SeqError::BadDecimation);
    }
    let (d, r) = (d as i64, residue as i64);
    let k_lo = (seq.lo() - r).div_euclid(d) + i64::from((seq.lo() - r).rem_euclid(d) != 0);
    let k_hi = (seq.hi() - r).div_euclid(d);
    let vals = (k_lo..=k_hi).map(|k| seq.get(r + d * k).expect("inside interval").clone()).collect();
    Ok(Terms::new(k_lo, vals))
}

/// Inverse of decimation: `parts[r]` holds `k -> s_{r + d k}`. Returns
/// `None` unless the union covers one interval without gaps.
pub fn interleave<T: Clone>(parts: &[Terms<T>]) -> Option<Terms<T>> {
    let d = parts.len() as i64;
    let mut all = BTreeMap::new();
    for (r, part) in parts.iter().enumerate() {
        for (k, v) in part.vals.iter().enumerate() {
            all.insert(r as i64 + d * (part.base + k as i64), v.clone());
        }
    }
    let lo = *all.keys().next()?;
    let hi = *all.keys().next_back()?;
    if (hi - lo + 1) as usize != all.len() {
        return None;
    }
    Some(Terms::new(lo, all.into_values().collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryElem {
    /// `e_i = 1`
    Constant,
    /// `e_i = i`
    Linear,
    /// `e_i = i mod 2`
    Odd,
    /// `e_i = (i + 1) mod 2`
    Even,
}

impl SymmetryElem {
    pub fn value(&self, i: i64) -> i64 {
        match self {
            SymmetryElem::Constant => 1,
            SymmetryElem::Linear => i,
            SymmetryElem::Odd => i.rem_euclid(2),
            SymmetryElem::Even => (i + 1).rem_euclid(2),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SymmetryElem::Constant => "I",
            SymmetryElem::Linear => "II",
            SymmetryElem::Odd => "III",
            SymmetryElem::Even => "IV",
        }
    }
}

/// Basis of the integer sequences `e` with `e_i + e_{i+n} = e_{i+j} + e_{i+n-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryBasis {
    pub n: usize,
    pub elems: Vec<SymmetryElem>,
}

impl SymmetryBasis {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Value at `i` of the combination with the given coordinates.
    pub fn value(&self, coords: &[i64], i: i64) -> i64 {
        self.elems.iter().zip(coords).map(|(e, c)| c * e.value(i)).sum()
    }
}

pub fn symmetry_basis(n: usize) -> SymmetryBasis {
    use SymmetryElem::*;
    let elems = if n % 2 == 0 { vec![Constant, Linear] } else { vec![Linear, Odd, Even] };
    SymmetryBasis { n, elems }
}

fn signed_pow<T: Ring>(c: &T, e: i64, one: &T) -> Result<T, SeqError> {
    let p = c.pow(u32::try_from(e.unsigned_abs()).expect("exponent too large"));
    if e >= 0 {
        Ok(p)
    } else {
        one.exact_div(&p).ok_or(SeqError::ZeroScalar)
    }
}

/// `s_i -> c^{e_i} s_i` where `e` has the given coordinates in `symmetry_basis(n)`.
pub fn apply_symmetry<T: Ring>(seq: &SeqView<T>, c: &T, coords: &[i64]) -> Result<SeqView<T>, SeqError> {
    if c.is_zero() {
        return Err(SeqError::ZeroScalar);
    }
    let basis = symmetry_basis(seq.order());
    if coords.len() != basis.dim() {
        return Err(SeqError::SymmetryDimension { expected: basis.dim(), found: coords.len() });
    }
    let one = c.one_like();
    let terms = seq.terms();
    let vals = terms
        .vals
        .iter()
        .enumerate()
        .map(|(k, v)| Ok(signed_pow(c, basis.value(coords, terms.base + k as i64), &one)?.mul(v)))
        .collect::<Result<Vec<_>, SeqError>>()?;
    Ok(SeqView::from_terms(seq.recurrence().clone(), Terms::new(terms.base, vals)))
}

/// Period of the state window `(s_lo, ..., s_{lo+n-1})` under the recurrence.
pub fn detect_period(seq: &SeqView<Fp>) -> Option<usize> {
    detect_period_capped(seq, DEFAULT_PERIOD_CAP)
}

/// With all terms nonzero the state map is invertible, so the orbit of the
/// initial state is a pure cycle and its first return is the period. A zero
/// term blocks the recurrence and yields `None`, as does hitting the cap.
pub fn detect_period_capped(seq: &SeqView<Fp>, cap: usize) -> Option<usize> {
    let n = seq.order();
    let p = seq.get(seq.lo())?.modulus();
    let init: Vec<u64> = (0..n as i64).map(|k| seq.get(seq.lo() + k).map(|v| v.value())).collect::<Option<_>>()?;
    let pairs: Vec<(usize, u64)> = seq.recurrence().pairs().iter().map(|(q, c)| (*q, c.value())).collect();
    let mut w: Vec<u64> = init.clone();
    for steps in 1..=cap {
        let i0 = w.len() - n;
        let inv = inv_mod(w[i0], p)?;
        let mut acc = 0;
        for (q, c) in &pairs {
            acc = add_mod(acc, mul_mod(*c, mul_mod(w[i0 + q], w[i0 + n - q], p), p), p);
        }
        w.push(mul_mod(acc, inv, p));
        if w[w.len() - n..] == init[..] {
            return Some(steps);
        }
        // Keep memory bounded; only the last n terms matter.
        if w.len() > 4 * n + 1024 {
            w.drain(..w.len() - n);
        }
    }
    None
}

/// Reduction of a type with a repeated entry to a type with one zero
/// coefficient. `perm[k]` is the position (in the input) of the entry that
/// plays role `k` in the canonical arrangement `(u, v, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedType {
    pub reduced: GRType,
    pub perm: [usize; 3],
}

impl ReducedType {
    /// `a -> (a_u, a_v + a_v', 0)` with the input coefficients in input order.
    pub fn coeffs<T: Ring>(&self, a: &[T]) -> Vec<T> {
        let [u, v, w] = self.perm;
        vec![a[u].clone(), a[v].add(&a[w]), a[u].zero_like()]
    }
}

pub fn reduce_type(t: GRType) -> Result<ReducedType, SeqError> {
    let e = t.entries();
    if t.order() < 6 || !t.is_primitive() {
        return Err(SeqError::InvalidType(format!("{t} must be primitive of order at least 6")));
    }
    let perm = if e[1] == e[2] && e[0] != e[1] {
        [0, 1, 2]
    } else if e[0] == e[2] && e[1] != e[0] {
        [1, 0, 2]
    } else if e[0] == e[1] && e[2] != e[0] {
        [2, 0, 1]
    } else {
        return Err(SeqError::InvalidType(format!("{t} has no single repeated entry")));
    };
    let (u, v) = (e[perm[0]], e[perm[1]]);
    let reduced = if u < v { GRType::new(u, u + v, v - u)? } else { GRType::new(2 * v, v, u - v)? };
    Ok(ReducedType { reduced, perm })
}

#[cfg(test)]
mod tests {
    use super::super::{gale_robinson, somos, unit_sequence, Recurrence};
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::{Int, PrimeField};

    #[test]
    fn decimation_round_trip() {
        let mut s = unit_sequence(6).unwrap();
        s.extend_to(-7, 12);
        let t = s.terms();
        let even = decimate(&t, 2, 0).unwrap();
        let first: Vec<_> = (0..5).map(|k| even.get(k).unwrap().clone()).collect();
        assert_eq!(first, [1, 1, 1, 3, 9].map(rat));
        let odd = decimate(&t, 2, 1).unwrap();
        assert_eq!(interleave(&[even, odd]).unwrap(), t);
        assert_eq!(decimate(&t, 1, 0).unwrap(), t);
        assert!(decimate(&t, 3, 3).is_err());
    }

    #[test]
    fn symmetries_preserve_the_recurrence() {
        let b = symmetry_basis(6);
        assert_eq!(b.dim(), 2);
        assert_eq!(symmetry_basis(7).dim(), 3);
        for n in 2..10usize {
            let b = symmetry_basis(n);
            for e in &b.elems {
                for i in -20..20 {
                    let w = e.value(i) + e.value(i + n as i64);
                    for j in 1..n as i64 {
                        assert_eq!(w, e.value(i + j) + e.value(i + n as i64 - j));
                    }
                }
            }
        }
        let mut s = unit_sequence(6).unwrap();
        s.extend_to(-3, 12);
        let d = apply_symmetry(&s, &rat(2), &[1, 0]).unwrap();
        assert!(d.residuals_vanish());
        assert_eq!(d.get(6), Some(&rat(6)));
        let lin = apply_symmetry(&s, &rat(3), &[0, -1]).unwrap();
        assert!(lin.residuals_vanish());
        let mut s7 = unit_sequence(7).unwrap();
        s7.extend_to(-3, 14);
        let p = apply_symmetry(&s7, &rat(3), &[0, 1, 0]).unwrap();
        assert!(p.residuals_vanish());
        assert_eq!(apply_symmetry(&s7, &rat(1), &[1, 1, 1]).unwrap().terms(), s7.terms());
        assert_eq!(apply_symmetry(&s7, &rat(0), &[0, 1, 0]).unwrap_err(), SeqError::ZeroScalar);
    }

    #[test]
    fn periods() {
        let f = PrimeField::new(19).unwrap();
        let s = somos(vec![f.one(); 3], f.elems(&[15, 1, 1, 1, 1, 15])).unwrap();
        assert_eq!(detect_period(&s), Some(612));
        let f = PrimeField::new(11).unwrap();
        let s = somos(vec![f.one(); 2], f.elems(&[4, 1, 9, 1])).unwrap();
        assert_eq!(detect_period(&s), Some(5));
        let f = PrimeField::new(29).unwrap();
        let s = somos(vec![f.one(); 3], f.elems(&[1, 1, 2, 1, 9, 1, 1])).unwrap();
        assert_eq!(detect_period(&s), Some(16));
        let z = somos(vec![f.one(); 2], f.elems(&[0, 1, 1, 1])).unwrap();
        assert_eq!(detect_period(&z), None);
        assert_eq!(detect_period_capped(&s, 10), None);
    }

    #[test]
    fn type_reduction() {
        let r = reduce_type(GRType::new(1, 3, 3).unwrap()).unwrap();
        assert_eq!(r.reduced, GRType::new(1, 4, 2).unwrap());
        let r = reduce_type(GRType::new(5, 2, 2).unwrap()).unwrap();
        assert_eq!(r.reduced, GRType::new(4, 2, 3).unwrap());
        let a: Vec<Int> = vec![1.into(), 2.into(), 5.into()];
        assert_eq!(r.coeffs(&a), vec![Int::from(1), 7.into(), 0.into()]);
        assert!(reduce_type(GRType::new(1, 2, 3).unwrap()).is_err());
        assert!(reduce_type(GRType::new(2, 2, 2).unwrap()).is_err());
        // The reduced recurrence generates the same sequence.
        let t = GRType::new(3, 1, 3).unwrap();
        let r = reduce_type(t).unwrap();
        let a = vec![rat(2), rat(3), rat(5)];
        let seed: Vec<_> = (1..=7).map(rat).collect();
        let mut s = gale_robinson(t, a.clone(), seed.clone()).unwrap();
        let mut u = SeqView::new(Recurrence::gale_robinson(r.reduced, r.coeffs(&a)).unwrap(), seed, 0).unwrap();
        s.extend_to(-5, 25);
        u.extend_to(-5, 25);
        assert_eq!(s.terms(), u.terms());
    }
}
