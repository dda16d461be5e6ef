use std::fmt;

use super::fp::{Fp, PrimeField};
use super::poly::MultiPoly;
use super::ring::{Field, Ring};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
    ctx: F,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, ctx: ctx.zero_like() }
    }

    /// Linear factor `x - r`.
    pub fn linear(r: &F) -> Self {
        Self::new(vec![r.neg(), r.one_like()], r)
    }

    /// Read a polynomial that involves only `var`.
    pub fn from_multi(p: &MultiPoly<F>, var: usize) -> Option<Self> {
        if p.support_vars().iter().any(|&k| k != var) || p.min_degree_in(var).is_some_and(|d| d < 0) {
            return None;
        }
        let deg = p.degree_in(var).unwrap_or(0).max(0) as usize;
        let mut coeffs = vec![p.ctx().zero_like(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(Self::new(coeffs, p.ctx()))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| self.ctx.clone())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.ctx.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(vec![], &self.ctx);
        }
        let mut out = vec![self.ctx.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(out, &self.ctx)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let at = |v: &[F], k: usize| v.get(k).cloned().unwrap_or_else(|| self.ctx.clone());
        Self::new((0..n).map(|k| at(&self.coeffs, k).add(&at(&rhs.coeffs, k))).collect(), &self.ctx)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&self.ctx.one_like().neg()))
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(k)).collect(), &self.ctx)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::new(vec![self.ctx.one_like()], &self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv = d.leading().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::new(vec![], &self.ctx), self.clone()));
        }
        let mut q = vec![self.ctx.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j].sub_assign(&c.mul(dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((Self::new(q, &self.ctx), Self::new(r, &self.ctx)))
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c: Vec<F> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&c.from_int(&(k as i64).into())))
            .collect();
        Self::new(c, &self.ctx)
    }
}

impl UniPoly<Fp> {
    /// Roots with multiplicity, found by scanning the field (small p only).
    pub fn roots_by_scan(&self, field: PrimeField) -> Vec<(Fp, u32)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for v in 0..field.modulus() {
            let r = field.from_u64(v);
            if !self.eval(&r).is_zero() {
                continue;
            }
            let lin = Self::linear(&r);
            let mut cur = self.clone();
            let mut mult = 0;
            loop {
                let (q, rem) = cur.div_rem(&lin).expect("nonzero divisor");
                if !rem.is_zero() {
                    break;
                }
                cur = q;
                mult += 1;
            }
            out.push((r, mult));
        }
        out
    }
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_roots() {
        let f = PrimeField::new(19).unwrap();
        let a = UniPoly::linear(&f.elem(15)).pow(6).scale(&f.elem(5));
        assert_eq!(a.degree(), Some(6));
        assert_eq!(a.roots_by_scan(f), vec![(f.elem(15), 6)]);
        let b = UniPoly::linear(&f.elem(15)).mul(&UniPoly::linear(&f.elem(2)));
        assert_eq!(a.gcd(&b), UniPoly::linear(&f.elem(15)));
        assert_eq!(b.derivative().eval(&f.elem(0)), f.elem(-17));
    }
}
