use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::int::Int;
use super::mono::{Mono, MAX_VARS};
use super::ring::Ring;
use crate::error::ArithError;

/// Sparse multivariate (Laurent) polynomial.
///
/// Terms are kept sorted in decreasing graded-lex order with no zero
/// coefficients and no repeated monomials, so structural equality is
/// polynomial equality. `ctx` is a zero of the coefficient ring; it lets
/// runtime-parameterised coefficient rings produce constants for an
/// otherwise empty polynomial.
#[derive(Clone)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: Vec<(Mono, C)>,
    ctx: C,
}

/// Products with more term pairs than this are split across threads.
const PAR_MUL_THRESHOLD: usize = 1 << 16;

impl<C: Ring> MultiPoly<C> {
    pub fn zero(nvars: usize, ctx: &C) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly { nvars, terms: Vec::new(), ctx: ctx.zero_like() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Mono::ONE, c)
    }

    pub fn one(nvars: usize, ctx: &C) -> Self {
        Self::constant(nvars, ctx.one_like())
    }

    pub fn var(nvars: usize, k: usize, ctx: &C) -> Self {
        assert!(k < nvars);
        Self::monomial(nvars, Mono::var(k, 1), ctx.one_like())
    }

    pub fn monomial(nvars: usize, m: Mono, c: C) -> Self {
        assert!(nvars <= MAX_VARS);
        let ctx = c.zero_like();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MultiPoly { nvars, terms, ctx }
    }

    /// Canonicalise an arbitrary list of terms.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, C)>, ctx: &C) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        MultiPoly { nvars, terms: out, ctx: ctx.zero_like() }
    }

    /// Build from terms already sorted, merged and free of zeros.
    fn from_sorted(nvars: usize, terms: Vec<(Mono, C)>, ctx: &C) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        MultiPoly { nvars, terms, ctx: ctx.zero_like() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &C {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(self.ctx.clone()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, m: &Mono) -> C {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => self.ctx.clone(),
        }
    }

    fn check_compatible(&self, rhs: &Self) {
        assert_eq!(self.nvars, rhs.nvars, "indeterminate count mismatch");
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.nvars != rhs.nvars {
            return Err(ArithError::DomainMismatch(format!("{} vs {} indeterminates", self.nvars, rhs.nvars)));
        }
        Ok(self.add_poly(rhs))
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        self.check_compatible(rhs);
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_rhs { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_rhs { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Self::from_sorted(self.nvars, out, &self.ctx)
    }

    pub fn add_poly(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub_poly(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    pub fn neg_poly(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Self::from_sorted(self.nvars, terms, &self.ctx)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars, &self.ctx);
        }
        let terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.mul(k))).filter(|t| !t.1.is_zero()).collect();
        Self::from_sorted(self.nvars, terms, &self.ctx)
    }

    /// Multiply by a monomial; order is preserved since graded-lex is a
    /// monomial order.
    pub fn mul_mono(&self, m: &Mono) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Self::from_sorted(self.nvars, terms, &self.ctx)
    }

    pub fn mul_term(&self, m: &Mono, k: &C) -> Self {
        let terms: Vec<_> = self.terms.iter().map(|(t, c)| (t.mul(m), c.mul(k))).filter(|t| !t.1.is_zero()).collect();
        Self::from_sorted(self.nvars, terms, &self.ctx)
    }

    fn mul_serial(a: &[(Mono, C)], b: &[(Mono, C)], nvars: usize, ctx: &C) -> Self {
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        acc.reserve(a.len() * b.len() / 2 + 1);
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => v.add_assign(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Self::from_sorted(nvars, terms, ctx)
    }

    pub fn mul_poly(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Self::zero(self.nvars, &self.ctx);
        }
        let (a, b) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if a.len() == 1 {
            return b.mul_term(&a.terms[0].0, &a.terms[0].1);
        }
        let work = a.len() * b.len();
        if work < PAR_MUL_THRESHOLD {
            return Self::mul_serial(&a.terms, &b.terms, self.nvars, &self.ctx);
        }
        let chunk = (PAR_MUL_THRESHOLD / b.len()).max(1);
        let nvars = self.nvars;
        let ctx = &self.ctx;
        a.terms
            .par_chunks(chunk)
            .map(|c| Self::mul_serial(c, &b.terms, nvars, ctx))
            .reduce(|| Self::zero(nvars, ctx), |x, y| x.add_poly(&y))
    }

    pub fn square(&self) -> Self {
        self.mul_poly(self)
    }

    pub fn pow_poly(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, &self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (the monomial gcd in
    /// the Laurent sense). `None` for the zero polynomial.
    pub fn min_mono(&self) -> Option<Mono> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |acc, t| acc.meet(&t.0)))
    }

    pub fn max_mono(&self) -> Option<Mono> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |acc, t| acc.join(&t.0)))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonnegative())
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Degree restricted to `vars` is the same on every term.
    pub fn is_homogeneous_in(&self, vars: std::ops::Range<usize>) -> Option<i32> {
        let mut it = self.terms.iter().map(|(m, _)| m.partial_degree(vars.clone()));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.iter().map(|t| t.0.exp(var)).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.iter().map(|t| t.0.exp(var)).min()
    }

    /// Indeterminates occurring with nonzero exponent in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut present = [false; MAX_VARS];
        for (m, _) in &self.terms {
            for k in m.support() {
                present[k] = true;
            }
        }
        (0..self.nvars).filter(|&k| present[k]).collect()
    }

    /// Polynomial long division by leading terms of two genuine polynomials
    /// (all exponents nonnegative), using a heap of pending products.
    fn divide_polynomial(f: &[(Mono, C)], g: &[(Mono, C)]) -> Option<Vec<(Mono, C)>> {
        let (g0m, g0c) = &g[0];
        let mut q: Vec<(Mono, C)> = Vec::new();
        // Max-heap of (monomial of q[i] * g[j], i, j).
        let mut heap: BinaryHeap<(Mono, usize, usize)> = BinaryHeap::new();
        let mut fi = 0;
        loop {
            let fm = f.get(fi).map(|t| t.0);
            let hm = heap.peek().map(|t| t.0);
            let m = match (fm, hm) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.max(b),
            };
            let mut c = g0c.zero_like();
            if fm == Some(m) {
                c = f[fi].1.clone();
                fi += 1;
            }
            while let Some(&(hm, i, j)) = heap.peek() {
                if hm != m {
                    break;
                }
                heap.pop();
                c.sub_assign(&q[i].1.mul(&g[j].1));
                if j + 1 < g.len() {
                    heap.push((q[i].0.mul(&g[j + 1].0), i, j + 1));
                }
            }
            if c.is_zero() {
                continue;
            }
            if !m.divisible_by(g0m) {
                return None;
            }
            let qc = c.exact_div(g0c)?;
            let qm = m.div(g0m);
            let t = q.len();
            q.push((qm, qc));
            if g.len() > 1 {
                heap.push((qm.mul(&g[1].0), t, 1));
            }
        }
        Some(q)
    }

    /// Exact division in the Laurent polynomial ring (monomials are units).
    pub fn div_laurent(&self, d: &Self) -> Result<Self, ArithError> {
        self.check_compatible(d);
        let md = d.min_mono().ok_or(ArithError::DivisionByZero)?;
        let Some(mf) = self.min_mono() else {
            return Ok(Self::zero(self.nvars, &self.ctx));
        };
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.len());
            for (t, k) in &self.terms {
                terms.push((t.div(m), k.exact_div(c).ok_or(ArithError::NotDivisible)?));
            }
            return Ok(Self::from_sorted(self.nvars, terms, &self.ctx));
        }
        let fs: Vec<(Mono, C)> = self.terms.iter().map(|(m, c)| (m.div(&mf), c.clone())).collect();
        let gs: Vec<(Mono, C)> = d.terms.iter().map(|(m, c)| (m.div(&md), c.clone())).collect();
        let q = Self::divide_polynomial(&fs, &gs).ok_or(ArithError::NotDivisible)?;
        let shift = mf.div(&md);
        let terms = q.into_iter().map(|(m, c)| (m.mul(&shift), c)).collect();
        Ok(Self::from_sorted(self.nvars, terms, &self.ctx))
    }

    /// Exact division in the ordinary polynomial ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self, ArithError> {
        let q = self.div_laurent(d)?;
        if self.is_polynomial() && d.is_polynomial() && !q.is_polynomial() {
            return Err(ArithError::NotDivisible);
        }
        Ok(q)
    }

    /// Coefficients of `var^0 ..= var^deg`, each with `var` removed.
    /// Requires nonnegative exponents in `var`.
    pub fn collect_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0).max(0) as usize;
        assert!(self.min_degree_in(var).unwrap_or(0) >= 0, "negative exponent in collected variable");
        let mut parts: Vec<Vec<(Mono, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut mm = *m;
            mm.set_exp(var, 0);
            parts[k].push((mm, c.clone()));
        }
        parts.into_iter().map(|p| Self::from_terms(self.nvars, p, &self.ctx)).collect()
    }

    /// Inverse of `collect_in`.
    pub fn from_collected(parts: &[Self], var: usize) -> Self {
        let nvars = parts[0].nvars;
        let ctx = parts[0].ctx.clone();
        let mut acc = Self::zero(nvars, &ctx);
        for (k, p) in parts.iter().enumerate() {
            acc = acc.add_poly(&p.mul_mono(&Mono::var(var, k as i32)));
        }
        acc
    }

    /// Relabel indeterminates: variable `k` becomes `map[k]` in a ring with
    /// `new_nvars` indeterminates.
    pub fn remap(&self, map: &[usize], new_nvars: usize) -> Self {
        assert!(map.len() >= self.nvars && new_nvars <= MAX_VARS);
        let terms = self.terms.iter().map(|(m, c)| (m.remap(&map[..self.nvars]), c.clone())).collect();
        Self::from_terms(new_nvars, terms, &self.ctx)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D, ctx: &D) -> MultiPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|t| !t.1.is_zero()).collect();
        MultiPoly::from_sorted(self.nvars, terms, ctx)
    }

    /// Substitute values for a subset of indeterminates.
    ///
    /// `conv` embeds coefficients into the target ring. Unbound variables
    /// stay symbolic. Returns `None` if a negative power of a
    /// non-invertible value is needed.
    pub fn specialise_with<T: Ring>(&self, conv: impl Fn(&C) -> T, bind: &[Option<T>], ctx: &T) -> Option<MultiPoly<T>> {
        assert!(bind.len() <= self.nvars);
        let mut tables: Vec<Option<PowTable<T>>> = Vec::with_capacity(bind.len());
        for (k, b) in bind.iter().enumerate() {
            tables.push(match b {
                None => None,
                Some(v) => Some(PowTable::new(
                    v,
                    self.min_degree_in(k).unwrap_or(0),
                    self.degree_in(k).unwrap_or(0),
                )?),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coef = conv(c);
            let mut mm = *m;
            for (k, t) in tables.iter().enumerate() {
                if let Some(t) = t {
                    let e = m.exp(k);
                    if e != 0 {
                        coef.mul_assign(t.get(e));
                        mm.set_exp(k, 0);
                    }
                }
            }
            terms.push((mm, coef));
        }
        Some(MultiPoly::from_terms(self.nvars, terms, ctx))
    }

    /// Full evaluation at a point of the target ring.
    pub fn eval_with<T: Ring>(&self, conv: impl Fn(&C) -> T, point: &[T], ctx: &T) -> Option<T> {
        let bind: Vec<Option<T>> = point.iter().cloned().map(Some).collect();
        let p = self.specialise_with(conv, &bind, ctx)?;
        p.constant_value()
    }

    /// Polynomial composition: variable `k` is replaced by `images[k]`
    /// (nonnegative exponents only).
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        let mut cache: FxHashMap<(usize, i32), Self> = FxHashMap::default();
        let mut acc = Self::zero(target, &self.ctx);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for k in m.support() {
                let e = m.exp(k);
                assert!(e > 0, "compose needs nonnegative exponents");
                let p = cache.entry((k, e)).or_insert_with(|| images[k].pow_poly(e as u32)).clone();
                t = t.mul_poly(&p);
            }
            acc = acc.add_poly(&t);
        }
        acc
    }

    /// Canonicalise again; the identity on any value built through this API.
    pub fn recanonicalise(&self) -> Self {
        Self::from_terms(self.nvars, self.terms.clone(), &self.ctx)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = format!("{c:?}");
            let neg = cs.starts_with('-');
            let mag = if neg { &cs[1..] } else { &cs[..] };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_mono(m, self.nvars, names);
            match (mag == "1", mono.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => s.push_str(mag),
                (false, false) => {
                    s.push_str(mag);
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

/// Powers `v^lo ..= v^hi` of a ring element.
struct PowTable<T> {
    lo: i32,
    pows: Vec<T>,
}

impl<T: Ring> PowTable<T> {
    fn new(v: &T, lo: i32, hi: i32) -> Option<Self> {
        let lo = lo.min(0);
        let hi = hi.max(0);
        let one = v.one_like();
        let mut pos = vec![one.clone()];
        for _ in 0..hi {
            let next = pos.last().unwrap().mul(v);
            pos.push(next);
        }
        let mut neg = Vec::new();
        if lo < 0 {
            let inv = one.exact_div(v)?;
            let mut cur = one.clone();
            for _ in 0..(-lo) {
                cur = cur.mul(&inv);
                neg.push(cur.clone());
            }
        }
        neg.reverse();
        neg.extend(pos);
        Some(PowTable { lo, pows: neg })
    }

    fn get(&self, e: i32) -> &T {
        &self.pows[(e - self.lo) as usize]
    }
}

pub fn fmt_mono(m: &Mono, nvars: usize, names: &[String]) -> String {
    let mut parts = Vec::new();
    for k in 0..nvars {
        let e = m.exp(k);
        let name = names.get(k).cloned().unwrap_or_else(|| format!("v{k}"));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl MultiPoly<Int> {
    /// Gcd of the integer coefficients, made positive.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn eval_int<T: Ring>(&self, point: &[T]) -> Option<T> {
        let ctx = point.first()?.zero_like();
        let c2 = ctx.clone();
        self.eval_with(move |c| c2.from_int(c), point, &ctx)
    }

    pub fn specialise_int<T: Ring>(&self, bind: &[Option<T>], ctx: &T) -> Option<MultiPoly<T>> {
        let c2 = ctx.clone();
        self.specialise_with(move |c| c2.from_int(c), bind, ctx)
    }

    pub fn to_ring<T: Ring>(&self, ctx: &T) -> MultiPoly<T> {
        self.map_coeffs(|c| ctx.from_int(c), ctx)
    }
}

impl<C: Ring> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<C: Ring> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("v{k}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl<C: Ring> Ring for MultiPoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars, &self.ctx)
    }

    fn one_like(&self) -> Self {
        Self::one(self.nvars, &self.ctx)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.add_poly(rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.sub_poly(rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }

    fn neg(&self) -> Self {
        self.neg_poly()
    }

    fn from_int(&self, v: &Int) -> Self {
        Self::constant(self.nvars, self.ctx.from_int(v))
    }

    /// Laurent-exact division.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.div_laurent(rhs).ok()
    }

    fn weight(&self) -> usize {
        self.terms.len()
    }
}
