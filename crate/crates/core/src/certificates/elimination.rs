use super::TwinPolySet;
use crate::arith::resultant::resultant_in;
use crate::arith::univariate::UniPoly;
use crate::arith::{Field, MultiPoly, Ring, ZPoly};
use crate::error::CertError;

/// Values for every indeterminate except `x0` and, when two invariants are
/// involved, the partner endpoint `x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialisation<T> {
    pub a: Vec<T>,
    /// `s_1 .. s_{n-2}` for orders 6 and 7, `s_1 .. s_{n-1}` for orders 4 and 5.
    pub s_star: Vec<T>,
    pub t: Vec<T>,
}

fn free_tail(n: usize) -> bool {
    n >= 6
}

impl<T: Field> Specialisation<T> {
    fn bindings(&self, set: &TwinPolySet) -> Result<Vec<Option<T>>, CertError> {
        let l = &set.layout;
        let n = l.n;
        let want_s = if free_tail(n) { n - 2 } else { n - 1 };
        for (len, expected) in [(self.a.len(), l.n_alpha), (self.s_star.len(), want_s), (self.t.len(), n)] {
            if len != expected {
                return Err(CertError::Specialisation { expected, found: len });
            }
        }
        let mut bind = vec![None; l.nvars()];
        for (j, v) in self.a.iter().enumerate() {
            bind[l.alpha(j + 1)] = Some(v.clone());
        }
        for (i, v) in self.s_star.iter().enumerate() {
            bind[l.x(i + 1)] = Some(v.clone());
        }
        for (i, v) in self.t.iter().enumerate() {
            bind[l.y(i)] = Some(v.clone());
        }
        Ok(bind)
    }

    fn ctx(&self) -> T {
        self.a[0].zero_like()
    }

    /// Substitute into a polynomial over `Z[a][x, y]`.
    pub fn apply(&self, set: &TwinPolySet, p: &ZPoly) -> Result<MultiPoly<T>, CertError> {
        let bind = self.bindings(set)?;
        let ctx = self.ctx();
        p.specialise_with(|c| ctx.from_int(c), &bind, &ctx).ok_or(CertError::Degenerate("a seed value".into()))
    }

    /// Full seed once `x0` (and the partner endpoint) are chosen.
    pub fn seed(&self, s0: &T, last: Option<&T>) -> Vec<T> {
        let mut s = vec![s0.clone()];
        s.extend(self.s_star.iter().cloned());
        if let Some(v) = last {
            s.push(v.clone());
        }
        s
    }
}

fn univariate<T: Field>(p: &MultiPoly<T>, var: usize, what: &str) -> Result<UniPoly<T>, CertError> {
    UniPoly::from_multi(p, var).ok_or_else(|| CertError::Degenerate(format!("{what} is not univariate")))
}

fn exact_quotient<T: Field>(p: &UniPoly<T>, d: &UniPoly<T>, what: &str) -> Result<UniPoly<T>, CertError> {
    match p.div_rem(d) {
        Some((q, r)) if r.is_zero() => Ok(q),
        _ => Err(CertError::InexactDivision(what.to_string())),
    }
}

/// `U` specialised to a polynomial in `x0` (orders 4 and 5).
pub fn u_hat<T: Field>(set: &TwinPolySet, sp: &Specialisation<T>) -> Result<UniPoly<T>, CertError> {
    if free_tail(set.n) {
        return Err(CertError::UnsupportedOrder(set.n));
    }
    univariate(&sp.apply(set, &set.u)?, set.layout.x(0), "U")
}

/// `R = res_{x_{n-1}}(U, V)` split as `x0 * L * R_star`, where `L` is the
/// backward step numerator `sum_j a_j x_{j-1} x_{n-1-j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwinResultant<T: Field> {
    pub r: UniPoly<T>,
    pub linear_factor: UniPoly<T>,
    pub r_star: UniPoly<T>,
}

/// The specialised resultant `R^` and its reduced part `R^_star`.
pub fn twin_resultant<T: Field>(set: &TwinPolySet, sp: &Specialisation<T>) -> Result<TwinResultant<T>, CertError> {
    let l = &set.layout;
    let n = set.n;
    let v = set.v.as_ref().ok_or(CertError::UnsupportedOrder(n))?;
    let (u_hat, v_hat) = (sp.apply(set, &set.u)?, sp.apply(set, v)?);
    let r = univariate(&resultant_in(&u_hat, &v_hat, l.x(n - 1))?, l.x(0), "R")?;
    let mut back = ZPoly::zero(l.nvars(), &crate::arith::Int::ZERO);
    for j in 1..=l.n_alpha {
        back = back.add_poly(&l.alpha_var(j).mul_poly(&l.x_var(j - 1)).mul_poly(&l.x_var(n - 1 - j)));
    }
    let linear_factor = univariate(&sp.apply(set, &back)?, l.x(0), "backward numerator")?;
    let ctx = sp.ctx();
    let x0 = UniPoly::linear(&ctx);
    let r1 = exact_quotient(&r, &x0, "x0")?;
    let r_star = exact_quotient(&r1, &linear_factor, "the backward numerator")?;
    Ok(TwinResultant { r, linear_factor, r_star })
}

/// `W = V_2 U - U_2 V = W_0 + W_1 x_{n-1}` after specialisation.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination<T: Field> {
    pub w0: UniPoly<T>,
    pub w1: UniPoly<T>,
    var_x0: usize,
    var_last: usize,
}

impl<T: Field> Elimination<T> {
    /// `mu(P) = sum_j (-1)^j P_j W0^j W1^{k-j}`, with `P = sum_j P_j x_{n-1}^j`.
    pub fn mu(&self, p: &MultiPoly<T>) -> Result<UniPoly<T>, CertError> {
        let parts = p.collect_in(self.var_last);
        let k = parts.len().saturating_sub(1);
        let ctx = self.w0.leading().zero_like();
        let mut acc = UniPoly::new(vec![], &ctx);
        for (j, pj) in parts.iter().enumerate() {
            let c = univariate(pj, self.var_x0, "P_j")?;
            let mut term = c.mul(&self.w0.pow(j as u32)).mul(&self.w1.pow((k - j) as u32));
            if j % 2 == 1 {
                term = term.scale(&ctx.one_like().neg());
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Partner endpoint `-W0(s0) / W1(s0)`.
    pub fn partner(&self, s0: &T) -> Option<T> {
        self.w0.eval(s0).neg().div(&self.w1.eval(s0))
    }
}

pub fn eliminate<T: Field>(set: &TwinPolySet, sp: &Specialisation<T>) -> Result<Elimination<T>, CertError> {
    let l = &set.layout;
    let n = set.n;
    let last = l.x(n - 1);
    let v = set.v.as_ref().ok_or(CertError::UnsupportedOrder(n))?;
    let (u, v) = (sp.apply(set, &set.u)?, sp.apply(set, v)?);
    let (cu, cv) = (u.collect_in(last), v.collect_in(last));
    let zero = u.zero_like();
    let at = |c: &[MultiPoly<T>], k: usize| c.get(k).cloned().unwrap_or_else(|| zero.clone());
    let w = at(&cv, 2).mul_poly(&u).sub_poly(&at(&cu, 2).mul_poly(&v));
    let cw = w.collect_in(last);
    if cw.len() > 2 {
        return Err(CertError::Degenerate("the quadratic part of W".into()));
    }
    let w0 = univariate(&at(&cw, 0), l.x(0), "W0")?;
    let w1 = univariate(&at(&cw, 1), l.x(0), "W1")?;
    if w1.is_zero() {
        return Err(CertError::Degenerate("W1".into()));
    }
    Ok(Elimination { w0, w1, var_x0: l.x(0), var_last: last })
}
