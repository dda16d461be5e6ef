use super::matrix::{det, Matrix};
use super::poly::MultiPoly;
use super::ring::Ring;
use crate::error::ArithError;

fn trim<T: Ring>(p: &[T]) -> &[T] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Sylvester-style matrix of `P` (degree k) and `Q` (degree l), with
/// coefficients given in ascending degree.
///
/// Columns are `P*y^i` for `i < l`, then `-Q*y^i` for `i < k`; rows run
/// over powers of `y` in descending order. With this layout
/// `res(y - a, y - b) = b - a`.
pub fn sylvester<T: Ring>(p: &[T], q: &[T], ctx: &T) -> Result<Matrix<T>, ArithError> {
    let (p, q) = (trim(p), trim(q));
    if p.is_empty() || q.is_empty() {
        return Err(ArithError::DivisionByZero);
    }
    let (k, l) = (p.len() - 1, q.len() - 1);
    let n = k + l;
    if n == 0 {
        return Err(ArithError::ConstantInput);
    }
    let mut m = vec![vec![ctx.zero_like(); n]; n];
    for (r, row) in m.iter_mut().enumerate() {
        let e = n - 1 - r;
        for i in 0..l {
            if e >= i && e - i <= k {
                row[i] = p[e - i].clone();
            }
        }
        for i in 0..k {
            if e >= i && e - i <= l {
                row[l + i] = q[e - i].neg();
            }
        }
    }
    Ok(m)
}

pub fn resultant<T: Ring>(p: &[T], q: &[T], ctx: &T) -> Result<T, ArithError> {
    Ok(det(&sylvester(p, q, ctx)?, ctx))
}

pub fn derivative<T: Ring>(p: &[T]) -> Vec<T> {
    p.iter().enumerate().skip(1).map(|(k, c)| c.mul(&c.from_int(&(k as i64).into()))).collect()
}

/// `res(P, P')` under the same convention.
pub fn discriminant<T: Ring>(p: &[T], ctx: &T) -> Result<T, ArithError> {
    let p = trim(p);
    if p.len() < 2 {
        return Err(ArithError::ConstantInput);
    }
    resultant(p, &derivative(p), ctx)
}

/// Resultant of two polynomials with respect to one of their variables.
pub fn resultant_in<C: Ring>(p: &MultiPoly<C>, q: &MultiPoly<C>, var: usize) -> Result<MultiPoly<C>, ArithError> {
    let cp = p.collect_in(var);
    let cq = q.collect_in(var);
    resultant(&cp, &cq, &p.zero_like())
}

pub fn discriminant_in<C: Ring>(p: &MultiPoly<C>, var: usize) -> Result<MultiPoly<C>, ArithError> {
    discriminant(&p.collect_in(var), &p.zero_like())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::Int;

    type P = MultiPoly<Int>;

    #[test]
    fn sign_convention() {
        let z = Int::ZERO;
        let a = P::var(3, 0, &z);
        let b = P::var(3, 1, &z);
        let y = 2;
        let one = P::one(3, &z);
        let f = P::var(3, y, &z).sub(&a);
        let g = P::var(3, y, &z).sub(&b);
        assert_eq!(resultant_in(&f, &g, y).unwrap(), b.sub(&a));
        let f = a.mul(&P::var(3, y, &z)).add(&one);
        let g = b.mul(&P::var(3, y, &z)).add(&one);
        assert_eq!(resultant_in(&f, &g, y).unwrap(), b.sub(&a));
    }

    #[test]
    fn discriminants() {
        let z = Int::ZERO;
        // (y-1)(y-2) = y^2 - 3y + 2
        let d = discriminant(&[Int::from(2), Int::from(-3), Int::from(1)], &z).unwrap();
        assert!(!d.is_zero());
        let d2 = discriminant(&[Int::from(1), Int::from(-2), Int::from(1)], &z).unwrap();
        assert!(d2.is_zero());
        assert_eq!(discriminant(&[Int::from(3)], &z), Err(ArithError::ConstantInput));
    }
}
