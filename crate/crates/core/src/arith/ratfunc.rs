use super::poly::MultiPoly;
use super::ring::Ring;
use crate::error::ArithError;

/// Quotient of two polynomials, not necessarily in lowest terms.
#[derive(Clone)]
pub struct RatFunc<C> {
    pub num: MultiPoly<C>,
    pub den: MultiPoly<C>,
}

impl<C: Ring> RatFunc<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly<C>) -> Self {
        let den = p.one_like();
        RatFunc { num: p, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Cancel a common factor when the numerator divides exactly.
    fn tidy(num: MultiPoly<C>, den: MultiPoly<C>) -> Self {
        if den.is_monomial() {
            if let Ok(q) = num.div_laurent(&den) {
                if q.is_polynomial() {
                    return RatFunc { den: q.one_like(), num: q };
                }
            }
        }
        RatFunc { num, den }
    }
}

impl<C: Ring> std::fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl<C: Ring> PartialEq for RatFunc<C> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul_poly(&other.den) == other.num.mul_poly(&self.den)
    }
}

impl<C: Ring> Ring for RatFunc<C> {
    fn zero_like(&self) -> Self {
        RatFunc { num: self.num.zero_like(), den: self.num.one_like() }
    }

    fn one_like(&self) -> Self {
        RatFunc { num: self.num.one_like(), den: self.num.one_like() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc { num: self.num.add_poly(&rhs.num), den: self.den.clone() };
        }
        let num = self.num.mul_poly(&rhs.den).add_poly(&rhs.num.mul_poly(&self.den));
        Self::tidy(num, self.den.mul_poly(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::tidy(self.num.mul_poly(&rhs.num), self.den.mul_poly(&rhs.den))
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg_poly(), den: self.den.clone() }
    }

    fn from_int(&self, v: &super::int::Int) -> Self {
        RatFunc::from_poly(self.num.from_int(v))
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.num.is_zero() {
            return None;
        }
        Some(Self::tidy(self.num.mul_poly(&rhs.den), self.den.mul_poly(&rhs.num)))
    }
}
