use std::fmt;

/// Largest number of indeterminates a single polynomial may carry.
pub const MAX_VARS: usize = 24;

/// Exponent vector with a cached total degree.
///
/// Exponents may be negative (Laurent monomials). The derived ordering
/// compares total degree first and then exponents lexicographically with
/// variable 0 most significant, which is graded-lex with `x0 > x1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: i32,
    e: [i16; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, e: [0; MAX_VARS] };

    pub fn from_exps(exps: &[i32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "too many indeterminates");
        let mut m = Mono::ONE;
        for (k, &x) in exps.iter().enumerate() {
            m.e[k] = i16::try_from(x).expect("exponent out of range");
            m.deg += x;
        }
        m
    }

    pub fn var(k: usize, power: i32) -> Mono {
        let mut m = Mono::ONE;
        m.e[k] = power as i16;
        m.deg = power;
        m
    }

    #[inline]
    pub fn exp(&self, k: usize) -> i32 {
        self.e[k] as i32
    }

    #[inline]
    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn exps(&self, nvars: usize) -> Vec<i32> {
        self.e[..nvars].iter().map(|&x| x as i32).collect()
    }

    pub fn set_exp(&mut self, k: usize, x: i32) {
        self.deg += x - self.e[k] as i32;
        self.e[k] = i16::try_from(x).expect("exponent out of range");
    }

    /// Degree restricted to a range of variables.
    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> i32 {
        self.e[vars].iter().map(|&x| x as i32).sum()
    }

    #[inline]
    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut e = [0i16; MAX_VARS];
        for k in 0..MAX_VARS {
            e[k] = self.e[k].checked_add(rhs.e[k]).expect("exponent overflow");
        }
        Mono { deg: self.deg + rhs.deg, e }
    }

    #[inline]
    pub fn div(&self, rhs: &Mono) -> Mono {
        let mut e = [0i16; MAX_VARS];
        for k in 0..MAX_VARS {
            e[k] = self.e[k].checked_sub(rhs.e[k]).expect("exponent overflow");
        }
        Mono { deg: self.deg - rhs.deg, e }
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut e = [0i16; MAX_VARS];
        for v in 0..MAX_VARS {
            e[v] = i16::try_from(self.e[v] as i32 * k).expect("exponent overflow");
        }
        Mono { deg: self.deg * k, e }
    }

    /// True when `rhs` divides `self` in the polynomial (not Laurent) sense.
    #[inline]
    pub fn divisible_by(&self, rhs: &Mono) -> bool {
        self.e.iter().zip(rhs.e.iter()).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.e.iter().all(|&x| x >= 0)
    }

    pub fn meet(&self, rhs: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for k in 0..MAX_VARS {
            m.e[k] = self.e[k].min(rhs.e[k]);
            m.deg += m.e[k] as i32;
        }
        m
    }

    pub fn join(&self, rhs: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for k in 0..MAX_VARS {
            m.e[k] = self.e[k].max(rhs.e[k]);
            m.deg += m.e[k] as i32;
        }
        m
    }

    /// Negative part, as a nonnegative monomial: `x^max(-e, 0)`.
    pub fn negative_part(&self) -> Mono {
        let mut m = Mono::ONE;
        for k in 0..MAX_VARS {
            if self.e[k] < 0 {
                m.e[k] = -self.e[k];
                m.deg += m.e[k] as i32;
            }
        }
        m
    }

    /// Permute/relabel variables: variable `k` moves to `map[k]`.
    pub fn remap(&self, map: &[usize]) -> Mono {
        let mut m = Mono::ONE;
        for (k, &to) in map.iter().enumerate() {
            if self.e[k] != 0 {
                m.e[to] += self.e[k];
            }
        }
        m.deg = self.deg;
        m
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(|&k| self.e[k] != 0)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&k| self.e[k] != 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Mono::from_exps(&[2, 0, 0, 2]);
        let b = Mono::from_exps(&[1, 1, 1, 1]);
        let c = Mono::from_exps(&[3, 0, 0, 0]);
        let d = Mono::from_exps(&[0, 0, 0, 5]);
        assert!(a > b);
        assert!(c < d);
        assert!(c > Mono::from_exps(&[2, 1, 0, 0]));
    }

    #[test]
    fn arithmetic() {
        let a = Mono::from_exps(&[1, -2, 3]);
        let b = Mono::from_exps(&[0, 2, -1]);
        assert_eq!(a.mul(&b), Mono::from_exps(&[1, 0, 2]));
        assert_eq!(a.mul(&b).div(&b), a);
        assert_eq!(a.negative_part(), Mono::from_exps(&[0, 2, 0]));
        assert_eq!(a.remap(&[2, 1, 0]), Mono::from_exps(&[3, -2, 1]));
    }
}
