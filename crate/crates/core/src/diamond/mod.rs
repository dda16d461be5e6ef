//! Diamond and half-diamond sub-matrices of `s x t`.

mod hull;
mod probe;

use std::fmt;
use std::str::FromStr;

pub use hull::{
    all_contiguous_minors_nonzero, contiguous_minor, desnanot_jacobi_check, hull_check_matrix, hull_check_product,
    m_sharp, ContiguousShape, HullRegion, HullVerdict, ProductHullReport,
};
pub use probe::{probe_classes, probe_specs, probe_window, rank_probe, ClassRank, ProbeClass, ProbeMode, ProbeReport, ProbeScalar};

use crate::arith::matrix::det;
use crate::arith::{Matrix, Ring};
use crate::error::DiamondError;
use crate::sequences::Terms;

/// Meeting point of the diagonal `c1` and the anti-diagonal `c2`.
pub fn diamond_position(c1: i64, c2: i64) -> Result<(i64, i64), DiamondError> {
    if (c1 - c2).rem_euclid(2) != 0 {
        return Err(DiamondError::ParityMismatch(c1, c2));
    }
    Ok(((c1 + c2) / 2, (c2 - c1) / 2))
}

/// Which offset family carries the mod-4 condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfSide {
    None,
    Left,
    Right,
}

impl fmt::Display for HalfSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalfSide::None => "none",
            HalfSide::Left => "left",
            HalfSide::Right => "right",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondSpec {
    e1: Vec<i64>,
    e2: Vec<i64>,
    half: HalfSide,
}

fn is_ap(e: &[i64], d: i64) -> bool {
    e.windows(2).all(|w| w[1] - w[0] == d)
}

impl DiamondSpec {
    /// `e1` are diagonal offsets, `e2` anti-diagonal offsets.
    pub fn new(e1: Vec<i64>, e2: Vec<i64>, half: HalfSide) -> Result<Self, DiamondError> {
        for e in [&e1, &e2] {
            if !e.windows(2).all(|w| w[0] < w[1]) {
                return Err(DiamondError::InvalidSpec("offsets must be strictly increasing".into()));
            }
        }
        let all: Vec<i64> = e1.iter().chain(&e2).copied().collect();
        if let Some(&first) = all.first() {
            if let Some(&bad) = all.iter().find(|&&c| (c - first).rem_euclid(2) != 0) {
                return Err(DiamondError::ParityMismatch(first, bad));
            }
        }
        let side = match half {
            HalfSide::None => None,
            HalfSide::Left => Some(&e1),
            HalfSide::Right => Some(&e2),
        };
        if let Some(e) = side {
            if e.iter().any(|&c| (c - e[0]).rem_euclid(4) != 0) {
                return Err(DiamondError::InvalidSpec(format!("{half} offsets are not congruent mod 4")));
            }
        }
        Ok(DiamondSpec { e1, e2, half })
    }

    /// Contiguous spec with `rows` diagonals from `c1` and `cols`
    /// anti-diagonals from `c2`, stepping by 2 (or 4 on the half side).
    pub fn contiguous(c1: i64, c2: i64, rows: usize, cols: usize, half: HalfSide) -> Result<Self, DiamondError> {
        let (d1, d2) = match half {
            HalfSide::None => (2, 2),
            HalfSide::Left => (4, 2),
            HalfSide::Right => (2, 4),
        };
        let e1 = (0..rows as i64).map(|a| c1 + d1 * a).collect();
        let e2 = (0..cols as i64).map(|b| c2 + d2 * b).collect();
        DiamondSpec::new(e1, e2, half)
    }

    pub fn diagonals(&self) -> &[i64] {
        &self.e1
    }

    pub fn anti_diagonals(&self) -> &[i64] {
        &self.e2
    }

    pub fn half(&self) -> HalfSide {
        self.half
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.e1.len(), self.e2.len())
    }

    pub fn is_contiguous(&self) -> bool {
        match self.half {
            HalfSide::None => is_ap(&self.e1, 2) && is_ap(&self.e2, 2),
            HalfSide::Left => is_ap(&self.e1, 4) && is_ap(&self.e2, 2),
            HalfSide::Right => is_ap(&self.e1, 2) && is_ap(&self.e2, 4),
        }
    }

    pub fn position(&self, i: usize, j: usize) -> (i64, i64) {
        diamond_position(self.e1[i], self.e2[j]).expect("validated parity")
    }

    /// Smallest and largest row and column indices touched.
    pub fn extent(&self) -> Option<((i64, i64), (i64, i64))> {
        let (a1, b1) = (*self.e1.first()?, *self.e1.last()?);
        let (a2, b2) = (*self.e2.first()?, *self.e2.last()?);
        Some((((a1 + a2) / 2, (b1 + b2) / 2), ((a2 - b1) / 2, (b2 - a1) / 2)))
    }
}

impl fmt::Display for DiamondSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |e: &[i64]| e.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "e'={} e''={} half={}", j(&self.e1), j(&self.e2), self.half)
    }
}

impl FromStr for DiamondSpec {
    type Err = DiamondError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let perr = |m: &str| DiamondError::Parse(m.to_string());
        let list = |v: &str| -> Result<Vec<i64>, DiamondError> {
            v.split(',').filter(|t| !t.is_empty()).map(|t| t.trim().parse().map_err(|_| perr(t))).collect()
        };
        let (mut e1, mut e2, mut half) = (None, None, HalfSide::None);
        for field in s.split_whitespace() {
            if let Some(v) = field.strip_prefix("e''=") {
                e2 = Some(list(v)?);
            } else if let Some(v) = field.strip_prefix("e'=") {
                e1 = Some(list(v)?);
            } else if let Some(v) = field.strip_prefix("half=") {
                half = match v {
                    "none" => HalfSide::None,
                    "left" => HalfSide::Left,
                    "right" => HalfSide::Right,
                    _ => return Err(perr(field)),
                };
            } else {
                return Err(perr(field));
            }
        }
        DiamondSpec::new(e1.ok_or_else(|| perr("missing e'"))?, e2.ok_or_else(|| perr("missing e''"))?, half)
    }
}

/// The matrix `(i, j) -> s_i t_j` over two realised term lists.
#[derive(Clone, Copy, Debug)]
pub struct ProductMatrix<'a, T> {
    pub s: &'a Terms<T>,
    pub t: &'a Terms<T>,
}

impl<'a, T: Ring> ProductMatrix<'a, T> {
    pub fn new(s: &'a Terms<T>, t: &'a Terms<T>) -> Self {
        ProductMatrix { s, t }
    }

    pub fn entry(&self, i: i64, j: i64) -> Option<T> {
        Some(self.s.get(i)?.mul(self.t.get(j)?))
    }

    pub fn entry_checked(&self, i: i64, j: i64) -> Result<T, DiamondError> {
        self.entry(i, j).ok_or(DiamondError::Unrealised { row: i, col: j })
    }
}

pub fn extract<T: Ring>(m: &ProductMatrix<T>, spec: &DiamondSpec) -> Result<Matrix<T>, DiamondError> {
    let (r, c) = spec.shape();
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let (row, col) = spec.position(i, j);
                    m.entry_checked(row, col)
                })
                .collect()
        })
        .collect()
}

pub fn diamond_minor<T: Ring>(m: &ProductMatrix<T>, spec: &DiamondSpec) -> Result<T, DiamondError> {
    let (r, c) = spec.shape();
    if r != c {
        return Err(DiamondError::NotSquare { rows: r, cols: c });
    }
    let mat = extract(m, spec)?;
    let ctx = m.s.vals.first().or(m.t.vals.first()).ok_or(DiamondError::Unrealised { row: 0, col: 0 })?;
    Ok(det(&mat, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::sequences::unit_sequence;

    #[test]
    fn positions() {
        assert_eq!(diamond_position(2, 4), Ok((3, 1)));
        assert_eq!(diamond_position(0, 0), Ok((0, 0)));
        assert_eq!(diamond_position(-4, 2), Ok((-1, 3)));
        assert!(diamond_position(1, 2).is_err());
    }

    #[test]
    fn contiguity() {
        let d = DiamondSpec::new(vec![0, 2, 4], vec![0, 2, 4], HalfSide::None).unwrap();
        assert!(d.is_contiguous());
        let h = DiamondSpec::new(vec![0, 2, 4], vec![0, 4, 8], HalfSide::Right).unwrap();
        assert!(h.is_contiguous());
        assert!(!DiamondSpec::new(vec![0, 2, 4], vec![0, 4, 8], HalfSide::None).unwrap().is_contiguous());
        assert!(matches!(
            DiamondSpec::new(vec![0, 2, 4], vec![1, 3, 5], HalfSide::None),
            Err(DiamondError::ParityMismatch(0, 1))
        ));
        assert!(DiamondSpec::new(vec![0, 2, 4], vec![0, 2, 4], HalfSide::Right).is_err());
        let text = "e'=-4,-2,0,2,4 e''=-2,2,6,10,14 half=right";
        let spec: DiamondSpec = text.parse().unwrap();
        assert_eq!(spec.to_string(), text);
        assert!(spec.is_contiguous());
    }

    #[test]
    fn unit_minors_vanish() {
        let mut s6 = unit_sequence(6).unwrap();
        s6.extend_to(-10, 12);
        let t = s6.terms();
        let m = ProductMatrix::new(&t, &t);
        let one = DiamondSpec::new(vec![0], vec![0], HalfSide::None).unwrap();
        assert_eq!(extract(&m, &one).unwrap(), vec![vec![rat(1)]]);
        let five = DiamondSpec::new(vec![-4, -2, 0, 2, 4], vec![2, 4, 6, 8, 10], HalfSide::None).unwrap();
        assert_eq!(spec_rows(&five), (-1, 7));
        assert_eq!(diamond_minor(&m, &five).unwrap(), rat(0));
        let four = DiamondSpec::contiguous(2, 8, 4, 4, HalfSide::None).unwrap();
        assert_ne!(diamond_minor(&m, &four).unwrap(), rat(0));
        let far = DiamondSpec::new(vec![-30], vec![0], HalfSide::None).unwrap();
        assert_eq!(extract(&m, &far), Err(DiamondError::Unrealised { row: -15, col: 15 }));
        let mut s7 = unit_sequence(7).unwrap();
        s7.extend_to(-12, 14);
        let t7 = s7.terms();
        let m7 = ProductMatrix::new(&t7, &t7);
        let h = DiamondSpec::new(vec![-4, -2, 0, 2, 4], vec![-2, 2, 6, 10, 14], HalfSide::Right).unwrap();
        assert_eq!(diamond_minor(&m7, &h).unwrap(), rat(0));
    }

    fn spec_rows(s: &DiamondSpec) -> (i64, i64) {
        s.extent().unwrap().0
    }
}
