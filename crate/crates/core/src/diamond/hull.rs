use super::probe::{probe_classes, ProbeClass, ProbeMode};
use super::{extract, DiamondSpec, HalfSide, ProductMatrix};
use crate::arith::matrix::det;
use crate::arith::{Int, Matrix, Ring};
use crate::error::DiamondError;

/// Geometry of contiguous (half-)diamond minors: the minor with corner
/// `(row, col)` has entry `(a, b)` at the position returned by `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContiguousShape(pub HalfSide);

impl ContiguousShape {
    pub fn position(&self, row: i64, col: i64, a: i64, b: i64) -> (i64, i64) {
        match self.0 {
            HalfSide::None => (row + a + b, col - a + b),
            HalfSide::Right => (row + a + 2 * b, col - a + 2 * b),
            HalfSide::Left => (row + 2 * a + b, col - 2 * a + b),
        }
    }

    /// Row span and column reach to either side of the corner.
    pub fn reach(&self, size: usize) -> (i64, i64, i64) {
        let k = size as i64 - 1;
        match self.0 {
            HalfSide::None => (2 * k, k, k),
            HalfSide::Right => (3 * k, k, 2 * k),
            HalfSide::Left => (3 * k, 2 * k, k),
        }
    }

    pub fn spec(&self, row: i64, col: i64, size: usize) -> DiamondSpec {
        DiamondSpec::contiguous(row - col, row + col, size, size, self.0).expect("contiguous offsets are valid")
    }
}

/// Contiguous `size x size` minor with corner `(row, col)`, or `None` when
/// some entry is not realised.
pub fn contiguous_minor<T: Ring>(m: &ProductMatrix<T>, shape: ContiguousShape, size: usize, row: i64, col: i64) -> Option<T> {
    let mut mat = Vec::with_capacity(size);
    for a in 0..size as i64 {
        let mut r = Vec::with_capacity(size);
        for b in 0..size as i64 {
            let (i, j) = shape.position(row, col, a, b);
            r.push(m.entry(i, j)?);
        }
        mat.push(r);
    }
    let ctx = m.s.vals.first()?;
    Some(det(&mat, ctx))
}

fn sub_det<T: Ring>(m: &Matrix<T>, r0: usize, c0: usize, k: usize, ctx: &T) -> T {
    let sub: Matrix<T> = (r0..r0 + k).map(|i| m[i][c0..c0 + k].to_vec()).collect();
    det(&sub, ctx)
}

/// Outcome of checking the two hypotheses that certify rank `r` on a finite
/// matrix: every contiguous `(r+1)`-minor vanishes, and every contiguous
/// `r`-minor on the main diagonal does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullVerdict {
    pub r: usize,
    pub big_checked: usize,
    /// Corners of the contiguous `(r+1)`-minors that do not vanish.
    pub big_nonzero: Vec<(usize, usize)>,
    pub diag_checked: usize,
    /// Diagonal corners whose contiguous `r`-minor vanishes.
    pub diag_zero: Vec<usize>,
}

impl HullVerdict {
    pub fn vanishing_holds(&self) -> bool {
        self.big_nonzero.is_empty()
    }

    pub fn nondegenerate_holds(&self) -> bool {
        self.diag_zero.is_empty()
    }

    /// Both hypotheses hold, so the matrix has rank exactly `r`.
    pub fn certified(&self) -> bool {
        self.vanishing_holds() && self.nondegenerate_holds() && self.diag_checked > 0
    }
}

pub fn hull_check_matrix<T: Ring>(m: &Matrix<T>, r: usize) -> HullVerdict {
    let rows = m.len();
    let cols = m.first().map_or(0, |x| x.len());
    let mut v = HullVerdict { r, big_checked: 0, big_nonzero: Vec::new(), diag_checked: 0, diag_zero: Vec::new() };
    let Some(ctx) = m.first().and_then(|x| x.first()) else {
        return v;
    };
    let k = r + 1;
    if rows >= k && cols >= k {
        for i in 0..=rows - k {
            for j in 0..=cols - k {
                v.big_checked += 1;
                if !sub_det(m, i, j, k, ctx).is_zero() {
                    v.big_nonzero.push((i, j));
                }
            }
        }
    }
    if rows >= r && cols >= r {
        for d in 0..=(rows - r).min(cols - r) {
            v.diag_checked += 1;
            if sub_det(m, d, d, r, ctx).is_zero() {
                v.diag_zero.push(d);
            }
        }
    }
    v
}

/// Every contiguous `r`-minor of `m` is nonzero.
pub fn all_contiguous_minors_nonzero<T: Ring>(m: &Matrix<T>, r: usize) -> bool {
    let rows = m.len();
    let cols = m.first().map_or(0, |x| x.len());
    let Some(ctx) = m.first().and_then(|x| x.first()) else {
        return r == 0;
    };
    if rows < r || cols < r {
        return true;
    }
    (0..=rows - r).all(|i| (0..=cols - r).all(|j| !sub_det(m, i, j, r, ctx).is_zero()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductHullReport {
    pub window: (i64, i64),
    pub classes: Vec<(ProbeClass, DiamondSpec, HullVerdict)>,
}

impl ProductHullReport {
    pub fn certified(&self) -> bool {
        !self.classes.is_empty() && self.classes.iter().all(|(_, _, v)| v.certified())
    }
}

fn class_matches(class: ProbeClass, c1: i64, c2: i64) -> Option<HalfSide> {
    match class {
        ProbeClass::Parity(q) => (c1.rem_euclid(2) == q as i64).then_some(HalfSide::None),
        ProbeClass::Half { side: HalfSide::Left, residue } => (c1.rem_euclid(4) == residue as i64).then_some(HalfSide::Left),
        ProbeClass::Half { side, residue } => (c2.rem_euclid(4) == residue as i64).then_some(side),
    }
}

/// Where a hull may be placed: every position inside `window x window`,
/// every diagonal offset at least `min_diagonal` and every anti-diagonal
/// offset at least `min_anti_diagonal`.
///
/// In `s x s` the diagonals `c` and `-c` coincide, and a seed symmetric under
/// `i -> n-1-i` also identifies the anti-diagonals `c` and `2(n-1) - c`. A
/// hull straddling such a mirror has repeated rows or columns, and one that
/// touches the fixed line of a mirror has degenerate contiguous minors too,
/// so those minors vanish for reasons unrelated to the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullRegion {
    pub window: (i64, i64),
    pub min_diagonal: i64,
    pub min_anti_diagonal: i64,
}

impl HullRegion {
    pub fn window(lo: i64, hi: i64) -> Self {
        HullRegion { window: (lo, hi), min_diagonal: i64::MIN, min_anti_diagonal: i64::MIN }
    }

    /// Window for `s x s`: diagonals strictly on one side of the main one,
    /// keeping clear of it by one more step in half mode.
    pub fn square(lo: i64, hi: i64, mode: ProbeMode) -> Self {
        let min_diagonal = if mode == ProbeMode::Half { 2 } else { 1 };
        HullRegion { min_diagonal, ..Self::window(lo, hi) }
    }

    /// Window for `s x s` with `s_i = s_{n-1-i}`, such as a unit sequence.
    pub fn palindromic(lo: i64, hi: i64, n: usize, mode: ProbeMode) -> Self {
        let margin = if mode == ProbeMode::Half { 2 } else { 1 };
        HullRegion { min_anti_diagonal: n as i64 - 1 + margin, ..Self::square(lo, hi, mode) }
    }
}

/// Largest square contiguous spec of the class inside the region.
fn largest_hull(class: ProbeClass, region: &HullRegion) -> Option<DiamondSpec> {
    let (lo, hi) = region.window;
    let shape = ContiguousShape(match class {
        ProbeClass::Parity(_) => HalfSide::None,
        ProbeClass::Half { side, .. } => side,
    });
    let w = (hi - lo + 1).max(0) as usize;
    for size in (1..=w).rev() {
        let (span, below, above) = shape.reach(size);
        for row in lo..=hi - span {
            for col in lo + below..=hi - above {
                let (c1, c2) = (row - col, row + col);
                if c1 < region.min_diagonal || c2 < region.min_anti_diagonal || class_matches(class, c1, c2).is_none() {
                    continue;
                }
                return Some(shape.spec(row, col, size));
            }
        }
    }
    None
}

/// For every probe class, take the largest contiguous (half-)diamond
/// sub-matrix inside the region and run `hull_check_matrix` on it.
pub fn hull_check_product<T: Ring>(
    m: &ProductMatrix<T>,
    mode: ProbeMode,
    r: usize,
    region: HullRegion,
) -> Result<ProductHullReport, DiamondError> {
    let (lo, hi) = region.window;
    let window = region.window;
    let mut classes = Vec::new();
    for class in probe_classes(mode) {
        let spec = largest_hull(class, &region).ok_or(DiamondError::WindowTooSmall { lo, hi })?;
        let mat = extract(m, &spec)?;
        let v = hull_check_matrix(&mat, r);
        classes.push((class, spec, v));
    }
    Ok(ProductHullReport { window, classes })
}

/// `det W1 det W4 - det W2 det W3 == det WS det W` for a square `W`.
pub fn desnanot_jacobi_check<T: Ring>(w: &Matrix<T>) -> Result<bool, DiamondError> {
    let n = w.len();
    if n < 2 || w.iter().any(|r| r.len() != n) {
        return Err(DiamondError::NotSquare { rows: n, cols: w.first().map_or(0, |r| r.len()) });
    }
    let ctx = &w[0][0];
    let k = n - 1;
    let lhs = sub_det(w, 0, 0, k, ctx)
        .mul(&sub_det(w, 1, 1, k, ctx))
        .sub(&sub_det(w, 0, 1, k, ctx).mul(&sub_det(w, 1, 0, k, ctx)));
    let rhs = sub_det(w, 1, 1, n - 2, ctx).mul(&det(w, ctx));
    Ok(lhs == rhs)
}

/// Finite window `[lo, hi]^2` of the matrix with 1 wherever `i = j mod r`,
/// raised to 2 where additionally `i, j >= 0` and `i = j = 0 mod r`.
pub fn m_sharp(r: usize, lo: i64, hi: i64) -> Matrix<Int> {
    let r = r as i64;
    (lo..=hi)
        .map(|i| {
            (lo..=hi)
                .map(|j| {
                    if (i - j).rem_euclid(r) != 0 {
                        Int::ZERO
                    } else if i >= 0 && j >= 0 && i.rem_euclid(r) == 0 {
                        Int::from(2)
                    } else {
                        Int::ONE
                    }
                })
                .collect()
        })
        .collect()
}
