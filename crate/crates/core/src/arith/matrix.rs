use rustc_hash::FxHashMap;

use super::fp::{inv_mod, mul_mod, sub_mod};
use super::int::Int;
use super::poly::MultiPoly;
use super::ring::{Field, Ring};

/// Dense matrix stored as rows.
pub type Matrix<T> = Vec<Vec<T>>;

fn check_square<T>(m: &Matrix<T>) -> usize {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    n
}

/// Determinant by cofactor expansion, memoised over column subsets.
///
/// Uses no division, so it works over any commutative ring. Cost grows as
/// `n * 2^n` products; intended for n up to about 12.
pub fn det_expand<T: Ring>(m: &Matrix<T>, ctx: &T) -> T {
    let n = check_square(m);
    if n == 0 {
        return ctx.one_like();
    }
    assert!(n <= 20, "expansion size limit");
    // Minor of the last k rows on the column set `mask` (popcount k).
    let mut memo: FxHashMap<u32, T> = FxHashMap::default();
    let mut cur: Vec<u32> = (0..n).map(|c| 1u32 << c).collect();
    for &mask in &cur {
        memo.insert(mask, m[n - 1][mask.trailing_zeros() as usize].clone());
    }
    for row in (0..n - 1).rev() {
        let mut next: FxHashMap<u32, T> = FxHashMap::default();
        for &mask in &cur {
            let sub = &memo[&mask];
            if sub.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let a = &m[row][c];
                if a.is_zero() {
                    continue;
                }
                // Sign from the position of c among the chosen columns.
                let below = (mask & ((1u32 << c) - 1)).count_ones();
                let t = a.mul(sub);
                let e = next.entry(mask | (1 << c)).or_insert_with(|| ctx.zero_like());
                if below % 2 == 0 {
                    e.add_assign(&t);
                } else {
                    e.sub_assign(&t);
                }
            }
        }
        if next.is_empty() {
            return ctx.zero_like();
        }
        cur = next.keys().copied().collect();
        cur.sort_unstable();
        memo = next;
    }
    memo.remove(&((1u32 << n) - 1)).unwrap_or_else(|| ctx.zero_like())
}

/// Bareiss fraction-free determinant over an integral domain.
pub fn det_bareiss<T: Ring>(m: &Matrix<T>, ctx: &T) -> T {
    let n = check_square(m);
    if n == 0 {
        return ctx.one_like();
    }
    let mut a = m.clone();
    let mut prev = ctx.one_like();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return ctx.zero_like();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = ctx.zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Determinant with the cheaper method for the size at hand.
pub fn det<T: Ring>(m: &Matrix<T>, ctx: &T) -> T {
    if m.len() <= 6 {
        det_expand(m, ctx)
    } else {
        det_bareiss(m, ctx)
    }
}

/// Row rank by Gaussian elimination; pivot is the first nonzero entry
/// below the current row in the current column.
pub fn rank_over_field<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..cols {
                let t = f.mul(&a[r][j]);
                a[i][j].sub_assign(&t);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel from the reduced row echelon form: one vector
/// per free column, with 1 in that column.
pub fn nullspace_over_field<F: Field>(m: &Matrix<F>, cols: usize, zero: &F) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let rows = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let t = f.mul(&a[r][j]);
                a[i][j].sub_assign(&t);
            }
        }
        pivots.push(c);
    }
    let one = zero.one_like();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); cols];
            v[free] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            v
        })
        .collect()
}

/// Rank over `F_p` on raw residues, in place.
pub fn rank_mod_p(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, r);
        let inv = inv_mod(a[r][c], p).expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Determinant over `F_p` on raw residues.
pub fn det_mod_p(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = sub_mod(0, det, p);
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p).expect("nonzero pivot");
        for i in c + 1..n {
            let f = mul_mod(a[i][c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..n {
                a[i][j] = sub_mod(a[i][j], mul_mod(f, a[c][j], p), p);
            }
        }
    }
    det
}

/// Integer-content normalisation used on kernel vectors.
pub trait Content: Ring {
    /// Gcd of the integer coefficients (nonnegative).
    fn int_content(&self) -> Int;
    fn div_int(&self, g: &Int) -> Self;
    /// Sign of the leading integer coefficient.
    fn lead_sign(&self) -> i32;
}

impl Content for Int {
    fn int_content(&self) -> Int {
        self.abs()
    }

    fn div_int(&self, g: &Int) -> Self {
        self.exact_div(g).expect("content divides")
    }

    fn lead_sign(&self) -> i32 {
        self.signum()
    }
}

impl Content for MultiPoly<Int> {
    fn int_content(&self) -> Int {
        self.content()
    }

    fn div_int(&self, g: &Int) -> Self {
        self.map_coeffs(|c| c.exact_div(g).expect("content divides"), &Int::ZERO)
    }

    fn lead_sign(&self) -> i32 {
        self.leading().map_or(0, |t| t.1.signum())
    }
}

/// Basis of the right kernel by fraction-free Gauss-Jordan elimination.
///
/// Every intermediate entry is a minor of the input, so each update
/// divides exactly by the previous pivot. Pivot: the entry of fewest terms
/// in the column among unused rows, ties to the lowest row. Each vector has
/// its integer content removed and a positive leading entry.
pub fn nullspace_fraction_free<T: Content>(m: &Matrix<T>, ctx: &T) -> Vec<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut prev = ctx.one_like();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let best = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| (a[i][c].weight(), i));
        let Some(piv) = best else {
            continue;
        };
        a.swap(piv, r);
        let p = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() && p == prev {
                continue;
            }
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let mut v = p.mul(&row[j]);
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v.sub_assign(&f.mul(&pivot_row[j]));
                }
                row[j] = if prev.is_one() { v } else { v.exact_div(&prev).expect("fraction-free step is exact") };
            }
            row[c] = ctx.zero_like();
        }
        prev = p;
        pivots.push(c);
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![ctx.zero_like(); cols];
        v[f] = prev.clone();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = a[i][f].neg();
        }
        basis.push(normalise_vector(v));
    }
    basis
}

pub fn normalise_vector<T: Content>(v: Vec<T>) -> Vec<T> {
    let mut g = Int::ZERO;
    for x in &v {
        if !x.is_zero() {
            g = g.gcd(&x.int_content());
        }
    }
    if g.is_zero() {
        return v;
    }
    let lead = v.iter().find(|x| !x.is_zero()).map_or(1, |x| x.lead_sign());
    let g = if lead < 0 { Ring::neg(&g) } else { g };
    if g.is_one() {
        return v;
    }
    v.iter().map(|x| x.div_int(&g)).collect()
}

pub fn mat_vec<T: Ring>(m: &Matrix<T>, v: &[T], ctx: &T) -> Vec<T> {
    m.iter()
        .map(|row| {
            let mut acc = ctx.zero_like();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::PrimeField;

    fn im(rows: &[&[i64]]) -> Matrix<Int> {
        rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
    }

    #[test]
    fn determinants_agree() {
        let m = im(&[&[2, -1, 0, 3], &[1, 4, 2, -2], &[0, 5, -3, 1], &[7, 1, 1, 1]]);
        let a = det_expand(&m, &Int::ZERO);
        let b = det_bareiss(&m, &Int::ZERO);
        assert_eq!(a, b);
        let mp: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid_u64(101)).collect()).collect();
        assert_eq!(det_mod_p(&mp, 101), a.rem_euclid_u64(101));
    }

    #[test]
    fn ranks() {
        let f = PrimeField::new(7).unwrap();
        let z: Matrix<_> = vec![vec![f.zero(); 4]; 4];
        assert_eq!(rank_over_field(&z), 0);
        let id: Matrix<_> = (0..5).map(|i| (0..5).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        assert_eq!(rank_over_field(&id), 5);
        let mut raw: Vec<Vec<u64>> = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(&mut raw, 7), 2);
    }

    #[test]
    fn kernel_examples() {
        let id = im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(nullspace_fraction_free(&id, &Int::ZERO).is_empty());
        let x0 = MultiPoly::var(2, 0, &Int::ZERO);
        let x1 = MultiPoly::var(2, 1, &Int::ZERO);
        let m = vec![vec![x0.clone(), x1.neg()]];
        let k = nullspace_fraction_free(&m, &x0.zero_like());
        assert_eq!(k, vec![vec![x1, x0]]);
    }
}
