//! The admissible numerator space, the linear map `phi` whose kernel is the
//! space of invariants `Phi / Pi`, and the bundled invariants of orders 4 to 7.

mod sigma;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::fp::random_prime;
use crate::arith::matrix::{mat_vec, nullspace_fraction_free, rank_mod_p, Matrix};
use crate::arith::{Int, Mono, PrimeField, RatFunc, Ring, ZPoly};
use crate::data;
use crate::error::InvariantError;
use crate::sequences::{symmetry_basis, GRType, Layout, Recurrence};

pub use sigma::{
    invariant_along, is_invariant, is_invariant_with, sigma_apply, sigma_images, twin_check, CheckMode, Verdict,
    Witness,
};

/// Recurrence family whose invariants are studied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Somos(usize),
    GaleRobinson(GRType),
}

impl Family {
    pub fn somos(n: usize) -> Result<Self, InvariantError> {
        if n < 2 {
            return Err(InvariantError::InvalidOrder(n));
        }
        Ok(Family::Somos(n))
    }

    pub fn order(&self) -> usize {
        match self {
            Family::Somos(n) => *n,
            Family::GaleRobinson(t) => t.order(),
        }
    }

    pub fn layout(&self) -> Layout {
        match self {
            Family::Somos(n) => Layout::somos(*n, false),
            Family::GaleRobinson(t) => Layout::gale_robinson(*t, false),
        }
    }

    /// The recurrence with the coefficient symbols `a_j` as coefficients.
    pub fn recurrence(&self) -> Recurrence<ZPoly> {
        let l = self.layout();
        let coeffs: Vec<ZPoly> = (1..=l.n_alpha).map(|j| l.alpha_var(j)).collect();
        match self {
            Family::Somos(n) => Recurrence::somos(*n, coeffs),
            Family::GaleRobinson(t) => Recurrence::gale_robinson(*t, coeffs),
        }
        .expect("coefficient count matches layout")
    }

    /// `N = sum_k a_k x_{p_k} x_{n-p_k}`, so that the shift sends `x_{n-1}` to `N / x0`.
    pub fn shift_numerator(&self) -> ZPoly {
        let l = self.layout();
        self.recurrence().rhs(|i| l.x_var(i))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Somos(n) => write!(f, "somos-{n}"),
            Family::GaleRobinson(t) => write!(f, "gr{t}"),
        }
    }
}

/// `C(2n - 1, n)`, the number of degree-`n` monomials in `n` variables.
pub fn ambient_dimension(n: usize) -> u128 {
    let mut acc: u128 = 1;
    for k in 0..n as u128 {
        acc = acc * (2 * n as u128 - 1 - k) / (k + 1);
    }
    acc
}

/// Degree-`n` exponent tuples compatible with the scaling symmetries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub family: Family,
    pub tuples: Vec<Vec<i32>>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn mono(&self, k: usize) -> Mono {
        let l = self.family.layout();
        let mut m = Mono::ONE;
        for (i, &d) in self.tuples[k].iter().enumerate() {
            m.set_exp(l.x(i), d);
        }
        m
    }

    pub fn position(&self, x_part: &Mono) -> Option<usize> {
        (0..self.len()).find(|&k| self.mono(k) == *x_part)
    }
}

fn compositions(total: i32, parts: usize, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for d in (0..=total).rev() {
        prefix.push(d);
        compositions(total - d, parts - 1, prefix, out);
        prefix.pop();
    }
}

pub fn upsilon_box_basis(family: Family) -> MonomialBasis {
    let n = family.order();
    let sym = symmetry_basis(n);
    let targets: Vec<i64> = sym.elems.iter().map(|e| (0..n as i64).map(|i| e.value(i)).sum()).collect();
    let mut all = Vec::new();
    compositions(n as i32, n, &mut Vec::with_capacity(n), &mut all);
    let tuples = all
        .into_iter()
        .filter(|d| {
            sym.elems
                .iter()
                .zip(&targets)
                .all(|(e, &t)| d.iter().enumerate().map(|(i, &di)| di as i64 * e.value(i as i64)).sum::<i64>() == t)
        })
        .collect();
    MonomialBasis { family, tuples }
}

/// `x0^{n-2} N Phi - Phi(x0 x1, ..., x0 x_{n-1}, N)`.
pub fn phi(family: Family, p: &ZPoly) -> ZPoly {
    let l = family.layout();
    let n = l.n;
    let big_n = family.shift_numerator();
    let mut images: Vec<ZPoly> = (0..l.nvars()).map(|v| ZPoly::var(l.nvars(), v, &Int::ZERO)).collect();
    for i in 0..n - 1 {
        images[l.x(i)] = l.x_var(0).mul_poly(&l.x_var(i + 1));
    }
    images[l.x(n - 1)] = big_n.clone();
    let lhs = p.mul_poly(&big_n).mul_mono(&Mono::var(l.x(0), n as i32 - 2));
    lhs.sub_poly(&p.compose(&images))
}

/// Split a term's monomial into its seed part and its coefficient-symbol part.
fn split_mono(l: &Layout, m: &Mono) -> (Mono, Mono) {
    let mut x = *m;
    let mut a = *m;
    for v in 0..l.nvars() {
        if l.x_range().contains(&v) {
            a.set_exp(v, 0);
        } else {
            x.set_exp(v, 0);
        }
    }
    (x, a)
}

/// Group `p` by seed monomial; each group is a polynomial in the `a_j` only.
pub fn coefficients_in_x(l: &Layout, p: &ZPoly) -> BTreeMap<std::cmp::Reverse<Mono>, ZPoly> {
    let mut groups: BTreeMap<std::cmp::Reverse<Mono>, Vec<(Mono, Int)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (x, a) = split_mono(l, m);
        groups.entry(std::cmp::Reverse(x)).or_default().push((a, c.clone()));
    }
    groups.into_iter().map(|(k, t)| (k, ZPoly::from_terms(l.nvars(), t, &Int::ZERO))).collect()
}

/// Matrix of `phi` on the admissible monomials.
#[derive(Clone, Debug)]
pub struct PhiMatrix {
    pub basis: MonomialBasis,
    /// Seed monomials indexing the rows.
    pub rows: Vec<Mono>,
    pub entries: Matrix<ZPoly>,
}

pub fn phi_matrix(family: Family) -> PhiMatrix {
    let basis = upsilon_box_basis(family);
    let l = family.layout();
    let images: Vec<BTreeMap<std::cmp::Reverse<Mono>, ZPoly>> = (0..basis.len())
        .map(|k| coefficients_in_x(&l, &phi(family, &ZPoly::monomial(l.nvars(), basis.mono(k), Int::ONE))))
        .collect();
    let mut rows: Vec<Mono> = images.iter().flat_map(|g| g.keys().map(|k| k.0)).collect();
    rows.sort_by(|a, b| b.cmp(a));
    rows.dedup();
    let zero = ZPoly::zero(l.nvars(), &Int::ZERO);
    let entries = rows
        .iter()
        .map(|r| {
            images.iter().map(|g| g.get(&std::cmp::Reverse(*r)).cloned().unwrap_or_else(|| zero.clone())).collect()
        })
        .collect();
    PhiMatrix { basis, rows, entries }
}

/// Candidate invariant `Phi / Pi`, with `Phi` homogeneous of degree `n` in the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    pub family: Family,
    pub name: Option<String>,
    pub phi: ZPoly,
}

impl InvariantPoly {
    pub fn new(family: Family, phi: ZPoly) -> Result<Self, InvariantError> {
        let l = family.layout();
        let n = l.n;
        if phi.nvars() != l.nvars() {
            return Err(InvariantError::OrderMismatch { expected: l.nvars(), found: phi.nvars() });
        }
        if !phi.is_zero() && phi.is_homogeneous_in(l.x_range()) != Some(n as i32) {
            return Err(InvariantError::Arith(crate::error::ArithError::DomainMismatch(
                "numerator is not homogeneous of degree n in the seed".into(),
            )));
        }
        Ok(InvariantPoly { family, name: None, phi })
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn pi(&self) -> ZPoly {
        self.family.layout().pi_x()
    }

    pub fn ratfunc(&self) -> RatFunc<Int> {
        RatFunc::new(self.phi.clone(), self.pi()).expect("Pi is nonzero")
    }

    /// Number of distinct seed monomials in `Phi`.
    pub fn row_count(&self) -> usize {
        coefficients_in_x(&self.family.layout(), &self.phi).len()
    }

    /// Coordinates over the admissible monomials, `None` if `Phi` leaves that span.
    pub fn coordinates(&self, basis: &MonomialBasis) -> Option<Vec<ZPoly>> {
        let l = self.family.layout();
        let mut v = vec![ZPoly::zero(l.nvars(), &Int::ZERO); basis.len()];
        for (k, c) in coefficients_in_x(&l, &self.phi) {
            v[basis.position(&k.0)?] = c;
        }
        Some(v)
    }
}

/// Kernel of `phi` on the admissible monomials.
#[derive(Clone, Debug)]
pub struct OmegaBox {
    pub matrix: PhiMatrix,
    pub vectors: Vec<Vec<ZPoly>>,
}

impl OmegaBox {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn invariants(&self) -> Vec<InvariantPoly> {
        let basis = &self.matrix.basis;
        let l = basis.family.layout();
        self.vectors
            .iter()
            .map(|v| {
                let p = v.iter().enumerate().fold(ZPoly::zero(l.nvars(), &Int::ZERO), |acc, (k, c)| {
                    acc.add_poly(&c.mul_mono(&basis.mono(k)))
                });
                InvariantPoly { family: basis.family, name: None, phi: p }
            })
            .collect()
    }

    /// `phi_matrix * v == 0` for every kernel vector.
    pub fn verify(&self) -> bool {
        let zero = ZPoly::zero(self.matrix.basis.family.layout().nvars(), &Int::ZERO);
        self.vectors.iter().all(|v| mat_vec(&self.matrix.entries, v, &zero).iter().all(|x| x.is_zero()))
    }

    /// Rank test at a random specialisation of the `a_j` modulo a random
    /// 61-bit prime: does `f` lie in the span of the kernel?
    pub fn contains(&self, f: &InvariantPoly, seed: u64) -> bool {
        let Some(coords) = f.coordinates(&self.matrix.basis) else {
            return false;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_prime(&mut rng, 1 << 60, 1 << 61).expect("primes exist in range");
        let l = self.matrix.basis.family.layout();
        let field = PrimeField::new(p).expect("prime");
        let point: Vec<_> = (0..l.nvars()).map(|_| field.from_u64(rng.random_range(1..p))).collect();
        let eval = |c: &ZPoly| -> u64 {
            c.eval_with(|z| field.from_u64(z.rem_euclid_u64(p)), &point, &field.zero()).expect("nonzero point").value()
        };
        let mut rows: Vec<Vec<u64>> = self.vectors.iter().map(|v| v.iter().map(eval).collect()).collect();
        let base = rank_mod_p(&mut rows.clone(), p);
        rows.push(coords.iter().map(eval).collect());
        rank_mod_p(&mut rows, p) == base
    }
}

pub fn omega_box(family: Family) -> OmegaBox {
    let matrix = phi_matrix(family);
    let zero = ZPoly::zero(family.layout().nvars(), &Int::ZERO);
    let vectors = if matrix.entries.is_empty() {
        // phi vanishes on every admissible monomial
        nullspace_fraction_free(&vec![vec![zero.clone(); matrix.basis.len()]], &zero)
    } else {
        nullspace_fraction_free(&matrix.entries, &zero)
    };
    OmegaBox { matrix, vectors }
}

pub fn omega_box_kernel(family: Family) -> Vec<InvariantPoly> {
    omega_box(family).invariants()
}

pub const BUILTIN_NAMES: [&str; 6] = ["F4", "F5", "F6", "G6", "F7", "G7"];

fn builtin_table(name: &str) -> Option<(&'static str, usize)> {
    Some(match name.to_ascii_uppercase().as_str() {
        "F4" => ("phi4", 4),
        "F5" => ("phi5", 5),
        "F6" => ("phi6", 6),
        "G6" => ("psi6", 6),
        "F7" => ("phi7", 7),
        "G7" => ("psi7", 7),
        _ => return None,
    })
}

pub fn builtin_invariant(name: &str) -> Result<InvariantPoly, InvariantError> {
    let (table, n) = builtin_table(name).ok_or_else(|| InvariantError::UnknownName(name.to_string()))?;
    let family = Family::Somos(n);
    let text = data::table(table)?;
    let phi = crate::arith::text::parse_table(&text, &family.layout().table_layout())
        .map_err(|source| InvariantError::Data { name: table.to_string(), source })?;
    Ok(InvariantPoly::new(family, phi)?.named(&name.to_ascii_uppercase()))
}

/// Bundled invariants of order `n`; empty outside `4..=7`.
pub fn bundled_invariants(n: usize) -> Result<Vec<InvariantPoly>, InvariantError> {
    BUILTIN_NAMES
        .iter()
        .filter(|name| builtin_table(name).is_some_and(|(_, k)| k == n))
        .map(|name| builtin_invariant(name))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_dimensions() {
        assert_eq!(ambient_dimension(4), 35);
        assert_eq!(ambient_dimension(6), 462);
        assert_eq!(ambient_dimension(7), 1716);
    }

    #[test]
    fn order_four_basis() {
        let b = upsilon_box_basis(Family::Somos(4));
        let mut got = b.tuples.clone();
        got.sort();
        let mut want = vec![vec![2, 0, 0, 2], vec![1, 1, 1, 1], vec![0, 3, 0, 1], vec![1, 0, 3, 0], vec![0, 2, 2, 0]];
        want.sort();
        assert_eq!(got, want);
        for w in b.tuples.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn basis_sizes() {
        for (n, d) in [(4, 5), (5, 6), (6, 32), (7, 40)] {
            assert_eq!(upsilon_box_basis(Family::Somos(n)).len(), d, "n={n}");
        }
    }

    #[test]
    fn pi_is_in_the_kernel() {
        for n in 2..=6 {
            let f = Family::Somos(n);
            assert!(phi(f, &f.layout().pi_x()).is_zero(), "n={n}");
        }
    }

    #[test]
    fn small_kernels() {
        for (n, d) in [(2, 1), (3, 1), (4, 2), (5, 2), (6, 3), (7, 3)] {
            let k = omega_box(Family::Somos(n));
            assert_eq!(k.dim(), d, "n={n}");
            assert!(k.verify());
        }
    }

    #[test]
    fn builtins_parse() {
        let f4 = builtin_invariant("F4").unwrap();
        assert_eq!(f4.phi.len(), 4);
        assert_eq!(builtin_invariant("F6").unwrap().row_count(), 14);
        let g7 = builtin_invariant("G7").unwrap();
        assert_eq!(g7.row_count(), 28);
        assert!(g7.phi.terms().iter().any(|(_, c)| *c == Int::from(2)));
        assert!(matches!(builtin_invariant("H9"), Err(InvariantError::UnknownName(_))));
    }

    #[test]
    fn builtins_lie_in_kernels() {
        for n in 4..=7 {
            let k = omega_box(Family::Somos(n));
            for f in bundled_invariants(n).unwrap() {
                assert!(phi(f.family, &f.phi).is_zero());
                assert!(k.contains(&f, 1));
            }
            let pi = InvariantPoly::new(Family::Somos(n), Family::Somos(n).layout().pi_x()).unwrap();
            assert!(k.contains(&pi, 2));
        }
    }

    #[test]
    fn gale_robinson_kernel() {
        let t = GRType::new(1, 2, 5).unwrap();
        let k = omega_box(Family::GaleRobinson(t));
        assert_eq!(k.dim(), 4);
        assert!(k.verify());
    }
}
