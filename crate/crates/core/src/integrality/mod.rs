//! Laurentness of master sequences and the denominator bookkeeping that
//! reduces it to a finite computation: the sets `Theta(k)` of variables in
//! denominators, `Lambda` read off the central numerators, and a probe for
//! the coprimality of two designated minors.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::fp::random_prime;
use crate::arith::poly::fmt_mono;
use crate::arith::univariate::UniPoly;
use crate::arith::{Int, Mono, PrimeField, ZPoly};
use crate::diamond::{diamond_minor, DiamondSpec, HalfSide, ProductMatrix};
use crate::error::{IntegralityError, SeqError};
use crate::sequences::{master_sequence, BoundaryReason, Layout, SeqView, Terms};

/// Default upper index of symbolic audits.
pub fn k_max(n: usize) -> i64 {
    match n {
        4 => 20,
        5 => 16,
        _ => 12,
    }
}

/// Shift `c` with `u_i = S_{i + c}`.
pub fn centre(n: usize) -> i64 {
    ((n - 1) / 2) as i64
}

/// Set of indeterminates, by variable index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IrreducibleSet {
    pub vars: BTreeSet<usize>,
}

impl IrreducibleSet {
    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_subset(&self, other: &IrreducibleSet) -> bool {
        self.vars.is_subset(&other.vars)
    }

    pub fn union(&self, other: &IrreducibleSet) -> IrreducibleSet {
        IrreducibleSet { vars: self.vars.union(&other.vars).copied().collect() }
    }

    pub fn names(&self, l: &Layout) -> Vec<String> {
        let names = l.names();
        self.vars.iter().map(|&v| names[v].clone()).collect()
    }

    pub fn seed_indices(&self, l: &Layout) -> Vec<usize> {
        self.vars.iter().filter(|v| l.x_range().contains(v)).map(|v| v - l.n_alpha).collect()
    }
}

fn meet_all(p: &ZPoly) -> Mono {
    p.terms().iter().fold(None, |acc: Option<Mono>, (m, _)| Some(acc.map_or(*m, |a| a.meet(m)))).unwrap_or(Mono::ONE)
}

/// Denominator of a Laurent polynomial in lowest terms.
pub fn denominator(p: &ZPoly) -> Mono {
    meet_all(p).negative_part()
}

/// Numerator over the lowest-terms denominator.
pub fn numerator(p: &ZPoly) -> ZPoly {
    p.mul_mono(&denominator(p))
}

/// Variables dividing the numerator.
fn numerator_divisors(p: &ZPoly) -> BTreeSet<usize> {
    let m = meet_all(&numerator(p));
    m.support().filter(|&v| m.exp(v) > 0).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditRow {
    pub index: i64,
    pub denominator: Mono,
    pub terms: usize,
    /// All numerator coefficients positive.
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct LaurentAudit {
    pub layout: Layout,
    pub rows: Vec<AuditRow>,
}

impl fmt::Display for LaurentAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.layout.names();
        writeln!(f, "index | denominator | terms")?;
        for r in &self.rows {
            let d = fmt_mono(&r.denominator, self.layout.nvars(), &names);
            writeln!(f, "{} | {} | {}", r.index, if d.is_empty() { "1".into() } else { d }, r.terms)?;
        }
        Ok(())
    }
}

fn laurent_failure(e: SeqError) -> IntegralityError {
    match e {
        SeqError::Division(b) if b.reason == BoundaryReason::NotDivisible => {
            IntegralityError::LaurentFailure { index: b.index }
        }
        e => e.into(),
    }
}

/// Master sequence of order `n` realised on `[lo, hi]` by exact Laurent division.
pub fn master_terms(n: usize, lo: i64, hi: i64) -> Result<SeqView<ZPoly>, IntegralityError> {
    let mut s = master_sequence(n)?;
    s.extend_checked(lo.min(0), hi.max(n as i64 - 1)).map_err(laurent_failure)?;
    Ok(s)
}

pub fn laurent_audit(n: usize, lo: i64, hi: i64) -> Result<LaurentAudit, IntegralityError> {
    let s = master_terms(n, lo, hi)?;
    let rows = (lo..=hi)
        .map(|i| {
            let t = s.get(i).expect("realised");
            AuditRow {
                index: i,
                denominator: denominator(t),
                terms: t.len(),
                positive: t.terms().iter().all(|(_, c)| c.signum() > 0),
            }
        })
        .collect();
    Ok(LaurentAudit { layout: Layout::somos(n, false), rows })
}

/// The recentred sequence `u_i = S_{i + centre(n)}` on `[-k, k]`.
pub fn recentred(n: usize, k: i64) -> Result<Terms<ZPoly>, IntegralityError> {
    let c = centre(n);
    let s = master_terms(n, c - k, c + k)?;
    let all = s.terms();
    let lo = c - k;
    let vals = (lo..=c + k).map(|i| all.get(i).expect("realised").clone()).collect();
    Ok(Terms::new(-k, vals))
}

/// Variables dividing the denominator of some `u_i` with `|i| <= k`.
pub fn theta_set(n: usize, k: i64) -> Result<IrreducibleSet, IntegralityError> {
    theta_from(&recentred(n, k)?, k)
}

pub fn theta_from(u: &Terms<ZPoly>, k: i64) -> Result<IrreducibleSet, IntegralityError> {
    let mut vars = BTreeSet::new();
    for i in -k..=k {
        let t = u.get(i).ok_or(IntegralityError::Diamond(crate::error::DiamondError::Unrealised { row: i, col: i }))?;
        vars.extend(denominator(t).support());
    }
    Ok(IrreducibleSet { vars })
}

/// Diamond rule: variables dividing the numerator of `u_0`, or of both
/// `u_{-1}` and `u_1`. Half rule: of any of `u_{-1}, u_0, u_1`, or of both
/// `u_{-2}` and `u_2`.
pub fn lambda_set(n: usize, half: bool) -> Result<IrreducibleSet, IntegralityError> {
    let u = recentred(n, 2)?;
    let div = |i: i64| numerator_divisors(u.get(i).expect("realised"));
    let vars = if half {
        let mut v: BTreeSet<usize> = div(-1).union(&div(0)).copied().collect();
        v.extend(div(1));
        v.extend(div(-2).intersection(&div(2)).copied());
        v
    } else {
        let mut v = div(0);
        v.extend(div(-1).intersection(&div(1)).copied());
        v
    };
    Ok(IrreducibleSet { vars })
}

#[derive(Clone, Debug)]
pub struct Containment {
    pub n: usize,
    pub lambda: IrreducibleSet,
    pub base: IrreducibleSet,
    /// `(K, Theta(K))` for each realised `K`.
    pub thetas: Vec<(i64, IrreducibleSet)>,
}

impl Containment {
    pub fn holds(&self) -> bool {
        let bound = self.lambda.union(&self.base);
        self.thetas.iter().all(|(_, t)| t.is_subset(&bound))
    }
}

/// Checks `Theta(K) ⊆ Lambda ∪ Theta(k + 1)` for `K` up to `k_hi`, with `k`
/// the index of the designated minors.
pub fn containment_check(n: usize, k_hi: i64) -> Result<Containment, IntegralityError> {
    let (k, _, _) = xi_minors(n)?;
    let u = recentred(n, k_hi.max(k + 1))?;
    let lambda = lambda_set(n, uses_half(n))?;
    let base = theta_from(&u, k + 1)?;
    let thetas = (0..=k_hi).map(|kk| Ok((kk, theta_from(&u, kk)?))).collect::<Result<_, IntegralityError>>()?;
    Ok(Containment { n, lambda, base, thetas })
}

/// Whether order `n` uses the half-diamond variant.
pub fn uses_half(n: usize) -> bool {
    n % 2 == 1
}

/// Offsets `(e, e', e'')` and the `k` of the designated pair of minors.
pub fn xi_minors(n: usize) -> Result<(i64, DiamondSpec, DiamondSpec), IntegralityError> {
    let (k, e, e1, e2, half) = match n {
        4 => (2, vec![0, 2], vec![-2, 0], vec![0, 2], HalfSide::None),
        5 => (4, vec![0, 2], vec![-4, 0], vec![0, 4], HalfSide::Right),
        6 => (7, vec![1, 3, 5, 7], vec![-3, -1, 1, 3], vec![-1, 1, 3, 5], HalfSide::None),
        7 => (8, vec![0, 2, 4, 6], vec![-8, -4, 0, 4], vec![-4, 0, 4, 8], HalfSide::Right),
        _ => return Err(IntegralityError::UnsupportedOrder(n)),
    };
    Ok((k, DiamondSpec::new(e.clone(), e1, half)?, DiamondSpec::new(e, e2, half)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coprimality {
    /// Every probe found a unit gcd.
    Coprime { probes: usize },
    /// A specialisation kept a common factor in `var`.
    Inconclusive { var: usize, trial: usize, gcd_degree: usize },
}

#[derive(Clone, Debug)]
pub struct XiProbe {
    pub n: usize,
    pub k: i64,
    pub numerators: [ZPoly; 2],
    pub degrees: [Option<i32>; 2],
    /// Distinct seed monomials of each numerator.
    pub summands: [usize; 2],
    pub verdict: Coprimality,
}

impl XiProbe {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Coprimality::Coprime { .. })
    }
}

fn seed_summands(l: &Layout, p: &ZPoly) -> usize {
    let mut parts: Vec<Vec<i32>> = p.terms().iter().map(|(m, _)| m.exps(l.nvars())[l.n_alpha..].to_vec()).collect();
    parts.sort();
    parts.dedup();
    parts.len()
}

/// Randomised coprimality test: for each variable in turn, bind every other
/// variable to a random value modulo a random 61-bit prime and take the
/// univariate gcd. `trials` rounds of independent values.
pub fn coprimality_probe(a: &ZPoly, b: &ZPoly, trials: usize, seed: u64) -> Coprimality {
    if a.content().gcd(&b.content()) != Int::ONE {
        return Coprimality::Inconclusive { var: usize::MAX, trial: 0, gcd_degree: 0 };
    }
    let nvars = a.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars: BTreeSet<usize> = a.support_vars().into_iter().collect();
    vars.extend(b.support_vars());
    for trial in 0..trials {
        let p = random_prime(&mut rng, 1 << 60, 1 << 61).expect("primes exist in range");
        let field = PrimeField::new(p).expect("prime");
        let values: Vec<_> = (0..nvars).map(|_| field.from_u64(rng.random_range(1..p))).collect();
        for &v in &vars {
            let bind: Vec<Option<_>> = (0..nvars).map(|k| if k == v { None } else { Some(values[k]) }).collect();
            let uni = |q: &ZPoly| {
                let s = q.specialise_with(|c| field.from_u64(c.rem_euclid_u64(p)), &bind, &field.zero()).expect("unit values");
                UniPoly::from_multi(&s, v).expect("one free variable")
            };
            let g = uni(a).gcd(&uni(b));
            let d = g.degree().unwrap_or(0);
            if d > 0 {
                return Coprimality::Inconclusive { var: v, trial, gcd_degree: d };
            }
        }
    }
    Coprimality::Coprime { probes: trials * vars.len() }
}

pub fn xi_coprimality_probe(n: usize, trials: usize, seed: u64) -> Result<XiProbe, IntegralityError> {
    let (k, s1, s2) = xi_minors(n)?;
    let reach = [&s1, &s2]
        .iter()
        .filter_map(|s| s.extent())
        .map(|((a, b), (c, d))| a.abs().max(b.abs()).max(c.abs()).max(d.abs()))
        .max()
        .unwrap_or(0);
    let u = recentred(n, reach)?;
    let m = ProductMatrix::new(&u, &u);
    let nums = [numerator(&diamond_minor(&m, &s1)?), numerator(&diamond_minor(&m, &s2)?)];
    let l = Layout::somos(n, false);
    let degrees = [nums[0].is_homogeneous_in(l.x_range()), nums[1].is_homogeneous_in(l.x_range())];
    let summands = [seed_summands(&l, &nums[0]), seed_summands(&l, &nums[1])];
    let verdict = coprimality_probe(&nums[0], &nums[1], trials, seed);
    Ok(XiProbe { n, k, numerators: nums, degrees, summands, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(l: &Layout, idx: &[usize]) -> IrreducibleSet {
        IrreducibleSet { vars: idx.iter().map(|&i| l.x(i)).collect() }
    }

    #[test]
    fn first_step_denominator() {
        let a = laurent_audit(6, 6, 6).unwrap();
        let l = Layout::somos(6, false);
        assert_eq!(a.rows[0].denominator, Mono::var(l.x(0), 1));
        assert!(a.to_string().contains("6 | x0 |"));
    }

    #[test]
    fn lambda_sets() {
        let l6 = Layout::somos(6, false);
        assert_eq!(lambda_set(6, false).unwrap(), xs(&l6, &[2]));
        let l7 = Layout::somos(7, false);
        assert_eq!(lambda_set(7, true).unwrap(), xs(&l7, &[2, 3, 4]));
    }

    #[test]
    fn theta_grows_from_empty() {
        assert!(theta_set(6, 0).unwrap().is_empty());
        let mut prev = IrreducibleSet::default();
        for k in 0..=8 {
            let t = theta_set(6, k).unwrap();
            assert!(prev.is_subset(&t));
            prev = t;
        }
        assert_eq!(prev, xs(&Layout::somos(6, false), &[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn audits_to_default_bound() {
        for n in [4, 5, 6, 7] {
            let a = laurent_audit(n, n as i64, k_max(n)).unwrap();
            assert_eq!(a.rows.len() as i64, k_max(n) - n as i64 + 1);
        }
    }

    #[test]
    fn containment_order_six() {
        let c = containment_check(6, 10).unwrap();
        assert!(c.holds());
    }

    #[test]
    fn theta_full_supports() {
        let l7 = Layout::somos(7, false);
        assert_eq!(theta_set(7, 10).unwrap(), xs(&l7, &[0, 1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn xi_probe_order_six() {
        let p = xi_coprimality_probe(6, 5, 7).unwrap();
        assert_eq!(p.degrees, [Some(17); 2]);
        assert_eq!(p.summands, [197; 2]);
        assert!(p.passed());
    }

    #[test]
    fn xi_probe_order_seven() {
        let p = xi_coprimality_probe(7, 5, 7).unwrap();
        assert_eq!(p.degrees, [Some(17); 2]);
        assert_eq!(p.summands, [191; 2]);
        assert!(p.passed());
    }

    #[test]
    fn xi_probe_small_orders() {
        for n in [4, 5] {
            let p = xi_coprimality_probe(n, 5, 11).unwrap();
            assert!(p.passed(), "n={n} {:?}", p.verdict);
        }
    }

    #[test]
    fn coprimality_detects_common_factors() {
        let l = Layout::somos(4, false);
        let f = l.x_var(0).add_poly(&l.x_var(1));
        let a = f.mul_poly(&l.x_var(2));
        let b = f.mul_poly(&l.x_var(3).add_poly(&l.alpha_var(1)));
        assert!(matches!(coprimality_probe(&a, &b, 2, 1), Coprimality::Inconclusive { .. }));
        assert!(matches!(coprimality_probe(&l.x_var(2), &b, 2, 1), Coprimality::Coprime { .. }));
    }
}
