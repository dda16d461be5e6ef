use rayon::prelude::*;

use super::elimination::{eliminate, twin_resultant, u_hat, Specialisation};
use super::{build_twin_polys, TwinPolySet};
use crate::arith::univariate::UniPoly;
use crate::arith::{Fp, PrimeField, Ring};
use crate::diamond::{contiguous_minor, ContiguousShape, HalfSide, ProductMatrix};
use crate::error::CertError;
use crate::invariants::twin_check;
use crate::sequences::{detect_period, somos, SeqView, Terms};

/// Small-prime construction whose twins have no vanishing terms and no
/// vanishing contiguous minors one size below the critical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    pub n: usize,
    pub p: u64,
    pub a: Vec<i64>,
    pub s_star: Vec<i64>,
    pub t: Vec<i64>,
}

pub fn witness_params(n: usize) -> Result<WitnessParams, CertError> {
    let (p, a, s_star, t): (u64, &[i64], &[i64], &[i64]) = match n {
        4 => (11, &[1, 1], &[1, 9, 1], &[1, 2, 2, 1]),
        5 => (11, &[1, 1], &[1, 1, 2, 1], &[1, 1, 5, 1, 1]),
        6 => (19, &[1, 1, 1], &[1, 1, 1, 1], &[1, 1, 4, 4, 1, 1]),
        7 => (29, &[1, 1, 1], &[1, 1, 6, 1, 1], &[1, 1, 2, 1, 9, 1, 1]),
        _ => return Err(CertError::UnsupportedOrder(n)),
    };
    Ok(WitnessParams { n, p, a: a.to_vec(), s_star: s_star.to_vec(), t: t.to_vec() })
}

/// One admissible lift of the witness data.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOption {
    pub s_seed: Vec<Fp>,
    pub period_s: usize,
    pub period_t: usize,
    pub terms_nonzero: bool,
    pub minors_checked: usize,
    pub minors_nonzero: usize,
    /// Diamond orders only: minors on the main diagonal of the diamond
    /// matrix, which suffice once the next size up vanishes.
    pub diagonal_checked: Option<usize>,
    pub diagonal_nonzero: Option<usize>,
}

impl WitnessOption {
    pub fn passed(&self) -> bool {
        self.terms_nonzero && self.minors_checked == self.minors_nonzero
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FfWitnessReport {
    pub params: WitnessParams,
    /// `R^_star` for orders 6 and 7, `U^` for orders 4 and 5.
    pub polynomial: UniPoly<Fp>,
    pub roots: Vec<(Fp, u32)>,
    pub minor_size: usize,
    pub options: Vec<WitnessOption>,
}

impl FfWitnessReport {
    pub fn passed(&self) -> bool {
        !self.options.is_empty() && self.options.iter().all(|o| o.passed())
    }

    pub fn minors_checked(&self) -> usize {
        self.options.iter().map(|o| o.minors_checked).sum()
    }

    /// `c(x0 - r1)^m1 ...` when the polynomial splits into the found roots.
    pub fn factored(&self) -> Option<String> {
        let split: u32 = self.roots.iter().map(|(_, m)| m).sum();
        if self.polynomial.degree()? != split as usize {
            return None;
        }
        let lead = self.polynomial.leading();
        let mut out = if lead.is_one() && split > 0 { String::new() } else { lead.to_string() };
        for (r, m) in &self.roots {
            let lin = if r.is_zero() { "x0".to_string() } else { format!("(x0-{r})") };
            out += &if *m == 1 { lin } else { format!("{lin}^{m}") };
        }
        Some(out)
    }

    pub fn diagonal_checked(&self) -> Option<usize> {
        self.options.iter().map(|o| o.diagonal_checked).sum()
    }
}

fn period_terms(seq: &mut SeqView<Fp>, period: usize, pad: i64) -> Result<Terms<Fp>, CertError> {
    seq.extend_checked(-pad, period as i64 + pad)?;
    Ok(seq.terms())
}

fn shapes(n: usize) -> Vec<ContiguousShape> {
    if n % 2 == 0 {
        vec![ContiguousShape(HalfSide::None)]
    } else {
        vec![ContiguousShape(HalfSide::Left), ContiguousShape(HalfSide::Right)]
    }
}

fn check_option(
    params: &WitnessParams,
    a: &[Fp],
    s_seed: Vec<Fp>,
    t_seed: &[Fp],
    size: usize,
) -> Result<WitnessOption, CertError> {
    let mut s = somos(a.to_vec(), s_seed.clone())?;
    let mut t = somos(a.to_vec(), t_seed.to_vec())?;
    let fail = |what: &str| CertError::Witness(format!("order {}: {what}", params.n));
    let ps = detect_period(&s).ok_or_else(|| fail("s has no period"))?;
    let pt = detect_period(&t).ok_or_else(|| fail("t has no period"))?;
    let pad = 3 * size as i64 + params.n as i64;
    let st = period_terms(&mut s, ps.max(pt), pad)?;
    let tt = period_terms(&mut t, ps.max(pt), pad)?;
    let terms_nonzero = st.vals.iter().chain(&tt.vals).all(|v| !v.is_zero());
    let m = ProductMatrix::new(&st, &tt);
    let mut checked = 0;
    let mut nonzero = 0;
    for shape in shapes(params.n) {
        let row_hits: Vec<usize> = (0..ps as i64)
            .into_par_iter()
            .map(|row| {
                (0..pt as i64)
                    .filter(|&col| contiguous_minor(&m, shape, size, row, col).is_some_and(|d| !d.is_zero()))
                    .count()
            })
            .collect();
        checked += ps * pt;
        nonzero += row_hits.iter().sum::<usize>();
    }
    let (diagonal_checked, diagonal_nonzero) = if params.n % 2 == 0 {
        let shape = ContiguousShape(HalfSide::None);
        let hits = (0..ps as i64).filter(|&row| contiguous_minor(&m, shape, size, row, 0).is_some_and(|d| !d.is_zero())).count();
        (Some(ps), Some(hits))
    } else {
        (None, None)
    };
    Ok(WitnessOption {
        s_seed,
        period_s: ps,
        period_t: pt,
        terms_nonzero,
        minors_checked: checked,
        minors_nonzero: nonzero,
        diagonal_checked,
        diagonal_nonzero,
    })
}

/// Rebuild the witness of order `n` and check it exhaustively over one period.
pub fn verify_ff_witness(n: usize) -> Result<FfWitnessReport, CertError> {
    let params = witness_params(n)?;
    let set = build_twin_polys(n)?;
    verify_ff_witness_with(&set, &params)
}

pub fn verify_ff_witness_with(set: &TwinPolySet, params: &WitnessParams) -> Result<FfWitnessReport, CertError> {
    let field = PrimeField::new(params.p)?;
    let sp = Specialisation { a: field.elems(&params.a), s_star: field.elems(&params.s_star), t: field.elems(&params.t) };
    let size = if params.n >= 6 { 4 } else { 2 };
    let (polynomial, seeds) = if params.n >= 6 {
        let tr = twin_resultant(set, &sp)?;
        let elim = eliminate(set, &sp)?;
        let roots = tr.r_star.roots_by_scan(field);
        let mut seeds = Vec::new();
        for (r, _) in &roots {
            let last = elim.partner(r).ok_or_else(|| CertError::Degenerate("W1 at a root".into()))?;
            seeds.push(sp.seed(r, Some(&last)));
        }
        (tr.r_star, seeds)
    } else {
        let u = u_hat(set, &sp)?;
        let seeds = u.roots_by_scan(field).iter().map(|(r, _)| sp.seed(r, None)).collect();
        (u, seeds)
    };
    let roots = polynomial.roots_by_scan(field);
    let mut options = Vec::new();
    for seed in seeds {
        if seed.iter().any(|v| v.is_zero()) {
            return Err(CertError::Witness(format!("lift {seed:?} has a zero term")));
        }
        if !twin_check(&sp.a, &seed, &sp.t)? {
            return Err(CertError::Witness(format!("lift {seed:?} is not a twin of t")));
        }
        options.push(check_option(params, &sp.a, seed, &sp.t, size)?);
    }
    Ok(FfWitnessReport { params: params.clone(), polynomial, roots, minor_size: size, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: PrimeField, lead: i64, roots: &[(i64, u32)]) -> UniPoly<Fp> {
        let mut p = UniPoly::new(vec![field.elem(lead)], &field.zero());
        for &(r, m) in roots {
            p = p.mul(&UniPoly::linear(&field.elem(r)).pow(m));
        }
        p
    }

    #[test]
    fn order_four_and_five() {
        let r4 = verify_ff_witness(4).unwrap();
        let f = PrimeField::new(11).unwrap();
        assert_eq!(r4.polynomial, poly(f, 4, &[(4, 2)]));
        assert_eq!(r4.factored().as_deref(), Some("4(x0-4)^2"));
        assert!(r4.passed());
        assert_eq!(r4.options[0].period_s, 5);
        assert_eq!(r4.options[0].period_t, 5);
        let r5 = verify_ff_witness(5).unwrap();
        assert_eq!(r5.polynomial, poly(f, 9, &[(3, 2)]));
        assert!(r5.passed());
        assert_eq!((r5.options[0].period_s, r5.options[0].period_t), (20, 20));
    }

    #[test]
    fn order_six() {
        let r = verify_ff_witness(6).unwrap();
        let f = PrimeField::new(19).unwrap();
        assert_eq!(r.polynomial, poly(f, 5, &[(15, 6)]));
        assert_eq!(r.options.len(), 1);
        let o = &r.options[0];
        assert_eq!(o.s_seed, f.elems(&[15, 1, 1, 1, 1, 15]));
        assert_eq!((o.period_s, o.period_t), (612, 612));
        assert_eq!(r.diagonal_checked(), Some(612));
        assert_eq!(o.diagonal_nonzero, Some(612));
        assert!(r.passed());
    }

    #[test]
    fn order_seven() {
        let r = verify_ff_witness(7).unwrap();
        let f = PrimeField::new(29).unwrap();
        assert_eq!(r.polynomial, poly(f, 1, &[(3, 2), (4, 2), (5, 2)]));
        let ends: Vec<(u64, u64)> = r.options.iter().map(|o| (o.s_seed[0].value(), o.s_seed[6].value())).collect();
        assert_eq!(ends, vec![(3, 4), (4, 3), (5, 5)]);
        let periods: Vec<(usize, usize)> = r.options.iter().map(|o| (o.period_s, o.period_t)).collect();
        assert_eq!(periods, vec![(112, 16), (112, 16), (16, 16)]);
        assert_eq!(r.minors_checked(), 7680);
        assert!(r.passed());
    }
}
