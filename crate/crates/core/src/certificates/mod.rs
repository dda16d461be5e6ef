//! Twin polynomials `U`, `V`, `D`, ideal-membership certificates for `D`,
//! elimination of the partner endpoint, and finite-field witnesses.

mod elimination;
mod twins;
mod witness;

use crate::arith::text::parse_table;
use crate::arith::{Int, Mono, Ring, ZPoly};
use crate::data;
use crate::diamond::{diamond_minor, DiamondSpec, HalfSide, ProductMatrix};
use crate::error::CertError;
use crate::invariants::builtin_invariant;
use crate::sequences::{master_sequence_in, Layout};

pub use elimination::{eliminate, twin_resultant, Elimination, Specialisation, TwinResultant};
pub use twins::{sample_twin_pair, TwinPair};
pub use witness::{verify_ff_witness, verify_ff_witness_with, witness_params, FfWitnessReport, WitnessOption, WitnessParams};

/// `U`, `V` and `D` for one order, over `Z[a][x, y]`.
#[derive(Clone, Debug)]
pub struct TwinPolySet {
    pub n: usize,
    pub layout: Layout,
    pub u: ZPoly,
    /// Absent for orders 4 and 5, which have a single invariant.
    pub v: Option<ZPoly>,
    pub d: ZPoly,
    pub spec: DiamondSpec,
    /// Denominator of the minor in lowest terms.
    pub reduced_denominator: Mono,
    /// Denominator the minor is rewritten over, `D = minor * denominator`.
    pub denominator: Mono,
}

/// Offsets of the minor whose numerator is `D`.
pub fn twin_minor_spec(n: usize) -> Result<DiamondSpec, CertError> {
    let (e1, e2, half) = match n {
        4 => (vec![-2, 0, 2], vec![2, 4, 6], HalfSide::None),
        5 => (vec![-2, 0, 2], vec![0, 4, 8], HalfSide::Right),
        6 => (vec![-4, -2, 0, 2, 4], vec![2, 4, 6, 8, 10], HalfSide::None),
        7 => (vec![-4, -2, 0, 2, 4], vec![-2, 2, 6, 10, 14], HalfSide::Right),
        _ => return Err(CertError::UnsupportedOrder(n)),
    };
    Ok(DiamondSpec::new(e1, e2, half)?)
}

fn mono_of(l: &Layout, xs: &[usize], ys: &[usize]) -> Mono {
    let mut m = Mono::ONE;
    for &i in xs {
        m = m.mul(&Mono::var(l.x(i), 1));
    }
    for &i in ys {
        m = m.mul(&Mono::var(l.y(i), 1));
    }
    m
}

fn lowest_denominator(p: &ZPoly) -> Mono {
    p.terms().iter().fold(None, |acc: Option<Mono>, (m, _)| Some(acc.map_or(*m, |a| a.meet(m)))).map_or(Mono::ONE, |m| m.negative_part())
}

/// Numerator of `F_X - F_Y` over `Pi_X Pi_Y` for an invariant `Phi / Pi` of order `n`.
pub fn twin_difference(l: &Layout, phi_x: &ZPoly) -> ZPoly {
    let embed: Vec<usize> = (0..phi_x.nvars()).collect();
    let px = phi_x.remap(&embed, l.nvars());
    let py = px.remap(&l.swap_xy(), l.nvars());
    l.pi_y().mul_poly(&px).sub_poly(&l.pi_x().mul_poly(&py))
}

pub fn build_twin_polys(n: usize) -> Result<TwinPolySet, CertError> {
    let spec = twin_minor_spec(n)?;
    let l = Layout::somos(n, true);
    let (f, g) = match n {
        4 => ("F4", None),
        5 => ("F5", None),
        6 => ("F6", Some("G6")),
        _ => ("F7", Some("G7")),
    };
    let u = twin_difference(&l, &builtin_invariant(f)?.phi);
    let v = g.map(|g| builtin_invariant(g).map(|g| twin_difference(&l, &g.phi))).transpose()?;

    let mut s = master_sequence_in(l, None, false)?;
    let mut t = master_sequence_in(l, None, true)?;
    let ((rl, rh), (cl, ch)) = spec.extent().expect("nonempty offsets");
    s.extend_checked(rl, rh)?;
    t.extend_checked(cl, ch)?;
    let (st, tt) = (s.terms(), t.terms());
    let minor = diamond_minor(&ProductMatrix::new(&st, &tt), &spec)?;
    let reduced = lowest_denominator(&minor);
    let all: Vec<usize> = (0..n).collect();
    let denominator = match n {
        6 => mono_of(&l, &[0], &[0]).mul(&mono_of(&l, &all, &all)),
        7 => mono_of(&l, &[0, 6], &[0, 6]).mul(&mono_of(&l, &all, &all)),
        _ => reduced,
    };
    let d = minor.mul_mono(&denominator);
    if !d.is_polynomial() {
        return Err(CertError::ExactRewrite);
    }
    Ok(TwinPolySet { n, layout: l, u, v, d, spec, reduced_denominator: reduced, denominator })
}

/// Number of distinct seed monomials, the size of `p` as a polynomial over `Z[a]`.
pub fn seed_monomial_count(l: &Layout, p: &ZPoly) -> usize {
    let mut parts: Vec<Vec<i32>> = p.terms().iter().map(|(m, _)| m.exps(l.nvars())[l.n_alpha..].to_vec()).collect();
    parts.sort();
    parts.dedup();
    parts.len()
}

/// Degree in the seed variables, when homogeneous.
pub fn seed_degree(l: &Layout, p: &ZPoly) -> Option<i32> {
    p.is_homogeneous_in(l.n_alpha..l.nvars())
}

/// `P(x, y) - P(y, x)`.
pub fn skew_symmetrise(l: &Layout, p: &ZPoly) -> ZPoly {
    p.sub_poly(&p.remap(&l.swap_xy(), l.nvars()))
}

/// Certificate table for `D`: the bundled rows and whether they must be
/// skew-symmetrised before use.
#[derive(Clone, Debug)]
pub struct CertificateTable {
    pub name: String,
    pub poly: ZPoly,
    pub skew: bool,
}

impl CertificateTable {
    pub fn parse(name: &str, text: &str, l: &Layout, skew: bool) -> Result<Self, CertError> {
        let poly = parse_table(text, &l.table_layout())?;
        Ok(CertificateTable { name: name.to_string(), poly, skew })
    }

    pub fn load(name: &str, l: &Layout) -> Result<Self, CertError> {
        let text = data::table(name)?;
        Self::parse(name, &text, l, true)
    }

    /// The certificate itself.
    pub fn expand(&self, l: &Layout) -> ZPoly {
        if self.skew {
            skew_symmetrise(l, &self.poly)
        } else {
            self.poly.clone()
        }
    }
}

/// Table names `(A, B)` and the coefficient symbol `a_k` they certify for.
pub fn certificate_tables(n: usize) -> Result<(&'static str, &'static str, usize), CertError> {
    match n {
        6 => Ok(("o6_a2", "o6_b2", 2)),
        7 => Ok(("o7_a1", "o7_b1", 1)),
        _ => Err(CertError::UnsupportedOrder(n)),
    }
}

/// Outcome of `A U + B V - a_k D`; the residual is zero when the identity holds.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub residual: ZPoly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }

    /// Leading term of a nonzero residual.
    pub fn witness(&self) -> Option<(Mono, Int)> {
        self.residual.leading().cloned()
    }
}

#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub n: usize,
    pub primary: IdentityCheck,
    pub derived: IdentityCheck,
}

impl CertificateReport {
    pub fn holds(&self) -> bool {
        self.primary.holds() && self.derived.holds()
    }
}

pub fn verify_certificates(n: usize) -> Result<CertificateReport, CertError> {
    let set = build_twin_polys(n)?;
    let (a, b, _) = certificate_tables(n)?;
    let ta = CertificateTable::load(a, &set.layout)?;
    let tb = CertificateTable::load(b, &set.layout)?;
    verify_certificates_with(&set, &ta, &tb)
}

fn alpha_div(p: &ZPoly, l: &Layout, j: usize) -> Result<ZPoly, CertError> {
    p.div_exact(&l.alpha_var(j)).map_err(|_| CertError::InexactDivision(format!("a{j}")))
}

/// Check `A U + B V = a_k D` and the identity for the certificate derived
/// from it: order 6 derives `(A3, B3)` from `a3 A2 - a2 A3 = V` and
/// `a2 B3 - a3 B2 = U`; order 7 from `a3 A1 - a1 A3 = a2^2 V` and
/// `a1 B3 - a3 B1 = a2^2 U`.
pub fn verify_certificates_with(
    set: &TwinPolySet,
    a: &CertificateTable,
    b: &CertificateTable,
) -> Result<CertificateReport, CertError> {
    let l = &set.layout;
    let (_, _, k) = certificate_tables(set.n)?;
    let v = set.v.as_ref().ok_or(CertError::UnsupportedOrder(set.n))?;
    let u = &set.u;
    let (ca, cb) = (a.expand(l), b.expand(l));
    let combo = |x: &ZPoly, y: &ZPoly, j: usize| {
        x.mul_poly(u).add_poly(&y.mul_poly(v)).sub_poly(&l.alpha_var(j).mul_poly(&set.d))
    };
    let primary = IdentityCheck { label: format!("A{k} U + B{k} V = a{k} D"), residual: combo(&ca, &cb, k) };
    let a3 = l.alpha_var(3);
    let (da, db) = if set.n == 6 {
        (alpha_div(&a3.mul_poly(&ca).sub_poly(v), l, 2)?, alpha_div(&u.add_poly(&a3.mul_poly(&cb)), l, 2)?)
    } else {
        let a22 = l.alpha_var(2).square();
        (
            alpha_div(&a3.mul_poly(&ca).sub_poly(&a22.mul_poly(v)), l, 1)?,
            alpha_div(&a22.mul_poly(u).add_poly(&a3.mul_poly(&cb)), l, 1)?,
        )
    };
    let derived = IdentityCheck { label: "A3 U + B3 V = a3 D".into(), residual: combo(&da, &db, 3) };
    Ok(CertificateReport { n: set.n, primary, derived })
}

/// `D = -U` for order 4 and `D = a2 U` for order 5.
pub fn low_order_identity(set: &TwinPolySet) -> Result<IdentityCheck, CertError> {
    let l = &set.layout;
    let (label, rhs) = match set.n {
        4 => ("D = -U", set.u.neg_poly()),
        5 => ("D = a2 U", l.alpha_var(2).mul_poly(&set.u)),
        n => return Err(CertError::UnsupportedOrder(n)),
    };
    Ok(IdentityCheck { label: label.into(), residual: set.d.sub_poly(&rhs) })
}

pub fn verify_low_order_identities() -> Result<Vec<IdentityCheck>, CertError> {
    [4, 5].into_iter().map(|n| low_order_identity(&build_twin_polys(n)?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_statistics() {
        let s6 = build_twin_polys(6).unwrap();
        assert_eq!(seed_degree(&s6.layout, &s6.d), Some(24));
        assert_eq!(seed_monomial_count(&s6.layout, &s6.d), 687);
        let l = s6.layout;
        let want = mono_of(&l, &[0, 0, 1, 5], &[0, 0, 1, 5]);
        assert_eq!(s6.reduced_denominator, want);
        let s7 = build_twin_polys(7).unwrap();
        assert_eq!(seed_degree(&s7.layout, &s7.d), Some(28));
        assert_eq!(seed_monomial_count(&s7.layout, &s7.d), 3989);
        let l = s7.layout;
        let half = [0, 0, 1, 2, 4, 5, 6, 6];
        assert_eq!(s7.reduced_denominator, mono_of(&l, &half, &half));
    }

    #[test]
    fn skew_symmetry_of_u_and_v() {
        for n in [6, 7] {
            let s = build_twin_polys(n).unwrap();
            let l = s.layout;
            let sw = l.swap_xy();
            assert_eq!(s.u.remap(&sw, l.nvars()), s.u.neg_poly());
            let v = s.v.unwrap();
            assert_eq!(v.remap(&sw, l.nvars()), v.neg_poly());
        }
    }

    #[test]
    fn degenerate_coefficients_kill_u_and_v_only() {
        for (n, zero) in [(6, [2, 3]), (7, [1, 3])] {
            let s = build_twin_polys(n).unwrap();
            let l = s.layout;
            let z = Int::ZERO;
            let mut bind: Vec<Option<Int>> = vec![None; l.nvars()];
            for j in zero {
                bind[l.alpha(j)] = Some(Int::ZERO);
            }
            let sp = |p: &ZPoly| p.specialise_with(|c| c.clone(), &bind, &z).unwrap();
            assert!(sp(&s.u).is_zero());
            assert!(sp(s.v.as_ref().unwrap()).is_zero());
            assert!(!sp(&s.d).is_zero());
        }
    }

    #[test]
    fn order_six_certificates() {
        let r = verify_certificates(6).unwrap();
        assert!(r.primary.holds(), "{:?}", r.primary.witness());
        assert!(r.derived.holds());
    }

    #[test]
    fn order_seven_certificates_and_corruption() {
        let r = verify_certificates(7).unwrap();
        assert!(r.holds());
        let set = build_twin_polys(7).unwrap();
        let l = set.layout;
        let text = data::table("o7_a1").unwrap().replacen("a1^2*a3^2 : 00232002003002", "2*a1^2*a3^2 : 00232002003002", 1);
        let ta = CertificateTable::parse("o7_a1", &text, &l, true).unwrap();
        let tb = CertificateTable::load("o7_b1", &l).unwrap();
        let bad = verify_certificates_with(&set, &ta, &tb);
        match bad {
            Ok(rep) => {
                assert!(!rep.primary.holds());
                assert!(rep.primary.witness().is_some());
            }
            Err(e) => assert!(matches!(e, CertError::InexactDivision(_))),
        }
    }

    #[test]
    fn low_orders() {
        for c in verify_low_order_identities().unwrap() {
            assert!(c.holds(), "{}", c.label);
        }
        let mut s = build_twin_polys(4).unwrap();
        let l = s.layout;
        let mut img: Vec<ZPoly> = (0..l.nvars()).map(|v| ZPoly::var(l.nvars(), v, &Int::ZERO)).collect();
        img[l.alpha(2)] = l.alpha_var(2).neg_poly();
        s.u = s.u.compose(&img);
        assert!(!low_order_identity(&s).unwrap().holds());
    }
}
