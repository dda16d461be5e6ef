use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bundled_invariants, omega_box_kernel, Family, InvariantPoly};
use crate::arith::fp::random_prime;
use crate::arith::{Field, Fp, Int, Mono, PrimeField, RatFunc, Ring, ZPoly};
use crate::error::InvariantError;
use crate::sequences::SeqView;

/// Images of the variables under the shift: `x_i -> x_{i+1}`, `x_{n-1} -> N / x0`.
pub fn sigma_images(family: Family) -> Vec<ZPoly> {
    let l = family.layout();
    let n = l.n;
    let mut images: Vec<ZPoly> = (0..l.nvars()).map(|v| ZPoly::var(l.nvars(), v, &Int::ZERO)).collect();
    for i in 0..n - 1 {
        images[l.x(i)] = l.x_var(i + 1);
    }
    images[l.x(n - 1)] = family.shift_numerator().mul_mono(&Mono::var(l.x(0), -1));
    images
}

fn monomial_meet(p: &ZPoly, acc: Option<Mono>) -> Option<Mono> {
    p.terms().iter().fold(acc, |m, (t, _)| Some(m.map_or(*t, |m| m.meet(t))))
}

/// Apply the shift to a quotient of polynomials. Laurent monomials created
/// by the substitution are cleared from numerator and denominator together.
pub fn sigma_apply(family: Family, f: &RatFunc<Int>) -> RatFunc<Int> {
    let images = sigma_images(family);
    let num = f.num.compose(&images);
    let den = f.den.compose(&images);
    let shift = monomial_meet(&num, monomial_meet(&den, None)).map_or(Mono::ONE, |m| m.negative_part());
    RatFunc { num: num.mul_mono(&shift), den: den.mul_mono(&shift) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Symbolic,
    Sampled { trials: usize, seed: u64 },
}

/// Point at which `F o sigma` and `F` were seen to differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub modulus: u64,
    pub alpha: Vec<u64>,
    pub x: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    SymbolicPass,
    SampledPass { trials: usize, resampled: usize },
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }
}

const SAMPLE_SEED: u64 = 0x5e_ed_50_60;

/// Symbolic for orders up to 5, `trials` random points otherwise.
pub fn is_invariant(f: &InvariantPoly, trials: usize) -> Verdict {
    let mode = if f.family.order() <= 5 {
        CheckMode::Symbolic
    } else {
        CheckMode::Sampled { trials, seed: SAMPLE_SEED }
    };
    is_invariant_with(f, mode)
}

fn sample_field(rng: &mut ChaCha8Rng) -> PrimeField {
    let p = random_prime(rng, 1 << 59, 1 << 60).expect("primes exist in range");
    PrimeField::new(p).expect("prime")
}

fn eval_fp(p: &ZPoly, field: &PrimeField, point: &[Fp]) -> Fp {
    let q = field.modulus();
    p.eval_with(|c| field.from_u64(c.rem_euclid_u64(q)), point, &field.zero()).expect("evaluation at a unit point")
}

pub fn is_invariant_with(f: &InvariantPoly, mode: CheckMode) -> Verdict {
    let l = f.family.layout();
    match mode {
        CheckMode::Symbolic => {
            let g = f.ratfunc();
            let s = sigma_apply(f.family, &g);
            if s == g {
                return Verdict::SymbolicPass;
            }
            let residual = s.num.mul_poly(&g.den).sub_poly(&g.num.mul_poly(&s.den));
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let field = sample_field(&mut rng);
            let q = field.modulus();
            let mut point: Vec<u64> = Vec::new();
            for _ in 0..64 {
                point = (0..l.nvars()).map(|_| rng.random_range(1..q)).collect();
                let pt: Vec<Fp> = point.iter().map(|&v| field.from_u64(v)).collect();
                if !eval_fp(&residual, &field, &pt).is_zero() {
                    break;
                }
            }
            Verdict::Fail(Witness {
                modulus: q,
                alpha: point[..l.n_alpha].to_vec(),
                x: point[l.n_alpha..].to_vec(),
            })
        }
        CheckMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = sample_field(&mut rng);
            let q = field.modulus();
            let big_n = f.family.shift_numerator();
            let pi = f.pi();
            let mut done = 0;
            let mut resampled = 0;
            while done < trials {
                let mut point: Vec<Fp> = (0..l.nvars()).map(|_| field.from_u64(rng.random_range(1..q))).collect();
                let x0 = point[l.x(0)];
                let last = eval_fp(&big_n, &field, &point).div(&x0).expect("x0 is a unit");
                if last.is_zero() {
                    resampled += 1;
                    continue;
                }
                let lhs_pi = eval_fp(&pi, &field, &point);
                let rhs_phi = eval_fp(&f.phi, &field, &point);
                let saved = point.clone();
                for i in 0..l.n - 1 {
                    point[l.x(i)] = saved[l.x(i + 1)];
                }
                point[l.x(l.n - 1)] = last;
                let lhs = eval_fp(&f.phi, &field, &point).mul(&lhs_pi);
                let rhs = rhs_phi.mul(&eval_fp(&pi, &field, &point));
                if lhs != rhs {
                    return Verdict::Fail(Witness {
                        modulus: q,
                        alpha: saved[..l.n_alpha].iter().map(|v| v.value()).collect(),
                        x: saved[l.n_alpha..].iter().map(|v| v.value()).collect(),
                    });
                }
                done += 1;
            }
            Verdict::SampledPass { trials, resampled }
        }
    }
}

/// Value of `f` on every length-`n` window of a realised sequence; `None`
/// where a window contains a zero term.
pub fn invariant_along<T: Field>(f: &InvariantPoly, seq: &SeqView<T>) -> Result<Vec<(i64, Option<T>)>, InvariantError> {
    let n = f.family.order();
    if seq.order() != n {
        return Err(InvariantError::OrderMismatch { expected: n, found: seq.order() });
    }
    let l = f.family.layout();
    let ctx = seq.get(seq.lo()).expect("realised term").zero_like();
    let alpha: Vec<T> = seq.recurrence().pairs().iter().map(|(_, c)| c.clone()).collect();
    let pi = f.pi();
    let mut out = Vec::new();
    let mut i = seq.lo();
    while i + n as i64 - 1 <= seq.hi() {
        let mut point = alpha.clone();
        point.extend((0..n as i64).map(|k| seq.get(i + k).expect("inside window").clone()));
        debug_assert_eq!(point.len(), l.nvars());
        let num = f.phi.eval_with(|c| ctx.from_int(c), &point, &ctx).expect("polynomial");
        let den = pi.eval_with(|c| ctx.from_int(c), &point, &ctx).expect("polynomial");
        out.push((i, num.div(&den)));
        i += 1;
    }
    Ok(out)
}

/// Do the seeds `s` and `t` agree on every relevant Somos invariant for the
/// coefficients `a`? Order 6 and 7 use the two bundled invariants, orders 4
/// and 5 the single one, orders 2 and 3 have none, and higher orders fall back
/// to the computed kernel.
pub fn twin_check<T: Field>(a: &[T], s: &[T], t: &[T]) -> Result<bool, InvariantError> {
    let n = s.len();
    let family = Family::somos(n)?;
    if t.len() != n {
        return Err(InvariantError::OrderMismatch { expected: n, found: t.len() });
    }
    let l = family.layout();
    if a.len() != l.n_alpha {
        return Err(InvariantError::Seq(crate::error::SeqError::CoefficientCount {
            expected: l.n_alpha,
            found: a.len(),
        }));
    }
    if let Some(i) = s.iter().chain(t).position(|v| v.is_zero()) {
        return Err(InvariantError::ZeroTerm(i % n));
    }
    let invariants = match n {
        2 | 3 => Vec::new(),
        4..=7 => bundled_invariants(n)?,
        _ => omega_box_kernel(family),
    };
    let ctx = s[0].zero_like();
    let point = |w: &[T]| -> Vec<T> { a.iter().chain(w).cloned().collect() };
    let (ps, pt) = (point(s), point(t));
    let ev = |p: &ZPoly, at: &[T]| p.eval_with(|c| ctx.from_int(c), at, &ctx).expect("polynomial");
    let pi = l.pi_x();
    let (pi_s, pi_t) = (ev(&pi, &ps), ev(&pi, &pt));
    Ok(invariants.iter().all(|f| pi_t.mul(&ev(&f.phi, &ps)) == pi_s.mul(&ev(&f.phi, &pt))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::Rational;
    use crate::invariants::builtin_invariant;
    use crate::sequences::unit_sequence;

    #[test]
    fn shift_of_variables() {
        let f = Family::Somos(5);
        let l = f.layout();
        let mut g = RatFunc::from_poly(l.x_var(0));
        g = sigma_apply(f, &g);
        assert_eq!(g, RatFunc::from_poly(l.x_var(1)));
        for _ in 0..3 {
            g = sigma_apply(f, &g);
        }
        assert_eq!(g, RatFunc::from_poly(l.x_var(4)));
        let back = sigma_apply(f, &g);
        assert_eq!(back.num.mul_poly(&l.x_var(0)), f.shift_numerator().mul_poly(&back.den));
    }

    #[test]
    fn low_order_builtins_are_invariant() {
        for name in ["F4", "F5"] {
            let f = builtin_invariant(name).unwrap();
            assert_eq!(is_invariant(&f, 20), Verdict::SymbolicPass, "{name}");
            assert_eq!(sigma_apply(f.family, &f.ratfunc()), f.ratfunc());
        }
    }

    #[test]
    fn sampled_mode_passes_and_fails() {
        let g6 = builtin_invariant("G6").unwrap();
        assert!(matches!(is_invariant(&g6, 20), Verdict::SampledPass { trials: 20, .. }));
        let f4 = builtin_invariant("F4").unwrap();
        let l = f4.family.layout();
        let bad = InvariantPoly::new(f4.family, f4.phi.add_poly(&l.x_var(0).pow_poly(4))).unwrap();
        let Verdict::Fail(w) = is_invariant(&bad, 20) else { panic!("corruption passed") };
        assert_eq!(w.x.len(), 4);
        assert!(matches!(
            is_invariant_with(&bad, CheckMode::Sampled { trials: 5, seed: 3 }),
            Verdict::Fail(_)
        ));
    }

    #[test]
    fn constant_on_unit_windows() {
        for name in ["F4", "F5", "F6", "G6", "F7", "G7"] {
            let f = builtin_invariant(name).unwrap();
            let mut s = unit_sequence(f.family.order()).unwrap();
            s.extend_to(-5, 20);
            let vals = invariant_along(&f, &s).unwrap();
            assert!(vals.len() >= 20);
            let first = vals[0].1.clone().unwrap();
            assert!(vals.iter().all(|(_, v)| v.as_ref() == Some(&first)), "{name}");
        }
    }

    #[test]
    fn twins() {
        let q = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<Rational>>();
        let a = q(&[1, 1, 1]);
        let s = q(&[1, 2, 3, 4, 5, 6]);
        assert!(twin_check(&a, &s, &s).unwrap());
        assert!(!twin_check(&a, &s, &q(&[2, 7, 1, 8, 2, 8])).unwrap());
        assert!(matches!(twin_check(&a, &s, &q(&[1, 0, 1, 1, 1, 1])), Err(InvariantError::ZeroTerm(1))));
        let field = PrimeField::new(19).unwrap();
        let a = field.elems(&[1, 1, 1]);
        assert!(twin_check(&a, &field.elems(&[15, 1, 1, 1, 1, 15]), &field.elems(&[1, 1, 4, 4, 1, 1])).unwrap());
        let b = q(&[3]);
        assert!(twin_check(&b, &q(&[1, 2, 3]), &q(&[5, 1, 1])).unwrap());
    }
}
