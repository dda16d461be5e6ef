use rand::Rng;

use super::elimination::{eliminate, twin_resultant, Specialisation};
use super::TwinPolySet;
use crate::arith::{Fp, PrimeField, Ring};
use crate::diamond::{contiguous_minor, ContiguousShape, HalfSide, ProductMatrix};
use crate::error::CertError;
use crate::invariants::twin_check;
use crate::sequences::{somos, Terms};

/// A random admissible twin pair over `F_p`, realised on a window of
/// contiguous-minor corners.
#[derive(Clone, Debug)]
pub struct TwinPair {
    pub a: Vec<Fp>,
    pub s_seed: Vec<Fp>,
    pub t_seed: Vec<Fp>,
    pub s: Terms<Fp>,
    pub t: Terms<Fp>,
    pub width: usize,
    /// Draws of the free data needed before a usable root appeared.
    pub attempts: usize,
}

fn shapes(n: usize) -> &'static [ContiguousShape] {
    if n % 2 == 0 {
        &[ContiguousShape(HalfSide::None)]
    } else {
        &[ContiguousShape(HalfSide::Left), ContiguousShape(HalfSide::Right)]
    }
}

fn realise(a: &[Fp], seed: &[Fp], lo: i64, hi: i64) -> Option<Terms<Fp>> {
    let mut v = somos(a.to_vec(), seed.to_vec()).ok()?;
    v.extend_checked(lo, hi).ok()?;
    Some(v.terms())
}

/// Draw coefficients, `s_1..s_{n-2}` and `t` uniformly from `F_p^*`, take a
/// root of `R^_star` for `s_0` and the matching partner endpoint, and keep
/// the first pair that is a genuine twin, differs from `t`, and has no zero
/// term on the window of `width x width` corners for minors of `size`.
pub fn sample_twin_pair<R: Rng + ?Sized>(
    set: &TwinPolySet,
    field: PrimeField,
    rng: &mut R,
    size: usize,
    width: usize,
    max_attempts: usize,
) -> Result<Option<TwinPair>, CertError> {
    let n = set.n;
    if set.v.is_none() {
        return Err(CertError::UnsupportedOrder(n));
    }
    let p = field.modulus();
    let mut draw = |k: usize| -> Vec<Fp> { (0..k).map(|_| field.from_u64(rng.random_range(1..p))).collect() };
    let reach = 3 * size as i64;
    let (lo, hi) = (-reach - n as i64, width as i64 + 2 * reach + n as i64);
    for attempt in 1..=max_attempts {
        let sp = Specialisation { a: draw(set.layout.n_alpha), s_star: draw(n - 2), t: draw(n) };
        let (Ok(tr), Ok(elim)) = (twin_resultant(set, &sp), eliminate(set, &sp)) else {
            continue;
        };
        for (r, _) in tr.r_star.roots_by_scan(field) {
            let Some(last) = elim.partner(&r) else { continue };
            let seed = sp.seed(&r, Some(&last));
            if seed.iter().any(|v| v.is_zero()) || seed == sp.t || !twin_check(&sp.a, &seed, &sp.t)? {
                continue;
            }
            let (Some(s), Some(t)) = (realise(&sp.a, &seed, lo, hi), realise(&sp.a, &sp.t, lo, hi)) else {
                continue;
            };
            return Ok(Some(TwinPair { a: sp.a, s_seed: seed, t_seed: sp.t, s, t, width, attempts: attempt }));
        }
    }
    Ok(None)
}

impl TwinPair {
    pub fn order(&self) -> usize {
        self.s_seed.len()
    }

    /// `(checked, vanishing)` over contiguous `size x size` (half-)diamond
    /// minors with corners in `[0, width)^2`.
    pub fn minor_counts(&self, size: usize) -> (usize, usize) {
        let m = ProductMatrix::new(&self.s, &self.t);
        let mut checked = 0;
        let mut vanishing = 0;
        for &shape in shapes(self.order()) {
            for row in 0..self.width as i64 {
                for col in 0..self.width as i64 {
                    if let Some(d) = contiguous_minor(&m, shape, size, row, col) {
                        checked += 1;
                        vanishing += usize::from(d.is_zero());
                    }
                }
            }
        }
        (checked, vanishing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::build_twin_polys;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pair_order_six() {
        let set = build_twin_polys(6).unwrap();
        let field = PrimeField::new(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pair = sample_twin_pair(&set, field, &mut rng, 5, 12, 50).unwrap().unwrap();
        let (checked, vanishing) = pair.minor_counts(5);
        assert_eq!(checked, 144);
        assert_eq!(vanishing, checked);
        let (c4, v4) = pair.minor_counts(4);
        assert!(v4 < c4);
    }

    #[test]
    fn random_pair_order_seven() {
        let set = build_twin_polys(7).unwrap();
        let field = PrimeField::new(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pair = sample_twin_pair(&set, field, &mut rng, 5, 10, 50).unwrap().unwrap();
        assert_ne!(pair.s_seed, pair.t_seed);
        let (checked, vanishing) = pair.minor_counts(5);
        assert_eq!((checked, vanishing), (200, 200));
    }
}
