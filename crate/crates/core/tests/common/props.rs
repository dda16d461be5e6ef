//! Property suites shared by the proptest target and the acceptance runner.
//! Each suite runs a fixed number of cases from a deterministic seed and
//! returns the first counterexample as an error.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use somos_core::arith::rational::{rat, Rational};
use somos_core::arith::{Int, Mono, MultiPoly};
use somos_core::diamond::desnanot_jacobi_check;
use somos_core::sequences::{decimate, interleave, master_sequence, somos, Terms};

fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

fn check<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn int_matrix(k: usize) -> impl Strategy<Value = Vec<Vec<Int>>> {
    prop::collection::vec(prop::collection::vec((-50i64..=50).prop_map(Int::from), k), k)
}

/// Corner-minor identity on 100 random integer matrices of sizes 2 to 6.
pub fn desnanot_jacobi() -> Result<(), String> {
    let s = (2usize..=6).prop_flat_map(int_matrix);
    check(100, s, |w| {
        prop_assert!(desnanot_jacobi_check(&w).unwrap());
        Ok(())
    })
}

fn nonzero(lo: i64, hi: i64) -> impl Strategy<Value = i64> {
    (lo..=hi).prop_filter("nonzero", |v| *v != 0)
}

fn rationals(v: Vec<i64>) -> Vec<Rational> {
    v.into_iter().map(rat).collect()
}

/// Two-sided extensions of random rational Somos sequences satisfy the
/// recurrence at every realised index.
pub fn recurrence_residuals() -> Result<(), String> {
    let s = (4usize..=7).prop_flat_map(|n| {
        (prop::collection::vec(nonzero(-5, 5), n / 2), prop::collection::vec(nonzero(-6, 6), n))
    });
    check(60, s, |(a, seed)| {
        let mut v = somos(rationals(a), rationals(seed)).unwrap();
        v.extend_to(-8, 16);
        prop_assert!(v.residuals_vanish());
        Ok(())
    })
}

/// Specialising the master sequence at a point gives the numeric sequence
/// with that data.
pub fn master_specialisation() -> Result<(), String> {
    let s = (4usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(nonzero(-4, 4), n / 2), prop::collection::vec(nonzero(-4, 4), n))
    });
    check(24, s, |(n, a, seed)| {
        let mut m = master_sequence(n).unwrap();
        m.extend_to(-2, n as i64 + 3);
        let mut v = somos(rationals(a.clone()), rationals(seed.clone())).unwrap();
        v.extend_to(-2, n as i64 + 3);
        let point = rationals(a.into_iter().chain(seed).collect());
        let zero = rat(0);
        for i in v.lo()..=v.hi() {
            let (Some(p), Some(want)) = (m.get(i), v.get(i)) else { continue };
            let got = p.eval_with(|c| Rational::from_integer(c.to_big()), &point, &zero);
            prop_assert_eq!(got.as_ref(), Some(want), "index {}", i);
        }
        Ok(())
    })
}

/// Interleaving all residues of a decimation recovers the sequence.
pub fn decimate_interleave() -> Result<(), String> {
    let s = (1usize..=5, -7i64..=7, prop::collection::vec(-100i64..=100, 1..40));
    check(200, s, |(d, base, vals)| {
        let t = Terms::new(base, vals);
        let parts: Vec<Terms<i64>> = (0..d).map(|r| decimate(&t, d, r).unwrap()).collect();
        let back = interleave(&parts).unwrap();
        prop_assert_eq!(back.lo(), t.lo());
        prop_assert_eq!(back.vals, t.vals);
        Ok(())
    })
}

fn raw_terms(nvars: usize) -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    prop::collection::vec((prop::collection::vec(-2i32..=3, nvars), -4i64..=4), 0..12)
}

fn build(nvars: usize, raw: &[(Vec<i32>, i64)]) -> MultiPoly<Int> {
    let terms = raw.iter().map(|(e, c)| (Mono::from_exps(e), Int::from(*c))).collect();
    MultiPoly::from_terms(nvars, terms, &Int::ZERO)
}

/// Re-canonicalising is the identity, including after ring operations.
pub fn canonical_idempotence() -> Result<(), String> {
    let s = (1usize..=4).prop_flat_map(|k| (Just(k), raw_terms(k), raw_terms(k)));
    check(200, s, |(k, x, y)| {
        let (p, q) = (build(k, &x), build(k, &y));
        for r in [p.clone(), p.add_poly(&q), p.mul_poly(&q), p.sub_poly(&p)] {
            prop_assert_eq!(r.recanonicalise(), r.clone());
            prop_assert!(r.terms().windows(2).all(|w| w[0].0 > w[1].0));
            prop_assert!(r.terms().iter().all(|(_, c)| *c != Int::ZERO));
        }
        Ok(())
    })
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 5] = [
    ("desnanot_jacobi", desnanot_jacobi),
    ("recurrence_residuals", recurrence_residuals),
    ("master_specialisation", master_specialisation),
    ("decimate_interleave", decimate_interleave),
    ("canonical_idempotence", canonical_idempotence),
];
