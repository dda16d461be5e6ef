//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use somos_core::arith::PrimeField;
use somos_core::sequences::{master_sequence, unit_sequence_fp, Terms};
use somos_core::{Fp, ZPoly};

pub const PRIME: u64 = 1_000_000_007;

/// Dense `k x k` matrix of residues modulo `PRIME`.
pub fn random_residues(k: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| (0..k).map(|_| rng.random_range(0..PRIME)).collect()).collect()
}

/// Unit Somos sequence of order `n` over `F_PRIME` on `[lo, hi]`.
pub fn unit_terms(n: usize, lo: i64, hi: i64) -> Terms<Fp> {
    let f = PrimeField::new(PRIME).expect("prime");
    let mut s = unit_sequence_fp(n, f).expect("unit data");
    s.extend_to(lo, hi);
    s.terms()
}

/// Two master terms of order `n` at indices `i` and `j`, as multiplication operands.
pub fn master_pair(n: usize, i: i64, j: i64) -> (ZPoly, ZPoly) {
    let mut s = master_sequence(n).expect("master");
    s.extend_to(0, i.max(j));
    (s.get(i).expect("realised").clone(), s.get(j).expect("realised").clone())
}
