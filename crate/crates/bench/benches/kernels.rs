use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use somos_bench::{master_pair, random_residues, unit_terms, PRIME};
use somos_core::arith::matrix::rank_mod_p;
use somos_core::diamond::{probe_window, rank_probe, ProbeMode, ProductMatrix};
use somos_core::experiments::{run_gr_experiment, ExperimentConfig};
use somos_core::integrality::laurent_audit;
use somos_core::sequences::GRType;

fn rank(c: &mut Criterion) {
    let m = random_residues(200, 1);
    c.bench_function("rank_mod_p_200", |b| {
        b.iter_batched(|| m.clone(), |mut a| black_box(rank_mod_p(&mut a, PRIME)), BatchSize::SmallInput)
    });
}

fn probe(c: &mut Criterion) {
    for (n, mode) in [(6, ProbeMode::Diamond), (7, ProbeMode::Half)] {
        let (lo, hi) = probe_window(mode, 100, 0);
        let t = unit_terms(n, lo, hi);
        let m = ProductMatrix::new(&t, &t);
        c.bench_function(&format!("probe_100_order_{n}"), |b| b.iter(|| black_box(rank_probe(&m, mode, 100, 0).unwrap())));
    }
}

fn poly(c: &mut Criterion) {
    let (p, q) = master_pair(6, 10, 11);
    c.bench_function("mul_master_terms_order_6", |b| b.iter(|| black_box(p.mul_poly(&q))));
    c.bench_function("laurent_audit_order_6", |b| b.iter(|| black_box(laurent_audit(6, 6, 10).unwrap())));
}

fn experiment(c: &mut Criterion) {
    let mut cfg = ExperimentConfig::new(GRType::new(1, 3, 4).unwrap()).unwrap();
    cfg.trials = 2;
    let mut g = c.benchmark_group("experiment");
    g.sample_size(10);
    g.bench_function("gr_1_3_4_two_trials", |b| b.iter(|| black_box(run_gr_experiment(&cfg).unwrap())));
    g.finish();
}

criterion_group!(benches, rank, probe, poly, experiment);
criterion_main!(benches);
