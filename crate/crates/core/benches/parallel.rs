use std::collections::HashMap;

use bloch_core::criteria::weights::potential_weight_bound;
use bloch_core::graph::builders::{dense_2d, dice};
use bloch_core::graph::expand::q_expand;
use bloch_core::graph::floquet_matrix;
use bloch_core::graph::spectrum::sample_spectrum;
use bloch_core::matrix::DEFAULT_DET_CAP;
use bloch_core::par::ExecMode;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn spectrum(c: &mut Criterion) {
    let g = dice(2).unwrap().with_random_labels(1).zero_potential();
    let mut group = c.benchmark_group("spectrum_grid_64x64");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sample_spectrum(&g.graph, &g.labels, 64, mode).unwrap())
        });
    }
    group.finish();
}

fn identity(c: &mut Criterion) {
    let g = dense_2d().with_random_labels(2).zero_potential();
    let base = bloch_core::graph::dispersion(&g.graph, &g.labels, DEFAULT_DET_CAP).unwrap();
    let ex = q_expand(&g.graph, &g.labels, &[2, 2], None).unwrap();
    let dq = ex.dispersion(DEFAULT_DET_CAP).unwrap();
    let env = HashMap::new();
    let points: Vec<(Vec<Complex64>, Complex64)> = (0..256)
        .map(|k| {
            let t = k as f64 * 0.37;
            (
                vec![Complex64::from_polar(1.1, t), Complex64::from_polar(0.9, 2.0 * t)],
                Complex64::new(t.cos(), t.sin() * 0.5),
            )
        })
        .collect();
    let mut group = c.benchmark_group("product_identity_256_points");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                mode.map(&points, |(z, l)| ex.product_identity_error(&dq, &base, z, *l, &env).unwrap())
            })
        });
    }
    group.finish();
}

fn weight_bounds(c: &mut Criterion) {
    let g = dice(2).unwrap().with_random_labels(3).zero_potential();
    let ex = q_expand(&g.graph, &g.labels, &[3, 2], None).unwrap();
    let k = floquet_matrix(&ex.expanded, &ex.labels).unwrap();
    let w = [-1, -1, -1];
    let mut group = c.benchmark_group("weight_bound_18x18");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| potential_weight_bound(&k, &w, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum, identity, weight_bounds);
criterion_main!(benches);
