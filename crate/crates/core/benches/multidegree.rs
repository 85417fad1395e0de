//! Sequential vs rayon-parallel enumeration of the 2^m multidegrees.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use torfacet::{arrangements, corpus, generators, hochster, koszul, Coefficients, Exec, SimplicialComplex};

fn inputs() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("mgon-10", generators::mgon(10).unwrap()),
        ("cross-polytope-5", generators::cross_polytope(5).unwrap()),
        ("random-12", corpus::random_complex(12, (1, 2), 3).unwrap()),
    ]
}

fn betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti");
    group.sample_size(10);
    for (name, k) in inputs() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let tag = format!("{exec:?}");
            group.bench_with_input(BenchmarkId::new(format!("hochster/{tag}"), name), &k, |b, k| {
                b.iter(|| hochster::betti_table_hochster_with(black_box(k), Coefficients::Rationals, exec))
            });
            group.bench_with_input(BenchmarkId::new(format!("koszul/{tag}"), name), &k, |b, k| {
                b.iter(|| koszul::betti_table_koszul_with(black_box(k), Coefficients::Rationals, exec))
            });
        }
    }
    group.finish();
}

fn arrangement(c: &mut Criterion) {
    let mut group = c.benchmark_group("ukhom");
    group.sample_size(10);
    let k = generators::mgon(9).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("subcomplex/{exec:?}"), |b| {
            b.iter(|| arrangements::uk_homology_via_subcomplexes_with(black_box(&k), Coefficients::Integers, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, betti, arrangement);
criterion_main!(benches);
