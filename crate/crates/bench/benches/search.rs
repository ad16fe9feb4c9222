use criterion::{criterion_group, criterion_main, Criterion};

use gmat_core::search::{
    search_circulant_gw, search_gh_backtrack, CirculantRunOptions, SearchSpec,
};
use gmat_core::Group;

fn bench_gh_backtrack(c: &mut Criterion) {
    let g = Group::cyclic(3);
    c.bench_function("gh_backtrack_v6_z3", |b| {
        b.iter(|| search_gh_backtrack(&SearchSpec::balance_gh(6, &g)).unwrap())
    });
}

fn bench_circulant_gw(c: &mut Criterion) {
    let g = Group::cyclic(3);
    let mut group = c.benchmark_group("circulant_gw");
    group.bench_function("v13_k13", |b| {
        b.iter(|| search_circulant_gw(13, 13, &g, &CirculantRunOptions::default()).unwrap())
    });
    group.sample_size(10);
    group.bench_function("v17_k16_full", |b| {
        b.iter(|| search_circulant_gw(17, 16, &g, &CirculantRunOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_gh_backtrack, bench_circulant_gw);
criterion_main!(benches);
