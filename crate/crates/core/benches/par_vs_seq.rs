//! Parallel speedup over the data-parallel entry points.
//!
//! The same code runs inside a 1-thread rayon pool ("seq") and the default
//! pool ("par"); reductions use a fixed tree association, so both produce
//! bit-identical numbers and the comparison is purely about wall time. A
//! sanity assertion at startup re-checks that identity.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rayon::ThreadPool;

use numidx_core::config::Tolerances;
use numidx_core::extract::folner_linearize;
use numidx_core::linop::index_upper_search;
use numidx_core::lipmap::{gallery, wl_lower};
use numidx_core::rng::Stream;
use numidx_core::smooth::{gaussian_draw, smooth_map, GaussianSpec};
use numidx_core::{LipschitzExpr, SpaceSpec};

fn pool(threads: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("local pool")
}

fn smoothed_target() -> (SpaceSpec, LipschitzExpr) {
    let space = SpaceSpec::linf(2);
    let f = gallery("maxaffine_scramble", &space).unwrap();
    let measure = gaussian_draw(
        &GaussianSpec::identity(2).unwrap(),
        512,
        Stream::new(0xbe9c).child_named("measure"),
    )
    .unwrap();
    let f_n = smooth_map(&f, &measure).unwrap();
    (space, f_n)
}

fn bench_radius_on_smoothed_map(c: &mut Criterion) {
    let (space, f_n) = smoothed_target();
    let run = || {
        wl_lower(&f_n, &space, 128, Stream::new(7).child_named("wl"), None)
            .unwrap()
            .value
    };

    let seq = pool(1);
    let par = pool(0); // 0 = rayon default (one per logical cpu)
    assert_eq!(
        seq.install(run).to_bits(),
        par.install(run).to_bits(),
        "thread count changed the radius estimate"
    );

    let mut group = c.benchmark_group("wl_lower_smoothed");
    group.sample_size(10);
    group.bench_function("seq", |b| b.iter(|| black_box(seq.install(run))));
    group.bench_function("par", |b| b.iter(|| black_box(par.install(run))));
    group.finish();
}

fn bench_index_search(c: &mut Criterion) {
    let space = SpaceSpec::l2(3);
    let tols = Tolerances::default();
    let run = || {
        index_upper_search(&space, 512, Stream::new(11).child_named("idx"), &tols).upper_bound
    };

    let seq = pool(1);
    let par = pool(0);
    assert_eq!(
        seq.install(run).to_bits(),
        par.install(run).to_bits(),
        "thread count changed the index bound"
    );

    let mut group = c.benchmark_group("index_upper_search");
    group.sample_size(10);
    group.bench_function("seq", |b| b.iter(|| black_box(seq.install(run))));
    group.bench_function("par", |b| b.iter(|| black_box(par.install(run))));
    group.finish();
}

fn bench_folner_columns(c: &mut Criterion) {
    let space = SpaceSpec::linf(2);
    let f = gallery("linear_plus_periodic", &space).unwrap();
    let run = || {
        folner_linearize(&f, &space, 10.0, 8, Stream::new(13).child_named("box"), None)
            .unwrap()
            .additivity_defect
    };

    let seq = pool(1);
    let par = pool(0);
    assert_eq!(
        seq.install(run).to_bits(),
        par.install(run).to_bits(),
        "thread count changed the box average"
    );

    let mut group = c.benchmark_group("folner_linearize");
    group.sample_size(10);
    group.bench_function("seq", |b| b.iter(|| black_box(seq.install(run))));
    group.bench_function("par", |b| b.iter(|| black_box(par.install(run))));
    group.finish();
}

criterion_group!(
    benches,
    bench_radius_on_smoothed_map,
    bench_index_search,
    bench_folner_columns
);
criterion_main!(benches);
