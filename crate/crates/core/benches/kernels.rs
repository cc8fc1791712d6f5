//! Parallel kernels on one thread against the full pool.
//!
//! `cargo bench -p mcstack-core` compares a one-thread rayon pool with the
//! global pool; `--no-default-features` benches the sequential build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mcstack_core::analytic::major_arc_dominance;
use mcstack_core::asymptotics::error_table;
use mcstack_core::gf::{gf_f, gf_stack};
use mcstack_core::StackParams;

fn p13() -> StackParams {
    StackParams::standard(1, 3).unwrap()
}

#[cfg(feature = "parallel")]
fn modes() -> Vec<(&'static str, Option<rayon::ThreadPool>)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    vec![("one-thread", Some(single)), ("pool", None)]
}

#[cfg(feature = "parallel")]
fn within<R: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> R + Send) -> R {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn modes() -> Vec<(&'static str, Option<()>)> {
    vec![("sequential", None)]
}

#[cfg(not(feature = "parallel"))]
fn within<R>(_: &Option<()>, f: impl FnOnce() -> R) -> R {
    f()
}

fn series(c: &mut Criterion) {
    let p = p13();
    let mut g = c.benchmark_group("gf_stack");
    g.sample_size(10);
    for (name, pool) in modes() {
        for order in [2000usize, 8000] {
            g.bench_with_input(BenchmarkId::new(name, order), &order, |b, &order| {
                b.iter(|| within(&pool, || gf_stack(&p, order).unwrap()))
            });
        }
    }
    g.finish();

    let f = gf_f(&p, 6000);
    let mut g = c.benchmark_group("series_mul");
    g.sample_size(10);
    for (name, pool) in modes() {
        g.bench_function(name, |b| b.iter(|| within(&pool, || f.mul(&f))));
    }
    g.finish();
}

fn table(c: &mut Criterion) {
    let p = p13();
    let ns: Vec<u64> = (1..=40).map(|k| k * 100).collect();
    let mut g = c.benchmark_group("error_table");
    g.sample_size(10);
    for (name, pool) in modes() {
        g.bench_function(name, |b| b.iter(|| within(&pool, || error_table(&p, &ns).unwrap())));
    }
    g.finish();
}

fn dominance(c: &mut Criterion) {
    let p = p13();
    let mut g = c.benchmark_group("dominance_grid");
    g.sample_size(10);
    for (name, pool) in modes() {
        g.bench_function(name, |b| {
            b.iter(|| within(&pool, || major_arc_dominance(&p, 2000, 1 << 15, 0.5).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, series, table, dominance);
criterion_main!(benches);
