use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use xyhecke_core::hecke::gorenstein_search;
use xyhecke_core::jl::find_alpha;
use xyhecke_core::level::LevelParams;
use xyhecke_core::search::{first_match, Exec};

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn alpha_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_alpha");
    g.sample_size(10);
    for (q, a, b, bound) in [(5u32, 1u32, 2u32, 2u32), (7, 1, 6, 1)] {
        let lp = LevelParams::new(q, a, b).unwrap();
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, format!("q{}_bound{}", q, bound)), &lp, |bench, lp| {
                bench.iter(|| find_alpha(lp, bound, exec).ok())
            });
        }
    }
    g.finish();
}

// On y = T^2 + 1 over F_7 no witness exists at ell = 2, so the whole box is scanned.
fn gorenstein_exhaustive(c: &mut Criterion) {
    let mut g = c.benchmark_group("gorenstein_full_scan");
    g.sample_size(10);
    let lp = LevelParams::new(7, 0, 1).unwrap();
    for bound in [2u32, 3] {
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, format!("q7_ell2_bound{}", bound)), &bound, |bench, &bound| {
                bench.iter(|| assert!(gorenstein_search(&lp, 2, bound, exec).is_err()))
            });
        }
    }
    g.finish();
}

fn raw_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("first_match_miss");
    for (len, bound) in [(5usize, 3u32), (7, 2)] {
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, format!("len{}_bound{}", len, bound)), &(len, bound), |bench, &(len, bound)| {
                bench.iter(|| first_match(len, bound, exec, |v| v.iter().sum::<i64>() > 100))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, alpha_search, gorenstein_exhaustive, raw_scan);
criterion_main!(benches);
