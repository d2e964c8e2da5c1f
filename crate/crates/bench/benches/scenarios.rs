use criterion::{criterion_group, criterion_main, Criterion};
use setfix_bench::example;
use setfix_core::certifier::{certify, Mode, PairSource, DEFAULT_VIOLATION_CAP};
use setfix_core::rational::q;
use setfix_core::solver::{enumerate_fixed_points, iterate, EnumerateMode, SolveOptions};

fn certification(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    for (id, mode, step) in [(1, Mode::Generalized, q(1, 8)), (2, Mode::Plain, q(1, 100))] {
        let sc = example(id);
        let alpha = sc.alpha().unwrap();
        let source = PairSource::Grid { step };
        group.bench_function(format!("example{id}/{mode}"), |b| {
            b.iter(|| {
                certify(
                    &sc.name,
                    &sc.map,
                    &alpha,
                    &sc.family,
                    &source,
                    mode,
                    DEFAULT_VIOLATION_CAP,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn solving(c: &mut Criterion) {
    for id in [1, 2] {
        let sc = example(id);
        let alpha = sc.alpha().unwrap();
        let start = sc.start.clone().unwrap();
        let opts = SolveOptions {
            route: sc.route,
            ..Default::default()
        };
        c.bench_function(&format!("solve/example{id}"), |b| {
            b.iter(|| iterate(&sc.map, &alpha, &start.x0, start.x1.as_ref(), &opts).unwrap())
        });
        c.bench_function(&format!("enumerate/example{id}"), |b| {
            b.iter(|| enumerate_fixed_points(&sc.map, &EnumerateMode::Analytic).unwrap())
        });
    }
}

criterion_group!(benches, certification, solving);
criterion_main!(benches);
