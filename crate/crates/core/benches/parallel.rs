use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use moments_core::coefficients::coefficient_table_with;
use moments_core::diffalg::nth_derivative_expansion_with;
use moments_core::verify::{check_newton, check_random_triples};
use moments_core::{Cap, Exec};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn coefficient_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficient_table n=10 s=3");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| coefficient_table_with(black_box(10), 3, Cap::default(), exec).unwrap())
        });
    }
    group.finish();
}

fn symbolic_derivatives(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic D^n n=7 s=2");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| nth_derivative_expansion_with(black_box(7), 2, Cap::default(), exec).unwrap())
        });
    }
    group.finish();
}

fn random_triples(c: &mut Criterion) {
    let mut group = c.benchmark_group("random triples x20 n<=4 s<=1");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_random_triples(black_box(1), 20, 4, 1, Cap::default(), exec))
        });
    }
    group.finish();
}

fn multisets(c: &mut Criterion) {
    let mut group = c.benchmark_group("Newton identity multisets size<=5");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_newton(black_box(5), 12, exec))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    coefficient_tables,
    symbolic_derivatives,
    random_triples,
    multisets
);
criterion_main!(benches);
