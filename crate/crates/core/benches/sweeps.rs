use cambrian::poset::conjecture_sweep;
use cambrian::simplicial::{build_lift, regularity_check};
use cambrian::{par, sample};
use cambrian::{FlipDigraph, Instance, LiftKind, Signature};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn tree_counts(n: usize) -> usize {
    let sigs: Vec<Signature> = Signature::all(n).collect();
    par::map(&sigs, |s| Instance::full(s).unwrap().tree_masks().len()).into_iter().sum()
}

fn regularity(n: usize) -> usize {
    let sigs: Vec<Signature> = Signature::all(n).collect();
    par::map(&sigs, |s| {
        let g = FlipDigraph::new(Instance::full(s).unwrap()).unwrap();
        let lift = build_lift(g.instance(), LiftKind::Rational).unwrap();
        regularity_check(&g, &lift).unwrap().walls
    })
    .into_iter()
    .sum()
}

fn probes(count: usize) -> usize {
    let mut rng = sample::rng(1);
    let cases: Vec<_> = (0..count).map(|k| sample::random_nested(&mut rng, 1 + k % 4)).collect();
    conjecture_sweep(&cases).unwrap().len()
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    let cases: [(&str, fn() -> usize); 3] = [
        ("trees n=7", || tree_counts(7)),
        ("regularity n=6", || regularity(6)),
        ("conjecture 200", || probes(200)),
    ];
    for (name, run) in cases {
        group.bench_function(BenchmarkId::new("pool", name), |b| b.iter(run));
        group.bench_function(BenchmarkId::new("sequential", name), |b| {
            b.iter(|| par::with_threads(1, run))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
