use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nilgrade_bench::{fp_pair, generic_a6};
use nilgrade_core::classify::witness::witness_exact;
use nilgrade_core::nonexistence::SearchConfig;
use nilgrade_core::{canonical_form_a6, family_a6, search_completion, CompletionProblem, Gaussian, Scenario};

fn construction(c: &mut Criterion) {
    let g = Gaussian::zero();
    let p = generic_a6(&g);
    let mut group = c.benchmark_group("construct_and_verify");
    for n in [7usize, 12, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| {
                let a = family_a6(n, black_box(&p)).unwrap();
                assert!(a.verify_associativity().is_empty());
            })
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let g = Gaussian::zero();
    let p = generic_a6(&g);
    c.bench_function("canonical_form_a6", |b| b.iter(|| canonical_form_a6(black_box(&p)).unwrap()));
}

fn exact_witness(c: &mut Criterion) {
    let (a, b) = fp_pair(7, 5);
    c.bench_function("witness_exact_f5", |bench| {
        bench.iter(|| witness_exact(black_box(&a), black_box(&b), None).unwrap())
    });
}

fn completion(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("completion_search");
    group.sample_size(10);
    for s in ["shape:2,4,1", "r:1,3", "r:1,1"] {
        let prob = CompletionProblem::new(7, s.parse::<Scenario>().unwrap(), 5).unwrap();
        group.bench_function(s, |b| b.iter(|| search_completion(black_box(&prob), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, construction, classification, exact_witness, completion);
criterion_main!(benches);
