//! Parallel vs sequential comparison for the data-parallel inner loops:
//! the 18-element invariance sweep, the 81-pair cocycle validation, and the
//! norm-equation height search. The sequential path is forced at runtime
//! with `exec::sequential_scope`, so one build measures both.

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use planetwist::curves::huggins_form;
use planetwist::descent::{build_paper_cocycle, conic_witness_search, validate_cocycle};
use planetwist::exec;
use planetwist::hessian::{automorphism_report, generate_group, hessian_generators};
use planetwist::tower::spec_m_prime;

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn bench_invariance(c: &mut Criterion) {
    let curve = huggins_form(&qi(2), &qi(13)).unwrap();
    let gens = hessian_generators(curve.spec()).unwrap();
    let group = generate_group(&gens.as_vec(), 64).unwrap();
    let mut g = c.benchmark_group("hessian_invariance_18");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| automorphism_report(curve.form(), &group).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| exec::sequential_scope(|| automorphism_report(curve.form(), &group).unwrap()))
    });
    g.finish();
}

fn bench_cocycle_validation(c: &mut Criterion) {
    let spec = spec_m_prime(&qi(2), &qi(13), 3).unwrap();
    let cocycle = build_paper_cocycle(3, &spec).unwrap();
    let mut g = c.benchmark_group("cocycle_validation_81_pairs");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| validate_cocycle(&cocycle, None).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| exec::sequential_scope(|| validate_cocycle(&cocycle, None).unwrap()))
    });
    g.finish();
}

fn bench_conic_search(c: &mut Criterion) {
    // (2, 13) has no witness, so the search scans every shell to the bound.
    let mut g = c.benchmark_group("conic_witness_search_h12");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| conic_witness_search(&qi(2), &qi(13), 12).unwrap())
    });
    g.bench_function("sequential", |b| {
        b.iter(|| exec::sequential_scope(|| conic_witness_search(&qi(2), &qi(13), 12).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, bench_invariance, bench_cocycle_validation, bench_conic_search);
criterion_main!(benches);
