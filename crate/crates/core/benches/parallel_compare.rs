//! Compares the rayon-backed kernels against their always-sequential twins
//! on workloads sized like the heavier library call sites.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use upbasis::basis::Basis;
use upbasis::instances;
use upbasis::ordered::{compute_state_order, compute_state_order_seq, upward_closure_dfa};
use upbasis::rewrite::{complement_up_basis, normalize, normalize_seq};

fn sample_basis(seed: u64, words: usize, len: usize) -> (upbasis::Alphabet, Basis) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = instances::random_alphabet(&mut rng, 3, 0.0).unwrap();
    let mut basis = Basis::empty();
    while basis.len() < words {
        basis.insert(instances::random_word(&mut rng, &alpha, len));
    }
    (alpha, basis)
}

fn bench_state_order(c: &mut Criterion) {
    let mut group = c.benchmark_group("state_order");
    for words in [4usize, 7] {
        let (alpha, basis) = sample_basis(97, words, 5);
        let dfa = upward_closure_dfa(&alpha, &basis);
        group.bench_with_input(BenchmarkId::new("parallel", dfa.state_count()), &dfa, |b, d| {
            b.iter(|| compute_state_order(d))
        });
        group.bench_with_input(BenchmarkId::new("sequential", dfa.state_count()), &dfa, |b, d| {
            b.iter(|| compute_state_order_seq(d))
        });
    }
    group.finish();
}

fn bench_normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize_union");
    let (alpha, basis) = sample_basis(31, 4, 4);
    // the raw complement union before normalization is the workload
    let mut raw = upbasis::IdealUnion::from_products(vec![upbasis::StarProduct::full(&alpha)]);
    for w in basis.words() {
        raw = upbasis::rewrite::intersect_unions(
            &alpha,
            &raw,
            &upbasis::rewrite::complement_up_word(&alpha, w),
        );
        if raw.len() > 60 {
            break; // keep the benchmark bounded
        }
    }
    group.bench_function(BenchmarkId::new("parallel", raw.len()), |b| {
        b.iter(|| normalize(&alpha, &raw))
    });
    group.bench_function(BenchmarkId::new("sequential", raw.len()), |b| {
        b.iter(|| normalize_seq(&alpha, &raw))
    });
    group.finish();
}

fn bench_complement(c: &mut Criterion) {
    let mut group = c.benchmark_group("complement_up_basis");
    group.sample_size(20);
    let (alpha, basis) = sample_basis(55, 5, 4);
    group.bench_function("parallel_pipeline", |b| {
        b.iter(|| normalize(&alpha, &complement_up_basis(&alpha, &basis)))
    });
    group.finish();
}

criterion_group!(benches, bench_state_order, bench_normalize, bench_complement);
criterion_main!(benches);
