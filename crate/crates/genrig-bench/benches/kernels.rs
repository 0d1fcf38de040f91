use criterion::{Criterion, criterion_group, criterion_main};
use std::hint::black_box;

use genrig::algebra::{self, DensitySampler, FinDimAlgebra};
use genrig::grassmann::sample_exact;
use genrig::linalg::{commutant, rank};
use genrig::matrix::Matrix;
use genrig::providers::{FiniteGroupProvider, IntertwinerProvider, Sl2Provider, s3_permutation, s3_regular};
use genrig::report::trial_rng;
use genrig::scalar::GRat;
use genrig::tannaka::{self, ConstraintProfile, TannakaOptions};

fn bench_exact_rank(c: &mut Criterion) {
    let mut rng = trial_rng(1, 0);
    let m: Matrix<GRat> = {
        let w = sample_exact(24, 12, &mut rng);
        w.basis().clone()
    };
    c.bench_function("rank_exact_24x12", |b| b.iter(|| rank(black_box(&m))));
}

fn bench_commutant(c: &mut Criterion) {
    let provider = Sl2Provider::new(1);
    let action = provider.tensor_power_action(3).unwrap();
    c.bench_function("commutant_sl2_v1_cubed", |b| {
        b.iter(|| commutant(black_box(&action), 8))
    });
}

fn bench_hom_blocks(c: &mut Criterion) {
    c.bench_function("hom_blocks_s3_regular_level2", |b| {
        b.iter(|| {
            // Fresh provider per iteration so the cache does not short-circuit.
            let provider = FiniteGroupProvider::new(s3_regular(), "s3reg");
            black_box(provider.hom_block(2, 2).unwrap().len())
        })
    });
}

fn bench_tannaka_check(c: &mut Criterion) {
    let provider = FiniteGroupProvider::new(s3_permutation(), "s3");
    c.bench_function("tannaka_check_s3_line", |b| {
        b.iter(|| {
            let mut rng = trial_rng(7, 3);
            let w = sample_exact(3, 1, &mut rng);
            let profile = ConstraintProfile::single(0, 0);
            let opts = TannakaOptions::default();
            black_box(
                tannaka::check_profile(&provider, &[w], &profile, &opts)
                    .unwrap()
                    .result,
            )
        })
    });
}

fn bench_density(c: &mut Criterion) {
    let alg = FinDimAlgebra::matrix_blocks(&[2]).unwrap();
    c.bench_function("gen_density_m2_pairs_x20", |b| {
        b.iter(|| {
            algebra::sample_generation_density(
                black_box(&alg),
                2,
                20,
                DensitySampler::UniformRational,
                false,
                11,
                1e-9,
            )
            .unwrap()
            .generating
        })
    });
}

criterion_group!(
    benches,
    bench_exact_rank,
    bench_commutant,
    bench_hom_blocks,
    bench_tannaka_check,
    bench_density
);
criterion_main!(benches);
