//! Wall-clock comparison of the thread fan-out against plain sequential
//! loops on the two hot paths: batch classification and exact product
//! checking. With the `parallel` feature disabled both arms run the same
//! sequential code, so the comparison doubles as an overhead probe.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qualprod::classify::{classify, classify_batch};
use qualprod::exact::{is_p0, ExactMatrix};
use qualprod::par;
use qualprod::sampling::{derive_seed, random_caterpillar, random_member, random_pattern, rng_from_seed, GeneratorConfig};
use qualprod::signpat::SignPattern;
use qualprod::witness::alternating_matrix_product;

fn bench_patterns() -> Vec<SignPattern> {
    (0..500u64)
        .map(|i| {
            let mut config = GeneratorConfig::new(derive_seed(0xBE9C, i));
            config.max_rows = 4;
            config.max_cols = 4;
            random_pattern(&config).expect("pattern generation")
        })
        .collect()
}

fn bench_products() -> Vec<Vec<ExactMatrix>> {
    let config = GeneratorConfig::new(0xBE9C);
    let (_, pattern) = random_caterpillar(&config).expect("caterpillar generation");
    (0..64u64)
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(config.seed, i));
            (0..4)
                .map(|_| random_member(&config, &pattern, &mut rng).expect("member").matrix)
                .collect()
        })
        .collect()
}

fn classification(c: &mut Criterion) {
    let patterns = bench_patterns();
    let mut group = c.benchmark_group("classify_500");
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let out: Vec<_> = patterns.iter().map(classify).collect();
            black_box(out)
        })
    });
    group.bench_function("batch", |b| {
        b.iter(|| black_box(classify_batch(black_box(&patterns))))
    });
    group.finish();
}

fn product_checks(c: &mut Criterion) {
    let jobs = bench_products();
    let check = |factors: &Vec<ExactMatrix>| {
        let product = alternating_matrix_product(factors).expect("product");
        is_p0(&product).expect("principal minor scan").is_p0
    };
    let mut group = c.benchmark_group("minor_scan_64");
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let out: Vec<bool> = jobs.iter().map(check).collect();
            black_box(out)
        })
    });
    group.bench_function("fan_out", |b| {
        b.iter(|| black_box(par::map_vec(black_box(&jobs), check)))
    });
    group.finish();
}

criterion_group!(benches, classification, product_checks);
criterion_main!(benches);
