use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use omegaq::cobar::pi1_presentation;
use omegaq::corpus::space;
use omegaq::detect::{whitehead_verdict, DetectConfig};
use omegaq::groups::{regular_module, todd_coxeter};
use omegaq::linalg::smith_normal_form;
use omegaq::simplicial::point;
use omegaq::twisted::local_homology;
use omegaq::{IntMatrix, SimplicialMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sparse(n: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = IntMatrix::zeros(n, n);
    for _ in 0..4 * n {
        m.set(rng.gen_range(0..n), rng.gen_range(0..n), BigInt::from(rng.gen_range(-5i64..=5)));
    }
    m
}

fn snf(c: &mut Criterion) {
    for n in [50, 150] {
        let m = random_sparse(n, 7);
        c.bench_function(&format!("snf_sparse_{n}"), |b| b.iter(|| smith_normal_form(&m)));
    }
}

fn coset_enumeration(c: &mut Criterion) {
    let g = pi1_presentation(&space("binary-icosahedral").unwrap()).unwrap();
    c.bench_function("todd_coxeter_binary_icosahedral", |b| b.iter(|| todd_coxeter(&g, 10_000).unwrap()));
}

fn regular_local_homology(c: &mut Criterion) {
    let x = space("binary-icosahedral").unwrap();
    let t = todd_coxeter(&pi1_presentation(&x).unwrap(), 10_000).unwrap().table().unwrap().clone();
    let m = regular_module(&t).unwrap();
    let mut g = c.benchmark_group("local_homology");
    g.sample_size(10);
    g.bench_function("binary_icosahedral_regular", |b| b.iter(|| local_homology(&x, &m, 2).unwrap()));
    g.finish();
}

fn detect(c: &mut Criterion) {
    let x = Arc::new(space("binary-icosahedral").unwrap().into_data());
    let config = DetectConfig::new(2, 10_000).unwrap();
    let mut g = c.benchmark_group("detect");
    g.sample_size(10);
    g.bench_function("collapse_binary_icosahedral", |b| {
        b.iter_batched(
            || SimplicialMap::collapse(x.clone(), &point()),
            |f| whitehead_verdict(&f, &config).unwrap(),
            BatchSize::SmallInput,
        )
    });
    g.finish();
}

criterion_group!(benches, snf, coset_enumeration, regular_local_homology, detect);
criterion_main!(benches);
