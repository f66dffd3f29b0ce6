use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};
use pairstego::method::{capacity, embed, extract_bits};
use pairstego::{seeded_bits, CodecOptions, Method};
use pairstego_bench::natural_like;

const SIDE: usize = 512;
const SEED: u64 = 7;

fn codecs(c: &mut Criterion) {
    let cover = natural_like(SIDE, SIDE, SEED);
    let opts = CodecOptions::default();
    let mut group = c.benchmark_group("512x512");
    group.throughput(Throughput::Elements((SIDE * SIDE) as u64));
    group.sample_size(20);

    for method in Method::ALL {
        let cap = capacity(method, &cover, &opts, SEED);
        let payload = seeded_bits(SEED, cap);
        group.bench_function(format!("{method}/embed"), |b| {
            b.iter_batched(
                || payload.clone(),
                |mut bits| embed(method, &cover, &mut bits, &opts).unwrap(),
                BatchSize::LargeInput,
            )
        });

        let (stego, _) = embed(method, &cover, &mut payload.clone(), &opts).unwrap();
        group.bench_function(format!("{method}/extract"), |b| {
            b.iter(|| extract_bits(method, &stego, &opts))
        });
    }
    group.bench_function("hybrid/capacity", |b| {
        b.iter(|| capacity(Method::Hybrid, &cover, &opts, SEED))
    });
    group.finish();
}

criterion_group!(benches, codecs);
criterion_main!(benches);
