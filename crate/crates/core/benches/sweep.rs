//! Sequential vs data-parallel execution of the exhaustive sweeps and the
//! per-pixel scaling loop.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::Ratio;
use p2lsg::bench::{run_sweep, BenchConfig, Operation};
use p2lsg::media::scale::{scale_gray_sc, ScaleAssignment};
use p2lsg::media::GrayImage;
use p2lsg::par::Workers;
use p2lsg::sequences::SequenceSpec;

fn modes() -> [(&'static str, Workers); 2] {
    [("sequential", Workers::sequential()), ("parallel", Workers::all_cores())]
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("mae_sweep");
    group.sample_size(10);
    for (operation, length) in [(Operation::Mul, 1u64 << 10), (Operation::Mul, 1 << 14), (Operation::Add, 1 << 9)] {
        for (mode, workers) in modes() {
            let specs = (SequenceSpec::p2lsg(2), SequenceSpec::p2lsg_n());
            let mut config = BenchConfig::new(operation, specs, vec![length]).unwrap();
            config.workers = workers;
            let id = BenchmarkId::new(format!("{}/{mode}", operation.name()), length);
            group.bench_with_input(id, &config, |b, config| b.iter(|| black_box(run_sweep(config).unwrap())));
        }
    }
    group.finish();
}

fn scaling(c: &mut Criterion) {
    let img = GrayImage::from_fn(128, 128, |x, y| ((x * 3 + y * 5) % 256) as u8).unwrap();
    let assignment = ScaleAssignment::default();
    let mut group = c.benchmark_group("scale_2x_128");
    group.sample_size(10);
    for (mode, workers) in modes() {
        group.bench_function(mode, |b| {
            b.iter(|| black_box(scale_gray_sc(&img, Ratio::from_integer(2), 256, &assignment, workers).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps, scaling);
criterion_main!(benches);
