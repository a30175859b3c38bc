use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use elder_core::{
    barcode_of_sequence, fiber, merge_tree_of_sequence, oracle, Barcode, BarcodeFlags, CriticalSequence,
};

fn nested(n: usize) -> Barcode {
    // [1, inf), [2, 2n-1), [3, 2n-2), ... fully nested
    let top = (2 * n) as f64;
    let mut pairs = vec![(1.0, None)];
    for j in 1..n {
        pairs.push(((j + 1) as f64, Some(top - j as f64)));
    }
    Barcode::from_pairs(&pairs, BarcodeFlags::MORSE).unwrap()
}

fn sweep(c: &mut Criterion) {
    let mut values = Vec::new();
    for i in 0..2000 {
        values.push(i as f64);
        values.push(1e6 - i as f64);
    }
    values.push(2000.0);
    let f = CriticalSequence::new(&values).unwrap();
    c.bench_function("barcode_of_sequence/4001", |b| b.iter(|| barcode_of_sequence(black_box(&f))));
    c.bench_function("merge_tree_of_sequence/4001", |b| b.iter(|| merge_tree_of_sequence(black_box(&f))));
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cmts");
    for n in [4, 5, 6] {
        let b = nested(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| fiber::enumerate_cmts(black_box(b)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("brute_fiber");
    group.sample_size(10);
    for n in [4, 5, 6] {
        let b = nested(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| oracle::brute_fiber(black_box(b)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, enumeration);
criterion_main!(benches);
