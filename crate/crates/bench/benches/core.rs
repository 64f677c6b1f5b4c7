use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hypercover_bench::{example_matrix, five_points};
use hypercover_core::{
    build_corollary_matrix, build_sn, covering_number, girth, greedy_girth_graph, rank,
    verify_sensing, width_exact, Budget, EdgeOrder,
};

fn covering(c: &mut Criterion) {
    let budget = Budget::default();
    let mut group = c.benchmark_group("covering_number");
    for n in [2usize, 4, 6, 8] {
        let s = build_sn(n).unwrap();
        group.bench_with_input(BenchmarkId::new("sn", n), &s, |b, s| {
            b.iter(|| covering_number(black_box(s), &budget).unwrap())
        });
    }
    group.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let a = example_matrix();
    c.bench_function("rank/example_3x6", |b| b.iter(|| rank(black_box(&a))));
    let budget = Budget::default();
    c.bench_function("verify_sensing/example_ell3", |b| {
        b.iter(|| verify_sensing(black_box(&a), 3, &budget).unwrap())
    });
    let big = build_corollary_matrix(14, 3, &budget).unwrap().matrix;
    c.bench_function("verify_sensing/corollary_n14_ell3", |b| {
        b.iter(|| verify_sensing(black_box(&big), 3, &budget).unwrap())
    });
}

fn graphs(c: &mut Criterion) {
    c.bench_function("greedy_girth_graph/8x8_ell6", |b| {
        b.iter(|| greedy_girth_graph(8, 8, 6, &EdgeOrder::LeftMajor).unwrap())
    });
    let g = greedy_girth_graph(12, 12, 4, &EdgeOrder::LeftMajor).unwrap();
    c.bench_function("girth/12x12_c4_free", |b| b.iter(|| girth(black_box(&g))));
}

fn widths(c: &mut Criterion) {
    let budget = Budget::default();
    let s = five_points();
    c.bench_function("width_exact/five_points", |b| {
        b.iter(|| width_exact(black_box(&s), &budget).unwrap())
    });
    let s3 = build_sn(3).unwrap();
    c.bench_function("width_exact/s3", |b| {
        b.iter(|| width_exact(black_box(&s3), &budget).unwrap())
    });
}

criterion_group!(benches, covering, linear_algebra, graphs, widths);
criterion_main!(benches);
