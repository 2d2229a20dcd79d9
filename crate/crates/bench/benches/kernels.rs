use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use votepower::enumeration::{count_games, GameClass};
use votepower::game::GameSpec;
use votepower::indices::{banzhaf, compute, nucleolus, shapley_shubik, ComputeOptions, IndexKind, Method};
use votepower_bench::{staircase_game, staircase_weighted};

fn bench_indices(c: &mut Criterion) {
    let game = staircase_game(12);
    c.bench_function("banzhaf_table_n12", |b| {
        b.iter(|| black_box(banzhaf(&game)))
    });
    c.bench_function("ssi_table_n12", |b| {
        b.iter(|| black_box(shapley_shubik(&game)))
    });
    let small = staircase_game(10);
    c.bench_function("nucleolus_n10", |b| b.iter(|| black_box(nucleolus(&small))));
}

fn bench_dp(c: &mut Criterion) {
    let game = GameSpec::Weighted(staircase_weighted(51));
    let options = ComputeOptions {
        method: Method::Dp,
        ..Default::default()
    };
    c.bench_function("ssi_dp_n51", |b| {
        b.iter(|| black_box(compute(&game, &IndexKind::ShapleyShubik, &options).unwrap()))
    });
}

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_simple_n5", |b| {
        b.iter(|| black_box(count_games(5, GameClass::Simple, false).unwrap()))
    });
}

criterion_group!(benches, bench_indices, bench_dp, bench_enumeration);
criterion_main!(benches);
