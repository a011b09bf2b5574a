use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tbn_core::atam::{check_counter_stability, Variant};
use tbn_core::constructions::*;
use tbn_core::solver::*;

fn free(m: &str) -> OutputPredicate {
    OutputPredicate::MonomerFree(m.into())
}

fn stable(c: &mut Criterion) {
    let mut g = c.benchmark_group("stable_entropy");
    let (t, col) = gen_fig1();
    g.bench_function("fig1", |b| b.iter(|| stable_entropy(black_box(&t), black_box(&col)).unwrap()));
    let (t, col) = gen_translator(4, 3, false).unwrap();
    g.bench_function("translator_4_3", |b| b.iter(|| stable_entropy(&t, &col).unwrap()));
    let (t, col) = gen_tree_polymer(4, 3).unwrap();
    g.bench_function("treepoly_4_3", |b| b.iter(|| stable_entropy(&t, &col).unwrap()));
    g.finish();
}

fn distance(c: &mut Criterion) {
    let mut g = c.benchmark_group("distance");
    let (t, col) = gen_translator(3, 2, false).unwrap();
    g.bench_function("translator_3_2", |b| b.iter(|| distance_to_stability(&t, &col, &free("TERM")).unwrap()));
    let (t, col) = gen_and_tree(&TreeSpec::new(1, 5, vec![true, false])).unwrap();
    g.bench_function("and_gate_n5", |b| b.iter(|| distance_to_stability(&t, &col, &free("TERM")).unwrap()));
    g.sample_size(10);
    let (t, col) = gen_and_tree(&TreeSpec::new(2, 3, vec![true, true, true, false])).unwrap();
    g.bench_function("and_tree_depth2_n3", |b| b.iter(|| distance_to_stability(&t, &col, &free("TERM")).unwrap()));
    g.finish();
}

fn enumerate(c: &mut Criterion) {
    let (t, col) = gen_fig1();
    c.bench_function("enumerate_fig1", |b| {
        b.iter(|| enumerate_configurations(&t, &col, Filter::All, None, DEFAULT_ENUM_CAP).unwrap())
    });
}

fn counter(c: &mut Criterion) {
    let mut g = c.benchmark_group("counter");
    for k in 2..=3 {
        g.bench_function(format!("indexed_k{k}"), |b| b.iter(|| check_counter_stability(k, Variant::Indexed, false).unwrap()));
        g.bench_function(format!("plain_k{k}"), |b| b.iter(|| check_counter_stability(k, Variant::Plain, false).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, stable, distance, enumerate, counter);
criterion_main!(benches);
