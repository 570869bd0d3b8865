use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use regcycle_bench::elements;
use regcycle_core::actions::{KSetAction, NaturalAction, ProductAction, WreathElement};
use regcycle_core::bounds;
use regcycle_core::regcycle::{decide_bruteforce, decide_fix_union, kset_decide, partition_witness, product_witness};
use regcycle_core::Permutation;

const CAP: u64 = 10_000_000;

fn deciders(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_ksets3");
    let a = KSetAction::new(20, 3).unwrap();
    let gs = elements(20, 16);
    group.bench_function("bruteforce", |b| {
        b.iter(|| gs.iter().map(|g| decide_bruteforce(&a, g, CAP).unwrap().has_regular_cycle).count())
    });
    group.bench_function("fix_union", |b| {
        b.iter(|| gs.iter().map(|g| decide_fix_union(&a, g, CAP).unwrap().has_regular_cycle).count())
    });
    group.finish();

    let types: Vec<_> = elements(60, 64).iter().map(Permutation::cycle_type).collect();
    c.bench_function("kset_decide_m60", |b| {
        b.iter(|| types.iter().filter(|t| kset_decide(t, 5).unwrap().has_regular_cycle()).count())
    });
}

fn witnesses(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_witness");
    for (a, b) in [(2, 6), (3, 4), (4, 3), (6, 2)] {
        let gs = elements(a * b, 64);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{a}x{b}")), &gs, |bench, gs| {
            bench.iter(|| gs.iter().map(|g| partition_witness(g, a, b).unwrap().point.len()).sum::<usize>())
        });
    }
    group.finish();

    let act = ProductAction::new(NaturalAction::new(4), 3).unwrap();
    let comps = elements(4, 3);
    let g = WreathElement::new(comps, Permutation::parse("(1 2 3)", 3).unwrap()).unwrap();
    let inner = |h: &Permutation| Ok(decide_bruteforce(&act.inner, h, CAP)?.witness_index.unwrap_or(0) as u32);
    c.bench_function("product_witness_sym4_wr_sym3", |b| {
        b.iter(|| product_witness(&act, black_box(&g), inner))
    });
}

fn bound_sweeps(c: &mut Criterion) {
    c.bench_function("landau_exact_200", |b| b.iter(|| bounds::landau_exact(black_box(200)).unwrap()));
    c.bench_function("alpha_beta_47_1000", |b| b.iter(|| bounds::alpha_beta_scan(47, 1000).unwrap().rows.len()));
    c.bench_function("robin_sweep_1e5", |b| b.iter(|| bounds::robin_sweep(26, 100_000).unwrap().checked));
}

criterion_group!(benches, deciders, witnesses, bound_sweeps);
criterion_main!(benches);
