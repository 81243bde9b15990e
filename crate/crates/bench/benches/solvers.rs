use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use obstacle_bench::{default_problem, first_solution};
use obstacle_core::mountain_pass::{mountain_pass, MountainPassOptions};
use obstacle_core::vi_solver::{oracle_enumerate, solve_min, solve_obstacle_lcp};
use obstacle_core::SolverOptions;

fn first_solution_bench(c: &mut Criterion) {
    let p = default_problem(2001, 100.0);
    let opts = SolverOptions::default();
    c.bench_function("solve_min n=2001", |b| {
        b.iter(|| solve_min(black_box(&p), &opts).unwrap())
    });
    let newton = SolverOptions::newton();
    c.bench_function("solve_min newton n=2001", |b| {
        b.iter(|| solve_min(black_box(&p), &newton).unwrap())
    });
}

fn lcp_bench(c: &mut Criterion) {
    let p = default_problem(2001, 100.0);
    let b: Vec<f64> = p.mesh.nodes().iter().map(|x| (-x * x).exp()).collect();
    c.bench_function("obstacle lcp n=2001", |bch| {
        bch.iter(|| solve_obstacle_lcp(&p.op.matrix, &p.lower, black_box(&b), &p.lower).unwrap())
    });
}

fn mountain_pass_bench(c: &mut Criterion) {
    let p = default_problem(501, 100.0);
    let u = first_solution(&p);
    let solver = SolverOptions::default();
    let mp = MountainPassOptions::default();
    let mut group = c.benchmark_group("mountain_pass");
    group.sample_size(10);
    group.bench_function("n=501", |b| {
        b.iter(|| mountain_pass(&p, black_box(&u), &solver, &mp).unwrap())
    });
    group.finish();
}

fn oracle_bench(c: &mut Criterion) {
    let p = default_problem(12, 100.0);
    c.bench_function("oracle n=12", |b| b.iter(|| oracle_enumerate(black_box(&p)).unwrap()));
}

criterion_group!(
    benches,
    first_solution_bench,
    lcp_bench,
    mountain_pass_bench,
    oracle_bench
);
criterion_main!(benches);
