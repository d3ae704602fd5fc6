//! Sequential versus parallel execution of the three data-parallel loops.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pipepuzzle::engine::Engine;
use pipepuzzle::exec::Exec;
use pipepuzzle::lattice::{partition_function, verify_ybe, RKind};
use pipepuzzle::perm::{separated_descents, Permutation};
use pipepuzzle::puzzle::{sum_weights, BoundarySpec, Enumerator, Mode};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn ybe(c: &mut Criterion) {
    let mut g = c.benchmark_group("ybe_sweep");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, "row k=3 labels 0..6"), &exec, |b, &exec| {
            b.iter(|| black_box(verify_ybe(RKind::Row, 3, 6, exec)))
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let p = |s: &str| -> Permutation { s.parse().unwrap() };
    let board = BoundarySpec::new(&p("426135"), &p("145632"), &p("635412"), 3).unwrap();
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, "6x6 grothendieck"), &exec, |b, &exec| {
            b.iter(|| black_box(Enumerator::new(Mode::Grothendieck).with_exec(exec).enumerate(&board)))
        });
    }
    g.finish();
}

fn oracle_sweep(c: &mut Criterion) {
    let all = Permutation::all(4);
    let mut instances = Vec::new();
    for k in 1..=4 {
        for u in all.iter().step_by(3) {
            for v in all.iter().step_by(5) {
                if separated_descents(u, v, k) {
                    instances.push((u.clone(), v.clone(), all[(u.length() * 7 + v.length()) % 24].clone(), k));
                }
            }
        }
    }
    let mut g = c.benchmark_group("oracle_sweep");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_with_input(BenchmarkId::new(name, format!("{} S_4 instances", instances.len())), &exec, |b, &exec| {
            b.iter(|| {
                let engine = Engine::new();
                exec.map(&instances, |(u, v, w, k)| {
                    let board = BoundarySpec::new(u, v, w, *k).unwrap();
                    let puzzles = Enumerator::new(Mode::Grothendieck)
                        .with_exec(Exec::Sequential)
                        .enumerate(&board);
                    let a = sum_weights(&puzzles, Mode::Grothendieck);
                    let z = partition_function(&board);
                    let r = engine.c(u, v, w, *k, Mode::Grothendieck).unwrap();
                    a == z && z == r
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, ybe, enumeration, oracle_sweep);
criterion_main!(benches);
