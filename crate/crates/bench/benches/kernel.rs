use std::hint::black_box;

use connexive::connectives::Registry;
use connexive::g3c::{check_g3c, prove_g3c, SearchBudget};
use connexive::witnesses::{thm4_witness, verify_definition};
use connexive_bench::{definitions, non_theorems, rexprs, theses};
use criterion::{criterion_group, criterion_main, Criterion};

fn search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let goals = theses();
    c.bench_function("prove theses", |b| {
        b.iter(|| {
            for g in &goals {
                black_box(prove_g3c(g, &[], &budget).unwrap());
            }
        })
    });
    let bad = non_theorems();
    c.bench_function("refute non-theorems", |b| {
        b.iter(|| {
            for g in &bad {
                black_box(prove_g3c(g, &[], &budget).unwrap());
            }
        })
    });
    let proofs: Vec<_> =
        goals.iter().map(|g| prove_g3c(g, &[], &budget).unwrap().outcome.derivation().unwrap().clone()).collect();
    c.bench_function("check thesis proofs", |b| {
        b.iter(|| {
            for d in &proofs {
                check_g3c(black_box(d)).unwrap();
            }
        })
    });
}

fn witnesses(c: &mut Criterion) {
    let exprs = rexprs();
    let env = Registry::default();
    let mut g = c.benchmark_group("witnesses");
    g.sample_size(10);
    g.bench_function("overline sweep", |b| {
        b.iter(|| {
            for e in &exprs {
                thm4_witness(e).check(&env).unwrap();
            }
        })
    });
    let defs = definitions(10);
    let budget = SearchBudget::default();
    g.bench_function("verify 10 definitions", |b| {
        b.iter(|| {
            for d in &defs {
                assert!(verify_definition(d, &budget).passed());
            }
        })
    });
    g.finish();
}

criterion_group!(benches, search, witnesses);
criterion_main!(benches);
