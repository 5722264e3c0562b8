use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use weylmod_bench::{embedding_workload, word_workload};
use weylmod_core::{
    decide_embedding, leftmost_bfs, leftmost_greedy, verify_bijection, ArQuiver, CartanData,
};

fn embedding(c: &mut Criterion) {
    let q = ArQuiver::new(CartanData::ex_weyl());
    let work = embedding_workload(&q, 6);
    c.bench_function("decide_embedding/exweyl/6 slices", |b| {
        b.iter(|| {
            for (m, u) in &work {
                black_box(decide_embedding(&q, m, u).unwrap());
            }
        })
    });
}

fn leftmost(c: &mut Criterion) {
    let cartan = CartanData::ex_weyl();
    let words = word_workload(&cartan, 8, 32);
    c.bench_function("leftmost_bfs/exweyl/len 8", |b| {
        b.iter(|| {
            for w in &words {
                black_box(leftmost_bfs(w, &cartan).unwrap());
            }
        })
    });
    c.bench_function("leftmost_greedy/exweyl/len 8", |b| {
        b.iter(|| {
            for w in &words {
                black_box(leftmost_greedy(w, &cartan));
            }
        })
    });
}

fn bijection(c: &mut Criterion) {
    let a3 = CartanData::linear_a(3);
    c.bench_function("verify_bijection/A3", |b| {
        b.iter(|| black_box(verify_bijection(&a3, 0).unwrap()))
    });
}

criterion_group!(benches, embedding, leftmost, bijection);
criterion_main!(benches);
