use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pachner::census::{enumerate_closed, sphere_closure, CensusSpec};
use pachner::graph::height_bound;
use pachner::moves::{neighbors, MoveKind};
use pachner::Triangulation;

fn level(n: usize) -> Vec<Triangulation> {
    sphere_closure(n, 2)
        .level(n)
        .unwrap()
        .iter()
        .map(|s| s.decode().unwrap())
        .collect()
}

fn signatures(c: &mut Criterion) {
    let four = level(4);
    c.bench_function("isosig level-4 spheres", |b| {
        b.iter(|| {
            four.iter().for_each(|t| {
                black_box(t.isosig());
            })
        })
    });
    let sigs: Vec<String> = four.iter().map(|t| t.isosig().into_string()).collect();
    c.bench_function("decode level-4 spheres", |b| {
        b.iter(|| {
            sigs.iter().for_each(|s| {
                black_box(pachner::isosig::decode(s).unwrap());
            })
        })
    });
}

fn moves(c: &mut Criterion) {
    let four = level(4);
    c.bench_function("2-3 and 3-2 neighbours level-4", |b| {
        b.iter(|| {
            four.iter()
                .map(|t| neighbors(t, &MoveKind::RESTRICTED).len())
                .sum::<usize>()
        })
    });
    c.bench_function("homology level-4", |b| {
        b.iter(|| {
            four.iter()
                .filter(|t| t.homology_h1().unwrap().is_trivial())
                .count()
        })
    });
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("census n=3", |b| {
        b.iter(|| {
            enumerate_closed(black_box(&CensusSpec::new(3)))
                .unwrap()
                .len()
        })
    });
    g.bench_function("sphere closure to level 3", |b| {
        b.iter(|| sphere_closure(black_box(3), 2).count(3))
    });
    let three = sphere_closure(3, 2).level(3).unwrap().clone();
    g.bench_function("height bound n=3", |b| {
        b.iter(|| height_bound(3, &three, 8).unwrap().height)
    });
    g.finish();
}

criterion_group!(benches, signatures, moves, searches);
criterion_main!(benches);
