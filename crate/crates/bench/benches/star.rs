use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use superk::classes::{convex_name, convex_sets, product_knetwork, CylinderSpec, Factor, OrderedGround};
use superk::star::{st2_membership, star_cover};
use superk::{NamedSet, Point, Simplex, SimplicialComplex, VertexId, Q};

fn full(k: usize) -> SimplicialComplex {
    let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
    SimplicialComplex::full_simplex(&Simplex::from_strs(&names).unwrap())
}

// points of the simplex with coordinates in 1/n steps
fn grid(k: usize, n: i64) -> Vec<Point> {
    fn go(k: usize, left: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if acc.len() + 1 == k {
            acc.push(left);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for c in 0..=left {
            acc.push(c);
            go(k, left - c, acc, out);
            acc.pop();
        }
    }
    let mut raw = Vec::new();
    go(k, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|cs| {
            Point::new(cs.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(i, c)| {
                (VertexId::new(format!("v{i}")).unwrap(), Q::new(c.into(), n.into()))
            }))
            .unwrap()
        })
        .collect()
}

fn membership(c: &mut Criterion) {
    let k = full(4);
    let points = grid(4, 6);
    let bases: Vec<Simplex> = k.simplexes().iter().cloned().collect();
    c.bench_function("st2_membership full 4-simplex grid", |b| {
        b.iter(|| {
            let mut hits = 0usize;
            for p in &points {
                for tau in &bases {
                    hits += usize::from(st2_membership(p, tau, &k).unwrap());
                }
            }
            black_box(hits)
        })
    });
}

fn cover(c: &mut Criterion) {
    for n in [3, 4, 5] {
        let k = full(n);
        c.bench_function(&format!("star_cover full simplex k={n}"), |b| {
            b.iter(|| black_box(star_cover(&k, &k).unwrap().len()))
        });
    }
}

fn product(c: &mut Criterion) {
    let g = OrderedGround::range(4);
    let f = Factor {
        ground: g.elements().to_vec(),
        family: convex_sets(&g).iter().map(|s| NamedSet::new(convex_name(&g, s), s.members(&g))).collect(),
    };
    let spec = CylinderSpec { factors: vec![f.clone(), f.clone(), f], dense_set: None, depth: None };
    let mut group = c.benchmark_group("product");
    group.sample_size(10);
    group.bench_function("intervals(4)^3", |b| b.iter(|| black_box(product_knetwork(&spec).unwrap().family.len())));
    group.finish();
}

criterion_group!(benches, membership, cover, product);
criterion_main!(benches);
