//! Exhaustive small inputs: complexes on few vertices and rational grid
//! points of their realizations.

use std::collections::BTreeSet;

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::rational::Q;

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn vertex_name(i: usize) -> VertexId {
    VertexId::new(NAMES[i]).expect("nonempty")
}

fn simplex_of(mask: u32) -> Simplex {
    Simplex::new((0..32).filter(|i| mask & (1 << i) != 0).map(vertex_name)).expect("nonempty mask")
}

fn antichains(k: usize) -> Vec<Vec<u32>> {
    fn rec(masks: &[u32], i: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == masks.len() {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        let m = masks[i];
        rec(masks, i + 1, chosen, out);
        if chosen.iter().all(|&c| c & m != c && c & m != m) {
            chosen.push(m);
            rec(masks, i + 1, chosen, out);
            chosen.pop();
        }
    }
    let masks: Vec<u32> = (1..1u32 << k).collect();
    let mut out = Vec::new();
    rec(&masks, 0, &mut Vec::new(), &mut out);
    out
}

fn permute(mask: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .fold(0, |acc, (_, &p)| acc | 1 << p)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Every complex whose vertex set is exactly `{a, b, …}` of size `k`.
pub fn labelled_complexes(k: usize) -> Vec<SimplicialComplex> {
    let full = (1u32 << k) - 1;
    antichains(k)
        .into_iter()
        .filter(|ac| ac.iter().fold(0, |acc, m| acc | m) == full)
        .map(|ac| SimplicialComplex::from_maximal(ac.into_iter().map(simplex_of)))
        .collect()
}

/// One representative per isomorphism class of complexes on `1..=max_v`
/// vertices, in a deterministic order.
pub fn complexes_up_to(max_v: usize) -> Vec<SimplicialComplex> {
    assert!(max_v <= NAMES.len());
    let mut out = Vec::new();
    for k in 1..=max_v {
        let full = (1u32 << k) - 1;
        let perms = permutations(k);
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for ac in antichains(k) {
            if ac.iter().fold(0, |acc, m| acc | m) != full {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut v: Vec<u32> = ac.iter().map(|&m| permute(m, p)).collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .expect("k >= 1");
            if seen.insert(canon.clone()) {
                out.push(SimplicialComplex::from_maximal(canon.into_iter().map(simplex_of)));
            }
        }
    }
    out
}

pub fn full_simplex(k: usize) -> SimplicialComplex {
    SimplicialComplex::full_simplex(&Simplex::new((0..k).map(vertex_name)).expect("k >= 1"))
}

/// Positive compositions of `total` into `parts`.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every point of `|K|` whose coordinates are multiples of `1/d` for some
/// `d ≤ max_denominator`, sorted and deduplicated.
pub fn grid_points(k: &SimplicialComplex, max_denominator: u32) -> Vec<Point> {
    let mut out = BTreeSet::new();
    for d in 1..=max_denominator {
        for s in k.simplexes() {
            for comp in compositions(d, s.len()) {
                let p = Point::new(
                    s.vertices()
                        .iter()
                        .zip(&comp)
                        .map(|(v, &n)| (v.clone(), Q::new(n.into(), d.into()))),
                )
                .expect("positive parts summing to d");
                out.insert(p);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_counts_are_dedekind_numbers() {
        // Dedekind numbers count antichains including {} and {∅}
        assert_eq!(antichains(3).len() + 2, 20);
        assert_eq!(antichains(4).len() + 2, 168);
        assert_eq!(antichains(5).len() + 2, 7581);
    }

    #[test]
    fn isomorphism_classes_small() {
        // one vertex; two vertices: disjoint or edge; three vertices: 5 classes
        let counts: Vec<usize> = (1..=3)
            .map(|k| complexes_up_to(k).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 8]);
    }

    #[test]
    fn grid_counts() {
        let edge = full_simplex(2);
        // d = 1: two vertices; d = 2 adds the midpoint
        assert_eq!(grid_points(&edge, 2).len(), 3);
        // denominators up to 3 on the edge: 0, 1/3, 1/2, 2/3, 1
        assert_eq!(grid_points(&edge, 3).len(), 5);
    }
}
