//! Extensional second barycentric subdivision.
//!
//! Vertices of Sd² are chains of simplexes of `K` (the barycenter of a
//! chain of barycenters). A top-dimensional cell is a maximal chain `M` of
//! `K` together with an ordering `π` of its members; its vertices are the
//! prefix sets `{π_1}, {π_1, π_2}, …`. The only singleton-chain vertex of a
//! cell is `{π_1}`, so the closed star of `b_τ` is the union of the cells
//! with `π_1 = τ`.
//!
//! Both closed stars and closed simplexes are subcomplexes of Sd², so two
//! of them meet iff they share an Sd² vertex. Everything here is a
//! brute-force reference for the closed-form predicates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::rational::Q;

use super::oracle::solve_exact;

/// A vertex of Sd²: a chain of simplexes, listed by increasing size.
pub type Sd2Vertex = Vec<Simplex>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sd2Cell {
    /// Members of a maximal chain of `K`, in the order `π`.
    pub flag: Vec<Simplex>,
}

impl Sd2Cell {
    pub fn center(&self) -> &Simplex {
        &self.flag[0]
    }

    pub fn vertices(&self) -> Vec<Sd2Vertex> {
        (1..=self.flag.len())
            .map(|i| {
                let mut c = self.flag[..i].to_vec();
                c.sort_by_key(Simplex::len);
                c
            })
            .collect()
    }

    /// Exact membership: `p` is a convex combination of the cell's vertices.
    pub fn contains(&self, p: &Point) -> bool {
        let verts: Vec<Point> = self.vertices().iter().map(|c| chain_point(c)).collect();
        let mut rows: BTreeSet<VertexId> = p.coords().keys().cloned().collect();
        for q in &verts {
            rows.extend(q.coords().keys().cloned());
        }
        let mut a: Vec<Vec<Q>> = rows
            .iter()
            .map(|v| verts.iter().map(|q| q.coord(v)).collect())
            .collect();
        let mut b: Vec<Q> = rows.iter().map(|v| p.coord(v)).collect();
        a.push(vec![Q::from_integer(1.into()); verts.len()]);
        b.push(Q::from_integer(1.into()));
        match solve_exact(a, b) {
            Some(w) => w.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }
}

/// The geometric point of an Sd² vertex: the average of the barycenters.
pub fn chain_point(chain: &[Simplex]) -> Point {
    let w = Q::new(1.into(), chain.len().into());
    let bs: Vec<Point> = chain.iter().map(Point::barycenter).collect();
    Point::convex_combination(bs.iter().map(|b| (w.clone(), b))).expect("convex weights")
}

/// Maximal chains of the face poset of `K`, each listed by increasing size.
pub fn maximal_chains(k: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let mut out = Vec::new();
    for top in k.maximal_simplexes() {
        let mut stack: Vec<Vec<Simplex>> = vec![vec![top]];
        while let Some(desc) = stack.pop() {
            let last = desc.last().expect("nonempty");
            if last.len() == 1 {
                let mut c = desc.clone();
                c.reverse();
                out.push(c);
                continue;
            }
            for v in last.vertices() {
                let smaller = Simplex::new(last.vertices().iter().filter(|u| *u != v).cloned())
                    .expect("size >= 2");
                let mut next = desc.clone();
                next.push(smaller);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

fn orderings(items: &[Simplex]) -> Vec<Vec<Simplex>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// All top-dimensional cells of Sd²(K).
pub fn cells(k: &SimplicialComplex) -> Vec<Sd2Cell> {
    let mut out: Vec<Sd2Cell> = maximal_chains(k)
        .iter()
        .flat_map(|m| orderings(m).into_iter().map(|flag| Sd2Cell { flag }))
        .collect();
    out.sort();
    out
}

/// Precomputed cell structure of one complex.
pub struct Sd2 {
    pub cells: Vec<Sd2Cell>,
    star_vertices: BTreeMap<Simplex, BTreeSet<Sd2Vertex>>,
}

impl Sd2 {
    pub fn new(k: &SimplicialComplex) -> Self {
        let cells = cells(k);
        let mut star_vertices: BTreeMap<Simplex, BTreeSet<Sd2Vertex>> = BTreeMap::new();
        for c in &cells {
            star_vertices
                .entry(c.center().clone())
                .or_default()
                .extend(c.vertices());
        }
        Self {
            cells,
            star_vertices,
        }
    }

    pub fn star_cells<'a>(&'a self, tau: &'a Simplex) -> impl Iterator<Item = &'a Sd2Cell> + 'a {
        self.cells.iter().filter(move |c| c.center() == tau)
    }

    pub fn star_vertices(&self, tau: &Simplex) -> Option<&BTreeSet<Sd2Vertex>> {
        self.star_vertices.get(tau)
    }

    /// `St²(b_σ) ∩ St²(b_τ) ≠ ∅`, by shared Sd² vertex.
    pub fn stars_meet(&self, sigma: &Simplex, tau: &Simplex) -> bool {
        match (self.star_vertices(sigma), self.star_vertices(tau)) {
            (Some(a), Some(b)) => a.intersection(b).next().is_some(),
            _ => false,
        }
    }

    /// `σ̄ ∩ St²(b_τ) ≠ ∅`: some star vertex is a chain inside `σ`.
    pub fn simplex_meets_star(&self, sigma: &Simplex, tau: &Simplex) -> bool {
        self.star_vertices(tau).is_some_and(|vs| {
            vs.iter()
                .any(|chain| chain.iter().all(|m| m.is_subset(sigma)))
        })
    }

    /// Membership through the union of star cells.
    pub fn in_star(&self, p: &Point, tau: &Simplex) -> bool {
        self.star_cells(tau).any(|c| c.contains(p))
    }
}

/// Barycenter of a cell; lies in the cell's relative interior.
pub fn cell_barycenter(cell: &Sd2Cell) -> Point {
    let verts: Vec<Point> = cell.vertices().iter().map(|c| chain_point(c)).collect();
    let w = Q::new(1.into(), verts.len().into());
    Point::convex_combination(verts.iter().map(|q| (w.clone(), q))).expect("convex")
}
