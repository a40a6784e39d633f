//! Stars as finite unions of convex pieces, and exact LPs over pairs of
//! pieces.
//!
//! For a maximal saturated chain `σ_1 ⊂ … ⊂ σ_n` with `σ_{|τ|} = τ`, the
//! piece is `{Σ t_i b_{σ_i} : t ≥ 0, Σ t_i = 1, t_{|τ|} ≥ t_i}`. Shorter
//! chains only contribute faces (`t_i = 0` beyond the end), so the star is
//! the union of the pieces over maximal chains.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::error::Result;
use crate::lp::LinearProgram;
use crate::rational::Q;

use super::oracle::saturated_chains_through;
use super::Chain;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StarPiece {
    pub chain: Chain,
    /// Zero-based position of the star's base in the chain.
    pub center: usize,
}

impl StarPiece {
    fn barycenters(&self) -> Vec<Point> {
        self.chain.members().iter().map(Point::barycenter).collect()
    }
}

/// Pieces of `St²(b_τ, K)`, one per maximal saturated chain through `τ`.
pub fn star_pieces(tau: &Simplex, k: &SimplicialComplex) -> Result<Vec<StarPiece>> {
    k.require(tau)?;
    let chains = saturated_chains_through(tau, k);
    let pieces = chains
        .iter()
        .filter(|c| {
            let top = c.top();
            !k.vertices()
                .iter()
                .any(|v| !top.contains(v) && k.contains(&top.union(&Simplex::vertex(v.clone()))))
        })
        .map(|c| StarPiece {
            chain: c.clone(),
            center: tau.len() - 1,
        })
        .collect();
    Ok(pieces)
}

/// Variable layout of a piece inside a larger LP.
struct PieceVars {
    offset: usize,
    len: usize,
    bary: Vec<Point>,
}

/// Adds the weight variables of a piece: simplex constraint and the max
/// condition via slacks `t_c - t_i - w_i = 0`. Returns the layout.
fn add_piece(lp: &mut LinearProgram, piece: &StarPiece) -> PieceVars {
    let n = piece.chain.len();
    let offset = lp.num_vars();
    grow(lp, n);
    lp.add_eq((0..n).map(|i| (offset + i, Q::one())), Q::one());
    for i in 0..n {
        if i == piece.center {
            continue;
        }
        let w = lp.num_vars();
        grow(lp, 1);
        lp.add_eq(
            [
                (offset + piece.center, Q::one()),
                (offset + i, -Q::one()),
                (w, -Q::one()),
            ],
            Q::zero(),
        );
    }
    PieceVars {
        offset,
        len: n,
        bary: piece.barycenters(),
    }
}

fn grow(lp: &mut LinearProgram, extra: usize) {
    lp.objective.extend((0..extra).map(|_| Q::zero()));
    for (row, _) in lp.rows.iter_mut() {
        row.extend((0..extra).map(|_| Q::zero()));
    }
}

fn coordinate_terms(vars: &PieceVars, v: &VertexId, sign: &Q) -> Vec<(usize, Q)> {
    (0..vars.len)
        .filter_map(|i| {
            let c = vars.bary[i].coord(v);
            (!c.is_zero()).then(|| (vars.offset + i, sign * c))
        })
        .collect()
}

fn point_of(vars: &PieceVars, x: &[Q]) -> Point {
    Point::convex_combination((0..vars.len).map(|i| (x[vars.offset + i].clone(), &vars.bary[i])))
        .expect("LP weights are convex")
}

fn vertex_union(a: &StarPiece, b: &StarPiece) -> Vec<VertexId> {
    let set: BTreeSet<VertexId> = a
        .chain
        .top()
        .vertices()
        .iter()
        .chain(b.chain.top().vertices())
        .cloned()
        .collect();
    set.into_iter().collect()
}

/// Exact minimum l1 distance between two pieces, with points attaining it.
pub fn piece_distance(a: &StarPiece, b: &StarPiece) -> Result<(Q, Point, Point)> {
    let mut lp = LinearProgram::new(0);
    let va = add_piece(&mut lp, a);
    let vb = add_piece(&mut lp, b);
    let verts = vertex_union(a, b);
    for v in &verts {
        let base = lp.num_vars();
        grow(&mut lp, 2);
        lp.objective[base] = Q::one();
        lp.objective[base + 1] = Q::one();
        // x_v - y_v - p_v + q_v = 0
        let mut terms = coordinate_terms(&va, v, &Q::one());
        terms.extend(coordinate_terms(&vb, v, &-Q::one()));
        terms.push((base, -Q::one()));
        terms.push((base + 1, Q::one()));
        lp.add_eq(terms, Q::zero());
    }
    let sol = lp.minimize()?;
    Ok((sol.value, point_of(&va, &sol.x), point_of(&vb, &sol.x)))
}

/// Whether two pieces share a point.
pub fn pieces_meet(a: &StarPiece, b: &StarPiece) -> bool {
    let mut lp = LinearProgram::new(0);
    let va = add_piece(&mut lp, a);
    let vb = add_piece(&mut lp, b);
    for v in vertex_union(a, b) {
        let mut terms = coordinate_terms(&va, &v, &Q::one());
        terms.extend(coordinate_terms(&vb, &v, &-Q::one()));
        lp.add_eq(terms, Q::zero());
    }
    lp.is_feasible()
}

/// Exact minimum distance between two stars: the minimum over piece pairs.
/// Returns `None` when either star has no pieces.
pub fn star_distance(
    sigma: &Simplex,
    tau: &Simplex,
    k: &SimplicialComplex,
) -> Result<Option<(Q, Point, Point)>> {
    let pa = star_pieces(sigma, k)?;
    let pb = star_pieces(tau, k)?;
    let mut best: Option<(Q, Point, Point)> = None;
    for a in &pa {
        for b in &pb {
            let (d, x, y) = piece_distance(a, b)?;
            if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
                best = Some((d, x, y));
            }
        }
    }
    Ok(best)
}

/// Geometric intersection test of two stars. A common point has a support
/// `S`; truncating both representing chains at `|S|` makes both end at `S`,
/// so only piece pairs with a common top need to be tried.
pub fn stars_meet_lp(sigma: &Simplex, tau: &Simplex, k: &SimplicialComplex) -> Result<bool> {
    let pa = star_pieces(sigma, k)?;
    let pb = star_pieces(tau, k)?;
    for a in &pa {
        for b in pb.iter().filter(|b| b.chain.top() == a.chain.top()) {
            if pieces_meet(a, b) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}


#[cfg(test)]
mod grid_oracle {
    use super::*;
    use crate::complex::VertexId;
    use crate::rational::q;
    use crate::star::st2_membership;

    /// All points of the closed full simplex on `vs` with denominator `d`.
    fn grid(vs: &[VertexId], d: i64) -> Vec<Point> {
        fn rec(vs: &[VertexId], left: i64, d: i64, acc: &mut Vec<(VertexId, Q)>, out: &mut Vec<Point>) {
            if vs.len() == 1 {
                acc.push((vs[0].clone(), q(left, d)));
                out.push(Point::new(acc.clone()).unwrap());
                acc.pop();
                return;
            }
            for n in 0..=left {
                acc.push((vs[0].clone(), q(n, d)));
                rec(&vs[1..], left - n, d, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(vs, d, d, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn lp_minimum_matches_sampled_minimum() {
        let k = SimplicialComplex::from_maximal([Simplex::from_strs(&["a", "b", "c"]).unwrap()]);
        let vs: Vec<VertexId> = k.vertices().iter().cloned().collect();
        let pts = grid(&vs, 18);
        for (sa, sb) in [(&["a"][..], &["b"][..]), (&["a", "b"][..], &["a", "c"][..])] {
            let sa = Simplex::from_strs(sa).unwrap();
            let sb = Simplex::from_strs(sb).unwrap();
            let xa: Vec<&Point> = pts.iter().filter(|p| st2_membership(p, &sa, &k).unwrap()).collect();
            let xb: Vec<&Point> = pts.iter().filter(|p| st2_membership(p, &sb, &k).unwrap()).collect();
            let sampled = xa
                .iter()
                .flat_map(|x| xb.iter().map(move |y| x.l1_distance(y)))
                .min()
                .unwrap();
            let (lp, _, _) = star_distance(&sa, &sb, &k).unwrap().unwrap();
            assert!(sampled >= lp);
            // both optima sit on the denominator-18 grid
            assert_eq!(sampled, lp);
        }
    }
}
