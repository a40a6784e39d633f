//! Brute-force decision of star membership through barycentric weights.
//!
//! Enumerates every saturated chain `σ_1 ⊂ … ⊂ σ_n` of the complex with
//! `σ_{|τ|} = τ` and solves `p = Σ t_i b_{σ_i}` by exact Gaussian
//! elimination; `p` is in the star iff some chain yields nonnegative
//! weights whose maximum sits at position `|τ|`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::error::Result;
use crate::rational::Q;

use super::{permutations, Chain};

/// Every saturated chain whose `|τ|`-th member is `τ`, of every length.
pub fn saturated_chains_through(tau: &Simplex, k: &SimplicialComplex) -> Vec<Chain> {
    let mut out = Vec::new();
    for lower in permutations(tau.vertices()) {
        let mut stack = vec![lower];
        while let Some(order) = stack.pop() {
            out.push(Chain::from_vertex_order(&order).expect("distinct vertices"));
            let top = Simplex::new(order.iter().cloned()).expect("nonempty");
            for v in k.vertices() {
                if top.contains(v) {
                    continue;
                }
                let grown = top.union(&Simplex::vertex(v.clone()));
                if k.contains(&grown) {
                    let mut next = order.clone();
                    next.push(v.clone());
                    stack.push(next);
                }
            }
        }
    }
    out.sort();
    out
}

/// Unique solution of `A x = b`, or `None` when inconsistent. Columns of
/// `A` are assumed linearly independent.
pub(crate) fn solve_exact(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        b.swap(pivot_row, r);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        b[pivot_row] *= &inv;
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let d = &f * &a[pivot_row][c];
                    a[r][c] -= d;
                }
                let d = &f * &b[pivot_row];
                b[r] -= d;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = b[r].clone();
    }
    Some(x)
}

/// Barycentric weights of `p` along the chain, if `p` lies in the span.
pub fn chain_weights(p: &Point, chain: &Chain) -> Option<Vec<Q>> {
    let mut rows: BTreeSet<VertexId> = p.coords().keys().cloned().collect();
    rows.extend(chain.top().vertices().iter().cloned());
    let rows: Vec<VertexId> = rows.into_iter().collect();
    let bary: Vec<Point> = chain.members().iter().map(Point::barycenter).collect();
    let a = rows
        .iter()
        .map(|v| bary.iter().map(|b| b.coord(v)).collect())
        .collect();
    let rhs = rows.iter().map(|v| p.coord(v)).collect();
    solve_exact(a, rhs)
}

pub fn st2_membership_oracle(p: &Point, tau: &Simplex, k: &SimplicialComplex) -> Result<bool> {
    k.require(tau)?;
    p.carrier(k)?;
    let pos = tau.len() - 1;
    // weights past the support are zero, and the truncated chain is also
    // saturated through τ, so chains ending at the support suffice
    let support = p.support();
    if !tau.is_subset(&support) {
        return Ok(false);
    }
    for chain in saturated_chains_through(tau, k) {
        if *chain.top() != support {
            continue;
        }
        let Some(t) = chain_weights(p, &chain) else {
            continue;
        };
        if t.iter().any(Signed::is_negative) {
            continue;
        }
        if t.iter().all(|x| *x <= t[pos]) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn s(ids: &[&str]) -> Simplex {
        Simplex::from_strs(ids).unwrap()
    }

    fn v(id: &str) -> VertexId {
        VertexId::new(id).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let k = SimplicialComplex::from_maximal([s(&["a", "b"])]);
        assert!(!st2_membership_oracle(&Point::vertex(v("b")), &s(&["a"]), &k).unwrap());
        let half = Point::convex_combination([
            (q(1, 2), &Point::barycenter(&s(&["a"]))),
            (q(1, 2), &Point::barycenter(&s(&["a", "b"]))),
        ])
        .unwrap();
        assert!(st2_membership_oracle(&half, &s(&["a"]), &k).unwrap());
    }

    #[test]
    fn weights_solve_convex_combination() {
        // (a:2/3, b:1/3) = 1/3 δ_a + 2/3 b_ab
        let p = Point::new([(v("a"), q(2, 3)), (v("b"), q(1, 3))]).unwrap();
        let c = Chain::new(vec![s(&["a"]), s(&["a", "b"])]).unwrap();
        assert_eq!(chain_weights(&p, &c).unwrap(), vec![q(1, 3), q(2, 3)]);
        let c2 = Chain::new(vec![s(&["b"]), s(&["a", "b"])]).unwrap();
        assert_eq!(chain_weights(&p, &c2).unwrap(), vec![q(-1, 3), q(4, 3)]);
    }

    #[test]
    fn chains_through_counts() {
        let k = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        // {a}, {a}⊂ab, {a}⊂ac, and both length-3 extensions of each
        assert_eq!(saturated_chains_through(&s(&["a"]), &k).len(), 5);
        assert_eq!(saturated_chains_through(&s(&["a", "b"]), &k).len(), 4);
        assert!(solve_exact(vec![vec![qi(1)], vec![qi(1)]], vec![qi(1), qi(2)]).is_none());
    }
}
