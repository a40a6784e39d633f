//! Barycentric subdivisions and closed stars of the second barycentric
//! subdivision.
//!
//! A closed star `St²(b_τ, K)` is represented by its base simplex `τ` and
//! decided in closed form from the sorted coordinates of a point (see
//! [`st2_membership`]). The extensional description as a union of Sd² cells
//! lives in [`sd2`] and is only used to cross-check.

mod cover;
pub mod oracle;
pub mod polytope;
pub mod sd2;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::rational::Q;

pub use cover::{
    chain_witness, discreteness_certificate, linked_intersection_witness, linked_stars_chain,
    star_cover, star_meets_subcomplex, stars_intersect, CoverMember, DiscretenessReport,
    GroupSeparation, IntersectionWitness, LinkedStars, StarFamily,
};

/// A strictly increasing sequence of simplexes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(Vec<Simplex>);

impl Chain {
    pub fn new(simplexes: Vec<Simplex>) -> Result<Self> {
        if simplexes.is_empty() {
            return Err(Error::EmptySimplex);
        }
        for (i, w) in simplexes.windows(2).enumerate() {
            if !w[0].is_proper_subset(&w[1]) {
                return Err(Error::NotAChain(i + 1));
            }
        }
        Ok(Self(simplexes))
    }

    /// Sorts a set of pairwise comparable simplexes into a chain.
    pub fn from_comparable(mut simplexes: Vec<Simplex>) -> Result<Self> {
        simplexes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        simplexes.dedup();
        Self::new(simplexes)
    }

    pub fn members(&self) -> &[Simplex] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn top(&self) -> &Simplex {
        self.0.last().expect("chains are nonempty")
    }

    /// `|σ_i| = i` for every position.
    pub fn is_saturated(&self) -> bool {
        self.0.iter().enumerate().all(|(i, s)| s.len() == i + 1)
    }

    pub fn require_in(&self, k: &SimplicialComplex) -> Result<()> {
        self.0.iter().try_for_each(|s| k.require(s))
    }

    /// For a saturated chain, the vertex order `v_1, …, v_n` in which the
    /// chain adds vertices.
    pub fn vertex_order(&self) -> Result<Vec<VertexId>> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let mut out: Vec<VertexId> = Vec::with_capacity(self.len());
        for s in &self.0 {
            let new = s
                .vertices()
                .iter()
                .find(|v| !out.contains(v))
                .expect("saturated chain adds one vertex per step");
            out.push(new.clone());
        }
        Ok(out)
    }

    /// Saturated chain `{v1} ⊂ {v1,v2} ⊂ …` from a vertex ordering.
    pub fn from_vertex_order(order: &[VertexId]) -> Result<Self> {
        let mut members = Vec::with_capacity(order.len());
        for i in 1..=order.len() {
            members.push(Simplex::new(order[..i].iter().cloned())?);
        }
        Self::new(members)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("⊂")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// All orderings of the given vertices, in lexicographic order.
pub(crate) fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// The `|σ|!` cells of the first barycentric subdivision of `σ̄`, as the
/// saturated chains ending at `σ`.
pub fn sd_cells(sigma: &Simplex, k: &SimplicialComplex) -> Result<Vec<Chain>> {
    k.require(sigma)?;
    let mut cells = permutations(sigma.vertices())
        .iter()
        .map(|order| Chain::from_vertex_order(order))
        .collect::<Result<Vec<_>>>()?;
    cells.sort();
    Ok(cells)
}

/// Whether `p` lies in the Sd cell spanned by the barycenters of a
/// saturated chain: the support sits inside the top simplex and the
/// coordinates weakly decrease along the chain's vertex order.
pub fn in_sd_cell(p: &Point, c: &Chain) -> Result<bool> {
    let order = c.vertex_order()?;
    if !p.support().is_subset(c.top()) {
        return Ok(false);
    }
    Ok(order
        .windows(2)
        .all(|w| p.coord(&w[0]) >= p.coord(&w[1])))
}

/// Membership in the star of `δ_u` with respect to `Sd(σ̄)`: the support
/// lies in `σ` and `t_u` is a maximal coordinate.
pub fn st1_membership(p: &Point, u: &VertexId, sigma: &Simplex) -> bool {
    if !sigma.contains(u) || !p.support().is_subset(sigma) {
        return false;
    }
    let tu = p.coord(u);
    p.coords().values().all(|c| *c <= tu)
}

/// Coordinates of `p` sorted in descending order, ties broken by vertex id.
pub(crate) fn descending(p: &Point) -> Vec<(VertexId, Q)> {
    let mut cs: Vec<(VertexId, Q)> = p.coords().iter().map(|(v, c)| (v.clone(), c.clone())).collect();
    cs.sort_by(|a, b| match b.1.cmp(&a.1) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    cs
}

/// The gaps `k (s_k - s_{k+1})` of a descending coordinate list, with
/// `s_{n+1} = 0`.
pub(crate) fn weighted_gaps(s: &[Q]) -> Vec<Q> {
    (0..s.len())
        .map(|i| {
            let next = s.get(i + 1).cloned().unwrap_or_else(Q::zero);
            Q::from_integer((i + 1).into()) * (&s[i] - next)
        })
        .collect()
}

/// Decides `p ∈ St²(b_τ, K)` from coordinates alone.
///
/// A point is in the star iff some ordering `v_1, …, v_n` of its support
/// has descending coordinates, puts exactly `τ` in the first `|τ|`
/// positions, and attains `max_k k(s_k - s_{k+1})` at `k = |τ|`. Trailing
/// zero coordinates never change the gaps, so `n` can be taken as the
/// support size. Orderings inside a tie block give the same sequence, and a
/// tie across the `τ` boundary gives a zero gap, which can never be the
/// maximum since the gaps sum to one.
pub fn st2_membership(p: &Point, tau: &Simplex, k: &SimplicialComplex) -> Result<bool> {
    k.require(tau)?;
    p.carrier(k)?;
    if !tau.is_subset(&p.support()) {
        return Ok(false);
    }
    let min_tau = tau.vertices().iter().map(|v| p.coord(v)).min().expect("nonempty");
    let max_rest = p
        .coords()
        .iter()
        .filter(|(v, _)| !tau.contains(v))
        .map(|(_, c)| c.clone())
        .max()
        .unwrap_or_else(Q::zero);
    if min_tau < max_rest {
        return Ok(false);
    }
    let s: Vec<Q> = descending(p).into_iter().map(|(_, c)| c).collect();
    let gaps = weighted_gaps(&s);
    let m = tau.len();
    let tau_gap = Q::from_integer(m.into()) * (min_tau - max_rest);
    debug_assert_eq!(tau_gap, gaps[m - 1]);
    let max_gap = gaps.iter().max().expect("nonempty support");
    Ok(tau_gap == *max_gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn s(ids: &[&str]) -> Simplex {
        Simplex::from_strs(ids).unwrap()
    }

    fn v(id: &str) -> VertexId {
        VertexId::new(id).unwrap()
    }

    fn pt(cs: &[(&str, Q)]) -> Point {
        Point::new(cs.iter().map(|(k, c)| (v(k), c.clone()))).unwrap()
    }

    fn edge() -> SimplicialComplex {
        SimplicialComplex::from_maximal([s(&["a", "b"])])
    }

    #[test]
    fn sd_cell_counts() {
        let tri = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        assert_eq!(sd_cells(&s(&["a"]), &tri).unwrap().len(), 1);
        let two = sd_cells(&s(&["a", "b"]), &tri).unwrap();
        assert_eq!(
            two,
            vec![
                Chain::new(vec![s(&["a"]), s(&["a", "b"])]).unwrap(),
                Chain::new(vec![s(&["b"]), s(&["a", "b"])]).unwrap(),
            ]
        );
        assert_eq!(sd_cells(&s(&["a", "b", "c"]), &tri).unwrap().len(), 6);
        assert!(sd_cells(&s(&["a", "d"]), &tri).is_err());
    }

    #[test]
    fn sd_cell_membership() {
        let c = Chain::new(vec![s(&["a"]), s(&["a", "b"])]).unwrap();
        assert!(in_sd_cell(&Point::barycenter(&s(&["a", "b"])), &c).unwrap());
        assert!(!in_sd_cell(&Point::vertex(v("b")), &c).unwrap());
        assert!(in_sd_cell(&pt(&[("a", q(2, 3)), ("b", q(1, 3))]), &c).unwrap());
        let gappy = Chain::new(vec![s(&["a"]), s(&["a", "b", "c"])]).unwrap();
        assert_eq!(in_sd_cell(&Point::vertex(v("a")), &gappy), Err(Error::NotSaturated));
    }

    #[test]
    fn chain_validation() {
        assert_eq!(Chain::new(vec![s(&["a"]), s(&["b"])]), Err(Error::NotAChain(1)));
        assert_eq!(Chain::new(vec![s(&["a"]), s(&["a"])]), Err(Error::NotAChain(1)));
        let c = Chain::new(vec![s(&["b"]), s(&["a", "b"]), s(&["a", "b", "c"])]).unwrap();
        assert!(c.is_saturated());
        assert_eq!(c.vertex_order().unwrap(), vec![v("b"), v("a"), v("c")]);
    }

    #[test]
    fn st2_examples() {
        let k = edge();
        assert!(st2_membership(&Point::vertex(v("a")), &s(&["a"]), &k).unwrap());
        let p = pt(&[("a", q(2, 3)), ("b", q(1, 3))]);
        assert!(!st2_membership(&p, &s(&["a"]), &k).unwrap());
        assert!(st2_membership(&p, &s(&["a", "b"]), &k).unwrap());
        assert!(!st2_membership(&Point::vertex(v("b")), &s(&["a"]), &k).unwrap());
        for tau in k.simplexes() {
            assert!(st2_membership(&Point::barycenter(tau), tau, &k).unwrap());
        }
        // vertex star of an edge is {a >= 3/4}
        assert!(st2_membership(&pt(&[("a", q(3, 4)), ("b", q(1, 4))]), &s(&["a"]), &k).unwrap());
        assert!(!st2_membership(&pt(&[("a", q(7, 10)), ("b", q(3, 10))]), &s(&["a"]), &k).unwrap());
    }

    #[test]
    fn st2_errors() {
        let k = edge();
        assert!(matches!(
            st2_membership(&Point::vertex(v("a")), &s(&["c"]), &k),
            Err(Error::SimplexNotInComplex(_))
        ));
        assert!(matches!(
            st2_membership(&Point::vertex(v("c")), &s(&["a"]), &k),
            Err(Error::SupportNotSimplex(_))
        ));
    }

    #[test]
    fn st1_examples() {
        let ab = s(&["a", "b"]);
        assert!(st1_membership(&pt(&[("a", q(1, 2)), ("b", q(1, 2))]), &v("a"), &ab));
        assert!(!st1_membership(&pt(&[("a", q(1, 3)), ("b", q(2, 3))]), &v("a"), &ab));
    }
}
