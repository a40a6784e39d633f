use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::complex::{Point, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::Q;

use super::polytope::{stars_meet_lp, star_distance};
use super::{st2_membership, Chain};

/// The closed stars `St²(b_τ, C)`, one per simplex `τ` of `C`, grouped by
/// `|τ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFamily {
    ambient: SimplicialComplex,
    groups: BTreeMap<usize, Vec<Simplex>>,
}

impl StarFamily {
    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    /// Bases grouped by cardinality; each group is sorted.
    pub fn groups(&self) -> &BTreeMap<usize, Vec<Simplex>> {
        &self.groups
    }

    pub fn bases(&self) -> impl Iterator<Item = &Simplex> {
        self.groups.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// `n = 1 + dim C`, the number of groups.
    pub fn discreteness_index(&self) -> usize {
        self.groups.len()
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        for tau in self.bases() {
            if st2_membership(p, tau, &self.ambient)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn star_cover(c: &SimplicialComplex, k: &SimplicialComplex) -> Result<StarFamily> {
    c.require_subcomplex_of(k)?;
    let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for tau in c.simplexes() {
        groups.entry(tau.len()).or_default().push(tau.clone());
    }
    for g in groups.values_mut() {
        g.sort();
    }
    Ok(StarFamily {
        ambient: c.clone(),
        groups,
    })
}

/// The closest pair within one cardinality group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSeparation {
    pub cardinality: usize,
    pub members: Vec<Simplex>,
    /// `None` for groups with fewer than two members.
    pub min_distance: Option<Q>,
    pub closest: Option<(Simplex, Simplex, Point, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretenessReport {
    pub n: usize,
    pub bound: Q,
    pub groups: Vec<GroupSeparation>,
}

impl DiscretenessReport {
    pub fn holds(&self) -> bool {
        self.groups
            .iter()
            .all(|g| g.min_distance.as_ref().is_none_or(|d| *d >= self.bound))
    }
}

/// Exact within-group separation of a star cover, against the bound
/// `1/n²` with `n = 1 + dim C`.
pub fn discreteness_certificate(f: &StarFamily) -> Result<DiscretenessReport> {
    let n = f.discreteness_index();
    let bound = Q::new(1.into(), (n * n).max(1).into());
    let mut groups = Vec::new();
    for (&cardinality, members) in f.groups() {
        let mut best: Option<(Q, Simplex, Simplex, Point, Point)> = None;
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let Some((d, x, y)) = star_distance(a, b, f.ambient())? else {
                    continue;
                };
                if best.as_ref().is_none_or(|(bd, ..)| d < *bd) {
                    best = Some((d, a.clone(), b.clone(), x, y));
                }
            }
        }
        let (min_distance, closest) = match best {
            Some((d, a, b, x, y)) => (Some(d), Some((a, b, x, y))),
            None => (None, None),
        };
        groups.push(GroupSeparation {
            cardinality,
            members: members.clone(),
            min_distance,
            closest,
        });
    }
    Ok(DiscretenessReport { n, bound, groups })
}

/// `Σ (1/n) b_{σ_i}` over the members of a chain; lies in every star
/// `St²(b_{σ_i})`.
pub fn chain_witness(c: &Chain) -> Point {
    let w = Q::new(1.into(), c.len().into());
    let bs: Vec<Point> = c.members().iter().map(Point::barycenter).collect();
    Point::convex_combination(bs.iter().map(|b| (w.clone(), b))).expect("uniform weights")
}

/// Decides `St²(b_σ) ∩ St²(b_τ) ≠ ∅` geometrically by exact LP.
pub fn stars_intersect(sigma: &Simplex, tau: &Simplex, k: &SimplicialComplex) -> Result<bool> {
    stars_meet_lp(sigma, tau, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkedStars {
    Chain(Chain),
    /// Two bases whose stars are disjoint.
    Disjoint(Simplex, Simplex),
    /// Two bases whose stars meet although neither contains the other.
    Incomparable(Simplex, Simplex),
}

/// Sorts the bases of a pairwise-intersecting star family into a chain.
pub fn linked_stars_chain(bases: &[Simplex], k: &SimplicialComplex) -> Result<LinkedStars> {
    let mut sorted: Vec<Simplex> = bases.to_vec();
    sorted.sort();
    sorted.dedup();
    for b in &sorted {
        k.require(b)?;
    }
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if !stars_intersect(a, b, k)? {
                return Ok(LinkedStars::Disjoint(a.clone(), b.clone()));
            }
            if !a.is_subset(b) && !b.is_subset(a) {
                return Ok(LinkedStars::Incomparable(a.clone(), b.clone()));
            }
        }
    }
    Ok(LinkedStars::Chain(Chain::from_comparable(sorted)?))
}

/// `σ̄ ∩ St²(b_τ, K) ≠ ∅`, which holds exactly when `τ ⊆ σ`; in that case
/// `b_τ` is a common point and is re-checked.
pub fn star_meets_subcomplex(sigma: &Simplex, tau: &Simplex, k: &SimplicialComplex) -> Result<bool> {
    k.require(sigma)?;
    k.require(tau)?;
    if !tau.is_subset(sigma) {
        return Ok(false);
    }
    let b = Point::barycenter(tau);
    debug_assert!(st2_membership(&b, tau, k)?);
    Ok(b.support().is_subset(sigma))
}

/// A member of a family drawn from subcomplexes and stars of one ambient
/// complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverMember {
    Star(Simplex),
    Subcomplex(SimplicialComplex),
}

impl fmt::Display for CoverMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverMember::Star(t) => write!(f, "St2({t})"),
            CoverMember::Subcomplex(c) => {
                f.write_str("subcomplex[")?;
                for (i, m) in c.maximal_simplexes().iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub chain: Chain,
    pub point: Point,
}

fn members_meet(a: &CoverMember, b: &CoverMember, k: &SimplicialComplex) -> Result<bool> {
    use CoverMember::*;
    match (a, b) {
        (Star(s), Star(t)) => stars_intersect(s, t, k),
        (Star(t), Subcomplex(f)) | (Subcomplex(f), Star(t)) => {
            for sigma in f.simplexes() {
                if star_meets_subcomplex(sigma, t, k)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        (Subcomplex(f), Subcomplex(g)) => {
            Ok(f.vertices().intersection(g.vertices()).next().is_some())
        }
    }
}

/// A common point of a linked family of stars and subcomplexes of `k`
/// containing at least one star: the chain witness of the star bases.
pub fn linked_intersection_witness(
    members: &[CoverMember],
    k: &SimplicialComplex,
) -> Result<IntersectionWitness> {
    for m in members {
        match m {
            CoverMember::Star(t) => k.require(t)?,
            CoverMember::Subcomplex(f) => f.require_subcomplex_of(k)?,
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !members_meet(a, b, k)? {
                return Err(Error::NotLinked(a.to_string(), b.to_string()));
            }
        }
    }
    let bases: Vec<Simplex> = members
        .iter()
        .filter_map(|m| match m {
            CoverMember::Star(t) => Some(t.clone()),
            CoverMember::Subcomplex(_) => None,
        })
        .collect();
    if bases.is_empty() {
        return Err(Error::NoStarMember);
    }
    let chain = match linked_stars_chain(&bases, k)? {
        LinkedStars::Chain(c) => c,
        LinkedStars::Disjoint(a, b) | LinkedStars::Incomparable(a, b) => {
            return Err(Error::NotLinked(a.to_string(), b.to_string()))
        }
    };
    let point = chain_witness(&chain);
    for m in members {
        let ok = match m {
            CoverMember::Star(t) => st2_membership(&point, t, k)?,
            CoverMember::Subcomplex(f) => f.contains(&point.support()),
        };
        if !ok {
            return Err(Error::WitnessRejected(m.to_string()));
        }
    }
    debug_assert!(point.coords().values().sum::<Q>().is_one());
    Ok(IntersectionWitness { chain, point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;
    use crate::rational::q;

    fn s(ids: &[&str]) -> Simplex {
        Simplex::from_strs(ids).unwrap()
    }

    fn v(id: &str) -> VertexId {
        VertexId::new(id).unwrap()
    }

    fn tri() -> SimplicialComplex {
        SimplicialComplex::from_maximal([s(&["a", "b", "c"])])
    }

    #[test]
    fn chain_witness_examples() {
        let c1 = Chain::new(vec![s(&["a"])]).unwrap();
        assert_eq!(chain_witness(&c1), Point::vertex(v("a")));
        let c2 = Chain::new(vec![s(&["a"]), s(&["a", "b"])]).unwrap();
        let p2 = Point::new([(v("a"), q(3, 4)), (v("b"), q(1, 4))]).unwrap();
        assert_eq!(chain_witness(&c2), p2);
        let c3 = Chain::new(vec![s(&["a"]), s(&["a", "b"]), s(&["a", "b", "c"])]).unwrap();
        let p3 = Point::new([(v("a"), q(11, 18)), (v("b"), q(5, 18)), (v("c"), q(2, 18))]).unwrap();
        let w = chain_witness(&c3);
        assert_eq!(w, p3);
        for m in c3.members() {
            assert!(st2_membership(&w, m, &tri()).unwrap());
        }
    }

    #[test]
    fn cover_groups() {
        let t = tri();
        let f = star_cover(&t, &t).unwrap();
        assert_eq!(f.len(), 7);
        let sizes: Vec<usize> = f.groups().values().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 3, 1]);
        let single = SimplicialComplex::from_maximal([s(&["a"])]);
        let f1 = star_cover(&single, &t).unwrap();
        assert_eq!(f1.len(), 1);
        let outside = SimplicialComplex::from_maximal([s(&["a", "d"])]);
        assert!(matches!(star_cover(&outside, &t), Err(Error::NotSubcomplex(_))));
    }

    #[test]
    fn triangle_discreteness() {
        let t = tri();
        let rep = discreteness_certificate(&star_cover(&t, &t).unwrap()).unwrap();
        assert_eq!(rep.n, 3);
        assert_eq!(rep.bound, q(1, 9));
        assert!(rep.holds());
        assert_eq!(rep.groups[0].min_distance, Some(q(2, 3)));
        assert_eq!(rep.groups[1].min_distance, Some(q(1, 3)));
        assert_eq!(rep.groups[2].min_distance, None);
    }

    #[test]
    fn edge_discreteness() {
        let e = SimplicialComplex::from_maximal([s(&["a", "b"])]);
        let rep = discreteness_certificate(&star_cover(&e, &e).unwrap()).unwrap();
        assert_eq!(rep.bound, q(1, 4));
        assert!(rep.groups[0].min_distance.as_ref().unwrap() >= &q(1, 4));
    }

    #[test]
    fn linked_chain_examples() {
        let e = SimplicialComplex::from_maximal([s(&["a", "b"])]);
        assert_eq!(
            linked_stars_chain(&[s(&["a", "b"]), s(&["a"])], &e).unwrap(),
            LinkedStars::Chain(Chain::new(vec![s(&["a"]), s(&["a", "b"])]).unwrap())
        );
        assert_eq!(
            linked_stars_chain(&[s(&["a"]), s(&["b"])], &e).unwrap(),
            LinkedStars::Disjoint(s(&["a"]), s(&["b"]))
        );
    }

    #[test]
    fn small_cover_examples() {
        let t = tri();
        assert!(star_meets_subcomplex(&s(&["a", "b", "c"]), &s(&["a", "b"]), &t).unwrap());
        assert!(!star_meets_subcomplex(&s(&["a"]), &s(&["a", "b"]), &t).unwrap());
    }

    #[test]
    fn witness_examples() {
        let e = SimplicialComplex::from_maximal([s(&["a", "b"])]);
        let w = linked_intersection_witness(
            &[CoverMember::Star(s(&["a"])), CoverMember::Star(s(&["a", "b"]))],
            &e,
        )
        .unwrap();
        assert_eq!(w.point, Point::new([(v("a"), q(3, 4)), (v("b"), q(1, 4))]).unwrap());

        let w = linked_intersection_witness(
            &[CoverMember::Subcomplex(e.clone()), CoverMember::Star(s(&["a"]))],
            &e,
        )
        .unwrap();
        assert!(w.point.support().contains(&v("a")));

        let err = linked_intersection_witness(
            &[CoverMember::Star(s(&["a"])), CoverMember::Star(s(&["b"]))],
            &e,
        );
        assert!(matches!(err, Err(Error::NotLinked(_, _))));
        let vb = SimplicialComplex::from_maximal([s(&["b"])]);
        assert_eq!(
            linked_intersection_witness(&[CoverMember::Subcomplex(vb)], &e),
            Err(Error::NoStarMember)
        );
    }
}
