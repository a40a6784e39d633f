//! Abstract simplicial complexes and points of their geometric realizations
//! in l1 coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Opaque vertex token. Equality is exact string equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyVertex);
        }
        Ok(Self(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A nonempty finite vertex set, stored sorted. The derived ordering is
/// lexicographic on the sorted vertex list, which is the canonical order
/// used for serialization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let set: BTreeSet<VertexId> = vertices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(Self(set.into_iter().collect()))
    }

    /// Builds a simplex from string tokens.
    pub fn from_strs<S: AsRef<str>>(ids: &[S]) -> Result<Self> {
        let vs = ids
            .iter()
            .map(|s| VertexId::new(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs)
    }

    pub fn vertex(v: VertexId) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn is_proper_subset(&self, other: &Simplex) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .chain(other.0.iter())
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        )
    }

    /// All nonempty subsets, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < usize::BITS as usize, "simplex too large to enumerate faces");
        (1usize..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i].clone())
                        .collect(),
                )
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|v| v.0.clone()).collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(v.as_str())?;
        }
        f.write_str("}")
    }
}

/// A finite, downward-closed family of simplexes together with its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: BTreeSet<VertexId>,
    simplexes: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Downward closure of the given simplexes.
    pub fn from_maximal(simplexes: impl IntoIterator<Item = Simplex>) -> Self {
        let mut out = Self::default();
        for s in simplexes {
            out.insert_closed(&s);
        }
        out
    }

    /// Like [`from_maximal`](Self::from_maximal), also adding each listed
    /// vertex as a 0-simplex. Every vertex of a simplex must be listed.
    pub fn with_vertices(
        vertices: impl IntoIterator<Item = VertexId>,
        simplexes: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let vs: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut out = Self::default();
        for v in &vs {
            out.insert_closed(&Simplex::vertex(v.clone()));
        }
        for s in simplexes {
            if let Some(v) = s.vertices().iter().find(|v| !vs.contains(*v)) {
                return Err(Error::InvalidPoint(format!(
                    "vertex {v} of simplex {s} is not declared"
                )));
            }
            out.insert_closed(&s);
        }
        Ok(out)
    }

    /// The full simplex on the given vertices.
    pub fn full_simplex(s: &Simplex) -> Self {
        Self::from_maximal([s.clone()])
    }

    fn insert_closed(&mut self, s: &Simplex) {
        if self.simplexes.contains(s) {
            return;
        }
        for f in s.faces() {
            self.simplexes.insert(f);
        }
        self.vertices.extend(s.vertices().iter().cloned());
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn simplexes(&self) -> &BTreeSet<Simplex> {
        &self.simplexes
    }

    pub fn len(&self) -> usize {
        self.simplexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplexes.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplexes.contains(s)
    }

    pub fn require(&self, s: &Simplex) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SimplexNotInComplex(s.to_string()))
        }
    }

    pub fn dimension(&self) -> Result<usize> {
        self.simplexes
            .iter()
            .map(Simplex::dim)
            .max()
            .ok_or(Error::EmptyComplex)
    }

    /// Simplexes that are not a proper face of another simplex.
    pub fn maximal_simplexes(&self) -> Vec<Simplex> {
        self.simplexes
            .iter()
            .filter(|s| !self.simplexes.iter().any(|t| s.is_proper_subset(t)))
            .cloned()
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplexes.iter().all(|s| other.contains(s))
    }

    pub fn require_subcomplex_of(&self, other: &SimplicialComplex) -> Result<()> {
        match self.simplexes.iter().find(|s| !other.contains(s)) {
            Some(s) => Err(Error::NotSubcomplex(s.to_string())),
            None => Ok(()),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let simplexes: BTreeSet<Simplex> =
            self.simplexes.intersection(&other.simplexes).cloned().collect();
        Self::from_closed_set(simplexes)
    }

    /// Subcomplex of simplexes satisfying `keep`; `keep` must be closed
    /// under taking faces for the result to be a complex.
    pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        Self::from_closed_set(self.simplexes.iter().filter(|s| keep(s)).cloned().collect())
    }

    /// Full subcomplex spanned by a vertex set.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<VertexId>) -> SimplicialComplex {
        self.filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
    }

    fn from_closed_set(simplexes: BTreeSet<Simplex>) -> Self {
        let vertices = simplexes
            .iter()
            .flat_map(|s| s.vertices().iter().cloned())
            .collect();
        Self { vertices, simplexes }
    }

    /// The join K1 * K2 of complexes on disjoint vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return Err(Error::OverlappingVertices(v.to_string()));
        }
        let mut simplexes: BTreeSet<Simplex> = self.simplexes.clone();
        simplexes.extend(other.simplexes.iter().cloned());
        for a in &self.simplexes {
            for b in &other.simplexes {
                simplexes.insert(a.union(b));
            }
        }
        Ok(Self::from_closed_set(simplexes))
    }

    /// Cone over the complex with apex `v`.
    pub fn cone(&self, apex: VertexId) -> Result<SimplicialComplex> {
        self.join(&SimplicialComplex::from_maximal([Simplex::vertex(apex)]))
    }

    pub fn maximal_strings(&self) -> Vec<Vec<String>> {
        self.maximal_simplexes().iter().map(Simplex::to_strings).collect()
    }
}

/// A point of a geometric realization: finitely many strictly positive
/// rational coordinates summing to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: BTreeMap<VertexId, Q>,
}

impl Point {
    /// Drops zero coordinates; rejects negatives and sums other than 1.
    pub fn new(coords: impl IntoIterator<Item = (VertexId, Q)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, c) in coords {
            if c.is_negative() {
                return Err(Error::InvalidPoint(format!("negative coordinate at {v}")));
            }
            if map.insert(v.clone(), c).is_some() {
                return Err(Error::InvalidPoint(format!("duplicate coordinate {v}")));
            }
        }
        map.retain(|_, c| !c.is_zero());
        let sum: Q = map.values().sum();
        if !sum.is_one() {
            return Err(Error::InvalidPoint(format!("coordinates sum to {sum}, not 1")));
        }
        Ok(Self { coords: map })
    }

    /// The vertex point delta_v.
    pub fn vertex(v: VertexId) -> Self {
        Self {
            coords: BTreeMap::from([(v, Q::one())]),
        }
    }

    /// b_sigma: weight 1/|sigma| on each vertex.
    pub fn barycenter(s: &Simplex) -> Self {
        let w = Q::new(1.into(), s.len().into());
        Self {
            coords: s.vertices().iter().map(|v| (v.clone(), w.clone())).collect(),
        }
    }

    /// Convex combination of points; weights must be nonnegative and sum to 1.
    pub fn convex_combination<'a>(
        terms: impl IntoIterator<Item = (Q, &'a Point)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<VertexId, Q> = BTreeMap::new();
        for (w, p) in terms {
            if w.is_negative() {
                return Err(Error::InvalidPoint("negative weight".into()));
            }
            for (v, c) in &p.coords {
                *acc.entry(v.clone()).or_insert_with(Q::zero) += &w * c;
            }
        }
        Self::new(acc)
    }

    pub fn coords(&self) -> &BTreeMap<VertexId, Q> {
        &self.coords
    }

    pub fn coord(&self, v: &VertexId) -> Q {
        self.coords.get(v).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> Simplex {
        Simplex(self.coords.keys().cloned().collect())
    }

    pub fn l1_distance(&self, other: &Point) -> Q {
        let keys: BTreeSet<&VertexId> = self.coords.keys().chain(other.coords.keys()).collect();
        keys.into_iter()
            .map(|v| (self.coord(v) - other.coord(v)).abs())
            .sum()
    }

    /// The minimal simplex of `k` whose closed geometric simplex contains
    /// the point, which is its support.
    pub fn carrier(&self, k: &SimplicialComplex) -> Result<Simplex> {
        let s = self.support();
        if k.contains(&s) {
            Ok(s)
        } else {
            Err(Error::SupportNotSimplex(s.to_string()))
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (v, c)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}:{c}")?;
        }
        f.write_str(")")
    }
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

    fn pt(cs: &[(&str, Q)]) -> Point {
        Point::new(cs.iter().map(|(k, c)| (v(k), c.clone()))).unwrap()
    }

    #[test]
    fn make_complex_examples() {
        let tri = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        assert_eq!(tri.len(), 7);
        assert_eq!(tri.dimension().unwrap(), 2);
        let pt = SimplicialComplex::from_maximal([s(&["a"])]);
        assert_eq!(pt.len(), 1);
        assert_eq!(pt.dimension().unwrap(), 0);
        let path = SimplicialComplex::from_maximal([s(&["a", "b"]), s(&["b", "c"])]);
        assert_eq!(path.len(), 5);
        assert_eq!(path.dimension().unwrap(), 1);
        let two = SimplicialComplex::from_maximal([s(&["a", "b"]), s(&["c", "d"])]);
        assert_eq!(two.dimension().unwrap(), 1);
        let reclosed = SimplicialComplex::from_maximal(tri.simplexes().iter().cloned());
        assert_eq!(reclosed, tri);
    }

    #[test]
    fn empty_inputs_rejected() {
        assert_eq!(Simplex::new([]), Err(Error::EmptySimplex));
        assert_eq!(VertexId::new(""), Err(Error::EmptyVertex));
        assert_eq!(SimplicialComplex::default().dimension(), Err(Error::EmptyComplex));
    }

    #[test]
    fn barycenters() {
        assert_eq!(Point::barycenter(&s(&["a"])), Point::vertex(v("a")));
        assert_eq!(
            Point::barycenter(&s(&["a", "b"])),
            pt(&[("a", q(1, 2)), ("b", q(1, 2))])
        );
        let b = Point::barycenter(&s(&["a", "b", "c"]));
        assert!(b.coords().values().all(|c| *c == q(1, 3)));
        let tri = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        assert_eq!(b.carrier(&tri).unwrap(), s(&["a", "b", "c"]));
    }

    #[test]
    fn joins() {
        let a = SimplicialComplex::from_maximal([s(&["a"])]);
        let b = SimplicialComplex::from_maximal([s(&["b"])]);
        assert_eq!(a.join(&b).unwrap(), SimplicialComplex::from_maximal([s(&["a", "b"])]));
        let ab = SimplicialComplex::from_maximal([s(&["a", "b"])]);
        let c = SimplicialComplex::from_maximal([s(&["c"])]);
        let tri = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        assert_eq!(ab.join(&c).unwrap(), tri);
        assert_eq!(ab.cone(v("c")).unwrap(), tri);
        assert!(matches!(ab.join(&a), Err(Error::OverlappingVertices(_))));
    }

    #[test]
    fn distances() {
        let da = Point::vertex(v("a"));
        let db = Point::vertex(v("b"));
        assert_eq!(da.l1_distance(&da), qi(0));
        assert_eq!(da.l1_distance(&db), qi(2));
        let mid = pt(&[("a", q(1, 2)), ("b", q(1, 2))]);
        assert_eq!(mid.l1_distance(&da), qi(1));
    }

    #[test]
    fn carriers() {
        let tri = SimplicialComplex::from_maximal([s(&["a", "b", "c"])]);
        assert_eq!(Point::vertex(v("a")).carrier(&tri).unwrap(), s(&["a"]));
        let mid = pt(&[("a", q(1, 2)), ("b", q(1, 2))]);
        assert_eq!(mid.carrier(&tri).unwrap(), s(&["a", "b"]));
        let path = SimplicialComplex::from_maximal([s(&["a", "b"]), s(&["b", "c"])]);
        let ac = pt(&[("a", q(1, 2)), ("c", q(1, 2))]);
        assert!(matches!(ac.carrier(&path), Err(Error::SupportNotSimplex(_))));
    }

    #[test]
    fn point_invariants() {
        assert!(Point::new([(v("a"), q(1, 2))]).is_err());
        assert!(Point::new([(v("a"), q(3, 2)), (v("b"), q(-1, 2))]).is_err());
        let p = Point::new([(v("a"), qi(1)), (v("b"), qi(0))]).unwrap();
        assert_eq!(p.support(), s(&["a"]));
    }
}
