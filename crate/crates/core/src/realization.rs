//! Layered set systems, their meet-semilattices, and an intersection
//! preserving assignment of subcomplexes of the order complex.
//!
//! For a finite system the realizing complex is the order complex of the
//! semilattice `⋀F` of nonempty intersections, and a semilattice element
//! `G` is sent to the full subcomplex on its down-set. Down-sets commute
//! with meets, so the assignment preserves intersections; chains of `⋀F`
//! have at most `n + 1` members when the `n` groups are each pairwise
//! disjoint, so the complex has dimension at most `n`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::family::NamedSet;

pub type Element = BTreeSet<String>;

/// Ground set plus named subsets in groups; sets within a group are
/// pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct SetSystem {
    ground: BTreeSet<String>,
    groups: Vec<Vec<NamedSet>>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    ground: Vec<String>,
    families: Vec<Vec<NamedSet>>,
}

impl TryFrom<RawSystem> for SetSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        let ground: BTreeSet<String> = raw.ground.iter().cloned().collect();
        if ground.len() != raw.ground.len() {
            return Err(Error::InvalidSystem("duplicate ground element".into()));
        }
        SetSystem::new(ground, raw.families)
    }
}

impl From<SetSystem> for RawSystem {
    fn from(s: SetSystem) -> Self {
        RawSystem {
            ground: s.ground.into_iter().collect(),
            families: s.groups,
        }
    }
}

impl SetSystem {
    pub fn new(ground: BTreeSet<String>, groups: Vec<Vec<NamedSet>>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for (gi, group) in groups.iter().enumerate() {
            for (i, s) in group.iter().enumerate() {
                if s.name.is_empty() {
                    return Err(Error::InvalidSystem("empty set name".into()));
                }
                if !names.insert(s.name.as_str()) {
                    return Err(Error::InvalidSystem(format!("duplicate name {}", s.name)));
                }
                if let Some(x) = s.members.iter().find(|x| !ground.contains(*x)) {
                    return Err(Error::NotInGround(x.clone()));
                }
                if let Some(t) = group[i + 1..].iter().find(|t| s.meets(t)) {
                    return Err(Error::InvalidSystem(format!(
                        "sets {} and {} of group {gi} intersect",
                        s.name, t.name
                    )));
                }
            }
        }
        Ok(Self { ground, groups })
    }

    pub fn ground(&self) -> &BTreeSet<String> {
        &self.ground
    }

    pub fn groups(&self) -> &[Vec<NamedSet>] {
        &self.groups
    }

    /// Discreteness index: the number of groups.
    pub fn n(&self) -> usize {
        self.groups.len()
    }

    pub fn sets(&self) -> impl Iterator<Item = &NamedSet> {
        self.groups.iter().flatten()
    }

    pub fn flattened(&self) -> Vec<NamedSet> {
        self.sets().cloned().collect()
    }

    pub fn get(&self, name: &str) -> Option<&NamedSet> {
        self.sets().find(|s| s.name == name)
    }

    /// The same ground with one more group appended.
    pub fn with_group(&self, group: Vec<NamedSet>) -> Result<Self> {
        let mut groups = self.groups.clone();
        groups.push(group);
        Self::new(self.ground.clone(), groups)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilattice {
    elements: BTreeSet<Element>,
    top: Option<Element>,
    /// Names of the listed sets equal to each element.
    listed: BTreeMap<Element, Vec<String>>,
}

impl MeetSemilattice {
    pub fn elements(&self) -> &BTreeSet<Element> {
        &self.elements
    }

    /// The ground set; `None` only for an empty ground.
    pub fn top(&self) -> Option<&Element> {
        self.top.as_ref()
    }

    pub fn listed_names(&self, e: &Element) -> &[String] {
        self.listed.get(e).map_or(&[], Vec::as_slice)
    }

    pub fn is_listed(&self, e: &Element) -> bool {
        self.listed.contains_key(e)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The least element containing `x`: the intersection of all elements
    /// that contain it.
    pub fn minimal_member(&self, x: &str) -> Option<&Element> {
        self.elements
            .iter()
            .filter(|e| e.contains(x))
            .min_by_key(|e| e.len())
    }
}

pub fn meet_semilattice(s: &SetSystem) -> MeetSemilattice {
    let mut listed: BTreeMap<Element, Vec<String>> = BTreeMap::new();
    for set in s.sets().filter(|set| !set.members.is_empty()) {
        listed.entry(set.members.clone()).or_default().push(set.name.clone());
    }
    let mut elements: BTreeSet<Element> = listed.keys().cloned().collect();
    let mut frontier: Vec<Element> = elements.iter().cloned().collect();
    let generators: Vec<Element> = frontier.clone();
    while let Some(e) = frontier.pop() {
        for g in &generators {
            let m: Element = e.intersection(g).cloned().collect();
            if !m.is_empty() && !elements.contains(&m) {
                elements.insert(m.clone());
                frontier.push(m);
            }
        }
    }
    let top = (!s.ground().is_empty()).then(|| s.ground().clone());
    if let Some(t) = &top {
        elements.insert(t.clone());
    }
    MeetSemilattice {
        elements,
        top,
        listed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankStratification {
    pub layers: Vec<Vec<Element>>,
    pub rank_of: BTreeMap<Element, usize>,
    /// `n + 1` for an `n`-group system.
    pub rank_bound: usize,
    /// Same-layer pairs whose intersection was checked to sit lower.
    pub claim_pairs: usize,
}

/// Repeatedly strips the minimal elements. Checks that two distinct
/// same-layer elements meet strictly lower down, and that at most `n + 1`
/// layers arise.
pub fn rank_strata(l: &MeetSemilattice, n: usize) -> Result<RankStratification> {
    let mut rest: BTreeSet<Element> = l.elements().clone();
    let mut layers: Vec<Vec<Element>> = Vec::new();
    let mut rank_of = BTreeMap::new();
    while !rest.is_empty() {
        let minimal: Vec<Element> = rest
            .iter()
            .filter(|e| !rest.iter().any(|f| f != *e && f.is_subset(e)))
            .cloned()
            .collect();
        for e in &minimal {
            rest.remove(e);
            rank_of.insert(e.clone(), layers.len());
        }
        layers.push(minimal);
    }
    let mut claim_pairs = 0;
    for (r, layer) in layers.iter().enumerate() {
        for (i, m) in layer.iter().enumerate() {
            for k in &layer[i + 1..] {
                let meet: Element = m.intersection(k).cloned().collect();
                if meet.is_empty() {
                    continue;
                }
                claim_pairs += 1;
                match rank_of.get(&meet) {
                    Some(&rm) if rm < r => {}
                    _ => {
                        return Err(Error::InvalidSystem(format!(
                            "same-layer meet {} not strictly lower",
                            element_name(&meet)
                        )))
                    }
                }
            }
        }
    }
    if layers.len() > n + 1 {
        return Err(Error::RankBoundExceeded {
            layers: layers.len(),
            groups: n,
        });
    }
    Ok(RankStratification {
        layers,
        rank_of,
        rank_bound: n + 1,
        claim_pairs,
    })
}

/// Reserved-prefix vertex name of a semilattice element: `@` followed by
/// the JSON array of its sorted members.
pub fn element_name(e: &Element) -> String {
    let v: Vec<&String> = e.iter().collect();
    format!("@{}", serde_json::to_string(&v).expect("strings serialize"))
}

pub fn element_vertex(e: &Element) -> VertexId {
    VertexId::new(element_name(e)).expect("prefix makes it nonempty")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub semilattice: MeetSemilattice,
    pub strata: RankStratification,
    pub complex: SimplicialComplex,
    pub top_included: bool,
    pub assign: BTreeMap<Element, SimplicialComplex>,
    pub point_map: BTreeMap<String, Point>,
    n: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Keep the ground set as a vertex even when every element is covered
    /// by a listed set.
    pub include_top: bool,
}

/// Maximal chains of a finite poset given by strict inclusion, each listed
/// bottom-up.
fn maximal_chains(elements: &[Element]) -> Vec<Vec<usize>> {
    let below = |i: usize, j: usize| elements[i].len() < elements[j].len() && elements[i].is_subset(&elements[j]);
    let covers = |i: usize, j: usize| below(i, j) && !(0..elements.len()).any(|m| below(i, m) && below(m, j));
    let minimal: Vec<usize> = (0..elements.len())
        .filter(|&j| !(0..elements.len()).any(|i| below(i, j)))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty");
        let ups: Vec<usize> = (0..elements.len()).filter(|&j| covers(last, j)).collect();
        if ups.is_empty() {
            out.push(chain);
            continue;
        }
        for j in ups {
            let mut next = chain.clone();
            next.push(j);
            stack.push(next);
        }
    }
    out
}

pub fn realize(s: &SetSystem) -> Result<Realization> {
    realize_with(s, RealizeOptions::default())
}

pub fn realize_with(s: &SetSystem, opts: RealizeOptions) -> Result<Realization> {
    let semilattice = meet_semilattice(s);
    let strata = rank_strata(&semilattice, s.n())?;
    let uncovered = s.ground().iter().any(|x| !s.sets().any(|set| set.members.contains(x)));
    let top_included = match semilattice.top() {
        None => false,
        Some(t) => semilattice.is_listed(t) || uncovered || opts.include_top,
    };
    let vertices: Vec<Element> = semilattice
        .elements()
        .iter()
        .filter(|e| top_included || Some(*e) != semilattice.top())
        .cloned()
        .collect();
    let maximal = maximal_chains(&vertices).into_iter().map(|c| {
        Simplex::new(c.into_iter().map(|i| element_vertex(&vertices[i]))).expect("chains are nonempty")
    });
    let complex = SimplicialComplex::from_maximal(maximal);
    let mut assign = BTreeMap::new();
    for g in semilattice.elements() {
        let down: BTreeSet<VertexId> = vertices
            .iter()
            .filter(|m| m.is_subset(g))
            .map(element_vertex)
            .collect();
        assign.insert(g.clone(), complex.full_subcomplex(&down));
    }
    let mut point_map = BTreeMap::new();
    for x in s.ground() {
        let m = semilattice.minimal_member(x).expect("the ground contains x");
        point_map.insert(x.clone(), Point::vertex(element_vertex(m)));
    }
    let r = Realization {
        semilattice,
        strata,
        complex,
        top_included,
        assign,
        point_map,
        n: s.n(),
    };
    r.check()?;
    Ok(r)
}

impl Realization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assigned(&self, g: &Element) -> Option<&SimplicialComplex> {
        self.assign.get(g)
    }

    /// Re-verifies the three contracts: pairwise intersection preservation,
    /// the dimension bound, and `point_map(x) ∈ K_G ⟺ x ∈ G`.
    pub fn check(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidSystem(m));
        let elems: Vec<&Element> = self.semilattice.elements().iter().collect();
        for (i, g) in elems.iter().enumerate() {
            for h in &elems[i + 1..] {
                let meet: Element = g.intersection(h).cloned().collect();
                if meet.is_empty() {
                    continue;
                }
                let lhs = &self.assign[&meet];
                let rhs = self.assign[*g].intersection(&self.assign[*h]);
                if *lhs != rhs {
                    return fail(format!(
                        "assignment does not preserve {} ∩ {}",
                        element_name(g),
                        element_name(h)
                    ));
                }
            }
        }
        if let Ok(d) = self.complex.dimension() {
            if d > self.n {
                return fail(format!("dimension {d} exceeds {}", self.n));
            }
        }
        for (x, p) in &self.point_map {
            for g in &elems {
                let inside = self.assign[*g].contains(&p.support());
                if inside != g.contains(x) {
                    return fail(format!("point of {x} misplaced for {}", element_name(g)));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn el(xs: &[&str]) -> Element {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn ns(name: &str, xs: &[&str]) -> NamedSet {
        NamedSet::new(name, xs.iter().map(|s| s.to_string()))
    }

    fn system(ground: &[&str], groups: Vec<Vec<NamedSet>>) -> SetSystem {
        SetSystem::new(el(ground), groups).unwrap()
    }

    #[test]
    fn rejects_overlap_within_group() {
        let r = SetSystem::new(el(&["1", "2"]), vec![vec![ns("A", &["1"]), ns("B", &["1", "2"])]]);
        assert!(matches!(r, Err(Error::InvalidSystem(_))));
        let r = SetSystem::new(el(&["1"]), vec![vec![ns("A", &["9"])]]);
        assert_eq!(r, Err(Error::NotInGround("9".into())));
    }

    #[test]
    fn two_overlapping_sets() {
        let s = system(&["1", "2", "3"], vec![vec![ns("A", &["1", "2"])], vec![ns("B", &["2", "3"])]]);
        let l = meet_semilattice(&s);
        let want: BTreeSet<Element> = [el(&["1", "2"]), el(&["2", "3"]), el(&["2"]), el(&["1", "2", "3"])].into();
        assert_eq!(*l.elements(), want);
        assert_eq!(l.minimal_member("2"), Some(&el(&["2"])));
        assert_eq!(l.minimal_member("1"), Some(&el(&["1", "2"])));
        let st = rank_strata(&l, 2).unwrap();
        assert_eq!(st.layers[0], vec![el(&["2"])]);
        assert_eq!(st.layers[1], vec![el(&["1", "2"]), el(&["2", "3"])]);
        assert_eq!(st.layers[2], vec![el(&["1", "2", "3"])]);
        assert_eq!(st.claim_pairs, 1);

        let r = realize(&s).unwrap();
        assert!(!r.top_included);
        assert_eq!(r.complex.dimension().unwrap(), 1);
        assert_eq!(r.complex.maximal_simplexes().len(), 2);
        let ka = &r.assign[&el(&["1", "2"])];
        let kb = &r.assign[&el(&["2", "3"])];
        let k2 = &r.assign[&el(&["2"])];
        assert_eq!(ka.intersection(kb), *k2);
        assert_eq!(k2.len(), 1);
    }

    #[test]
    fn single_set() {
        let s = system(&["1"], vec![vec![ns("A", &["1"])]]);
        let r = realize(&s).unwrap();
        assert_eq!(r.semilattice.len(), 1);
        assert_eq!(r.complex.len(), 1);
        assert!(r.top_included);
    }

    #[test]
    fn uncovered_element_keeps_top() {
        let s = system(&["1", "2"], vec![vec![ns("A", &["1"])]]);
        let r = realize(&s).unwrap();
        assert!(r.top_included);
        assert_eq!(r.point_map["2"], Point::vertex(element_vertex(&el(&["1", "2"]))));
        let forced = realize_with(
            &system(&["1"], vec![vec![ns("A", &["1"])]]),
            RealizeOptions { include_top: true },
        )
        .unwrap();
        assert!(forced.top_included);
    }

    #[test]
    fn disjoint_sets_skip_empty_meet() {
        let s = system(&["1", "2"], vec![vec![ns("A", &["1"]), ns("B", &["2"])]]);
        assert_eq!(meet_semilattice(&s).len(), 3);
    }

    #[test]
    fn serde_round_trip() {
        let s = system(&["1", "2"], vec![vec![ns("A", &["1"])], vec![ns("B", &["1", "2"])]]);
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.starts_with(r#"{"ground":["1","2"],"families":"#));
        let back: SetSystem = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"ground":["1"],"families":[[{"name":"A","members":["1"]},{"name":"B","members":["1"]}]]}"#;
        assert!(serde_json::from_str::<SetSystem>(bad).is_err());
    }
}
