//! Order-convex families over a linearly ordered ground, and cylinder
//! families over finite products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{is_clique, maximal_cliques, verify_binary, BinarityReport, CliqueCheck, NamedSet};

/// Elements listed in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub struct OrderedGround {
    order: Vec<String>,
    position: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawOrder {
    order: Vec<String>,
}

impl TryFrom<RawOrder> for OrderedGround {
    type Error = Error;

    fn try_from(raw: RawOrder) -> Result<Self> {
        OrderedGround::new(raw.order)
    }
}

impl From<OrderedGround> for RawOrder {
    fn from(g: OrderedGround) -> Self {
        RawOrder { order: g.order }
    }
}

impl OrderedGround {
    pub fn new(order: Vec<String>) -> Result<Self> {
        let mut position = BTreeMap::new();
        for (i, x) in order.iter().enumerate() {
            if position.insert(x.clone(), i).is_some() {
                return Err(Error::InvalidOrder(format!("duplicate element {x}")));
            }
        }
        Ok(Self { order, position })
    }

    pub fn range(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()).collect()).expect("distinct")
    }

    pub fn elements(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, x: &str) -> Option<usize> {
        self.position.get(x).copied()
    }
}

/// A nonempty order-convex subset, stored as its position interval.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexSet {
    pub lo: usize,
    pub hi: usize,
}

impl ConvexSet {
    pub fn from_members<S: AsRef<str>>(ground: &OrderedGround, members: &[S]) -> Result<Self> {
        let mut pos = BTreeSet::new();
        for m in members {
            let p = ground
                .position(m.as_ref())
                .ok_or_else(|| Error::NotInGround(m.as_ref().to_string()))?;
            pos.insert(p);
        }
        let (Some(&lo), Some(&hi)) = (pos.first(), pos.last()) else {
            return Err(Error::NotConvex("{}".into()));
        };
        if pos.len() != hi - lo + 1 {
            let names: Vec<&str> = members.iter().map(AsRef::as_ref).collect();
            return Err(Error::NotConvex(format!("{{{}}}", names.join(","))));
        }
        Ok(Self { lo, hi })
    }

    pub fn interval(lo: usize, hi: usize) -> Self {
        assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn meet(&self, other: &ConvexSet) -> Option<ConvexSet> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(ConvexSet { lo, hi })
    }

    pub fn members(&self, ground: &OrderedGround) -> Vec<String> {
        ground.order[self.lo..=self.hi].to_vec()
    }
}

impl fmt::Display for ConvexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Positions `(a, b)` with `[a, b]` inside every member. Built from the
/// points `x_AB = min(A ∩ B)` over all ordered pairs, the pair `A = B`
/// included.
pub fn go_witness(sets: &[ConvexSet]) -> Result<(usize, usize)> {
    if sets.is_empty() {
        return Err(Error::InvalidOrder("empty family".into()));
    }
    let mut a = usize::MIN;
    let mut b = usize::MAX;
    for l in sets {
        let mut al = usize::MAX;
        let mut bl = usize::MIN;
        for m in sets {
            let x = l
                .meet(m)
                .ok_or_else(|| Error::NotLinked(l.to_string(), m.to_string()))?
                .lo;
            al = al.min(x);
            bl = bl.max(x);
        }
        a = a.max(al);
        b = b.min(bl);
    }
    debug_assert!(a <= b);
    Ok((a, b))
}

/// Every nonempty order interval, named `[lo,hi]` by element.
pub fn convex_sets(ground: &OrderedGround) -> Vec<ConvexSet> {
    let n = ground.len();
    (0..n)
        .flat_map(|lo| (lo..n).map(move |hi| ConvexSet { lo, hi }))
        .collect()
}

pub fn convex_name(ground: &OrderedGround, c: &ConvexSet) -> String {
    format!("[{},{}]", ground.order[c.lo], ground.order[c.hi])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoFamily {
    pub sets: Vec<ConvexSet>,
    pub family: Vec<NamedSet>,
    pub report: BinarityReport<String>,
    /// The constructive witness interval of each maximal clique, as
    /// elements, aligned with `report.cliques`.
    pub witnesses: Vec<(String, String)>,
}

pub const GO_FAMILY_BOUND: usize = 64;

pub fn go_binary_family(ground: &OrderedGround, bound: usize) -> Result<GoFamily> {
    if ground.len() > bound {
        return Err(Error::BoundExceeded {
            size: ground.len(),
            bound,
        });
    }
    let sets = convex_sets(ground);
    let family: Vec<NamedSet> = sets
        .iter()
        .map(|c| NamedSet::new(convex_name(ground, c), c.members(ground)))
        .collect();
    let report = verify_binary(&family);
    let by_name: BTreeMap<&str, &ConvexSet> =
        family.iter().map(|f| f.name.as_str()).zip(&sets).collect();
    let mut witnesses = Vec::new();
    for c in &report.cliques {
        let members: Vec<ConvexSet> = c.names.iter().map(|n| by_name[n.as_str()].clone()).collect();
        let (a, b) = go_witness(&members)?;
        witnesses.push((ground.order[a].clone(), ground.order[b].clone()));
    }
    Ok(GoFamily {
        sets,
        family,
        report,
        witnesses,
    })
}

/// One factor of a product: a ground and a family over it containing the
/// whole ground.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub ground: Vec<String>,
    pub family: Vec<NamedSet>,
}

pub type Row = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderSpec {
    pub factors: Vec<Factor>,
    /// Rows of the dense subset; `None` means the full product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_set: Option<Vec<Row>>,
    /// Largest coordinate-set size of the cylinders and of the density
    /// check; defaults to the number of factors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

/// A cylinder: chosen factor-family members on finitely many coordinates,
/// the whole factor elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cylinder {
    /// `(coordinate, index into that factor's family)`, increasing.
    pub pattern: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFamily {
    pub rows: Vec<Row>,
    pub depth: usize,
    pub cylinders: Vec<Cylinder>,
    /// Each cylinder restricted to the dense rows.
    pub family: Vec<NamedSet<Row>>,
    pub report: BinarityReport<Row>,
    /// Per maximal clique: the row reached through per-coordinate factor
    /// witnesses and density, when one exists.
    pub witnesses: Vec<Option<Row>>,
}

fn full_product(factors: &[Factor]) -> Vec<Row> {
    let mut rows: Vec<Row> = vec![Vec::new()];
    for f in factors {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                f.ground.iter().map(move |x| {
                    let mut next = r.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect();
    }
    rows
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l| l + 1);
            for i in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn pattern_string(coords: &[usize], values: &[&String]) -> String {
    let parts: Vec<String> = coords
        .iter()
        .zip(values)
        .map(|(c, v)| format!("x{c}={v}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn validate_factors(spec: &CylinderSpec) -> Result<()> {
    if spec.factors.is_empty() {
        return Err(Error::InvalidCylinder("no factors".into()));
    }
    for (i, f) in spec.factors.iter().enumerate() {
        let ground: BTreeSet<&String> = f.ground.iter().collect();
        if ground.len() != f.ground.len() || ground.is_empty() {
            return Err(Error::InvalidCylinder(format!("factor {i} ground is empty or repeats")));
        }
        let mut names = BTreeSet::new();
        for s in &f.family {
            if !names.insert(&s.name) {
                return Err(Error::InvalidCylinder(format!("factor {i} repeats name {}", s.name)));
            }
            if let Some(x) = s.members.iter().find(|x| !ground.contains(x)) {
                return Err(Error::NotInGround(x.clone()));
            }
        }
        if !f.family.iter().any(|s| s.members.len() == ground.len()) {
            return Err(Error::FactorMissingWhole(i));
        }
        let rep = verify_binary(&f.family);
        if let Some(v) = rep.violations.first() {
            return Err(Error::FactorNotBinary {
                factor: i,
                clique: v.clone(),
            });
        }
    }
    Ok(())
}

/// Checks that every pattern on at most `depth` coordinates is met by a
/// dense row; reports the first hole in canonical order.
pub fn check_density(factors: &[Factor], rows: &[Row], depth: usize) -> Result<()> {
    let present: BTreeSet<&Row> = rows.iter().collect();
    for r in rows {
        if r.len() != factors.len()
            || r.iter().zip(factors).any(|(x, f)| !f.ground.contains(x))
        {
            return Err(Error::InvalidCylinder(format!("row {r:?} is not in the product")));
        }
    }
    for coords in subsets_up_to(factors.len(), depth) {
        let sub: Vec<Factor> = coords.iter().map(|&c| factors[c].clone()).collect();
        for values in full_product(&sub) {
            let hit = present
                .iter()
                .any(|r| coords.iter().zip(&values).all(|(&c, v)| &r[c] == v));
            if !hit {
                let vs: Vec<&String> = values.iter().collect();
                return Err(Error::DensityHole(pattern_string(&coords, &vs)));
            }
        }
    }
    Ok(())
}

fn cylinder_name(spec: &CylinderSpec, c: &Cylinder) -> String {
    if c.pattern.is_empty() {
        return "*".into();
    }
    let parts: Vec<String> = c
        .pattern
        .iter()
        .map(|&(coord, m)| format!("x{coord}:{}", spec.factors[coord].family[m].name))
        .collect();
    parts.join("&")
}

/// The cylinder family over the dense rows, with its binarity report and
/// constructive witnesses.
pub fn product_knetwork(spec: &CylinderSpec) -> Result<ProductFamily> {
    validate_factors(spec)?;
    let k = spec.factors.len();
    let depth = spec.depth.unwrap_or(k).min(k);
    let rows = match &spec.dense_set {
        Some(r) => {
            let mut r = r.clone();
            r.sort();
            r.dedup();
            r
        }
        None => full_product(&spec.factors),
    };
    check_density(&spec.factors, &rows, depth)?;
    // proper members only; the whole factor is the absence of a constraint
    let proper: Vec<Vec<usize>> = spec
        .factors
        .iter()
        .map(|f| {
            (0..f.family.len())
                .filter(|&m| f.family[m].members.len() < f.ground.len())
                .collect()
        })
        .collect();
    let mut cylinders = Vec::new();
    for coords in subsets_up_to(k, depth) {
        let mut patterns: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for &c in &coords {
            patterns = patterns
                .into_iter()
                .flat_map(|p| {
                    proper[c].iter().map(move |&m| {
                        let mut q = p.clone();
                        q.push((c, m));
                        q
                    })
                })
                .collect();
        }
        cylinders.extend(patterns.into_iter().map(|pattern| Cylinder { pattern }));
    }
    cylinders.sort();
    let family: Vec<NamedSet<Row>> = cylinders
        .iter()
        .map(|c| NamedSet {
            name: cylinder_name(spec, c),
            members: rows
                .iter()
                .filter(|r| {
                    c.pattern
                        .iter()
                        .all(|&(coord, m)| spec.factors[coord].family[m].members.contains(&r[coord]))
                })
                .cloned()
                .collect(),
        })
        .collect();
    // clique work on row indices; rows are sorted, so the least index is
    // the least row
    let indexed: Vec<NamedSet<usize>> = family
        .iter()
        .map(|f| NamedSet {
            name: f.name.clone(),
            members: rows
                .iter()
                .enumerate()
                .filter(|(_, r)| f.members.contains(*r))
                .map(|(i, _)| i)
                .collect(),
        })
        .collect();
    let by_index = verify_binary(&indexed);
    let report = BinarityReport {
        checked_subfamilies: by_index.checked_subfamilies,
        cliques: by_index
            .cliques
            .into_iter()
            .map(|c| CliqueCheck {
                names: c.names,
                witness: c.witness.map(|i| rows[i].clone()),
            })
            .collect(),
        violations: by_index.violations,
    };
    let cliques = maximal_cliques(&indexed);
    let witnesses = cliques
        .iter()
        .map(|cl| constructive_witness(spec, &cylinders, cl, &rows))
        .collect();
    Ok(ProductFamily {
        rows,
        depth,
        cylinders,
        family,
        report,
        witnesses,
    })
}

/// For a linked set of cylinders: on each constrained coordinate the
/// factor members pairwise meet, so a common factor point exists by factor
/// binarity; a dense row through those points lies in every cylinder.
fn constructive_witness(
    spec: &CylinderSpec,
    cylinders: &[Cylinder],
    clique: &[usize],
    rows: &[Row],
) -> Option<Row> {
    let mut per_coord: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &i in clique {
        for &(c, m) in &cylinders[i].pattern {
            per_coord.entry(c).or_default().insert(m);
        }
    }
    let mut point: BTreeMap<usize, &String> = BTreeMap::new();
    for (c, ms) in &per_coord {
        let fam = &spec.factors[*c].family;
        let idx: Vec<usize> = ms.iter().copied().collect();
        debug_assert!(is_clique(fam, &idx));
        let x = spec.factors[*c]
            .ground
            .iter()
            .find(|x| ms.iter().all(|&m| fam[m].members.contains(*x)))?;
        point.insert(*c, x);
    }
    rows.iter()
        .find(|r| point.iter().all(|(&c, x)| &r[c] == *x))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> ConvexSet {
        ConvexSet::interval(lo, hi)
    }

    #[test]
    fn witness_examples() {
        // [1,5], [3,8], [4,6] over 1..10, as zero-based positions
        assert_eq!(go_witness(&[iv(0, 4), iv(2, 7), iv(3, 5)]).unwrap(), (3, 3));
        assert_eq!(go_witness(&[iv(2, 6)]).unwrap(), (2, 2));
        assert!(matches!(go_witness(&[iv(0, 1), iv(3, 4)]), Err(Error::NotLinked(_, _))));
    }

    #[test]
    fn convexity_is_checked() {
        let g = OrderedGround::range(4);
        assert_eq!(ConvexSet::from_members(&g, &["2", "3"]).unwrap(), iv(1, 2));
        assert!(matches!(ConvexSet::from_members(&g, &["1", "3"]), Err(Error::NotConvex(_))));
        assert!(OrderedGround::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn small_go_families() {
        let f = go_binary_family(&OrderedGround::range(3), GO_FAMILY_BOUND).unwrap();
        assert_eq!(f.family.len(), 6);
        assert!(f.report.is_binary());
        assert_eq!(go_binary_family(&OrderedGround::range(1), 4).unwrap().family.len(), 1);
        assert_eq!(
            go_binary_family(&OrderedGround::range(5), 4),
            Err(Error::BoundExceeded { size: 5, bound: 4 })
        );
    }

    fn interval_factor(n: usize) -> Factor {
        let g = OrderedGround::range(n);
        Factor {
            ground: g.elements().to_vec(),
            family: convex_sets(&g)
                .iter()
                .map(|c| NamedSet::new(convex_name(&g, c), c.members(&g)))
                .collect(),
        }
    }

    #[test]
    fn two_by_two_product() {
        let spec = CylinderSpec {
            factors: vec![interval_factor(2), interval_factor(2)],
            dense_set: None,
            depth: None,
        };
        let p = product_knetwork(&spec).unwrap();
        // (1 + 2 proper members)^2 cylinders
        assert_eq!(p.family.len(), 9);
        assert!(p.report.is_binary());
        assert!(p.witnesses.iter().all(Option::is_some));
    }

    #[test]
    fn one_factor_is_the_factor_family() {
        let f = interval_factor(3);
        let spec = CylinderSpec {
            factors: vec![f.clone()],
            dense_set: None,
            depth: None,
        };
        let p = product_knetwork(&spec).unwrap();
        let got: BTreeSet<BTreeSet<String>> = p
            .family
            .iter()
            .map(|s| s.members.iter().map(|r| r[0].clone()).collect())
            .collect();
        let want: BTreeSet<BTreeSet<String>> = f.family.iter().map(|s| s.members.clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn density_hole_is_named() {
        let mut rows = full_product(&[interval_factor(2).clone(), interval_factor(2)]);
        rows.retain(|r| !(r[0] == "2" && r[1] == "2"));
        let spec = CylinderSpec {
            factors: vec![interval_factor(2), interval_factor(2)],
            dense_set: Some(rows),
            depth: None,
        };
        assert_eq!(
            product_knetwork(&spec),
            Err(Error::DensityHole("{x0=2, x1=2}".into()))
        );
    }

    #[test]
    fn non_binary_factor_is_rejected() {
        let mut f = interval_factor(3);
        f.family = vec![
            NamedSet::new("A", ["1".to_string(), "2".into()]),
            NamedSet::new("B", ["2".to_string(), "3".into()]),
            NamedSet::new("C", ["1".to_string(), "3".into()]),
            NamedSet::new("X", ["1".to_string(), "2".into(), "3".into()]),
        ];
        let spec = CylinderSpec {
            factors: vec![interval_factor(2), f],
            dense_set: None,
            depth: None,
        };
        assert_eq!(
            product_knetwork(&spec),
            Err(Error::FactorNotBinary {
                factor: 1,
                clique: vec!["A".into(), "B".into(), "C".into()]
            })
        );
    }
}
