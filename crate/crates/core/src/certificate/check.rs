//! Certificate verification.
//!
//! Every payload field is either re-derived from the inputs by a check
//! written here or compared against a documented deterministic rule, so a
//! change to any single field is caught. Star distances are re-solved in
//! the sorted-coordinate description of a star (descending coordinates
//! along an ordering whose prefixes are simplexes, maximal weighted gap at
//! `|τ|`), independent of the barycentric-weight LPs used to build
//! certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::de::DeserializeOwned;
use serde_json::Value;

use super::*;
use crate::classes::{convex_name, convex_sets};
use crate::complex::VertexId;
use crate::family::{intersection_of, is_clique, maximal_cliques, shrink_violation};
use crate::io::{complex_from_json, parse_rational, point_from_json, simplex_from_json};
use crate::lp::LinearProgram;
use crate::rational::Q;
use crate::star::st2_membership;
use crate::sweep::choose_puncture;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse<T: DeserializeOwned>(v: &Value, what: &str) -> std::result::Result<T, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("{what}: {e}"))
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Accepts a certificate iff its digest matches its inputs and every claim
/// of its payload re-checks.
pub fn verify(c: &Certificate) -> Result<()> {
    if digest(&c.inputs) != c.inputs_digest {
        return Err(Error::DigestMismatch);
    }
    let r = match c.kind {
        Kind::Discreteness => check_discreteness(c),
        Kind::Witness => check_witness(c),
        Kind::Binarity => check_binarity(c),
        Kind::Refinement => check_refinement(c),
        Kind::SweepTrace => check_sweep(c),
        Kind::Realization => check_realization(c),
    };
    r.map_err(Error::CertificateRejected)
}

// ---- discreteness ----

/// Maximal vertex orderings whose prefixes are simplexes of `k` and whose
/// first `|τ|` entries are `τ`.
fn sorted_pieces(tau: &Simplex, k: &SimplicialComplex) -> Vec<Vec<VertexId>> {
    fn extend(order: Vec<VertexId>, k: &SimplicialComplex, out: &mut Vec<Vec<VertexId>>) {
        let top = Simplex::new(order.iter().cloned()).expect("nonempty");
        let mut grown = false;
        for v in k.vertices() {
            if top.contains(v) || !k.contains(&top.union(&Simplex::vertex(v.clone()))) {
                continue;
            }
            grown = true;
            let mut next = order.clone();
            next.push(v.clone());
            extend(next, k, out);
        }
        if !grown {
            out.push(order);
        }
    }
    fn perms(items: &[VertexId]) -> Vec<Vec<VertexId>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, head.clone());
                out.push(p);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(tau.vertices()) {
        extend(p, k, &mut out);
    }
    out
}

struct Rows {
    rows: Vec<(Vec<(usize, Q)>, Q)>,
    vars: usize,
}

impl Rows {
    fn var(&mut self) -> usize {
        self.vars += 1;
        self.vars - 1
    }

    /// `s_1 ≥ … ≥ s_n ≥ 0`, `Σ s = 1`, and `t(s_t − s_{t+1}) ≥ k(s_k − s_{k+1})`.
    fn piece(&mut self, n: usize, t: usize) -> Vec<usize> {
        let s: Vec<usize> = (0..n).map(|_| self.var()).collect();
        self.rows.push((s.iter().map(|&i| (i, Q::one())).collect(), Q::one()));
        for i in 0..n.saturating_sub(1) {
            let w = self.var();
            self.rows
                .push((vec![(s[i], Q::one()), (s[i + 1], -Q::one()), (w, -Q::one())], Q::zero()));
        }
        let gap = |k: usize, scale: Q| -> Vec<(usize, Q)> {
            let mut g = vec![(s[k - 1], scale.clone())];
            if k < n {
                g.push((s[k], -scale));
            }
            g
        };
        for k in 1..=n {
            if k == t {
                continue;
            }
            let w = self.var();
            let mut row = gap(t, Q::from_integer(t.into()));
            row.extend(gap(k, -Q::from_integer(k.into())));
            row.push((w, -Q::one()));
            self.rows.push((row, Q::zero()));
        }
        s
    }
}

fn piece_pair_distance(a: &[VertexId], ta: usize, b: &[VertexId], tb: usize) -> Q {
    let mut r = Rows {
        rows: Vec::new(),
        vars: 0,
    };
    let sa = r.piece(a.len(), ta);
    let sb = r.piece(b.len(), tb);
    let verts: BTreeSet<&VertexId> = a.iter().chain(b).collect();
    let mut cost = Vec::new();
    for v in verts {
        let p = r.var();
        let q = r.var();
        cost.push(p);
        cost.push(q);
        let mut row = vec![(p, -Q::one()), (q, Q::one())];
        if let Some(i) = a.iter().position(|u| u == v) {
            row.push((sa[i], Q::one()));
        }
        if let Some(i) = b.iter().position(|u| u == v) {
            row.push((sb[i], -Q::one()));
        }
        r.rows.push((row, Q::zero()));
    }
    let mut lp = LinearProgram::new(r.vars);
    for (row, rhs) in r.rows {
        lp.add_eq(row, rhs);
    }
    for c in cost {
        lp.objective[c] = Q::one();
    }
    lp.minimize().expect("both pieces are nonempty polytopes").value
}

fn star_distance_sorted(a: &Simplex, b: &Simplex, k: &SimplicialComplex) -> Option<Q> {
    let pa = sorted_pieces(a, k);
    let pb = sorted_pieces(b, k);
    let mut best: Option<Q> = None;
    for x in &pa {
        for y in &pb {
            let d = piece_pair_distance(x, a.len(), y, b.len());
            if best.as_ref().is_none_or(|m| d < *m) {
                best = Some(d);
            }
        }
    }
    best
}

fn check_discreteness(c: &Certificate) -> Check {
    let inputs: ComplexInput = parse(&c.inputs, "inputs")?;
    let p: DiscretenessPayload = parse(&c.payload, "payload")?;
    let k = lift(complex_from_json(&inputs.complex))?;
    let dim = lift(k.dimension())?;
    ensure(p.n == dim + 1, || format!("n = {} but 1 + dim = {}", p.n, dim + 1))?;
    let bound = Q::new(1.into(), (p.n * p.n).into());
    ensure(lift(parse_rational(&p.bound))? == bound, || "bound is not 1/n²".into())?;
    let mut by_size: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for s in k.simplexes() {
        by_size.entry(s.len()).or_default().push(s.clone());
    }
    ensure(p.groups.len() == by_size.len(), || "group count differs".into())?;
    let mut holds = true;
    for (g, (card, members)) in p.groups.iter().zip(&by_size) {
        ensure(g.cardinality == *card, || format!("group cardinality {}", g.cardinality))?;
        let listed: Vec<Simplex> = g
            .members
            .iter()
            .map(|m| lift(simplex_from_json(m)))
            .collect::<std::result::Result<_, _>>()?;
        ensure(listed == *members, || format!("group {card} members differ"))?;
        if members.len() < 2 {
            ensure(g.min_distance.is_none() && g.closest.is_none(), || {
                format!("group {card} has no pairs")
            })?;
            continue;
        }
        let mut min: Option<Q> = None;
        let mut dist: BTreeMap<(Simplex, Simplex), Q> = BTreeMap::new();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let d = star_distance_sorted(a, b, &k).ok_or("star without pieces")?;
                if min.as_ref().is_none_or(|m| d < *m) {
                    min = Some(d.clone());
                }
                dist.insert((a.clone(), b.clone()), d);
            }
        }
        let min = min.expect("at least one pair");
        let claimed = lift(parse_rational(g.min_distance.as_deref().ok_or("missing distance")?))?;
        ensure(claimed == min, || format!("group {card}: distance {claimed} but LP gives {min}"))?;
        let cl = g.closest.as_ref().ok_or("missing closest pair")?;
        let a = lift(simplex_from_json(&cl.a))?;
        let b = lift(simplex_from_json(&cl.b))?;
        ensure(dist.get(&(a.clone(), b.clone())) == Some(&min), || {
            format!("closest pair {a}, {b} does not attain the minimum")
        })?;
        let x = lift(point_from_json(&cl.x))?;
        let y = lift(point_from_json(&cl.y))?;
        ensure(lift(st2_membership(&x, &a, &k))?, || format!("x not in the star of {a}"))?;
        ensure(lift(st2_membership(&y, &b, &k))?, || format!("y not in the star of {b}"))?;
        ensure(x.l1_distance(&y) == min, || "closest points are not at the minimum".into())?;
        holds &= min >= bound;
    }
    ensure(p.holds == holds, || format!("holds = {} but recomputed {holds}", p.holds))
}

// ---- witness ----

fn check_witness(c: &Certificate) -> Check {
    match parse::<WitnessInput>(&c.inputs, "inputs")? {
        WitnessInput::Star { complex, members } => {
            let p: StarWitnessPayload = parse(&c.payload, "payload")?;
            let k = lift(complex_from_json(&complex))?;
            let mut bases = BTreeSet::new();
            let mut subs = Vec::new();
            for m in &members {
                match m {
                    MemberJson::Star(t) => {
                        let t = lift(simplex_from_json(t))?;
                        lift(k.require(&t))?;
                        bases.insert(t);
                    }
                    MemberJson::Subcomplex(f) => {
                        let f = lift(complex_from_json(f))?;
                        lift(f.require_subcomplex_of(&k))?;
                        subs.push(f);
                    }
                }
            }
            let chain = p
                .chain
                .iter()
                .map(|s| lift(simplex_from_json(s)))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let chain = lift(crate::star::Chain::new(chain))?;
            let in_chain: BTreeSet<Simplex> = chain.members().iter().cloned().collect();
            ensure(in_chain == bases, || "chain members are not the star bases".into())?;
            let point = lift(point_from_json(&p.point))?;
            let n = Q::from_integer(chain.len().into());
            let mut expected: BTreeMap<VertexId, Q> = BTreeMap::new();
            for s in chain.members() {
                let w = Q::one() / (&n * Q::from_integer(s.len().into()));
                for v in s.vertices() {
                    *expected.entry(v.clone()).or_insert_with(Q::zero) += &w;
                }
            }
            ensure(*point.coords() == expected, || "point is not the chain average of barycenters".into())?;
            for t in &bases {
                ensure(lift(st2_membership(&point, t, &k))?, || format!("point not in the star of {t}"))?;
            }
            for f in &subs {
                ensure(f.contains(&point.support()), || "point not in a subcomplex member".into())?;
            }
            Ok(())
        }
        WitnessInput::Order { order, sets } => {
            let p: OrderWitnessPayload = parse(&c.payload, "payload")?;
            let g = lift(OrderedGround::new(order))?;
            let convex = sets
                .iter()
                .map(|s| lift(ConvexSet::from_members(&g, s)))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            ensure(!convex.is_empty(), || "empty family".into())?;
            let a = g.position(&p.a).ok_or("a not in the ground")?;
            let b = g.position(&p.b).ok_or("b not in the ground")?;
            ensure(a <= b, || "a > b".into())?;
            for s in &convex {
                ensure(s.contains(a) && s.contains(b), || format!("[a,b] not inside {s}"))?;
            }
            // the deterministic rule: x_AB = min(A ∩ B) over all ordered pairs
            let x = |l: &ConvexSet, m: &ConvexSet| l.lo.max(m.lo);
            let want_a = convex.iter().map(|l| convex.iter().map(|m| x(l, m)).min().expect("nonempty")).max();
            let want_b = convex.iter().map(|l| convex.iter().map(|m| x(l, m)).max().expect("nonempty")).min();
            ensure(Some(a) == want_a && Some(b) == want_b, || "witness differs from the min-rule".into())
        }
    }
}

// ---- binarity ----

fn check_clique_report<T: Ord + Clone + std::fmt::Debug>(
    family: &[NamedSet<T>],
    binary: bool,
    r: &BinarityReport<T>,
) -> Check {
    let names: BTreeSet<&String> = family.iter().map(|s| &s.name).collect();
    ensure(names.len() == family.len(), || "family repeats a name".into())?;
    let index: BTreeMap<&str, usize> = family.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect();
    let resolve = |ns: &[String]| -> std::result::Result<Vec<usize>, String> {
        let mut idx = ns
            .iter()
            .map(|n| index.get(n.as_str()).copied().ok_or_else(|| format!("unknown member {n}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        Ok(idx)
    };
    let cliques = maximal_cliques(family);
    ensure(r.checked_subfamilies == cliques.len(), || "clique count differs".into())?;
    ensure(r.cliques.len() == cliques.len(), || "clique list length differs".into())?;
    let mut empties = Vec::new();
    for (claimed, actual) in r.cliques.iter().zip(&cliques) {
        let mut sorted = claimed.names.clone();
        sorted.sort();
        ensure(sorted == claimed.names, || "clique names unsorted".into())?;
        ensure(resolve(&claimed.names)? == *actual, || format!("{:?} is not the next maximal clique", claimed.names))?;
        let common = intersection_of(family, actual).expect("nonempty");
        ensure(claimed.witness.as_ref() == common.iter().next(), || {
            format!("witness of {:?} is not the least common element", claimed.names)
        })?;
        if common.is_empty() {
            empties.push(actual.clone());
        }
    }
    let mut want: BTreeSet<Vec<String>> = BTreeSet::new();
    for e in &empties {
        let mut ns: Vec<String> = shrink_violation(family, e).iter().map(|&i| family[i].name.clone()).collect();
        ns.sort();
        want.insert(ns);
    }
    for v in &r.violations {
        let idx = resolve(v)?;
        ensure(is_clique(family, &idx), || format!("violation {v:?} is not linked"))?;
        ensure(intersection_of(family, &idx).is_some_and(|s| s.is_empty()), || {
            format!("violation {v:?} has a common element")
        })?;
    }
    ensure(r.violations == want.into_iter().collect::<Vec<_>>(), || "violation list differs".into())?;
    ensure(binary == r.violations.is_empty(), || "binary flag contradicts violations".into())
}

fn element_of(system: &SetSystem, s: &NamedSet, earlier: &[NamedSet], x: &String) -> BTreeSet<String> {
    let _ = system;
    let mut m = s.members.clone();
    for e in earlier.iter().filter(|e| e.members.contains(x)) {
        m.retain(|y| e.members.contains(y));
    }
    m
}

/// Blocks of `s` against `earlier`: fibers of the least intersection
/// containing each element, ordered by that intersection's vertex name.
fn expected_blocks(system: &SetSystem, earlier: &[NamedSet], s: &NamedSet) -> Vec<NamedSet> {
    let mut fibers: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for x in &s.members {
        let m = element_of(system, s, earlier, x);
        fibers.entry(element_name(&m)).or_default().insert(x.clone());
    }
    fibers
        .into_values()
        .enumerate()
        .map(|(i, members)| NamedSet {
            name: format!("{}#{i}", s.name),
            members,
        })
        .collect()
}

fn check_system(system: &SetSystem, p: &SystemPayload) -> Check {
    let r = &p.report;
    ensure(r.groups.len() == system.n(), || "level count differs".into())?;
    let family: Vec<NamedSet> = r.family();
    lift(SetSystem::new(system.ground().clone(), r.groups.clone()))?;
    ensure(crate::knet::verify_refinement(r, system), || "refinement table does not reproduce the inputs".into())?;
    let mut restricted = r.restricted.iter();
    for (level, inputs) in system.groups().iter().enumerate() {
        let earlier: Vec<NamedSet> = r.groups[..level].iter().flatten().cloned().collect();
        let mut level_blocks = Vec::new();
        for s in inputs {
            let blocks = if level == 0 {
                if s.members.is_empty() { Vec::new() } else { vec![s.clone()] }
            } else {
                expected_blocks(system, &earlier, s)
            };
            let names: Vec<String> = blocks.iter().map(|b| b.name.clone()).collect();
            ensure(r.refinement_table.get(&s.name) == Some(&names), || format!("blocks of {} differ", s.name))?;
            if level > 0 {
                let rc = restricted.next().ok_or("missing restricted check")?;
                ensure(rc.input == s.name && rc.level == level, || "restricted check out of order".into())?;
                ensure(rc.violations == linked_violations(&earlier, &blocks), || {
                    format!("restricted violations of {} differ", s.name)
                })?;
            }
            level_blocks.extend(blocks);
        }
        ensure(r.groups[level] == level_blocks, || format!("level {level} blocks differ"))?;
        let acc = r.accounting.get(level).ok_or("missing accounting")?;
        let bound = num_bigint::BigUint::from(2u32).pow(level as u32 + 1).to_string();
        ensure(
            acc.level == level
                && acc.inputs == inputs.len()
                && acc.blocks == level_blocks.len()
                && acc.construction_bound == bound
                && acc.achieved == usize::from(!level_blocks.is_empty()),
            || format!("accounting of level {level} differs"),
        )?;
    }
    ensure(restricted.next().is_none(), || "extra restricted check".into())?;
    ensure(r.accounting.len() == system.n(), || "extra accounting".into())?;
    let sound = r.binarity.is_binary() && r.restricted.iter().all(|c| c.violations.is_empty());
    ensure(p.binary == sound, || "binary flag contradicts the checks".into())?;
    check_clique_report(&family, r.binarity.is_binary(), &r.binarity)
}

fn product_witness(spec: &CylinderSpec, family: &[NamedSet<Row>], clique: &[usize], rows: &[Row]) -> Option<Row> {
    // the cylinder name lists its constraints as x{coord}:{member}
    let mut per_coord: BTreeMap<usize, Vec<&NamedSet>> = BTreeMap::new();
    for &i in clique {
        if family[i].name == "*" {
            continue;
        }
        for part in family[i].name.split('&') {
            let (coord, member) = part.split_once(':').expect("cylinder names are x{c}:{m}");
            let coord: usize = coord[1..].parse().expect("numeric coordinate");
            let m = spec.factors[coord].family.iter().find(|s| s.name == member).expect("known member");
            per_coord.entry(coord).or_default().push(m);
        }
    }
    let mut point = BTreeMap::new();
    for (c, ms) in &per_coord {
        let x = spec.factors[*c].ground.iter().find(|x| ms.iter().all(|m| m.members.contains(*x)))?;
        point.insert(*c, x);
    }
    rows.iter().find(|r| point.iter().all(|(&c, x)| &r[c] == *x)).cloned()
}

fn check_binarity(c: &Certificate) -> Check {
    match parse::<BinarityInput>(&c.inputs, "inputs")? {
        BinarityInput::Family { family } => {
            let p: BinarityPayload<String> = parse(&c.payload, "payload")?;
            check_clique_report(&family, p.binary, &p.report)
        }
        BinarityInput::System { system } => {
            let p: SystemPayload = parse(&c.payload, "payload")?;
            check_system(&system, &p)
        }
        BinarityInput::Order { order, bound } => {
            let p: OrderPayload = parse(&c.payload, "payload")?;
            let g = lift(OrderedGround::new(order))?;
            ensure(g.len() <= bound, || "ground exceeds the bound".into())?;
            let sets = convex_sets(&g);
            let family: Vec<NamedSet> = sets
                .iter()
                .map(|s| NamedSet::new(convex_name(&g, s), s.members(&g)))
                .collect();
            check_clique_report(&family, p.binary, &p.report)?;
            ensure(p.witnesses.len() == p.report.cliques.len(), || "witness count differs".into())?;
            for (w, cl) in p.witnesses.iter().zip(&p.report.cliques) {
                let members: Vec<&ConvexSet> = cl
                    .names
                    .iter()
                    .map(|n| &sets[family.iter().position(|f| &f.name == n).expect("checked above")])
                    .collect();
                let x = |l: &ConvexSet, m: &ConvexSet| l.lo.max(m.lo);
                let a = members.iter().map(|l| members.iter().map(|m| x(l, m)).min().expect("nonempty")).max();
                let b = members.iter().map(|l| members.iter().map(|m| x(l, m)).max().expect("nonempty")).min();
                let (a, b) = (a.expect("nonempty"), b.expect("nonempty"));
                ensure(a <= b && members.iter().all(|m| m.contains(a) && m.contains(b)), || {
                    format!("witness interval of {:?} escapes the intersection", cl.names)
                })?;
                ensure(*w == (g.elements()[a].clone(), g.elements()[b].clone()), || {
                    format!("witness of {:?} differs from the min-rule", cl.names)
                })?;
            }
            Ok(())
        }
        BinarityInput::Product { product } => {
            let p: ProductPayload = parse(&c.payload, "payload")?;
            let built = lift(product_knetwork(&product))?;
            check_clique_report(&built.family, p.binary, &p.report)?;
            let cliques = maximal_cliques(&built.family);
            ensure(p.witnesses.len() == cliques.len(), || "witness count differs".into())?;
            for (w, cl) in p.witnesses.iter().zip(&cliques) {
                let want = product_witness(&product, &built.family, cl, &built.rows);
                ensure(*w == want, || "product witness differs from the factor-point rule".into())?;
                if let Some(row) = w {
                    ensure(cl.iter().all(|&i| built.family[i].members.contains(row)), || {
                        "product witness escapes a cylinder".into()
                    })?;
                }
            }
            Ok(())
        }
    }
}

// ---- refinement ----

/// Number of nonempty chains in the inclusion order on `elements`.
fn count_chains(elements: &[BTreeSet<String>]) -> usize {
    let mut order: Vec<&BTreeSet<String>> = elements.iter().collect();
    order.sort_by_key(|e| e.len());
    let mut ending: Vec<usize> = Vec::with_capacity(order.len());
    for (i, e) in order.iter().enumerate() {
        let below: usize = (0..i)
            .filter(|&j| order[j].len() < e.len() && order[j].is_subset(e))
            .map(|j| ending[j])
            .sum();
        ending.push(1 + below);
    }
    ending.iter().sum()
}

fn check_refinement(c: &Certificate) -> Check {
    let inputs: RefinementInput = parse(&c.inputs, "inputs")?;
    let p: RefinementPayload = parse(&c.payload, "payload")?;
    let set = &inputs.set;
    ensure(set.members.iter().all(|x| inputs.system.ground().contains(x)), || "set leaves the ground".into())?;
    let earlier = inputs.system.flattened();
    let want = expected_blocks(&inputs.system, &earlier, set);
    ensure(p.blocks == want, || "blocks are not the minimal-member fibers".into())?;
    // intersections inside C: C meets the closure of the earlier sets
    let mut elements: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    if !set.members.is_empty() {
        elements.insert(set.members.clone());
    }
    loop {
        let mut grown = false;
        let cur: Vec<BTreeSet<String>> = elements.iter().cloned().collect();
        for e in &cur {
            for f in &earlier {
                let m: BTreeSet<String> = e.intersection(&f.members).cloned().collect();
                if !m.is_empty() && elements.insert(m) {
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
    }
    let elems: Vec<BTreeSet<String>> = elements.into_iter().collect();
    ensure(p.stars == count_chains(&elems), || format!("star count {} differs", p.stars))?;
    ensure(p.violations == linked_violations(&earlier, &p.blocks), || "violation list differs".into())
}

// ---- sweep ----

fn radial(sigma: &Simplex, c: &Point, x: &Point) -> std::result::Result<Point, String> {
    let t = sigma
        .vertices()
        .iter()
        .filter_map(|v| {
            let d = c.coord(v) - x.coord(v);
            d.is_positive().then(|| c.coord(v) / d)
        })
        .min()
        .ok_or("queried point is a puncture")?;
    lift(Point::new(sigma.vertices().iter().map(|v| {
        let cv = c.coord(v);
        (v.clone(), &cv + &t * (x.coord(v) - &cv))
    })))
}

fn check_sweep(c: &Certificate) -> Check {
    let inputs: SweepInput = parse(&c.inputs, "inputs")?;
    let p: SweepPayload = parse(&c.payload, "payload")?;
    let l = lift(complex_from_json(&inputs.complex))?;
    let k = lift(complex_from_json(&inputs.subcomplex))?;
    lift(k.require_subcomplex_of(&l))?;
    let mut pts = inputs
        .points
        .iter()
        .map(|q| lift(point_from_json(q)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    for q in &pts {
        lift(q.carrier(&l))?;
    }
    let removable = |cur: &SimplicialComplex, pts: &[Point]| -> Vec<Simplex> {
        let mut v: Vec<Simplex> = cur
            .maximal_simplexes()
            .into_iter()
            .filter(|s| !k.contains(s) && !(s.len() == 1 && pts.iter().any(|q| q.support() == *s)))
            .collect();
        v.sort();
        v
    };
    let mut cur = l.clone();
    for (i, round) in p.rounds.iter().enumerate() {
        let listed = round
            .iter()
            .map(|r| lift(simplex_from_json(&r.simplex)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ensure(listed == removable(&cur, &pts), || format!("round {i} removes the wrong simplexes"))?;
        let mut punct = BTreeMap::new();
        for (s, r) in listed.iter().zip(round) {
            let d = lift(point_from_json(&r.puncture))?;
            ensure(d.support() == *s, || format!("puncture of {s} is not interior"))?;
            ensure(!pts.contains(&d), || format!("puncture of {s} hits a tracked point"))?;
            ensure(d == lift(choose_puncture(s, &pts))?, || format!("puncture of {s} breaks the choice rule"))?;
            punct.insert(s.clone(), d);
        }
        pts = pts
            .iter()
            .map(|q| match punct.get(&q.support()) {
                Some(d) => radial(&q.support(), d, q),
                None => Ok(q.clone()),
            })
            .collect::<std::result::Result<_, _>>()?;
        cur = cur.filter(|s| !punct.contains_key(s));
    }
    ensure(removable(&cur, &pts).is_empty(), || "sweep stopped early".into())?;
    let reduced = lift(complex_from_json(&p.reduced))?;
    ensure(reduced == cur, || "reduced complex differs".into())?;
    ensure(k.is_subcomplex_of(&reduced), || "K is not kept".into())?;
    let images = p
        .images
        .iter()
        .map(|q| lift(point_from_json(q)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ensure(images == pts, || "images differ".into())?;
    ensure(images.iter().all(|q| reduced.contains(&q.support())), || "an image leaves the reduced complex".into())?;
    let bound = lift(l.dimension())? + 1;
    ensure(p.rounds.len() <= bound, || format!("{} rounds exceed {bound}", p.rounds.len()))
}

// ---- realization ----

fn check_realization(c: &Certificate) -> Check {
    let inputs: SystemInput = parse(&c.inputs, "inputs")?;
    let p: RealizationPayload = parse(&c.payload, "payload")?;
    let s = &inputs.system;
    let sets: Vec<&NamedSet> = s.sets().filter(|x| !x.members.is_empty()).collect();
    let mut elements: BTreeSet<BTreeSet<String>> = sets.iter().map(|x| x.members.clone()).collect();
    loop {
        let cur: Vec<BTreeSet<String>> = elements.iter().cloned().collect();
        let before = elements.len();
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                let m: BTreeSet<String> = a.intersection(b).cloned().collect();
                if !m.is_empty() {
                    elements.insert(m);
                }
            }
        }
        if elements.len() == before {
            break;
        }
    }
    if !s.ground().is_empty() {
        elements.insert(s.ground().clone());
    }
    let elems: Vec<BTreeSet<String>> = elements.into_iter().collect();
    ensure(p.elements.len() == elems.len(), || "element count differs".into())?;
    // ranks by minimal-element stripping
    let mut rank: BTreeMap<&BTreeSet<String>, usize> = BTreeMap::new();
    let mut rest: Vec<&BTreeSet<String>> = elems.iter().collect();
    let mut layers: Vec<Vec<String>> = Vec::new();
    while !rest.is_empty() {
        let minimal: Vec<&BTreeSet<String>> = rest
            .iter()
            .filter(|e| !rest.iter().any(|f| f != *e && f.is_subset(e)))
            .copied()
            .collect();
        for e in &minimal {
            rank.insert(e, layers.len());
        }
        rest.retain(|e| !minimal.contains(e));
        layers.push(minimal.iter().map(|e| element_name(e)).collect());
    }
    ensure(p.layers == layers, || "layers differ".into())?;
    ensure(layers.len() <= s.n() + 1, || "more layers than the group count allows".into())?;
    for (claimed, e) in p.elements.iter().zip(&elems) {
        let mut listed: Vec<String> = sets.iter().filter(|x| x.members == *e).map(|x| x.name.clone()).collect();
        listed.sort();
        let mut claimed_listed = claimed.listed.clone();
        claimed_listed.sort();
        ensure(
            claimed.vertex == element_name(e)
                && claimed.members == e.iter().cloned().collect::<Vec<_>>()
                && claimed_listed == listed
                && claimed.rank == rank[e],
            || format!("element {} differs", claimed.vertex),
        )?;
    }
    let top = (!s.ground().is_empty()).then(|| s.ground().clone());
    let uncovered = s.ground().iter().any(|x| !sets.iter().any(|t| t.members.contains(x)));
    let top_listed = top.as_ref().is_some_and(|t| sets.iter().any(|x| x.members == *t));
    let top_included = top.is_some() && (top_listed || uncovered);
    ensure(p.top_included == top_included, || "top inclusion breaks the rule".into())?;
    let vertices: Vec<&BTreeSet<String>> = elems
        .iter()
        .filter(|e| top_included || Some(*e) != top.as_ref())
        .collect();
    let complex = lift(complex_from_json(&p.complex))?;
    let vid = |e: &BTreeSet<String>| VertexId::new(element_name(e)).expect("prefixed");
    let want_vertices: BTreeSet<VertexId> = vertices.iter().map(|e| vid(e)).collect();
    ensure(*complex.vertices() == want_vertices, || "complex vertices differ".into())?;
    let by_name: BTreeMap<VertexId, &BTreeSet<String>> = vertices.iter().map(|e| (vid(e), *e)).collect();
    for sx in complex.simplexes() {
        let es: Vec<&BTreeSet<String>> = sx.vertices().iter().map(|v| by_name[v]).collect();
        ensure(
            es.iter().enumerate().all(|(i, a)| es[i + 1..].iter().all(|b| a.is_subset(b) || b.is_subset(a))),
            || format!("simplex {sx} is not a chain"),
        )?;
    }
    // each maximal chain, grown greedily by covers, must be a simplex
    let chains = count_chains(&vertices.iter().map(|e| (*e).clone()).collect::<Vec<_>>());
    ensure(complex.len() == chains, || format!("complex has {} simplexes, poset has {chains} chains", complex.len()))?;
    if let Ok(d) = complex.dimension() {
        ensure(d <= s.n(), || format!("dimension {d} exceeds {}", s.n()))?;
    }
    ensure(p.assign.len() == elems.len(), || "assignment size differs".into())?;
    let mut down: BTreeMap<&BTreeSet<String>, BTreeSet<String>> = BTreeMap::new();
    for g in &elems {
        let want: Vec<String> = vertices.iter().filter(|m| m.is_subset(g)).map(|m| element_name(m)).collect();
        let want_sorted: BTreeSet<String> = want.into_iter().collect();
        let got = p.assign.get(&element_name(g)).ok_or("missing assignment")?;
        ensure(*got == want_sorted.iter().cloned().collect::<Vec<_>>(), || {
            format!("assignment of {} is not its down-set", element_name(g))
        })?;
        down.insert(g, want_sorted);
    }
    for (i, g) in elems.iter().enumerate() {
        for h in &elems[i + 1..] {
            let m: BTreeSet<String> = g.intersection(h).cloned().collect();
            if m.is_empty() {
                continue;
            }
            let lhs = down.get(&m).ok_or("semilattice not closed")?;
            let rhs: BTreeSet<String> = down[g].intersection(&down[h]).cloned().collect();
            ensure(*lhs == rhs, || "assignment does not preserve an intersection".into())?;
        }
    }
    ensure(p.point_map.len() == s.ground().len(), || "point map size differs".into())?;
    for x in s.ground() {
        let least = elems
            .iter()
            .filter(|e| e.contains(x))
            .min_by_key(|e| e.len())
            .expect("ground contains x");
        ensure(p.point_map.get(x) == Some(&element_name(least)), || format!("point of {x} is not its least member"))?;
    }
    Ok(())
}
