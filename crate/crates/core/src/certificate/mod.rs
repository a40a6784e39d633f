//! Machine-checkable certificates.
//!
//! A certificate embeds its inputs, a SHA-256 digest of their canonical
//! JSON, and a kind-specific payload of exact data. [`verify`] re-checks a
//! payload against the inputs with membership tests, exact distances and
//! clique intersections, without calling the construction that produced
//! it.

mod check;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::classes::{go_binary_family, product_knetwork, ConvexSet, CylinderSpec, OrderedGround, Row};
use crate::complex::{Point, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::family::{verify_binary, BinarityReport, NamedSet};
use crate::io::{chain_to_json, complex_to_json, point_to_json, ComplexJson, PointJson};
use crate::knet::{key_refinement, linked_violations, synthesize, BinaryFamilyReport};
use crate::rational::format_q;
use crate::realization::{element_name, realize, SetSystem};
use crate::star::{discreteness_certificate, linked_intersection_witness, star_cover, CoverMember};
use crate::sweep::sweep_out;

pub use check::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Discreteness,
    Witness,
    Binarity,
    Refinement,
    SweepTrace,
    Realization,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub kind: Kind,
    pub inputs: Value,
    pub inputs_digest: String,
    pub payload: Value,
}

impl Certificate {
    fn new<I: Serialize, P: Serialize>(kind: Kind, inputs: &I, payload: &P) -> Self {
        let inputs = serde_json::to_value(inputs).expect("inputs serialize");
        let payload = serde_json::to_value(payload).expect("payload serializes");
        Self {
            kind,
            inputs_digest: digest(&inputs),
            inputs,
            payload,
        }
    }

    /// Pretty JSON with sorted keys; byte-identical for identical inputs.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Hex SHA-256 of the compact JSON text of `v`. Object keys are sorted by
/// `serde_json`'s default map, so the text is canonical.
pub fn digest(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("value serializes");
    hex::encode(Sha256::digest(&bytes))
}

// ---- wire shapes shared by emitter and verifier ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexInput {
    pub complex: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Closest {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub x: PointJson,
    pub y: PointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteGroup {
    pub cardinality: usize,
    pub members: Vec<Vec<String>>,
    pub min_distance: Option<String>,
    pub closest: Option<Closest>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretenessPayload {
    pub n: usize,
    pub bound: String,
    pub holds: bool,
    pub groups: Vec<DiscreteGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MemberJson {
    Star(Vec<String>),
    Subcomplex(ComplexJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessInput {
    Star {
        complex: ComplexJson,
        members: Vec<MemberJson>,
    },
    Order {
        order: Vec<String>,
        sets: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarWitnessPayload {
    pub chain: Vec<Vec<String>>,
    pub point: PointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderWitnessPayload {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BinarityInput {
    Family { family: Vec<NamedSet> },
    System { system: SetSystem },
    Order { order: Vec<String>, bound: usize },
    Product { product: CylinderSpec },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinarityPayload<T: Ord> {
    pub binary: bool,
    pub report: BinarityReport<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemPayload {
    pub binary: bool,
    pub report: BinaryFamilyReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderPayload {
    pub binary: bool,
    pub report: BinarityReport<String>,
    /// Witness interval `[a, b]` per maximal clique.
    pub witnesses: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductPayload {
    pub binary: bool,
    pub report: BinarityReport<Row>,
    pub witnesses: Vec<Option<Row>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementInput {
    pub system: SetSystem,
    pub set: NamedSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefinementPayload {
    pub blocks: Vec<NamedSet>,
    pub stars: usize,
    pub violations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepInput {
    pub complex: ComplexJson,
    pub subcomplex: ComplexJson,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Removal {
    pub simplex: Vec<String>,
    pub puncture: PointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPayload {
    pub reduced: ComplexJson,
    pub rounds: Vec<Vec<Removal>>,
    pub images: Vec<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemInput {
    pub system: SetSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub vertex: String,
    pub members: Vec<String>,
    pub listed: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationPayload {
    pub elements: Vec<ElementJson>,
    pub layers: Vec<Vec<String>>,
    pub top_included: bool,
    pub complex: ComplexJson,
    /// Element vertex name to the vertices of its assigned full subcomplex.
    pub assign: BTreeMap<String, Vec<String>>,
    pub point_map: BTreeMap<String, String>,
}

// ---- emitters ----

pub fn discreteness(c: &SimplicialComplex) -> Result<Certificate> {
    let fam = star_cover(c, c)?;
    let rep = discreteness_certificate(&fam)?;
    let groups = rep
        .groups
        .iter()
        .map(|g| DiscreteGroup {
            cardinality: g.cardinality,
            members: g.members.iter().map(Simplex::to_strings).collect(),
            min_distance: g.min_distance.as_ref().map(format_q),
            closest: g.closest.as_ref().map(|(a, b, x, y)| Closest {
                a: a.to_strings(),
                b: b.to_strings(),
                x: point_to_json(x),
                y: point_to_json(y),
            }),
        })
        .collect();
    let payload = DiscretenessPayload {
        n: rep.n,
        bound: format_q(&rep.bound),
        holds: rep.holds(),
        groups,
    };
    Ok(Certificate::new(
        Kind::Discreteness,
        &ComplexInput {
            complex: complex_to_json(c),
        },
        &payload,
    ))
}

fn member_json(m: &CoverMember) -> MemberJson {
    match m {
        CoverMember::Star(t) => MemberJson::Star(t.to_strings()),
        CoverMember::Subcomplex(f) => MemberJson::Subcomplex(complex_to_json(f)),
    }
}

pub fn star_witness(k: &SimplicialComplex, members: &[CoverMember]) -> Result<Certificate> {
    let w = linked_intersection_witness(members, k)?;
    let inputs = WitnessInput::Star {
        complex: complex_to_json(k),
        members: members.iter().map(member_json).collect(),
    };
    let payload = StarWitnessPayload {
        chain: chain_to_json(&w.chain).chain,
        point: point_to_json(&w.point),
    };
    Ok(Certificate::new(Kind::Witness, &inputs, &payload))
}

pub fn order_witness(ground: &OrderedGround, sets: &[Vec<String>]) -> Result<Certificate> {
    let convex = sets
        .iter()
        .map(|s| ConvexSet::from_members(ground, s))
        .collect::<Result<Vec<_>>>()?;
    let (a, b) = crate::classes::go_witness(&convex)?;
    let inputs = WitnessInput::Order {
        order: ground.elements().to_vec(),
        sets: sets.to_vec(),
    };
    let payload = OrderWitnessPayload {
        a: ground.elements()[a].clone(),
        b: ground.elements()[b].clone(),
    };
    Ok(Certificate::new(Kind::Witness, &inputs, &payload))
}

pub fn binarity_of_family(family: &[NamedSet]) -> Result<Certificate> {
    let names: BTreeSet<&String> = family.iter().map(|s| &s.name).collect();
    if names.len() != family.len() {
        return Err(Error::InvalidSystem("family repeats a name".into()));
    }
    let report = verify_binary(family);
    let payload = BinarityPayload {
        binary: report.is_binary(),
        report,
    };
    Ok(Certificate::new(
        Kind::Binarity,
        &BinarityInput::Family {
            family: family.to_vec(),
        },
        &payload,
    ))
}

pub fn binarity_of_synthesis(system: &SetSystem) -> Result<(Certificate, BinaryFamilyReport)> {
    let report = synthesize(system)?;
    let payload = SystemPayload {
        binary: report.is_sound(),
        report: report.clone(),
    };
    let cert = Certificate::new(
        Kind::Binarity,
        &BinarityInput::System {
            system: system.clone(),
        },
        &payload,
    );
    Ok((cert, report))
}

pub fn binarity_of_order(ground: &OrderedGround, bound: usize) -> Result<Certificate> {
    let fam = go_binary_family(ground, bound)?;
    let payload = OrderPayload {
        binary: fam.report.is_binary(),
        report: fam.report,
        witnesses: fam.witnesses,
    };
    Ok(Certificate::new(
        Kind::Binarity,
        &BinarityInput::Order {
            order: ground.elements().to_vec(),
            bound,
        },
        &payload,
    ))
}

pub fn binarity_of_product(spec: &CylinderSpec) -> Result<Certificate> {
    let p = product_knetwork(spec)?;
    let payload = ProductPayload {
        binary: p.report.is_binary(),
        report: p.report,
        witnesses: p.witnesses,
    };
    Ok(Certificate::new(
        Kind::Binarity,
        &BinarityInput::Product {
            product: spec.clone(),
        },
        &payload,
    ))
}

pub fn refinement(system: &SetSystem, set: &NamedSet) -> Result<Certificate> {
    let kr = key_refinement(system, set)?;
    let payload = RefinementPayload {
        violations: linked_violations(&system.flattened(), &kr.blocks),
        blocks: kr.blocks,
        stars: kr.stars,
    };
    Ok(Certificate::new(
        Kind::Refinement,
        &RefinementInput {
            system: system.clone(),
            set: set.clone(),
        },
        &payload,
    ))
}

pub fn sweep_trace(l: &SimplicialComplex, k: &SimplicialComplex, a: &[Point]) -> Result<Certificate> {
    let r = sweep_out(l, k, a)?;
    let payload = SweepPayload {
        reduced: complex_to_json(&r.reduced),
        rounds: r
            .rounds
            .iter()
            .map(|round| {
                round
                    .removed
                    .iter()
                    .map(|(s, d)| Removal {
                        simplex: s.to_strings(),
                        puncture: point_to_json(d),
                    })
                    .collect()
            })
            .collect(),
        images: r.images.iter().map(point_to_json).collect(),
    };
    let inputs = SweepInput {
        complex: complex_to_json(l),
        subcomplex: complex_to_json(k),
        points: a.iter().map(point_to_json).collect(),
    };
    Ok(Certificate::new(Kind::SweepTrace, &inputs, &payload))
}

pub fn realization(system: &SetSystem) -> Result<Certificate> {
    let r = realize(system)?;
    let elements = r
        .semilattice
        .elements()
        .iter()
        .map(|e| ElementJson {
            vertex: element_name(e),
            members: e.iter().cloned().collect(),
            listed: r.semilattice.listed_names(e).to_vec(),
            rank: r.strata.rank_of[e],
        })
        .collect();
    let layers = r
        .strata
        .layers
        .iter()
        .map(|l| l.iter().map(element_name).collect())
        .collect();
    let assign = r
        .assign
        .iter()
        .map(|(g, k)| {
            (
                element_name(g),
                k.vertices().iter().map(|v| v.as_str().to_string()).collect(),
            )
        })
        .collect();
    let point_map = r
        .point_map
        .iter()
        .map(|(x, p)| (x.clone(), p.support().vertices()[0].as_str().to_string()))
        .collect();
    let payload = RealizationPayload {
        elements,
        layers,
        top_included: r.top_included,
        complex: complex_to_json(&r.complex),
        assign,
        point_map,
    };
    Ok(Certificate::new(
        Kind::Realization,
        &SystemInput {
            system: system.clone(),
        },
        &payload,
    ))
}
