//! JSON wire formats.
//!
//! Complexes are `{"vertices": [...], "maximal_simplices": [[...]]}`,
//! points `{"coords": {vertex: "p/q"}}`, chains `{"chain": [[...]]}`.
//! Rationals are always reduced `"p/q"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Point, Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use crate::star::Chain;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub coords: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainJson {
    pub chain: Vec<Vec<String>>,
}

/// A list of points, either bare or under `"points"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsJson {
    Wrapped { points: Vec<PointJson> },
    Bare(Vec<PointJson>),
}

impl PointsJson {
    pub fn into_vec(self) -> Vec<PointJson> {
        match self {
            PointsJson::Wrapped { points } | PointsJson::Bare(points) => points,
        }
    }
}

/// Strict rational parsing: only the canonical `"p/q"` spelling.
pub fn parse_rational(s: &str) -> Result<Q> {
    let r = parse_q(s)?;
    if format_q(&r) != s {
        return Err(Error::InvalidRational(s.to_string()));
    }
    Ok(r)
}

pub fn simplex_from_json(vs: &[String]) -> Result<Simplex> {
    let ids = vs.iter().map(|v| VertexId::new(v.clone())).collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let s = Simplex::new(ids.iter().cloned())?;
    if s.len() != ids.len() {
        return Err(Error::InvalidPoint(format!("simplex {s} repeats a vertex")));
    }
    Ok(s)
}

pub fn complex_from_json(c: &ComplexJson) -> Result<SimplicialComplex> {
    let vs = c
        .vertices
        .iter()
        .map(|v| VertexId::new(v.clone()))
        .collect::<Result<Vec<_>>>()?;
    let ss = c
        .maximal_simplices
        .iter()
        .map(|s| simplex_from_json(s))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::with_vertices(vs, ss)
}

pub fn complex_to_json(k: &SimplicialComplex) -> ComplexJson {
    ComplexJson {
        vertices: k.vertices().iter().map(|v| v.as_str().to_string()).collect(),
        maximal_simplices: k.maximal_strings(),
    }
}

pub fn point_from_json(p: &PointJson) -> Result<Point> {
    let coords = p
        .coords
        .iter()
        .map(|(v, x)| Ok((VertexId::new(v.clone())?, parse_rational(x)?)))
        .collect::<Result<Vec<_>>>()?;
    // zeros are legal on input but must still be canonical
    Point::new(coords)
}

pub fn point_to_json(p: &Point) -> PointJson {
    PointJson {
        coords: p
            .coords()
            .iter()
            .map(|(v, x)| (v.as_str().to_string(), format_q(x)))
            .collect(),
    }
}

pub fn chain_from_json(c: &ChainJson) -> Result<Chain> {
    let members = c.chain.iter().map(|s| simplex_from_json(s)).collect::<Result<Vec<_>>>()?;
    Chain::new(members)
}

pub fn chain_to_json(c: &Chain) -> ChainJson {
    ChainJson {
        chain: c.members().iter().map(Simplex::to_strings).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let j: ComplexJson =
            serde_json::from_str(r#"{"vertices":["a","b","c","d"],"maximal_simplices":[["a","b"],["b","c"]]}"#).unwrap();
        let k = complex_from_json(&j).unwrap();
        assert_eq!(k.len(), 6);
        assert_eq!(complex_to_json(&k).maximal_simplices, vec![vec!["a", "b"], vec!["b", "c"], vec!["d"]]);
        let bad = ComplexJson {
            vertices: vec!["a".into()],
            maximal_simplices: vec![vec!["a".into(), "z".into()]],
        };
        assert!(complex_from_json(&bad).is_err());
    }

    #[test]
    fn point_round_trip_and_strictness() {
        let j: PointJson = serde_json::from_str(r#"{"coords":{"a":"1/2","b":"1/2"}}"#).unwrap();
        let p = point_from_json(&j).unwrap();
        assert_eq!(point_to_json(&p), j);
        for bad in [r#"{"coords":{"a":"2/4","b":"1/2"}}"#, r#"{"coords":{"a":"1","b":"0/1"}}"#] {
            let j: PointJson = serde_json::from_str(bad).unwrap();
            assert!(point_from_json(&j).is_err());
        }
        let j: PointJson = serde_json::from_str(r#"{"coords":{"a":"1/3","b":"1/3"}}"#).unwrap();
        assert!(matches!(point_from_json(&j), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn chain_and_points() {
        let c: ChainJson = serde_json::from_str(r#"{"chain":[["a"],["a","b"]]}"#).unwrap();
        assert_eq!(chain_to_json(&chain_from_json(&c).unwrap()), c);
        let bare: PointsJson = serde_json::from_str(r#"[{"coords":{"a":"1/1"}}]"#).unwrap();
        let wrapped: PointsJson = serde_json::from_str(r#"{"points":[{"coords":{"a":"1/1"}}]}"#).unwrap();
        assert_eq!(bare.into_vec(), wrapped.into_vec());
    }
}
