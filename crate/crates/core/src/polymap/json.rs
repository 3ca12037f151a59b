//! Map interchange format.
//!
//! `{"n": n, "N": N, "terms": [{"alpha": [..], "coeff": [Scalar, ..]}],
//! "denominator": [{"alpha": [..], "coeff": Scalar}]}`, the denominator
//! being optional. Terms are written in graded-lex order.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{PolyMap, RationalMap};
use crate::error::{Error, Result};
use crate::poly::{MultiIndex, ScalarPoly};
use crate::scalar::json::{JsonScalar, ScalarRepr};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub alpha: Vec<u32>,
    pub coeff: Vec<ScalarRepr>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyTermJson {
    pub alpha: Vec<u32>,
    pub coeff: ScalarRepr,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MapJson {
    pub n: usize,
    #[serde(rename = "N")]
    pub target: usize,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<PolyTermJson>>,
}

pub fn poly_to_json<S: JsonScalar>(p: &ScalarPoly<S>) -> Vec<PolyTermJson> {
    p.terms()
        .iter()
        .map(|(a, c)| PolyTermJson {
            alpha: a.0.clone(),
            coeff: c.to_repr(),
        })
        .collect()
}

pub fn poly_from_json<S: JsonScalar>(n: usize, terms: &[PolyTermJson]) -> Result<ScalarPoly<S>> {
    let parsed = terms
        .iter()
        .map(|t| Ok((MultiIndex(t.alpha.clone()), S::from_repr(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    ScalarPoly::from_terms(n, parsed)
}

fn terms_to_json<S: JsonScalar>(f: &PolyMap<S>) -> Vec<TermJson> {
    f.terms()
        .iter()
        .map(|(a, c)| TermJson {
            alpha: a.0.clone(),
            coeff: c.iter().map(|x| x.to_repr()).collect(),
        })
        .collect()
}

pub fn map_to_repr<S: JsonScalar>(f: &PolyMap<S>) -> MapJson {
    MapJson {
        n: f.source_dim(),
        target: f.target_dim(),
        terms: terms_to_json(f),
        denominator: None,
    }
}

pub fn rational_to_repr<S: JsonScalar>(f: &RationalMap<S>) -> MapJson {
    let mut m = map_to_repr(f.numerator());
    if !f.is_polynomial() {
        m.denominator = Some(poly_to_json(f.denominator()));
    }
    m
}

pub fn rational_from_repr<S: JsonScalar>(m: &MapJson) -> Result<RationalMap<S>> {
    let terms = m
        .terms
        .iter()
        .map(|t| {
            let c = t.coeff.iter().map(S::from_repr).collect::<Result<Vec<_>>>()?;
            Ok((MultiIndex(t.alpha.clone()), c))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = PolyMap::from_terms(m.n, m.target, terms)?;
    match &m.denominator {
        None => Ok(RationalMap::from_poly(p)),
        Some(d) => RationalMap::new(p, poly_from_json(m.n, d)?),
    }
}

pub fn map_from_repr<S: JsonScalar>(m: &MapJson) -> Result<PolyMap<S>> {
    rational_from_repr(m)?
        .as_poly()
        .ok_or_else(|| Error::InvalidParameter("expected a polynomial map, found a rational map".into()))
}

pub fn map_to_json<S: JsonScalar>(f: &PolyMap<S>) -> Value {
    serde_json::to_value(map_to_repr(f)).expect("map serialises")
}

pub fn rational_to_json<S: JsonScalar>(f: &RationalMap<S>) -> Value {
    serde_json::to_value(rational_to_repr(f)).expect("map serialises")
}

fn parse_repr(v: &Value) -> Result<MapJson> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("map: {e}")))
}

pub fn map_from_json<S: JsonScalar>(v: &Value) -> Result<PolyMap<S>> {
    map_from_repr(&parse_repr(v)?)
}

pub fn rational_from_json<S: JsonScalar>(v: &Value) -> Result<RationalMap<S>> {
    rational_from_repr(&parse_repr(v)?)
}
