//! JSON interchange for scalars.
//!
//! Exact: `{"order": L, "terms": [{"rad": r, "coeffs": ["p/q", ...]}]}`.
//! Float: `{"re": "...", "im": "...", "prec": bits}`.
//! Readers also accept a bare rational string or integer.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{parse_rational, CycloScalar, FloatComplex, PreciseComplex, RadScalar, Scalar};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermJson {
    pub rad: u64,
    pub coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExactJson {
    pub order: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FloatJson {
    pub re: String,
    pub im: String,
    pub prec: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum ScalarRepr {
    Exact(ExactJson),
    Float(FloatJson),
    Text(String),
    Int(i64),
}

impl ScalarRepr {
    pub fn is_float(&self) -> bool {
        matches!(self, ScalarRepr::Float(_))
    }
}

pub fn rad_to_repr(x: &RadScalar) -> ScalarRepr {
    ScalarRepr::Exact(ExactJson {
        order: x.order(),
        terms: x
            .terms()
            .iter()
            .map(|(r, c)| TermJson {
                rad: *r,
                coeffs: c.coeffs().iter().map(|q| q.to_string()).collect(),
            })
            .collect(),
    })
}

pub fn rad_from_repr(repr: &ScalarRepr) -> Result<RadScalar> {
    match repr {
        ScalarRepr::Exact(e) => {
            let mut terms = Vec::with_capacity(e.terms.len());
            for t in &e.terms {
                let coeffs = t
                    .coeffs
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                terms.push((t.rad, CycloScalar::make_rational(e.order, &coeffs)?));
            }
            RadScalar::from_terms(e.order, terms)
        }
        ScalarRepr::Text(s) => Ok(RadScalar::from_rational(parse_rational(s)?)),
        ScalarRepr::Int(k) => Ok(RadScalar::from_int(*k)),
        ScalarRepr::Float(_) => Err(Error::UnsupportedScalar(
            "float value where an exact scalar is required".into(),
        )),
    }
}

pub fn float_to_repr(x: &FloatComplex) -> ScalarRepr {
    ScalarRepr::Float(FloatJson {
        re: format!("{:?}", x.re),
        im: format!("{:?}", x.im),
        prec: 53,
    })
}

pub fn precise_to_repr(x: &PreciseComplex) -> ScalarRepr {
    ScalarRepr::Float(FloatJson {
        re: x.re_string(),
        im: x.im_string(),
        prec: x.prec,
    })
}

pub fn float_from_repr(repr: &ScalarRepr) -> Result<FloatComplex> {
    match repr {
        ScalarRepr::Float(f) => {
            if f.prec <= 53 {
                let p = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("invalid float {s:?}")))
                };
                Ok(FloatComplex::new(p(&f.re)?, p(&f.im)?))
            } else {
                Ok(PreciseComplex::parse(&f.re, &f.im, f.prec)?.to_float())
            }
        }
        other => Ok(rad_from_repr(other)?.to_float()),
    }
}

/// Scalars that round-trip through the JSON interchange format.
pub trait JsonScalar: Scalar {
    fn to_repr(&self) -> ScalarRepr;
    fn from_repr(repr: &ScalarRepr) -> Result<Self>;

    fn to_json(&self) -> Value {
        serde_json::to_value(self.to_repr()).expect("scalar serialises")
    }

    fn from_json(v: &Value) -> Result<Self> {
        let repr: ScalarRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(&repr)
    }
}

impl JsonScalar for RadScalar {
    fn to_repr(&self) -> ScalarRepr {
        rad_to_repr(self)
    }
    fn from_repr(repr: &ScalarRepr) -> Result<Self> {
        rad_from_repr(repr)
    }
}

impl JsonScalar for FloatComplex {
    fn to_repr(&self) -> ScalarRepr {
        float_to_repr(self)
    }
    fn from_repr(repr: &ScalarRepr) -> Result<Self> {
        float_from_repr(repr)
    }
}
