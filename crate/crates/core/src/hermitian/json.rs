//! `{"n": n, "entries": [{"alpha": [..], "beta": [..], "value": Scalar}]}`,
//! listing only `α ≤ β`; the remaining entries follow by conjugate symmetry.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::BiPoly;
use crate::error::{Error, Result};
use crate::poly::MultiIndex;
use crate::scalar::json::{JsonScalar, ScalarRepr};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EntryJson {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub value: ScalarRepr,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FormJson {
    pub n: usize,
    pub entries: Vec<EntryJson>,
}

pub fn form_to_json<S: JsonScalar>(p: &BiPoly<S>) -> Value {
    let entries = p
        .terms()
        .iter()
        .filter(|((a, b), _)| a <= b)
        .map(|((a, b), c)| EntryJson {
            alpha: a.0.clone(),
            beta: b.0.clone(),
            value: c.to_repr(),
        })
        .collect();
    serde_json::to_value(FormJson { n: p.nvars(), entries }).expect("form serialises")
}

pub fn form_from_json<S: JsonScalar>(v: &Value) -> Result<BiPoly<S>> {
    let f: FormJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("form: {e}")))?;
    let mut out = BiPoly::zero(f.n);
    for e in &f.entries {
        if e.alpha.len() != f.n || e.beta.len() != f.n {
            return Err(Error::DimensionMismatch("form entry arity".into()));
        }
        let (a, b) = (MultiIndex(e.alpha.clone()), MultiIndex(e.beta.clone()));
        let c = S::from_repr(&e.value)?;
        if a != b {
            out.add_term(b.clone(), a.clone(), c.conj());
        }
        out.add_term(a, b, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::polarized_form;
    use crate::poly::ScalarPoly;
    use crate::polymap::PolyMap;
    use crate::scalar::RadScalar;

    #[test]
    fn hermitian_round_trip() {
        let i = RadScalar::root_of_unity(4, 1).unwrap();
        let p = ScalarPoly::from_terms(
            2,
            [
                (MultiIndex(vec![2, 0]), RadScalar::one()),
                (MultiIndex(vec![1, 1]), i),
            ],
        )
        .unwrap();
        let f = PolyMap::from_components(2, &[p]).unwrap();
        let form = polarized_form(&f);
        assert!(form.is_hermitian());
        let v = form_to_json(&form);
        assert_eq!(v["entries"].as_array().unwrap().len(), 3);
        let back: BiPoly<RadScalar> = form_from_json(&v).unwrap();
        assert!(back.eq_value(&form));
    }
}
