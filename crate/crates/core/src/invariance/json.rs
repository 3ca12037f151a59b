use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{ExponentLattice, FiniteGenerator, GradedReport, HfReport, Membership, PhiResult, SolveOutcome, TorusSubgroup};
use crate::autgroup::json::automorphism_to_json;
use crate::error::{Error, Result};
use crate::hermitian::json::form_to_json;
use crate::polymap::json::map_to_json;
use crate::scalar::json::JsonScalar;
use crate::scalar::parse_rational;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FiniteGeneratorJson {
    pub turns: Vec<String>,
    pub order: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TorusJson {
    pub continuous_basis: Vec<Vec<String>>,
    pub finite_generators: Vec<FiniteGeneratorJson>,
}

fn rats(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

fn parse_rats(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn torus_to_json(t: &TorusSubgroup) -> Value {
    serde_json::to_value(TorusJson {
        continuous_basis: t.continuous_basis.iter().map(|v| rats(v)).collect(),
        finite_generators: t
            .finite
            .iter()
            .map(|g| FiniteGeneratorJson {
                turns: rats(&g.turns),
                order: g.order,
            })
            .collect(),
    })
    .expect("torus serialises")
}

/// Reads the generator data only; the lattice itself is not recoverable
/// from this form.
pub fn torus_generators_from_json(v: &Value) -> Result<(Vec<Vec<BigRational>>, Vec<FiniteGenerator>)> {
    let t: TorusJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("torus: {e}")))?;
    let cont = t.continuous_basis.iter().map(|v| parse_rats(v)).collect::<Result<_>>()?;
    let fin = t
        .finite_generators
        .iter()
        .map(|g| {
            Ok(FiniteGenerator {
                turns: parse_rats(&g.turns)?,
                order: g.order,
            })
        })
        .collect::<Result<_>>()?;
    Ok((cont, fin))
}

pub fn lattice_to_json(l: &ExponentLattice) -> Value {
    json!({
        "n": l.n,
        "basis": l.basis.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "invariant_factors": l.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "smith_verified": l.smith.verify(&l.basis, l.n).unwrap_or(false),
    })
}

pub fn hf_to_json<S: JsonScalar>(h: &HfReport<S>) -> Value {
    json!({
        "k": h.k,
        "span_rank": h.span_rank,
        "complement_basis": h.complement_basis.iter()
            .map(|v| v.iter().map(|x| x.to_json()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn phi_to_json<S: JsonScalar>(p: &PhiResult<S>) -> Value {
    json!({
        "gamma": automorphism_to_json(&p.gamma),
        "psi": automorphism_to_json(&p.psi),
        "unique": p.unique,
        "verified": p.verified,
        "residual": p.residual,
    })
}

pub fn membership_to_json<S: JsonScalar>(m: &Membership<S>) -> Value {
    match m {
        Membership::Member(p) => json!({"member": true, "phi": phi_to_json(p)}),
        Membership::NotMember { reason } => json!({"member": false, "reason": reason}),
    }
}

pub fn graded_to_json(g: &GradedReport) -> Value {
    json!({
        "m": g.m,
        "positive_indices": g.positive_indices,
        "spanning_degree": g.spanning_degree,
        "restricted_degree_bound": g.restricted_degree_bound,
        "restriction_degree": g.restriction_degree,
        "restriction_is_polynomial": g.restriction_is_polynomial,
        "within_bound": g.within_bound,
    })
}

pub fn solve_outcome_to_json(o: &SolveOutcome) -> Value {
    let exps = |e: &[crate::poly::MultiIndex]| e.iter().map(|a| a.0.clone()).collect::<Vec<_>>();
    match o {
        SolveOutcome::Solved {
            exponents,
            weights,
            map,
            certificate,
            fixing_group,
            constraint_contained,
        } => json!({
            "outcome": "solved",
            "exponents": exps(exponents),
            "weights": rats(weights),
            "map": map_to_json(map),
            "proper_certificate": {
                "quotient": form_to_json(&certificate.quotient),
                "verified": certificate.verified,
            },
            "fixing_group": torus_to_json(fixing_group),
            "constraint_contained": constraint_contained,
        }),
        SolveOutcome::Infeasible { exponents, reason, farkas } => json!({
            "outcome": "infeasible",
            "exponents": exps(exponents),
            "reason": reason,
            "farkas": farkas.as_ref().map(|y| rats(y)),
        }),
        SolveOutcome::Undecided { exponents, dimension } => json!({
            "outcome": "undecided",
            "exponents": exps(exponents),
            "dimension": dimension,
        }),
    }
}
