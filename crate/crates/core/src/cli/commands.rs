use std::path::Path;

use serde_json::{json, Value};

use super::args::{BackendKind, Cli, Command, ConstructKind, SolveArgs};
use super::{read_json, Outcome, Status};
use crate::autgroup::json::{automorphism_from_json, group_from_json, group_to_json, kernel_class_to_json, matrix_to_json};
use crate::autgroup::{classify_cyclic_kernel, is_fixed_point_free, BallAutomorphism, KernelTag};
use crate::error::{Error, Result};
use crate::hermitian::json::form_to_json;
use crate::hermitian::{is_proper, norm_equal, Properness};
use crate::invariance::json::{graded_to_json, hf_to_json, lattice_to_json, membership_to_json, solve_outcome_to_json, torus_to_json};
use crate::invariance::{
    candidate_exponents, diagonal_fixing_group, exponent_lattice, gamma_membership, gamma_membership_with_fallback,
    graded_analysis, hf_group, monomial_proper_solve, phi_kernel, torus_invariance_group, Backed, CyclicConstraint,
    LatticeMode, Membership, SolveOutcome,
};
use crate::poly::MultiIndex;
use crate::polymap::json::{map_from_json, map_to_json, rational_from_json};
use crate::polymap::{direct_sum, pad, partial_tensor, tensor_power, whitney, PolyMap, RationalMap};
use crate::scalar::json::JsonScalar;
use crate::scalar::{parse_rational, FloatComplex, RadScalar};

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        Error::DimensionMismatch(msg) => Error::DimensionMismatch(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn load_map<S: JsonScalar>(path: &Path) -> Result<PolyMap<S>> {
    map_from_json(&read_json(path)?).map_err(|e| with_path(path, e))
}

fn load_rational<S: JsonScalar>(path: &Path) -> Result<RationalMap<S>> {
    rational_from_json(&read_json(path)?).map_err(|e| with_path(path, e))
}

fn load_automorphism<S: JsonScalar>(path: &Path) -> Result<BallAutomorphism<S>> {
    automorphism_from_json(&read_json(path)?).map_err(|e| with_path(path, e))
}

fn load_group<S: JsonScalar>(path: &Path, cap: usize) -> Result<crate::autgroup::FiniteUnitaryGroup<S>> {
    group_from_json(&read_json(path)?, cap).map_err(|e| with_path(path, e))
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("{what}: {t:?} is not an integer")))
        })
        .collect()
}

fn parse_exponents(s: &str, n: usize) -> Result<Vec<MultiIndex>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = parse_ints(t, "exponent")?;
            if v.len() != n || v.iter().any(|&x| x < 0) {
                return Err(Error::Parse(format!("exponent {t:?} needs {n} nonnegative entries")));
            }
            Ok(MultiIndex(v.into_iter().map(|x| x as u32).collect()))
        })
        .collect()
}

fn convert<S: JsonScalar>(f: &PolyMap<RadScalar>) -> Result<PolyMap<S>> {
    map_from_json(&map_to_json(f))
}

pub(super) fn execute(cli: &Cli) -> Result<Outcome> {
    match cli.backend {
        BackendKind::Exact => exec::<RadScalar>(cli),
        BackendKind::Float => exec::<FloatComplex>(cli),
    }
}

fn exec<S: JsonScalar>(cli: &Cli) -> Result<Outcome> {
    let cap = cli.cap;
    match &cli.command {
        Command::Proper(a) => proper::<S>(&a.map),
        Command::NormEqual { map, other } => {
            let eq = norm_equal(&load_rational::<S>(map)?, &load_rational::<S>(other)?)?;
            Ok(Outcome::new(
                if eq { Status::Ok } else { Status::Negative },
                json!({ "norm_equal": eq }),
                if eq { "‖f‖² = ‖g‖²" } else { "‖f‖² ≠ ‖g‖²" },
            ))
        }
        Command::Span(a) => {
            let f = load_map::<S>(&a.map)?;
            let span = f.span_rank()?;
            let minimal = span.rank == f.target_dim();
            Ok(Outcome::new(
                Status::Ok,
                json!({
                    "rank": span.rank,
                    "target_dim": f.target_dim(),
                    "minimal": minimal,
                    "pivots": span.pivots.iter().map(|a| a.0.clone()).collect::<Vec<_>>(),
                    "basis": span.basis.iter().map(|v| v.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                format!("span rank {} of {}{}", span.rank, f.target_dim(), if minimal { ", minimal" } else { "" }),
            ))
        }
        Command::Torus(a) => {
            let f = load_map::<S>(&a.map)?;
            let t = torus_invariance_group(&f)?;
            let lattice = exponent_lattice(&f, LatticeMode::Gram)?;
            Ok(torus_outcome(&t, lattice_to_json(&lattice)))
        }
        Command::FixGroup(a) => {
            let f = load_map::<S>(&a.map)?;
            let t = diagonal_fixing_group(&f)?;
            let lattice = exponent_lattice(&f, LatticeMode::Support)?;
            Ok(torus_outcome(&t, lattice_to_json(&lattice)))
        }
        Command::Hf(a) => {
            let h = hf_group(&load_map::<S>(&a.map)?)?;
            Ok(Outcome::new(Status::Ok, hf_to_json(&h), format!("H_f ≅ U({})", h.k)))
        }
        Command::Member { map, gamma } => {
            if cli.backend == BackendKind::Exact {
                member_exact(map, gamma)
            } else {
                let m = gamma_membership(&load_map::<S>(map)?, &load_automorphism::<S>(gamma)?)?;
                Ok(membership_outcome(&m, "float"))
            }
        }
        Command::PhiKernel { map, group } => {
            let f = load_map::<S>(map)?;
            let g = load_group::<S>(group, cap)?;
            let k = phi_kernel(&f, &g)?;
            Ok(Outcome::new(
                Status::Ok,
                json!({
                    "candidate_order": g.order(),
                    "kernel_order": k.order(),
                    "closed": k.is_closed(),
                    "elements": k.elements().iter().map(matrix_to_json).collect::<Vec<_>>(),
                }),
                format!("kernel of order {} in a group of order {}", k.order(), g.order()),
            ))
        }
        Command::Graded { map, m } => {
            let f = load_map::<S>(map)?;
            let m = parse_ints(m, "--m")?;
            match graded_analysis(&f, &m) {
                Ok(r) => Ok(Outcome::new(
                    Status::Ok,
                    json!({ "invariant": true, "report": graded_to_json(&r) }),
                    match r.restricted_degree_bound {
                        Some(b) => format!("restriction degree {} ≤ bound {b}", r.restriction_degree),
                        None => "no positive eigenvalues".to_string(),
                    },
                )),
                Err(Error::NotInvariant { alpha, beta }) => Ok(Outcome::new(
                    Status::Negative,
                    json!({ "invariant": false, "alpha": alpha, "beta": beta }),
                    format!("m·(α − β) ≠ 0 for coupled pair {alpha:?}, {beta:?}"),
                )),
                Err(e) => Err(e),
            }
        }
        Command::SolveMonomial(a) => {
            let out = solve(a)?;
            Ok(solve_outcome(&out))
        }
        Command::Construct { kind, out } => construct::<S>(kind, out.as_deref()),
        Command::ClassifyKernel(a) => {
            let g = load_group::<S>(&a.group, cap)?;
            let k = classify_cyclic_kernel(&g)?;
            let status = if k.tag == KernelTag::NotInList { Status::Negative } else { Status::Ok };
            Ok(Outcome::new(
                status,
                kernel_class_to_json(&k),
                format!("{} (order {})", k.tag.name(), k.order),
            ))
        }
        Command::Closure(a) => {
            let g = load_group::<S>(&a.group, cap)?;
            let mut payload = group_to_json(&g);
            payload["order"] = json!(g.order());
            payload["closed"] = json!(g.is_closed());
            payload["elements"] = json!(g.elements().iter().map(matrix_to_json).collect::<Vec<_>>());
            Ok(Outcome::new(Status::Ok, payload, format!("group of order {}", g.order())))
        }
        Command::Fpf(a) => {
            let g = load_group::<S>(&a.group, cap)?;
            let r = is_fixed_point_free(&g)?;
            Ok(Outcome::new(
                if r.fixed_point_free { Status::Ok } else { Status::Negative },
                json!({
                    "fixed_point_free": r.fixed_point_free,
                    "order": g.order(),
                    "witness": r.witness.as_ref().map(matrix_to_json),
                }),
                if r.fixed_point_free { "fixed-point free" } else { "a non-identity element fixes a vector" },
            ))
        }
    }
}

fn proper<S: JsonScalar>(path: &Path) -> Result<Outcome> {
    let f = load_rational::<S>(path)?;
    match is_proper(&f) {
        Ok(Properness::Proper(c)) => Ok(Outcome::new(
            if c.verified { Status::Ok } else { Status::Undecided },
            json!({
                "proper": true,
                "certificate": { "quotient": form_to_json(&c.quotient), "verified": c.verified },
            }),
            if c.verified { "proper, certificate verified" } else { "quotient found but not verified" },
        )),
        Ok(Properness::NotProper { remainder }) => Ok(Outcome::new(
            Status::Negative,
            json!({ "proper": false, "remainder": form_to_json(&remainder) }),
            "not proper: nonzero remainder",
        )),
        Err(Error::ConstantMap) => Ok(Outcome::new(
            Status::Negative,
            json!({ "proper": false, "reason": "constant map" }),
            "not proper: constant map",
        )),
        Err(e) => Err(e),
    }
}

fn torus_outcome(t: &crate::invariance::TorusSubgroup, lattice: Value) -> Outcome {
    Outcome::new(
        Status::Ok,
        json!({
            "lattice": lattice,
            "group": torus_to_json(t),
            "continuous_dim": t.continuous_dim(),
            "finite_order": t.finite_order(),
        }),
        format!("T^{} × finite part of order {}", t.continuous_dim(), t.finite_order()),
    )
}

fn membership_outcome<S: JsonScalar>(m: &Membership<S>, backend: &str) -> Outcome {
    let mut payload = membership_to_json(m);
    payload["computed_with"] = json!(backend);
    match m {
        Membership::Member(p) => Outcome::new(
            Status::Ok,
            payload,
            format!("member; ψ {}unique", if p.unique { "" } else { "not " }),
        ),
        Membership::NotMember { reason } => Outcome::new(Status::Negative, payload, format!("NotMember: {reason}")),
    }
}

fn member_exact(map: &Path, gamma: &Path) -> Result<Outcome> {
    let exact = load_map::<RadScalar>(map).and_then(|f| Ok((f, load_automorphism::<RadScalar>(gamma)?)));
    match exact {
        Ok((f, g)) => Ok(match gamma_membership_with_fallback(&f, &g)? {
            Backed::Exact(m) => membership_outcome(&m, "exact"),
            Backed::Float(m) => membership_outcome(&m, "float fallback"),
        }),
        Err(Error::UnsupportedScalar(_)) => {
            let m = gamma_membership(&load_map::<FloatComplex>(map)?, &load_automorphism::<FloatComplex>(gamma)?)?;
            Ok(membership_outcome(&m, "float fallback"))
        }
        Err(e) => Err(e),
    }
}

fn solve(a: &SolveArgs) -> Result<SolveOutcome> {
    let exps = match (&a.exponents, a.max_degree) {
        (Some(s), _) => parse_exponents(s, a.n)?,
        (None, Some(d)) => candidate_exponents(a.n, d),
        (None, None) => return Err(Error::Parse("one of --exponents or --max-degree is required".into())),
    };
    let constraint = match (&a.weights, a.order) {
        (Some(w), Some(m)) => Some(CyclicConstraint {
            weights: parse_ints(w, "--weights")?,
            order: m,
        }),
        _ => None,
    };
    monomial_proper_solve(a.n, &exps, constraint.as_ref())
}

fn solve_status(o: &SolveOutcome) -> Status {
    match o {
        SolveOutcome::Solved { .. } => Status::Ok,
        SolveOutcome::Infeasible { .. } => Status::Negative,
        SolveOutcome::Undecided { .. } => Status::Undecided,
    }
}

fn solve_outcome(o: &SolveOutcome) -> Outcome {
    let summary = match o {
        SolveOutcome::Solved { weights, .. } => format!(
            "d = ({})",
            weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
        ),
        SolveOutcome::Infeasible { reason, .. } => format!("Infeasible: {reason}"),
        SolveOutcome::Undecided { dimension, .. } => {
            format!("Undecided: solution set of dimension {dimension}")
        }
    };
    Outcome::new(solve_status(o), solve_outcome_to_json(o), summary)
}

fn construct<S: JsonScalar>(kind: &ConstructKind, out: Option<&Path>) -> Result<Outcome> {
    let f: PolyMap<S> = match kind {
        ConstructKind::Tensor { n, m } => tensor_power(*n, *m)?,
        ConstructKind::Whitney => whitney(),
        ConstructKind::Pad { map, k } => pad(&load_map::<S>(map)?, *k)?,
        ConstructKind::DirectSum { map, other, t } => {
            direct_sum(&load_map::<S>(map)?, &load_map::<S>(other)?, &parse_rational(t)?)?
        }
        ConstructKind::PartialTensor { map, split } => {
            let idx = parse_ints(split, "--split")?
                .into_iter()
                .map(|i| {
                    usize::try_from(i - 1).map_err(|_| Error::Parse("--split indices are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            partial_tensor(&load_map::<S>(map)?, &idx)?
        }
        ConstructKind::MonomialFromSolver(a) => {
            let o = solve(a)?;
            match &o {
                SolveOutcome::Solved { map, .. } => convert::<S>(map)?,
                _ => return Ok(solve_outcome(&o)),
            }
        }
    };
    let v = map_to_json(&f);
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(&v).expect("map serialises");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome::new(
        Status::Ok,
        json!({ "map": v, "written": out.map(|p| p.display().to_string()) }),
        format!("map ℂ^{} → ℂ^{} of degree {}", f.source_dim(), f.target_dim(), f.degree()),
    ))
}
