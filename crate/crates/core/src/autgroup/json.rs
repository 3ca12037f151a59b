//! Group: `{"dim": n, "generators": [matrix, ..]}`.
//! Automorphism: `{"dim": n, "matrix": [[Scalar, ..], ..]}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{group_closure, BallAutomorphism, FiniteUnitaryGroup, KernelClass, KernelTag};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::json::{JsonScalar, ScalarRepr};

pub type MatrixJson = Vec<Vec<ScalarRepr>>;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GroupJson {
    pub dim: usize,
    pub generators: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AutomorphismJson {
    pub dim: usize,
    pub matrix: MatrixJson,
}

pub fn matrix_to_repr<S: JsonScalar>(m: &Matrix<S>) -> MatrixJson {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_repr()).collect())
        .collect()
}

pub fn matrix_from_repr<S: JsonScalar>(rows: &MatrixJson) -> Result<Matrix<S>> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(S::from_repr).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

pub fn matrix_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    serde_json::to_value(matrix_to_repr(m)).expect("matrix serialises")
}

pub fn group_to_json<S: JsonScalar>(g: &FiniteUnitaryGroup<S>) -> Value {
    serde_json::to_value(GroupJson {
        dim: g.dim(),
        generators: g.generators().iter().map(matrix_to_repr).collect(),
    })
    .expect("group serialises")
}

/// Generators of a group file, each checked to be `dim × dim`.
pub fn generators_from_json<S: JsonScalar>(v: &Value) -> Result<Vec<Matrix<S>>> {
    let g: GroupJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("group: {e}")))?;
    let gens = g
        .generators
        .iter()
        .map(matrix_from_repr)
        .collect::<Result<Vec<Matrix<S>>>>()?;
    if gens.iter().any(|m| m.rows() != g.dim || m.cols() != g.dim) {
        return Err(Error::DimensionMismatch(format!("generator is not {0}x{0}", g.dim)));
    }
    Ok(gens)
}

pub fn group_from_json<S: JsonScalar>(v: &Value, cap: usize) -> Result<FiniteUnitaryGroup<S>> {
    group_closure(&generators_from_json(v)?, cap)
}

pub fn automorphism_to_json<S: JsonScalar>(a: &BallAutomorphism<S>) -> Value {
    serde_json::to_value(AutomorphismJson {
        dim: a.dim(),
        matrix: matrix_to_repr(a.matrix()),
    })
    .expect("automorphism serialises")
}

/// Accepts an `(n+1)×(n+1)` automorphism matrix or an `n×n` unitary.
pub fn automorphism_from_json<S: JsonScalar>(v: &Value) -> Result<BallAutomorphism<S>> {
    let a: AutomorphismJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("automorphism: {e}")))?;
    let m: Matrix<S> = matrix_from_repr(&a.matrix)?;
    if m.rows() == a.dim && m.cols() == a.dim {
        BallAutomorphism::from_unitary(&m)
    } else if m.rows() == a.dim + 1 && m.cols() == a.dim + 1 {
        BallAutomorphism::new(m)
    } else {
        Err(Error::DimensionMismatch(format!(
            "automorphism of B^{} needs a {}x{} matrix",
            a.dim,
            a.dim + 1,
            a.dim + 1
        )))
    }
}

pub fn kernel_class_to_json<S: JsonScalar>(k: &KernelClass<S>) -> Value {
    let params = match &k.tag {
        KernelTag::TypeI { m } => json!({ "m": m }),
        KernelTag::TypeII { m, j, k } => json!({ "m": m, "j": j, "k": k }),
        KernelTag::TypeIII { j, k, l } => json!({ "j": j, "k": k, "l": l }),
        KernelTag::NotInList => Value::Null,
    };
    json!({
        "tag": k.tag.name(),
        "params": params,
        "order": k.order,
        "generator": matrix_to_json(&k.generator),
        "eigenvalue_exponents": k.exponents,
        "conjugating_data": {
            "power": k.power,
            "permutation": k.permutation,
        },
    })
}
