//! JSON encoding with scalars as canonical strings.

use serde_json::{json, Map, Value};

use crate::coadjoint::NormalForm;
use crate::error::{Error, Result};
use crate::hess::Connection;
use crate::liealg::{AlgElem, Covector, GrpElem, Params};
use crate::matrix::Matrix;
use crate::reduction::{CanonicalReduction, ReducedAlgebra};
use crate::scalar::Scalar;
use crate::symform::{Subspace, TwoForm};

fn bad(what: &str) -> Error {
    Error::Parse(format!("expected {what}"))
}

pub fn scalar_to_json<F: Scalar>(s: &F) -> Value {
    Value::String(s.to_canonical_string())
}

/// Accepts canonical strings and plain JSON integers.
pub fn scalar_from_json<F: Scalar>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => F::parse_canonical(s),
        Value::Number(n) => n
            .as_i64()
            .map(F::from_i64)
            .ok_or_else(|| bad("an integer or a scalar string")),
        _ => Err(bad("a scalar string")),
    }
}

pub fn vec_to_json<F: Scalar>(v: &[F]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vec_from_json<F: Scalar>(v: &Value) -> Result<Vec<F>> {
    v.as_array()
        .ok_or_else(|| bad("an array of scalars"))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn matrix_to_json<F: Scalar>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_to_json(&m.row(r))).collect())
}

/// Rows of scalars. An empty array is the 0×0 matrix.
pub fn matrix_from_json<F: Scalar>(v: &Value) -> Result<Matrix<F>> {
    let rows = v.as_array().ok_or_else(|| bad("a matrix as an array of rows"))?;
    let rows: Vec<Vec<F>> = rows.iter().map(vec_from_json).collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows)
}

fn field<'a>(obj: &'a Map<String, Value>, names: &[&str]) -> Result<&'a Value> {
    names
        .iter()
        .find_map(|k| obj.get(*k))
        .ok_or_else(|| Error::Parse(format!("missing key '{}'", names[0])))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad("a JSON object"))
}

pub fn params_to_json(p: Params) -> Value {
    json!({"n": p.n, "p": p.p})
}

pub fn alg_elem_to_json<F: Scalar>(a: &AlgElem<F>) -> Value {
    json!({"x": matrix_to_json(&a.x), "u": matrix_to_json(&a.u)})
}

pub fn alg_elem_from_json<F: Scalar>(v: &Value) -> Result<AlgElem<F>> {
    let o = object(v)?;
    let x = matrix_from_json(field(o, &["x"])?)?;
    let u = matrix_from_json(field(o, &["u"])?)?;
    let params = Params::new(u.rows(), x.cols())?;
    AlgElem::new(params, x, u)
}

pub fn grp_elem_to_json<F: Scalar>(g: &GrpElem<F>) -> Value {
    json!({"x": matrix_to_json(&g.x), "u": matrix_to_json(&g.t)})
}

pub fn grp_elem_from_json<F: Scalar>(v: &Value) -> Result<GrpElem<F>> {
    let o = object(v)?;
    let x = matrix_from_json(field(o, &["x"])?)?;
    let t = matrix_from_json(field(o, &["u", "t"])?)?;
    let params = Params::new(t.rows(), x.cols())?;
    GrpElem::new(params, x, t)
}

/// {"x": H (p×n), "u": N (n×n)}.
pub fn covector_to_json<F: Scalar>(c: &Covector<F>) -> Value {
    json!({"x": matrix_to_json(&c.h), "u": matrix_to_json(&c.n)})
}

/// Reads {"x","u"} or the aliases {"h","n"}.
pub fn covector_from_json<F: Scalar>(v: &Value) -> Result<Covector<F>> {
    let o = object(v)?;
    let h = matrix_from_json(field(o, &["x", "h"])?)?;
    let n = matrix_from_json(field(o, &["u", "n"])?)?;
    let params = Params::new(n.rows(), h.rows())?;
    Covector::new(params, h, n)
}

pub fn normal_form_to_json<F: Scalar>(nf: &NormalForm<F>) -> Value {
    json!({
        "rep": covector_to_json(&nf.rep),
        "witness": grp_elem_to_json(&nf.witness),
        "base_sign": scalar_to_json(&nf.base_sign),
    })
}

pub fn two_form_to_json<F: Scalar>(om: &TwoForm<F>) -> Value {
    matrix_to_json(&om.mat)
}

pub fn subspace_to_json<F: Scalar>(s: &Subspace<F>) -> Value {
    Value::Array(s.basis().iter().map(|v| vec_to_json(v)).collect())
}

pub fn table_to_json<F: Scalar>(t: &[Vec<Vec<F>>]) -> Value {
    Value::Array(
        t.iter()
            .map(|row| Value::Array(row.iter().map(|v| vec_to_json(v)).collect()))
            .collect(),
    )
}

pub fn connection_to_json<F: Scalar>(c: &Connection<F>) -> Value {
    json!({
        "params": params_to_json(c.params),
        "basis": Value::Array(c.basis.iter().map(|v| vec_to_json(v)).collect()),
        "table": table_to_json(&c.table),
    })
}

pub fn reduced_algebra_to_json<F: Scalar>(r: &ReducedAlgebra<F>) -> Value {
    json!({
        "params": params_to_json(r.params),
        "dim": r.dim(),
        "isotropic": subspace_to_json(&r.isotropic),
        "complement": Value::Array(r.complement.iter().map(|v| vec_to_json(v)).collect()),
        "structure": table_to_json(&r.structure),
        "form": matrix_to_json(&r.form),
    })
}

pub fn canonical_reduction_to_json<F: Scalar>(r: &CanonicalReduction<F>) -> Value {
    json!({
        "source": params_to_json(r.quotient.params),
        "target": params_to_json(r.target),
        "quotient": reduced_algebra_to_json(&r.quotient),
        "iso": matrix_to_json(&r.iso),
        "reduced_covector": covector_to_json(&r.reduced_covector),
    })
}
