//! JSON interchange for every payload the CLI reads and writes.
//!
//! All numeric payloads are exact: rationals are encoded as strings "a/b"
//! (or "a" when the denominator is 1), GF(p) residues as plain integers,
//! polynomials as coefficient arrays low degree first, matrices as arrays of
//! row arrays. Documents carry a top-level `"schema": "linked-modules/v1"`.
//!
//! Parsing is schema-checked with precise paths so a malformed document is
//! rejected with a diagnostic naming the offending field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use serde_json::{json, Map, Value};

use crate::analysis::YCoords;
use crate::construction::{AlgebraSpec, LinkedInvariants, Representation};
use crate::field::{FieldElem, FieldSpec};
use crate::matrix::Mat;
use crate::poly::Poly;

pub const SCHEMA: &str = "linked-modules/v1";

/// A schema violation: the path into the document and what went wrong.
#[derive(Debug, Clone)]
pub struct SchemaError {
    pub path: String,
    pub detail: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.detail)
    }
}

impl std::error::Error for SchemaError {}

type SResult<T> = std::result::Result<T, SchemaError>;

fn err<T>(path: &str, detail: impl Into<String>) -> SResult<T> {
    Err(SchemaError {
        path: path.to_string(),
        detail: detail.into(),
    })
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> SResult<&'a Value> {
    match v {
        Value::Object(map) => map
            .get(key)
            .ok_or_else(|| SchemaError {
                path: path.to_string(),
                detail: format!("missing field \"{key}\""),
            }),
        _ => err(path, "expected an object"),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> SResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| SchemaError {
        path: path.to_string(),
        detail: "expected an array".into(),
    })
}

fn as_usize(v: &Value, path: &str) -> SResult<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| SchemaError {
            path: path.to_string(),
            detail: "expected a non-negative integer".into(),
        })
}

pub fn check_schema(doc: &Value) -> SResult<()> {
    let schema = get(doc, "schema", "$")?;
    match schema.as_str() {
        Some(SCHEMA) => Ok(()),
        Some(other) => err("$.schema", format!("unsupported schema \"{other}\"")),
        None => err("$.schema", "expected a string"),
    }
}

pub fn parse_field(v: &Value, path: &str) -> SResult<FieldSpec> {
    let kind = get(v, "kind", path)?;
    match kind.as_str() {
        Some("Q") => Ok(FieldSpec::Rationals),
        Some("GF") => {
            let p = get(v, "p", path)?
                .as_u64()
                .ok_or_else(|| SchemaError {
                    path: format!("{path}.p"),
                    detail: "expected an integer modulus".into(),
                })?;
            FieldSpec::prime_field(p).map_err(|e| SchemaError {
                path: format!("{path}.p"),
                detail: e.to_string(),
            })
        }
        _ => err(
            &format!("{path}.kind"),
            "expected \"Q\" or \"GF\"",
        ),
    }
}

pub fn field_to_json(field: &FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!({"kind": "Q"}),
        FieldSpec::PrimeField(p) => json!({"kind": "GF", "p": p}),
    }
}

pub fn parse_scalar(field: FieldSpec, v: &Value, path: &str) -> SResult<FieldElem> {
    match field {
        FieldSpec::Rationals => {
            let s = v.as_str().ok_or_else(|| SchemaError {
                path: path.to_string(),
                detail: "expected a rational encoded as a string".into(),
            })?;
            let (num_str, den_str) = match s.split_once('/') {
                Some((a, b)) => (a, b),
                None => (s, "1"),
            };
            let numer: BigInt = num_str.trim().parse().map_err(|_| SchemaError {
                path: path.to_string(),
                detail: format!("invalid integer \"{num_str}\""),
            })?;
            let denom: BigInt = den_str.trim().parse().map_err(|_| SchemaError {
                path: path.to_string(),
                detail: format!("invalid integer \"{den_str}\""),
            })?;
            if denom == BigInt::from(0) {
                return err(path, "zero denominator");
            }
            Ok(FieldElem::Rat(BigRational::new(numer, denom)))
        }
        FieldSpec::PrimeField(p) => {
            let n = v.as_i64().ok_or_else(|| SchemaError {
                path: path.to_string(),
                detail: "expected an integer residue".into(),
            })?;
            Ok(FieldElem::Mod {
                p,
                val: n.rem_euclid(p as i64) as u64,
            })
        }
    }
}

pub fn scalar_to_json(e: &FieldElem) -> Value {
    match e {
        FieldElem::Rat(r) => {
            if r.denom().is_one() {
                Value::String(r.numer().to_string())
            } else {
                Value::String(format!("{}/{}", r.numer(), r.denom()))
            }
        }
        FieldElem::Mod { val, .. } => json!(val),
    }
}

pub fn parse_poly(field: FieldSpec, v: &Value, path: &str) -> SResult<Poly> {
    let arr = as_array(v, path)?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for (k, c) in arr.iter().enumerate() {
        coeffs.push(parse_scalar(field, c, &format!("{path}[{k}]"))?);
    }
    Poly::from_coeffs(field, coeffs).map_err(|e| SchemaError {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn parse_mat(field: FieldSpec, v: &Value, path: &str) -> SResult<Mat> {
    let rows = as_array(v, path)?;
    let mut parsed: Vec<Vec<FieldElem>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let cells = as_array(row, &row_path)?;
        let mut out = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            out.push(parse_scalar(field, cell, &format!("{row_path}[{j}]"))?);
        }
        parsed.push(out);
    }
    Mat::from_rows(field, parsed).map_err(|e| SchemaError {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

pub fn mat_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn parse_algebra(field: FieldSpec, v: &Value, path: &str) -> SResult<AlgebraSpec> {
    let eig = as_array(get(v, "eigenvalues", path)?, &format!("{path}.eigenvalues"))?;
    let mut eigenvalues = Vec::with_capacity(eig.len());
    for (i, e) in eig.iter().enumerate() {
        eigenvalues.push(parse_scalar(
            field,
            e,
            &format!("{path}.eigenvalues[{i}]"),
        )?);
    }
    let v_index = match v.get("v_index") {
        None | Some(Value::Null) => None,
        Some(val) => Some(as_usize(val, &format!("{path}.v_index"))?),
    };
    AlgebraSpec::new(field, eigenvalues, v_index).map_err(|e| SchemaError {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

pub fn algebra_to_json(alg: &AlgebraSpec) -> Value {
    let mut map = Map::new();
    map.insert(
        "eigenvalues".into(),
        Value::Array(alg.eigenvalues.iter().map(scalar_to_json).collect()),
    );
    match alg.v_index {
        Some(v) => map.insert("v_index".into(), json!(v)),
        None => map.insert("v_index".into(), Value::Null),
    };
    Value::Object(map)
}

/// Parses an invariants document:
/// {"schema", "field", "p1", "m", "s", "algebra", "gmaps"}.
pub fn parse_invariants_doc(doc: &Value) -> SResult<(LinkedInvariants, AlgebraSpec)> {
    check_schema(doc)?;
    let field = parse_field(get(doc, "field", "$")?, "$.field")?;
    let p1 = parse_poly(field, get(doc, "p1", "$")?, "$.p1")?;
    let m = as_usize(get(doc, "m", "$")?, "$.m")?;
    let s_arr = as_array(get(doc, "s", "$")?, "$.s")?;
    let mut s = Vec::with_capacity(s_arr.len());
    for (i, e) in s_arr.iter().enumerate() {
        s.push(as_usize(e, &format!("$.s[{i}]"))? as u32);
    }
    let alg = parse_algebra(field, get(doc, "algebra", "$")?, "$.algebra")?;
    let v_index = alg.v_index.ok_or_else(|| SchemaError {
        path: "$.algebra.v_index".into(),
        detail: "an invariants document needs a distinguished vector".into(),
    })?;

    let gmap_arr = as_array(get(doc, "gmaps", "$")?, "$.gmaps")?;
    let mut gmaps: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); m];
    for (k, entry) in gmap_arr.iter().enumerate() {
        let entry_path = format!("$.gmaps[{k}]");
        let idx = as_usize(get(entry, "index", &entry_path)?, &format!("{entry_path}.index"))?;
        let poly = parse_poly(
            field,
            get(entry, "poly", &entry_path)?,
            &format!("{entry_path}.poly"),
        )?;
        if idx >= alg.dim_a() {
            return err(&format!("{entry_path}.index"), "index out of range");
        }
        let weight = alg.eigenvalues[idx]
            .integer_in_range(m)
            .ok_or_else(|| SchemaError {
                path: format!("{entry_path}.index"),
                detail: format!(
                    "basis vector {idx} does not have an integer weight below m = {m}"
                ),
            })?;
        gmaps[weight].push((idx, poly));
    }
    for entries in &mut gmaps {
        entries.sort_by_key(|(idx, _)| *idx);
    }
    Ok((
        LinkedInvariants {
            field,
            p1,
            m,
            s,
            gmaps,
            v_index,
        },
        alg,
    ))
}

pub fn invariants_to_json(inv: &LinkedInvariants, alg: &AlgebraSpec) -> Value {
    let mut gmaps = Vec::new();
    for entries in &inv.gmaps {
        for (idx, g) in entries {
            gmaps.push(json!({"index": idx, "poly": poly_to_json(g)}));
        }
    }
    json!({
        "schema": SCHEMA,
        "field": field_to_json(&inv.field),
        "p1": poly_to_json(&inv.p1),
        "m": inv.m,
        "s": inv.s,
        "algebra": algebra_to_json(alg),
        "gmaps": gmaps,
    })
}

/// Parses a representation document:
/// {"schema", "field", "algebra", "dim", "x", "a"}.
pub fn parse_representation_doc(doc: &Value) -> SResult<Representation> {
    check_schema(doc)?;
    let field = parse_field(get(doc, "field", "$")?, "$.field")?;
    let alg = parse_algebra(field, get(doc, "algebra", "$")?, "$.algebra")?;
    let dim = as_usize(get(doc, "dim", "$")?, "$.dim")?;
    let mat_x = parse_mat(field, get(doc, "x", "$")?, "$.x")?;
    let a_arr = as_array(get(doc, "a", "$")?, "$.a")?;
    let mut mat_a = Vec::with_capacity(a_arr.len());
    for (i, m) in a_arr.iter().enumerate() {
        mat_a.push(parse_mat(field, m, &format!("$.a[{i}]"))?);
    }
    if mat_x.rows() != dim {
        return err("$.dim", "dim does not match the size of x");
    }
    Representation::new(alg, mat_x, mat_a).map_err(|e| SchemaError {
        path: "$".into(),
        detail: e.to_string(),
    })
}

pub fn representation_to_json(rep: &Representation) -> Value {
    json!({
        "schema": SCHEMA,
        "field": field_to_json(&rep.field()),
        "algebra": algebra_to_json(&rep.algebra),
        "dim": rep.dim,
        "x": mat_to_json(&rep.mat_x),
        "a": Value::Array(rep.mat_a.iter().map(mat_to_json).collect()),
    })
}

pub fn ycoords_to_json(y: &YCoords) -> Value {
    json!({
        "x": scalar_to_json(&y.x_coeff),
        "a0": Value::Array(
            y.a0.iter()
                .map(|(i, c)| json!({"index": i, "coeff": scalar_to_json(c)}))
                .collect(),
        ),
    })
}
