//! JSON encodings of the core types.
//!
//! Rationals are strings (`"3"`, `"-1/2"`); integers are accepted on input.
//! Indices in bracket tables are 1-based. Object keys come out sorted because
//! `serde_json::Map` is a `BTreeMap` here.
//!
//! ```text
//! algebra   {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "-1"}}]}
//!           or {"salamon": "(0,0,12)"}
//! matrix    {"matrix": [["0", "-1"], ["1", "0"]]}   (a bare row list also parses)
//! cps       {"j": matrix, "e": matrix, "algebra": algebra (optional)}
//! subspace  list of echelon rows
//! ```

use std::path::Path;

use nilcps_core::rational::{self, format_rational, parse_rational};
use nilcps_core::salamon::{self, SalamonError};
use nilcps_core::structures::{assemble_cps, Cps, Endo, StructureError};
use nilcps_core::{Iso3, LieAlgebra, LieError, QMatrix, QVector, Rational, Subspace};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("schema violation at {at}: {message}")]
    Schema { at: String, message: String },
    #[error(transparent)]
    Salamon(#[from] SalamonError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn schema(at: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        at: at.to_string(),
        message: message.into(),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value, at: &str) -> Result<Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| schema(at, format!("not a rational: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| schema(at, "numbers must be integers; write fractions as strings")),
        _ => Err(schema(at, "expected a rational")),
    }
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value, at: &str) -> Result<QVector, JsonError> {
    let arr = v.as_array().ok_or_else(|| schema(at, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, &format!("{at}[{i}]")))
        .collect()
}

pub fn matrix_rows_json(m: &QMatrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector_to_json(r)).collect())
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    json!({ "matrix": matrix_rows_json(m) })
}

pub fn matrix_from_json(v: &Value, at: &str) -> Result<QMatrix, JsonError> {
    let rows = match v {
        Value::Object(o) => o.get("matrix").ok_or_else(|| schema(at, "missing \"matrix\""))?,
        other => other,
    };
    let arr = rows.as_array().ok_or_else(|| schema(at, "expected a list of rows"))?;
    let rows: Vec<QVector> = arr
        .iter()
        .enumerate()
        .map(|(i, r)| vector_from_json(r, &format!("{at}.matrix[{i}]")))
        .collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Err(schema(at, "empty matrix"));
    }
    QMatrix::from_rows(&rows).map_err(|e| schema(at, e.to_string()))
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    Value::Array(s.basis_vectors().iter().map(|r| vector_to_json(r)).collect())
}

pub fn iso_to_json(t: Option<(Iso3, Iso3)>) -> Value {
    match t {
        Some((a, b)) => json!([a.name(), b.name()]),
        None => Value::Null,
    }
}

pub fn iso_from_name(s: &str) -> Option<Iso3> {
    [Iso3::Abelian3, Iso3::Heisenberg3, Iso3::NotSubalgebra, Iso3::Other]
        .into_iter()
        .find(|t| t.name() == s)
}

/// Nonzero brackets `[e_i, e_j]`, `i < j`, 1-based.
pub fn algebra_to_json(g: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = g
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, v)| {
            let coeffs: Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != rational::zero())
                .map(|(k, c)| ((k + 1).to_string(), rational_to_json(c)))
                .collect();
            json!({ "i": i + 1, "j": j + 1, "coeffs": coeffs })
        })
        .collect();
    json!({ "dim": g.dim(), "brackets": brackets })
}

fn index_from_json(v: &Value, dim: usize, at: &str) -> Result<usize, JsonError> {
    let i = v.as_u64().ok_or_else(|| schema(at, "expected a positive integer"))? as usize;
    if i == 0 || i > dim {
        return Err(schema(at, format!("index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra, JsonError> {
    let o = v.as_object().ok_or_else(|| schema("algebra", "expected an object"))?;
    if let Some(s) = o.get("salamon") {
        let s = s
            .as_str()
            .ok_or_else(|| schema("algebra.salamon", "expected a string"))?;
        return Ok(salamon::parse_salamon(s)?);
    }
    let dim = o
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("algebra.dim", "expected a positive integer"))? as usize;
    let list = match o.get("brackets") {
        None => Vec::new(),
        Some(b) => b
            .as_array()
            .ok_or_else(|| schema("algebra.brackets", "expected an array"))?
            .clone(),
    };
    let mut brackets = Vec::new();
    for (n, b) in list.iter().enumerate() {
        let at = format!("algebra.brackets[{n}]");
        let i = index_from_json(b.get("i").unwrap_or(&Value::Null), dim, &format!("{at}.i"))?;
        let j = index_from_json(b.get("j").unwrap_or(&Value::Null), dim, &format!("{at}.j"))?;
        let coeffs = b
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| schema(&format!("{at}.coeffs"), "expected an object"))?;
        let mut v = rational::zeros(dim);
        for (k, c) in coeffs {
            let kat = format!("{at}.coeffs.{k}");
            let idx: usize = k.parse().map_err(|_| schema(&kat, "key must be an index"))?;
            let idx = index_from_json(&json!(idx), dim, &kat)?;
            v[idx] = rational_from_json(c, &kat)?;
        }
        brackets.push((i, j, v));
    }
    Ok(LieAlgebra::from_brackets(dim, &brackets)?)
}

pub fn parse_json(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
}

pub fn read_json(path: &Path) -> Result<Value, JsonError> {
    let text = std::fs::read_to_string(path).map_err(|e| JsonError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_json(&text)
}

/// A Salamon string if the argument starts with `(`, otherwise a JSON file.
pub fn load_algebra(arg: &str) -> Result<LieAlgebra, JsonError> {
    if arg.trim_start().starts_with('(') {
        Ok(salamon::parse_salamon(arg)?)
    } else {
        algebra_from_json(&read_json(Path::new(arg))?)
    }
}

/// The `j`/`e` entries of a structure file, each optional.
pub struct StructureFile {
    pub algebra: Option<LieAlgebra>,
    pub j: Option<Endo>,
    pub e: Option<Endo>,
}

pub fn structure_from_json(v: &Value) -> Result<StructureFile, JsonError> {
    let o = v.as_object().ok_or_else(|| schema("cps", "expected an object"))?;
    let endo = |key: &str| -> Result<Option<Endo>, JsonError> {
        o.get(key)
            .map(|m| Ok(Endo::new(matrix_from_json(m, &format!("cps.{key}"))?)?))
            .transpose()
    };
    let algebra = o.get("algebra").map(algebra_from_json).transpose()?;
    let j = endo("j")?;
    let e = endo("e")?;
    if j.is_none() && e.is_none() {
        return Err(schema("cps", "needs \"j\", \"e\" or both"));
    }
    Ok(StructureFile { algebra, j, e })
}

pub fn cps_to_json(cps: &Cps) -> Value {
    json!({
        "algebra": algebra_to_json(cps.algebra()),
        "e": matrix_to_json(cps.e().matrix()),
        "j": matrix_to_json(cps.j().matrix()),
    })
}

/// Assembles a CPS from a structure file, with `algebra` overriding the
/// file's own algebra.
pub fn cps_from_file(file: StructureFile, algebra: Option<LieAlgebra>) -> Result<Cps, JsonError> {
    let g = algebra
        .or(file.algebra)
        .ok_or_else(|| schema("cps.algebra", "no algebra given in the file or on the command line"))?;
    let j = file.j.ok_or_else(|| schema("cps.j", "missing"))?;
    let e = file.e.ok_or_else(|| schema("cps.e", "missing"))?;
    Ok(assemble_cps(g, j, e)?)
}

/// Pretty JSON followed by a newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}
