//! The catalog as a JSON document, and the copy shipped in `data/`.
//!
//! ```text
//! {"rows": [{"salamon": "...", "admits": [bool; 3], "flat_class": "Both",
//!            "obstruction": null | "CenterTooSmall" | "EncodedProof",
//!            "nonflat_arguments": ["id", ...],
//!            "witnesses": [{"family": "H3R_10", "params": {"A": "1"},
//!                           "rotation": null | "1", "basis_change": matrix,
//!                           "double_type": ["Heisenberg3", "Abelian3"],
//!                           "flat": true, "explicit": null | {"salamon", "j", "e"}}]}]}
//! ```

use nilcps_core::catalog::{self, CatalogEntry, ExplicitCps, Family, FlatClass, ObstructionKind, Params, Witness};
use serde_json::{json, Map, Value};

use crate::json::{
    iso_from_name, iso_to_json, matrix_from_json, matrix_to_json, parse_json, rational_from_json, rational_to_json,
    JsonError,
};

/// The shipped witness file.
pub const WITNESSES_JSON: &str = include_str!("../data/witnesses.json");

fn err(at: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        at: at.to_string(),
        message: message.into(),
    }
}

pub fn witness_to_json(w: &Witness) -> Value {
    let params: Map<String, Value> = w.params.iter().map(|(k, v)| (k.clone(), rational_to_json(v))).collect();
    let explicit = match &w.explicit {
        None => Value::Null,
        Some(x) => json!({
            "e": matrix_to_json(&x.e),
            "j": matrix_to_json(&x.j),
            "salamon": x.salamon,
        }),
    };
    json!({
        "basis_change": matrix_to_json(&w.basis_change),
        "double_type": iso_to_json(Some(w.double_type)),
        "explicit": explicit,
        "family": w.family.name(),
        "flat": w.flat,
        "params": params,
        "rotation": w.rotation.as_ref().map_or(Value::Null, rational_to_json),
    })
}

pub fn entry_to_json(e: &CatalogEntry) -> Value {
    json!({
        "admits": e.admits,
        "flat_class": e.flat_class.name(),
        "nonflat_arguments": e.nonflat_arguments.iter().map(|a| a.id).collect::<Vec<_>>(),
        "obstruction": e.obstruction.map_or(Value::Null, |o| json!(o.name())),
        "salamon": e.salamon,
        "witnesses": e.witnesses.iter().map(witness_to_json).collect::<Vec<_>>(),
    })
}

pub fn entries_to_json(entries: &[CatalogEntry]) -> Value {
    json!({ "rows": entries.iter().map(entry_to_json).collect::<Vec<_>>() })
}

fn str_field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a str, JsonError> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| err(&format!("{at}.{key}"), "expected a string"))
}

fn bool_field(v: &Value, key: &str, at: &str) -> Result<bool, JsonError> {
    v.get(key)
        .and_then(Value::as_bool)
        .ok_or_else(|| err(&format!("{at}.{key}"), "expected a boolean"))
}

fn witness_from_json(v: &Value, salamon: &str, at: &str) -> Result<Witness, JsonError> {
    let family_name = str_field(v, "family", at)?;
    let family = Family::from_name(family_name).ok_or_else(|| err(&format!("{at}.family"), "unknown family"))?;
    let mut params = Params::new();
    if let Some(p) = v.get("params") {
        let p = p
            .as_object()
            .ok_or_else(|| err(&format!("{at}.params"), "expected an object"))?;
        for (k, x) in p {
            params.insert(k.clone(), rational_from_json(x, &format!("{at}.params.{k}"))?);
        }
    }
    let rotation = match v.get("rotation") {
        None | Some(Value::Null) => None,
        Some(x) => Some(rational_from_json(x, &format!("{at}.rotation"))?),
    };
    let dt = v
        .get("double_type")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| err(&format!("{at}.double_type"), "expected two type names"))?;
    let ty = |i: usize| {
        dt[i]
            .as_str()
            .and_then(iso_from_name)
            .ok_or_else(|| err(&format!("{at}.double_type[{i}]"), "unknown type"))
    };
    let explicit = match v.get("explicit") {
        None | Some(Value::Null) => None,
        Some(x) => Some(ExplicitCps {
            salamon: str_field(x, "salamon", &format!("{at}.explicit"))?.to_string(),
            j: matrix_from_json(x.get("j").unwrap_or(&Value::Null), &format!("{at}.explicit.j"))?,
            e: matrix_from_json(x.get("e").unwrap_or(&Value::Null), &format!("{at}.explicit.e"))?,
        }),
    };
    Ok(Witness {
        family,
        params,
        explicit,
        rotation,
        basis_change: matrix_from_json(
            v.get("basis_change").unwrap_or(&Value::Null),
            &format!("{at}.basis_change"),
        )?,
        target: salamon.to_string(),
        double_type: (ty(0)?, ty(1)?),
        flat: bool_field(v, "flat", at)?,
    })
}

fn flat_class_from_name(s: &str) -> Option<FlatClass> {
    [
        FlatClass::FlatOnly,
        FlatClass::NonFlatOnly,
        FlatClass::Both,
        FlatClass::NoCps,
    ]
    .into_iter()
    .find(|c| c.name() == s)
}

fn obstruction_from_name(s: &str) -> Option<ObstructionKind> {
    [ObstructionKind::CenterTooSmall, ObstructionKind::EncodedProof]
        .into_iter()
        .find(|c| c.name() == s)
}

pub fn entry_from_json(v: &Value, at: &str) -> Result<CatalogEntry, JsonError> {
    let salamon = str_field(v, "salamon", at)?.to_string();
    let admits_v = v
        .get("admits")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 3)
        .ok_or_else(|| err(&format!("{at}.admits"), "expected three booleans"))?;
    let mut admits = [false; 3];
    for (i, a) in admits_v.iter().enumerate() {
        admits[i] = a
            .as_bool()
            .ok_or_else(|| err(&format!("{at}.admits[{i}]"), "expected a boolean"))?;
    }
    let flat_class = flat_class_from_name(str_field(v, "flat_class", at)?)
        .ok_or_else(|| err(&format!("{at}.flat_class"), "unknown class"))?;
    let obstruction = match v.get("obstruction") {
        None | Some(Value::Null) => None,
        Some(o) => Some(
            o.as_str()
                .and_then(obstruction_from_name)
                .ok_or_else(|| err(&format!("{at}.obstruction"), "unknown obstruction"))?,
        ),
    };
    let mut nonflat_arguments = Vec::new();
    for (i, id) in v
        .get("nonflat_arguments")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or_default()
        .iter()
        .enumerate()
    {
        let a = id
            .as_str()
            .and_then(catalog::nonflat_argument)
            .ok_or_else(|| err(&format!("{at}.nonflat_arguments[{i}]"), "unknown argument id"))?;
        nonflat_arguments.push(a);
    }
    let witnesses = v
        .get("witnesses")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(i, w)| witness_from_json(w, &salamon, &format!("{at}.witnesses[{i}]")))
        .collect::<Result<_, _>>()?;
    Ok(CatalogEntry {
        salamon,
        admits,
        witnesses,
        flat_class,
        nonflat_arguments,
        obstruction,
    })
}

pub fn entries_from_json(v: &Value) -> Result<Vec<CatalogEntry>, JsonError> {
    v.get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| err("rows", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, r)| entry_from_json(r, &format!("rows[{i}]")))
        .collect()
}

/// Parses the shipped witness file.
pub fn builtin_entries() -> Result<Vec<CatalogEntry>, JsonError> {
    entries_from_json(&parse_json(WITNESSES_JSON)?)
}
