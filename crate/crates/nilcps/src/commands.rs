//! One function per CLI command, each returning a JSON report and whether
//! every check in it passed.

use nilcps_core::catalog::{
    self, CatalogEntry, CatalogError, EncodedProof, NonexistenceReport, RowFailure, RowReport, TableReport,
    COLUMN_NAMES,
};
use nilcps_core::connection::{self, ConnectionError};
use nilcps_core::geodesic::GeodesicParams;
use nilcps_core::hypercomplex::{self, HypercomplexError};
use nilcps_core::rational::format_rational;
use nilcps_core::salamon::{self, SalamonError};
use nilcps_core::structures::{self, Cps, Endo, PairDefect, StructureError};
use nilcps_core::{LieAlgebra, LieError};
use serde_json::{json, Value};

use crate::json::{
    algebra_to_json, iso_to_json, matrix_to_json, subspace_to_json, vector_to_json, JsonError, StructureFile,
};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Hypercomplex(#[from] HypercomplexError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Usage(String),
}

fn variant(debug: String) -> String {
    let name: String = debug.chars().take_while(|c| c.is_ascii_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

fn salamon_code(e: &SalamonError) -> String {
    match e {
        SalamonError::NotLie(l) => lie_code(l),
        e => format!("salamon.{}", variant(format!("{e:?}"))),
    }
}

fn lie_code(e: &LieError) -> String {
    format!("lie.{}", variant(format!("{e:?}")))
}

fn structure_code(e: &StructureError) -> String {
    match e {
        StructureError::Lie(l) => lie_code(l),
        StructureError::Matrix(m) => format!("matrix.{}", variant(format!("{m:?}"))),
        e => format!("structures.{}", variant(format!("{e:?}"))),
    }
}

fn connection_code(e: &ConnectionError) -> String {
    match e {
        ConnectionError::Structure(s) => structure_code(s),
        ConnectionError::Lie(l) => lie_code(l),
        e => format!("connection.{}", variant(format!("{e:?}"))),
    }
}

impl CommandError {
    /// Module-qualified error code, e.g. `salamon.triangularity`.
    pub fn code(&self) -> String {
        match self {
            CommandError::Json(JsonError::Salamon(e)) => salamon_code(e),
            CommandError::Json(JsonError::Lie(e)) => lie_code(e),
            CommandError::Json(JsonError::Structure(e)) => structure_code(e),
            CommandError::Json(e) => format!("io.{}", variant(format!("{e:?}"))),
            CommandError::Structure(e) => structure_code(e),
            CommandError::Connection(e) => connection_code(e),
            CommandError::Hypercomplex(HypercomplexError::Structure(e)) => structure_code(e),
            CommandError::Hypercomplex(HypercomplexError::Connection(e)) => connection_code(e),
            CommandError::Hypercomplex(e) => format!("hypercomplex.{}", variant(format!("{e:?}"))),
            CommandError::Catalog(CatalogError::Salamon(e)) => salamon_code(e),
            CommandError::Catalog(CatalogError::Structure(e)) => structure_code(e),
            CommandError::Catalog(e) => format!("catalog.{}", variant(format!("{e:?}"))),
            CommandError::Usage(_) => "cli.usage".to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "error": { "code": self.code(), "message": self.to_string() },
            "passed": false,
        })
    }
}

/// A finished command: the report and its overall verdict.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

impl Outcome {
    fn new(passed: bool, mut report: Value) -> Self {
        report["passed"] = json!(passed);
        Self { passed, report }
    }
}

fn defects_json(d: &[PairDefect]) -> Value {
    Value::Array(
        d.iter()
            .map(|p| json!({ "i": p.i + 1, "j": p.j + 1, "defect": vector_to_json(&p.defect) }))
            .collect(),
    )
}

pub fn parse(g: &LieAlgebra) -> Outcome {
    let series: Vec<usize> = g.lower_central_series().iter().map(|s| s.dim()).collect();
    let report = json!({
        "algebra": algebra_to_json(g),
        "center": subspace_to_json(&g.center()),
        "lower_central_series_dims": series,
        "nilpotent": g.is_nilpotent(),
        "salamon": salamon::emit_salamon(g).ok(),
    });
    Outcome::new(true, report)
}

fn j_report(g: &LieAlgebra, j: &Endo) -> Result<(bool, Value), CommandError> {
    let almost = j.dim() == g.dim() && j.is_almost_complex();
    if !almost {
        return Ok((false, json!({ "almost_complex": false })));
    }
    let defects = structures::complex_integrability_defect(g, j)?;
    let series = structures::ascending_series(g, j)?;
    let nilpotent = structures::is_nilpotent_complex(g, j)?;
    Ok((
        defects.is_empty(),
        json!({
            "abelian": structures::is_abelian_complex(g, j)?,
            "almost_complex": true,
            "ascending_series_dims": series.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            "defects": defects_json(&defects),
            "integrable": defects.is_empty(),
            "nilpotent": nilpotent,
        }),
    ))
}

fn e_report(g: &LieAlgebra, e: &Endo) -> Result<(bool, Value), CommandError> {
    let almost = e.dim() == g.dim() && e.is_almost_product();
    if !almost {
        return Ok((false, json!({ "almost_product": false })));
    }
    let defects = structures::product_integrability_defect(g, e)?;
    let (plus, minus) = structures::eigenspaces(e)?;
    Ok((
        defects.is_empty(),
        json!({
            "almost_product": true,
            "defects": defects_json(&defects),
            "eigenspaces": { "minus": subspace_to_json(&minus), "plus": subspace_to_json(&plus) },
            "integrable": defects.is_empty(),
        }),
    ))
}

fn cps_summary(cps: &Cps) -> Value {
    json!({
        "abelian": cps.is_abelian(),
        "central_invariant_ideal": structures::find_central_invariant_ideal(cps).as_ref().map(subspace_to_json),
        "double_type": iso_to_json(cps.double_type()),
        "heisenberg_constant": structures::heisenberg_constant(cps).ok().map(|c| format_rational(&c)),
        "minus": subspace_to_json(cps.minus()),
        "plus": subspace_to_json(cps.plus()),
    })
}

pub fn check_structure(g: &LieAlgebra, file: StructureFile) -> Result<Outcome, CommandError> {
    let mut report = json!({});
    let mut passed = true;
    if let Some(j) = &file.j {
        let (ok, r) = j_report(g, j)?;
        passed &= ok;
        report["j"] = r;
    }
    if let Some(e) = &file.e {
        let (ok, r) = e_report(g, e)?;
        passed &= ok;
        report["e"] = r;
    }
    if let (Some(j), Some(e)) = (file.j, file.e) {
        report["cps"] = match structures::assemble_cps(g.clone(), j, e) {
            Ok(cps) => {
                let mut s = cps_summary(&cps);
                s["valid"] = json!(true);
                s
            }
            Err(err) => {
                passed = false;
                let ce = CommandError::from(err);
                json!({ "valid": false, "error": { "code": ce.code(), "message": ce.to_string() } })
            }
        };
    }
    Ok(Outcome::new(passed, report))
}

pub fn connection_report(cps: &Cps, params: &GeodesicParams) -> Result<Outcome, CommandError> {
    let conn = connection::cp_connection(cps)?;
    let curv = connection::curvature(&conn);
    let pj = connection::parallel_defect(&conn, cps.j()).is_empty();
    let pe = connection::parallel_defect(&conn, cps.e()).is_empty();
    let cert = connection::connection_is_complete_certificate(&conn, params);
    let entries: Vec<Value> = curv
        .nonzero_entries()
        .into_iter()
        .map(|(i, j, k, l, v)| {
            json!({ "x": i + 1, "y": j + 1, "z": k + 1, "component": l + 1, "value": format_rational(&v) })
        })
        .collect();
    let matrices: Vec<Value> = (0..conn.dim()).map(|i| matrix_to_json(&conn.matrix(i))).collect();
    let passed = curv.torsion_free && pj && pe && curv.traceless && curv.is_ricci_flat && cert.verdict;
    let report = json!({
        "completeness": { "method": cert.method_name(), "verdict": cert.verdict },
        "connection": matrices,
        "curvature_nonzero_entries": entries,
        "flat": curv.is_flat,
        "parallel": { "E": pe, "J": pj },
        "ricci_flat": curv.is_ricci_flat,
        "torsion_free": curv.torsion_free,
        "traceless": curv.traceless,
    });
    Ok(Outcome::new(passed, report))
}

fn proof_json(p: &EncodedProof) -> Value {
    json!({
        "center_dim": p.center_dim,
        "generated_by_e1_e2": p.generated_by_e1_e2,
        "invariant_ideal_meets_both": p.invariant_ideal_meets_both,
        "note": "replays the computations of the argument; not an independent proof search",
        "overflow": p.overflow,
        "samples": p.samples,
        "samples_passed": p.samples_passed,
    })
}

pub fn nonexistence_json(r: &NonexistenceReport) -> Value {
    match r {
        NonexistenceReport::CenterTooSmall(d) => json!({ "center_dim": d, "kind": "CenterTooSmall" }),
        NonexistenceReport::EncodedProof(p) => json!({ "kind": "EncodedProof", "stages": proof_json(p) }),
    }
}

pub fn nonexistence(text: &str, seed: u64) -> Result<Outcome, CommandError> {
    let r = catalog::nonexistence_report_seeded(text, seed)?;
    let report = json!({ "obstruction": nonexistence_json(&r), "salamon": salamon::canonicalize(text)? });
    Ok(Outcome::new(r.passed(), report))
}

impl From<SalamonError> for CommandError {
    fn from(e: SalamonError) -> Self {
        CommandError::Json(JsonError::Salamon(e))
    }
}

fn failure_text(f: &RowFailure) -> String {
    match f {
        RowFailure::Witness { index, error } => {
            format!("witness {index} failed at {}: {error}", error.stage().name())
        }
        RowFailure::TargetMismatch { index } => format!("witness {index} targets another row"),
        RowFailure::MissingColumn(c) => format!("no verified witness for {}", COLUMN_NAMES[*c]),
        RowFailure::UnexpectedColumn(c) => format!("witness of type {} in a 'no' cell", COLUMN_NAMES[*c]),
        RowFailure::FlatClass(s) => format!("flat class: {s}"),
        RowFailure::NonFlatGrid { argument } => format!("non-flat argument {argument} fails on the grid"),
        RowFailure::Obstruction(e) => format!("obstruction: {e}"),
        RowFailure::ObstructionKind => "obstruction kind differs from the recorded one".to_string(),
        RowFailure::ObstructionFailed => "nonexistence checks fail".to_string(),
    }
}

fn row_json(r: &RowReport) -> Value {
    json!({
        "admits": r.admits,
        "failures": r.failures.iter().map(failure_text).collect::<Vec<_>>(),
        "flat_class": r.flat_class.name(),
        "obstruction": r.obstruction.as_ref().map(nonexistence_json),
        "passed": r.passed(),
        "salamon": r.salamon,
        "witness_count": r.witness_count,
        "witnesses_verified": r.witnesses_verified,
    })
}

pub fn table_json(t: &TableReport) -> Value {
    json!({
        "columns": COLUMN_NAMES,
        "rows": t.rows.iter().map(row_json).collect::<Vec<_>>(),
    })
}

pub fn verify_catalog(entries: &[CatalogEntry], seed: u64) -> Outcome {
    let t = catalog::verify_entries(entries, seed);
    Outcome::new(t.passed(), table_json(&t))
}

fn endo_table(a: &Endo) -> Value {
    Value::Array(
        hypercomplex::action_table(a)
            .into_iter()
            .map(|(i, v)| json!({ "source": i + 1, "image": vector_to_json(&v) }))
            .collect(),
    )
}

pub fn hypercomplex_report(cps: &Cps) -> Result<Outcome, CommandError> {
    let (h, obata) = hypercomplex::lift_with_obata(cps)?;
    let curv = connection::curvature(&obata);
    let integrable = h
        .all()
        .iter()
        .all(|(_, a)| structures::complex_integrability_defect(h.algebra(), a).is_ok_and(|d| d.is_empty()));
    let report = json!({
        "abelian": hypercomplex::is_abelian_hypercomplex(&h),
        "algebra": algebra_to_json(h.algebra()),
        "integrable": integrable,
        "obata": {
            "flat": curv.is_flat,
            "ricci_flat": curv.is_ricci_flat,
            "torsion_free": curv.torsion_free,
        },
        "structures": { "J1": endo_table(h.j1()), "J2": endo_table(h.j2()), "J3": endo_table(h.j3()) },
    });
    Ok(Outcome::new(integrable && curv.torsion_free, report))
}

pub fn geodesic(cps: &Cps, params: &GeodesicParams) -> Result<Outcome, CommandError> {
    let conn = connection::cp_connection(cps)?;
    let report = nilcps_core::geodesic::quadratic_certificate(&conn.sparse_f64(), params);
    let samples: Vec<Value> = report
        .samples
        .iter()
        .map(|s| json!({ "initial": vector_to_json(&s.initial), "passed": s.passed, "residual": s.residual }))
        .collect();
    let out = json!({
        "integrator": {
            "method": "rk4",
            "random_points": params.random_points,
            "sample_every": params.sample_every,
            "seed": params.seed,
            "step": params.step,
            "t_max": params.t_max,
            "tolerance": params.tolerance,
        },
        "max_residual": report.max_residual,
        "samples": samples,
    });
    Ok(Outcome::new(report.passed, out))
}
