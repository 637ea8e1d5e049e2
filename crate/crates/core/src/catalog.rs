//! The 6-dimensional nilpotent Lie algebras admitting complex product
//! structures, with checkable witnesses.
//!
//! Each witness builds a CPS from a bracket family on the basis
//! `(e1, e2, e3, f1, f2, f3)` with `J e_i = f_i`, `E = +1` on the `e_i` and
//! `-1` on the `f_i`, and carries a basis change to the Salamon form of its
//! row. Columns of the table are the double types `R3⋈R3`, `h3⋈R3`,
//! `h3⋈h3`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{self, ConnectionError, LsaProduct};
use crate::lie::{Iso3, LieAlgebra, LieError, Representation};
use crate::matrix::QMatrix;
use crate::rational::{self, frac, int, QVector, Rational};
use crate::salamon::{self, SalamonError};
use crate::structures::{self, assemble_cps, Cps, Endo, Obstruction, StructureError};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown parameter {name:?} for family {family}")]
    UnknownParam { family: &'static str, name: String },
    #[error("side condition fails: {0}")]
    SideCondition(&'static str),
    #[error("explicit witness carries no structure data")]
    MissingExplicit,
    #[error("{0} is not one of the excluded algebras")]
    NotExcluded(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Salamon(#[from] SalamonError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Quotient `h3 × R`, `[e1,e2] = 0`.
    H3R00,
    /// Quotient `h3 × R`, `[e1,e2] = e3`.
    H3R10,
    /// Quotient `R^4`, `[e1,e2] = 0`.
    R400,
    /// Quotient `R^4`, `[e1,e2] = e3`.
    R410,
    /// Structure given directly by matrices.
    Explicit,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::H3R00,
        Family::H3R10,
        Family::R400,
        Family::R410,
        Family::Explicit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::H3R00 => "H3R_00",
            Family::H3R10 => "H3R_10",
            Family::R400 => "R4_00",
            Family::R410 => "R4_10",
            Family::Explicit => "Explicit",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::H3R00 | Family::H3R10 => &["A", "B", "C", "D", "E", "F"],
            Family::R400 => &["A1", "A2", "B1", "B2", "D1", "D2"],
            Family::R410 => &["A1", "A2", "C1", "C2", "D1", "D2"],
            Family::Explicit => &[],
        }
    }
}

/// Named rational parameters; absent names are zero.
pub type Params = BTreeMap<String, Rational>;

pub fn params(pairs: &[(&str, Rational)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn get(p: &Params, name: &str) -> Rational {
    p.get(name).cloned().unwrap_or_else(Rational::zero)
}

// family basis indices
const E1: usize = 0;
const E2: usize = 1;
const E3: usize = 2;
const F1: usize = 3;
const F2: usize = 4;
const F3: usize = 5;

fn fv(terms: &[(usize, Rational)]) -> QVector {
    rational::combo(6, terms)
}

fn family_j_e() -> (Endo, Endo) {
    let u = |i| rational::unit(6, i);
    let j = Endo::complex_from_pairs(6, &[(u(E1), u(F1)), (u(E2), u(F2)), (u(E3), u(F3))]).expect("basis");
    let e = Endo::product_from_split(6, &[u(E1), u(E2), u(E3)], &[u(F1), u(F2), u(F3)]).expect("basis");
    (j, e)
}

/// The bracket family with `J e_i = f_i` and `E = diag(1,1,1,-1,-1,-1)`.
pub fn build_family(family: Family, p: &Params) -> Result<(LieAlgebra, Cps), CatalogError> {
    for name in p.keys() {
        if !family.param_names().contains(&name.as_str()) {
            return Err(CatalogError::UnknownParam {
                family: family.name(),
                name: name.clone(),
            });
        }
    }
    let g = |n: &str| get(p, n);
    let one = Rational::one;
    let brackets: Vec<(usize, usize, QVector)> = match family {
        Family::H3R00 | Family::H3R10 => {
            if g("A").is_zero() && g("C").is_zero() {
                return Err(CatalogError::SideCondition("A^2 + C^2 != 0"));
            }
            let mut b = alloc::vec![
                (E1, F1, fv(&[(E2, g("A")), (E3, g("B")), (F2, g("C")), (F3, g("D"))])),
                (E2, F1, fv(&[(E3, g("E")), (F3, g("F"))])),
            ];
            if family == Family::H3R10 {
                b.push((E1, E2, fv(&[(E3, one())])));
                b.push((E1, F2, fv(&[(E3, g("E")), (F3, g("F") + one())])));
            } else {
                b.push((E1, F2, fv(&[(E3, g("E")), (F3, g("F"))])));
            }
            b
        }
        Family::R400 => alloc::vec![
            (E1, F1, fv(&[(E3, g("A1")), (F3, g("A2"))])),
            (E1, F2, fv(&[(E3, g("B1")), (F3, g("B2"))])),
            (E2, F1, fv(&[(E3, g("B1")), (F3, g("B2"))])),
            (E2, F2, fv(&[(E3, g("D1")), (F3, g("D2"))])),
        ],
        Family::R410 => alloc::vec![
            (E1, E2, fv(&[(E3, one())])),
            (E1, F1, fv(&[(E3, g("A1")), (F3, g("A2"))])),
            (E2, F1, fv(&[(E3, g("C1")), (F3, g("C2"))])),
            (E1, F2, fv(&[(E3, g("C1")), (F3, g("C2") + one())])),
            (E2, F2, fv(&[(E3, g("D1")), (F3, g("D2"))])),
        ],
        Family::Explicit => return Err(CatalogError::MissingExplicit),
    };
    let alg = LieAlgebra::from_brackets(6, &brackets)?;
    if matches!(family, Family::H3R00 | Family::H3R10) && !rational::is_zero_vec(alg.bracket_basis(E2, F2)) {
        return Err(CatalogError::SideCondition("[e2,f2] = 0"));
    }
    let (j, e) = family_j_e();
    let cps = assemble_cps(alg.clone(), j, e)?;
    Ok((alg, cps))
}

/// `[e1,f2] - [e2,f1] = beta e3 + alpha f3` with `(alpha, beta)` read off the
/// family.
pub fn family_constraint_holds(family: Family, g: &LieAlgebra) -> bool {
    let alpha = match family {
        Family::H3R10 | Family::R410 => int(1),
        _ => int(0),
    };
    let lhs = rational::sub(g.bracket_basis(E1, F2), g.bracket_basis(E2, F1));
    lhs == fv(&[(F3, alpha)])
}

/// Closed-form flatness of the canonical connection on a family, where
/// known: `AF = CE` for `H3R_00`, `A(2F+1) = 2CE` for `H3R_10` (with
/// `B = 0`), always flat on the `R4` families.
pub fn family_flatness_condition(family: Family, p: &Params) -> Option<bool> {
    let g = |n: &str| get(p, n);
    match family {
        Family::H3R00 => Some(g("A") * g("F") == g("C") * g("E")),
        Family::H3R10 if g("B").is_zero() => Some(g("A") * (int(2) * g("F") + int(1)) == int(2) * g("C") * g("E")),
        Family::R400 | Family::R410 => Some(true),
        _ => None,
    }
}

/// Closed form of the `e3` coefficient of `R(e1,f1)e1` for the `H3R`
/// families: `-2(AF-CE)` and `-(2(AF-CE)+A)`.
pub fn family_curvature_e3(family: Family, p: &Params) -> Option<Rational> {
    let g = |n: &str| get(p, n);
    let d = g("A") * g("F") - g("C") * g("E");
    match family {
        Family::H3R00 => Some(int(-2) * d),
        Family::H3R10 => Some(-(int(2) * d + g("A"))),
        _ => None,
    }
}

/// A CPS given by matrices on an algebra in Salamon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitCps {
    pub salamon: String,
    pub j: QMatrix,
    pub e: QMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub family: Family,
    pub params: Params,
    pub explicit: Option<ExplicitCps>,
    /// Constant `c` for replacing `E` by `pE + qJE` before the checks.
    pub rotation: Option<Rational>,
    /// Columns are the Salamon basis in family coordinates.
    pub basis_change: QMatrix,
    pub target: String,
    pub double_type: (Iso3, Iso3),
    pub flat: bool,
}

impl Witness {
    /// The CPS in family coordinates, rotation applied.
    pub fn build(&self) -> Result<Cps, CatalogError> {
        let cps = match self.family {
            Family::Explicit => {
                let x = self.explicit.as_ref().ok_or(CatalogError::MissingExplicit)?;
                let g = salamon::parse_salamon(&x.salamon)?;
                assemble_cps(g, Endo::new(x.j.clone())?, Endo::new(x.e.clone())?)?
            }
            f => build_family(f, &self.params)?.1,
        };
        match &self.rotation {
            None => Ok(cps),
            Some(c) => {
                let e = structures::rotate_product(&cps, c)?;
                Ok(assemble_cps(cps.algebra().clone(), cps.j().clone(), e)?)
            }
        }
    }

    /// The CPS transported to the Salamon basis.
    pub fn build_in_target_basis(&self) -> Result<Cps, CatalogError> {
        Ok(self.build()?.change_basis(&self.basis_change)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlatClass {
    FlatOnly,
    NonFlatOnly,
    Both,
    NoCps,
}

impl FlatClass {
    pub fn name(self) -> &'static str {
        match self {
            FlatClass::FlatOnly => "FlatOnly",
            FlatClass::NonFlatOnly => "NonFlatOnly",
            FlatClass::Both => "Both",
            FlatClass::NoCps => "NoCPS",
        }
    }
}

/// Why a row has no flat structure: within the family case producing the
/// row, the flatness condition contradicts the case constraints. `holds`
/// decides membership in the case; `verify_table` checks on a grid that
/// every member is non-flat.
#[derive(Debug, Clone, Copy)]
pub struct NonFlatArgument {
    pub id: &'static str,
    pub family: Family,
    pub description: &'static str,
    pub holds: fn(&Params) -> bool,
}

impl PartialEq for NonFlatArgument {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for NonFlatArgument {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub salamon: String,
    /// `(R3⋈R3, h3⋈R3, h3⋈h3)`
    pub admits: [bool; 3],
    pub witnesses: Vec<Witness>,
    pub flat_class: FlatClass,
    pub nonflat_arguments: Vec<NonFlatArgument>,
    /// Set exactly on the excluded algebras.
    pub obstruction: Option<ObstructionKind>,
}

/// How nonexistence of a CPS is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObstructionKind {
    CenterTooSmall,
    EncodedProof,
}

impl ObstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ObstructionKind::CenterTooSmall => "CenterTooSmall",
            ObstructionKind::EncodedProof => "EncodedProof",
        }
    }
}

/// Table column of a double type, ignoring the order of the halves.
pub fn column_of(t: (Iso3, Iso3)) -> Option<usize> {
    use Iso3::*;
    match t {
        (Abelian3, Abelian3) => Some(0),
        (Heisenberg3, Abelian3) | (Abelian3, Heisenberg3) => Some(1),
        (Heisenberg3, Heisenberg3) => Some(2),
        _ => None,
    }
}

pub const COLUMN_NAMES: [&str; 3] = ["R3xR3", "h3xR3", "h3xh3"];

pub const EXCLUDED: [&str; 3] = ["(0,0,0,12,23,14-35)", "(0,0,12,13,23,14+25)", "(0,0,0,12,13+42,14+23)"];

/// Builds a witness, evaluating the basis vectors on the family algebra.
struct W {
    family: Family,
    params: Params,
    rotation: Option<Rational>,
    flat: bool,
    double_type: (Iso3, Iso3),
}

fn family_witness(
    target: &str,
    w: W,
    basis: impl Fn(&LieAlgebra, &dyn Fn(&str) -> Rational) -> Vec<QVector>,
) -> Witness {
    let (g, _) = build_family(w.family, &w.params).expect("catalog parameters are valid");
    let p = |n: &str| get(&w.params, n);
    let cols = basis(&g, &p);
    Witness {
        family: w.family,
        params: w.params,
        explicit: None,
        rotation: w.rotation,
        basis_change: QMatrix::from_columns(6, &cols).expect("six vectors"),
        target: target.to_string(),
        double_type: w.double_type,
        flat: w.flat,
    }
}

fn u(i: usize) -> QVector {
    rational::unit(6, i)
}

fn m(v: QVector) -> QVector {
    rational::neg(&v)
}

fn sc(c: Rational, v: QVector) -> QVector {
    rational::scale(&c, &v)
}

fn plus(a: QVector, b: QVector) -> QVector {
    rational::add(&a, &b)
}

fn br(g: &LieAlgebra, i: usize, j: usize) -> QVector {
    g.bracket_basis(i, j).to_vec()
}

const AA: (Iso3, Iso3) = (Iso3::Abelian3, Iso3::Abelian3);
const HA: (Iso3, Iso3) = (Iso3::Heisenberg3, Iso3::Abelian3);
const HH: (Iso3, Iso3) = (Iso3::Heisenberg3, Iso3::Heisenberg3);

fn w(family: Family, ps: &[(&str, Rational)], flat: bool, double_type: (Iso3, Iso3)) -> W {
    W {
        family,
        params: params(ps),
        rotation: None,
        flat,
        double_type,
    }
}

/// Same family data with `E` replaced by `JE`.
fn rotated(mut x: W) -> W {
    x.rotation = Some(int(1));
    x.double_type = HH;
    x
}

/// `v1 = Ae1 + Cf1, v2 = -f1, v3 = Fe3 - Ef3, v4 = Af2, v5 = A[e1,f1], v6 = -A^2[e2,f1]`
fn basis_h3r00(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    let a = p("A");
    alloc::vec![
        fv(&[(E1, a.clone()), (F1, p("C"))]),
        m(u(F1)),
        fv(&[(E3, p("F")), (F3, -p("E"))]),
        sc(a.clone(), u(F2)),
        sc(a.clone(), br(g, E1, F1)),
        sc(-(&a * &a), br(g, E2, F1)),
    ]
}

/// `E = F = 0`: `(-e1, f1, e2, [e1,f1], e3, Ae3 + Cf3)`
fn basis_row9(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    alloc::vec![
        m(u(E1)),
        u(F1),
        u(E2),
        br(g, E1, F1),
        u(E3),
        fv(&[(E3, p("A")), (F3, p("C"))])
    ]
}

/// `E = 0, F = -1, A = 0`: `(e1, e2, f1, -e3, -[e1,f1], f3)`
fn basis_row10(g: &LieAlgebra, _: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    alloc::vec![u(E1), u(E2), u(F1), m(u(E3)), m(br(g, E1, F1)), u(F3)]
}

/// `E = 0, F = -1, A != 0`: `(-e1, f1, f2, [e1,f1], Ae3, -Af3)`
fn basis_row11(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    let a = p("A");
    alloc::vec![
        m(u(E1)),
        u(F1),
        u(F2),
        br(g, E1, F1),
        sc(a.clone(), u(E3)),
        sc(-a, u(F3))
    ]
}

/// `E != 0, AF != CE`, with `v3, v5` scaled by `s`:
/// `(f1/E, Ee1 + (F+1)f1, s(Ee2 + Ff2), [e1,f1], s[e2,f1], (AF-CE)[e1,f2])`
fn basis_row12_13(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational, s: Rational) -> Vec<QVector> {
    let (a, c, e, f) = (p("A"), p("C"), p("E"), p("F"));
    alloc::vec![
        sc(Rational::one() / &e, u(F1)),
        fv(&[(E1, e.clone()), (F1, &f + Rational::one())]),
        sc(s.clone(), fv(&[(E2, e.clone()), (F2, f.clone())])),
        br(g, E1, F1),
        sc(s, br(g, E2, F1)),
        sc(&a * &f - &c * &e, br(g, E1, F2)),
    ]
}

/// `E = 0, A = 0, F != 0, -1`, with `k = C(F+1)/F`:
/// `(-e1, f1, k e2, [e1,f1], k e3, C(F+1) f3)`
fn basis_row14(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    let cf = p("C") * (p("F") + Rational::one());
    let k = &cf / p("F");
    alloc::vec![
        m(u(E1)),
        u(F1),
        sc(k.clone(), u(E2)),
        br(g, E1, F1),
        sc(k, u(E3)),
        sc(cf, u(F3))
    ]
}

/// `E = 0, A != 0, F != 0, -1`:
/// `(-e1, f1, -AF/(F+1) f2, [e1,f1], Ae3 + C(F+1)f3, -AF f3)`
fn basis_row15(g: &LieAlgebra, p: &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    let (a, c, f) = (p("A"), p("C"), p("F"));
    let f1 = &f + Rational::one();
    alloc::vec![
        m(u(E1)),
        u(F1),
        sc(-(&a * &f) / &f1, u(F2)),
        br(g, E1, F1),
        fv(&[(E3, a.clone()), (F3, &c * &f1)]),
        sc(-(&a * &f), u(F3)),
    ]
}

fn fixed(cols: Vec<QVector>) -> impl Fn(&LieAlgebra, &dyn Fn(&str) -> Rational) -> Vec<QVector> {
    move |_, _| cols.clone()
}

fn explicit_witness(target: &str, j: &Endo, e: &Endo, double_type: (Iso3, Iso3), flat: bool) -> Witness {
    Witness {
        family: Family::Explicit,
        params: Params::new(),
        explicit: Some(ExplicitCps {
            salamon: target.to_string(),
            j: j.matrix().clone(),
            e: e.matrix().clone(),
        }),
        rotation: None,
        basis_change: QMatrix::identity(6),
        target: target.to_string(),
        double_type,
        flat,
    }
}

fn nonflat_row11(p: &Params) -> bool {
    get(p, "E").is_zero() && get(p, "F") == int(-1) && !get(p, "A").is_zero() && get(p, "B").is_zero()
}

fn nonflat_row12_generic(p: &Params) -> bool {
    let d = get(p, "A") * get(p, "F") - get(p, "C") * get(p, "E");
    !get(p, "E").is_zero() && !d.is_zero() && get(p, "A").is_zero() && get(p, "B").is_zero()
}

fn nonflat_row12_degenerate(p: &Params) -> bool {
    let d = get(p, "A") * get(p, "F") - get(p, "C") * get(p, "E");
    !get(p, "E").is_zero() && d.is_zero() && get(p, "B").is_zero()
}

/// The fifteen rows.
pub fn catalog() -> Vec<CatalogEntry> {
    use Family::*;
    let one = || int(1);
    let mut rows = Vec::new();

    let s = "(0,0,0,0,0,0)";
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, false, false],
        witnesses: alloc::vec![family_witness(
            s,
            w(R400, &[], true, AA),
            fixed((0..6).map(u).collect())
        )],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,0,12)";
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, false, false],
        witnesses: alloc::vec![family_witness(
            s,
            w(R400, &[("A1", one())], true, AA),
            fixed(alloc::vec![u(E1), u(F1), u(E2), u(F2), u(F3), m(u(E3))]),
        )],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,0,12+34)";
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, false, false],
        witnesses: alloc::vec![family_witness(
            s,
            w(R400, &[("A1", one()), ("D1", one())], true, AA),
            fixed(alloc::vec![u(E1), u(F1), u(E2), u(F2), u(F3), m(u(E3))]),
        )],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,12,14+25)";
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, false, false],
        witnesses: alloc::vec![
            family_witness(s, w(H3R00, &[("A", one()), ("E", one())], true, AA), basis_h3r00),
            family_witness(s, w(H3R00, &[("A", one()), ("F", one())], false, AA), basis_h3r00),
        ],
        flat_class: FlatClass::Both,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,12,13)";
    let b5 = || fixed(alloc::vec![u(E1), u(E2), u(F2), u(F1), m(u(E3)), m(u(F3))]);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, w(R410, &[], true, HA), b5()),
            family_witness(s, rotated(w(R410, &[], true, HA)), b5()),
        ],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,13+42,14+23)";
    let hc = heisenberg_complex_examples();
    let half = || frac(-1, 2);
    let b6 = || {
        fixed(alloc::vec![
            u(F2),
            u(F1),
            plus(u(E1), m(u(F2))),
            plus(u(E2), u(F1)),
            sc(frac(1, 2), u(F3)),
            sc(frac(-1, 2), u(E3)),
        ])
    };
    let r410_6 = || w(R410, &[("A1", half()), ("C2", half()), ("D1", half())], true, HA);
    let mut row6 = alloc::vec![
        family_witness(
            s,
            w(R400, &[("A1", one()), ("D1", int(-1)), ("B2", one())], true, AA),
            fixed(alloc::vec![u(E1), u(E2), u(F1), u(F2), m(u(E3)), m(u(F3))]),
        ),
        family_witness(s, r410_6(), b6()),
        family_witness(s, rotated(r410_6()), b6()),
    ];
    for (i, (_, cps)) in hc.iter().enumerate() {
        let t = [AA, (Iso3::Abelian3, Iso3::Heisenberg3), HH][i];
        row6.push(explicit_witness(s, cps.j(), cps.e(), t, true));
    }
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, true, true],
        witnesses: row6,
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,12,14+23)";
    let b7 = || {
        fixed(alloc::vec![
            u(E1),
            u(E2),
            u(F1),
            sc(frac(1, 2), u(F2)),
            m(u(E3)),
            m(u(F3))
        ])
    };
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, true, true],
        witnesses: alloc::vec![
            family_witness(
                s,
                w(R400, &[("A1", one()), ("B2", one())], true, AA),
                fixed(alloc::vec![u(E1), u(F1), m(u(E2)), u(F2), m(u(E3)), m(u(F3))]),
            ),
            family_witness(s, w(R410, &[("C2", one())], true, HA), b7()),
            family_witness(s, rotated(w(R410, &[("C2", one())], true, HA)), b7()),
        ],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,0,12,34)";
    let r410_8 = || w(R410, &[("C2", int(-1)), ("A2", one()), ("D1", one())], true, HA);
    let b8 = || {
        fixed(alloc::vec![
            plus(plus(u(E1), u(E2)), u(F2)),
            u(F2),
            plus(u(E1), u(F2)),
            u(F1),
            m(u(E3)),
            m(u(F3)),
        ])
    };
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [true, true, true],
        witnesses: alloc::vec![
            family_witness(
                s,
                w(R400, &[("A1", one()), ("D2", one())], true, AA),
                fixed(alloc::vec![u(E1), u(F1), u(E2), u(F2), m(u(E3)), m(u(F3))]),
            ),
            family_witness(s, r410_8(), b8()),
            family_witness(s, rotated(r410_8()), b8()),
        ],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,12,13,14)";
    let flat9 = || w(H3R10, &[("C", one())], true, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, flat9(), basis_row9),
            family_witness(s, w(H3R10, &[("A", one()), ("C", one())], false, HA), basis_row9),
            family_witness(s, rotated(flat9()), basis_row9),
        ],
        flat_class: FlatClass::Both,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,12,13,23)";
    let p10 = || w(H3R10, &[("C", one()), ("F", int(-1))], true, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, p10(), basis_row10),
            family_witness(s, rotated(p10()), basis_row10),
        ],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,12,14,24)";
    let p11 = || w(H3R10, &[("A", one()), ("F", int(-1))], false, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, p11(), basis_row11),
            family_witness(s, rotated(p11()), basis_row11),
        ],
        flat_class: FlatClass::NonFlatOnly,
        nonflat_arguments: alloc::vec![NonFlatArgument {
            id: "h3r10-e0-f-1",
            family: H3R10,
            description: "E = 0, F = -1, A != 0: flatness needs A(2F+1) = 2CE, i.e. -A = 0",
            holds: nonflat_row11,
        }],
        obstruction: None,
    });

    let s = "(0,0,0,12,13,24)";
    let p12 = || w(H3R10, &[("C", one()), ("E", one())], false, HA);
    let b12 = |g: &LieAlgebra, p: &dyn Fn(&str) -> Rational| basis_row12_13(g, p, int(1));
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![family_witness(s, p12(), b12), family_witness(s, rotated(p12()), b12)],
        flat_class: FlatClass::NonFlatOnly,
        nonflat_arguments: alloc::vec![
            NonFlatArgument {
                id: "h3r10-e-nonzero-a0",
                family: H3R10,
                description: "E != 0, AF != CE, A = 0: flatness needs 0 = 2CE, forcing C = 0 = A",
                holds: nonflat_row12_generic,
            },
            NonFlatArgument {
                id: "h3r10-e-nonzero-degenerate",
                family: H3R10,
                description: "E != 0, AF = CE: flatness needs A(2F+1) = 2AF, i.e. A = 0, but then C = 0",
                holds: nonflat_row12_degenerate,
            },
        ],
        obstruction: None,
    });

    let s = "(0,0,0,12,13+14,24)";
    let b13 = |g: &LieAlgebra, p: &dyn Fn(&str) -> Rational| {
        let k = p("A") / p("E");
        basis_row12_13(g, p, k)
    };
    let flat13 = || w(H3R10, &[("A", one()), ("E", one()), ("C", frac(1, 2))], true, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, flat13(), b13),
            family_witness(s, w(H3R10, &[("A", one()), ("E", one()), ("F", one())], false, HA), b13),
            family_witness(s, rotated(flat13()), b13),
        ],
        flat_class: FlatClass::Both,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,12,13,14+23)";
    let p14 = || w(H3R10, &[("C", one()), ("F", one())], true, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, p14(), basis_row14),
            family_witness(s, rotated(p14()), basis_row14),
        ],
        flat_class: FlatClass::FlatOnly,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    let s = "(0,0,0,12,14,13+42)";
    let flat15 = || w(H3R10, &[("A", one()), ("F", frac(-1, 2))], true, HA);
    rows.push(CatalogEntry {
        salamon: s.into(),
        admits: [false, true, true],
        witnesses: alloc::vec![
            family_witness(s, flat15(), basis_row15),
            family_witness(s, w(H3R10, &[("A", one()), ("F", one())], false, HA), basis_row15),
            family_witness(s, rotated(flat15()), basis_row15),
        ],
        flat_class: FlatClass::Both,
        nonflat_arguments: Vec::new(),
        obstruction: None,
    });

    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Build,
    Cps,
    Basis,
    DoubleType,
    Flatness,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Build => "build",
            Stage::Cps => "cps",
            Stage::Basis => "basis",
            Stage::DoubleType => "double_type",
            Stage::Flatness => "flatness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("family does not build: {0}")]
    Build(CatalogError),
    #[error("not a complex product structure: {0}")]
    Cps(StructureError),
    #[error("basis change is singular or not a Lie basis change: {0}")]
    BasisChange(LieError),
    #[error("target {0:?} does not parse: {1}")]
    Target(String, SalamonError),
    #[error("structure constants differ from the target at [v{i},v{j}]")]
    BracketMismatch { i: usize, j: usize },
    #[error("double type {found:?} differs from the recorded {expected:?}")]
    DoubleType {
        expected: (Iso3, Iso3),
        found: Option<(Iso3, Iso3)>,
    },
    #[error("curvature flatness {found} differs from the recorded {expected}")]
    Flatness { expected: bool, found: bool },
    #[error("connection failure: {0}")]
    Connection(ConnectionError),
}

impl WitnessError {
    pub fn stage(&self) -> Stage {
        match self {
            WitnessError::Build(_) => Stage::Build,
            WitnessError::Cps(_) => Stage::Cps,
            WitnessError::BasisChange(_) | WitnessError::Target(..) | WitnessError::BracketMismatch { .. } => {
                Stage::Basis
            }
            WitnessError::DoubleType { .. } => Stage::DoubleType,
            WitnessError::Flatness { .. } | WitnessError::Connection(_) => Stage::Flatness,
        }
    }
}

/// Data gathered while verifying a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedWitness {
    pub cps: Cps,
    pub double_type: (Iso3, Iso3),
    pub flat: bool,
}

/// Checks, in order: the family builds; the CPS is valid; the basis change
/// yields exactly the target structure constants; the double type; the
/// flatness of the canonical connection.
pub fn verify_witness(entry: &CatalogEntry, w: &Witness) -> Result<VerifiedWitness, WitnessError> {
    let cps = match w.build() {
        Ok(c) => c,
        Err(CatalogError::Structure(e)) => return Err(WitnessError::Cps(e)),
        Err(e) => return Err(WitnessError::Build(e)),
    };
    let target_text = if w.target.is_empty() { &entry.salamon } else { &w.target };
    let target = salamon::parse_salamon(target_text).map_err(|e| WitnessError::Target(target_text.clone(), e))?;
    let moved = cps
        .algebra()
        .change_basis(&w.basis_change)
        .map_err(WitnessError::BasisChange)?;
    for i in 0..6 {
        for j in i + 1..6 {
            if moved.bracket_basis(i, j) != target.bracket_basis(i, j) {
                return Err(WitnessError::BracketMismatch { i: i + 1, j: j + 1 });
            }
        }
    }
    let found = cps.double_type();
    if found != Some(w.double_type) {
        return Err(WitnessError::DoubleType {
            expected: w.double_type,
            found,
        });
    }
    let conn = connection::cp_connection(&cps).map_err(WitnessError::Connection)?;
    let flat = connection::curvature(&conn).is_flat;
    if flat != w.flat {
        return Err(WitnessError::Flatness {
            expected: w.flat,
            found: flat,
        });
    }
    Ok(VerifiedWitness {
        cps,
        double_type: w.double_type,
        flat,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowFailure {
    Witness { index: usize, error: WitnessError },
    TargetMismatch { index: usize },
    MissingColumn(usize),
    UnexpectedColumn(usize),
    FlatClass(&'static str),
    NonFlatGrid { argument: usize },
    Obstruction(CatalogError),
    ObstructionKind,
    ObstructionFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub salamon: String,
    pub admits: [bool; 3],
    pub witnesses_verified: usize,
    pub witness_count: usize,
    pub flat_class: FlatClass,
    pub obstruction: Option<NonexistenceReport>,
    pub failures: Vec<RowFailure>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
    }
}

/// Small grid of H3R parameter tuples (`B = 0`), used for family-level checks.
pub fn h3r_grid() -> Vec<Params> {
    let vals = [int(-1), frac(-1, 2), int(0), int(1)];
    let mut out = Vec::new();
    for a in &vals {
        for c in &vals {
            if a.is_zero() && c.is_zero() {
                continue;
            }
            for e in &vals {
                for f in &vals {
                    out.push(params(&[
                        ("A", a.clone()),
                        ("C", c.clone()),
                        ("E", e.clone()),
                        ("F", f.clone()),
                    ]));
                }
            }
        }
    }
    out
}

pub fn verify_entry(entry: &CatalogEntry, seed: u64) -> RowReport {
    let mut failures = Vec::new();
    let mut obstruction = None;
    let mut verified = Vec::new();
    for (index, w) in entry.witnesses.iter().enumerate() {
        if !w.target.is_empty() && w.target != entry.salamon {
            failures.push(RowFailure::TargetMismatch { index });
        }
        match verify_witness(entry, w) {
            Ok(v) => verified.push(v),
            Err(error) => failures.push(RowFailure::Witness { index, error }),
        }
    }
    let mut seen = [false; 3];
    for v in &verified {
        if let Some(c) = column_of(v.double_type) {
            seen[c] = true;
        }
    }
    for c in 0..3 {
        if entry.admits[c] && !seen[c] {
            failures.push(RowFailure::MissingColumn(c));
        }
        if !entry.admits[c] && seen[c] {
            failures.push(RowFailure::UnexpectedColumn(c));
        }
    }
    let any_flat = verified.iter().any(|v| v.flat);
    let any_nonflat = verified.iter().any(|v| !v.flat);
    match entry.flat_class {
        FlatClass::FlatOnly => {
            if any_nonflat {
                failures.push(RowFailure::FlatClass("non-flat witness in a flat-only row"));
            }
            let closed_forms_ok = entry
                .witnesses
                .iter()
                .all(|w| family_flatness_condition(w.family, &w.params).unwrap_or(true));
            if !closed_forms_ok {
                failures.push(RowFailure::FlatClass("family flatness condition fails on a witness"));
            }
        }
        FlatClass::Both => {
            if !(any_flat && any_nonflat) {
                failures.push(RowFailure::FlatClass("needs one flat and one non-flat witness"));
            }
        }
        FlatClass::NonFlatOnly => {
            if any_flat || !any_nonflat {
                failures.push(RowFailure::FlatClass("needs non-flat witnesses only"));
            }
            if entry.nonflat_arguments.is_empty() {
                failures.push(RowFailure::FlatClass("no recorded argument"));
            }
            for (argument, arg) in entry.nonflat_arguments.iter().enumerate() {
                let ok = h3r_grid().iter().filter(|p| (arg.holds)(p)).all(|p| {
                    build_family(arg.family, p)
                        .ok()
                        .and_then(|(_, cps)| connection::cp_connection(&cps).ok())
                        .is_some_and(|conn| !connection::curvature(&conn).is_flat)
                });
                if !ok {
                    failures.push(RowFailure::NonFlatGrid { argument });
                }
            }
        }
        FlatClass::NoCps => {
            if !entry.witnesses.is_empty() {
                failures.push(RowFailure::FlatClass("witness on an excluded algebra"));
            }
            match nonexistence_report_seeded(&entry.salamon, seed) {
                Ok(r) => {
                    if Some(r.kind()) != entry.obstruction {
                        failures.push(RowFailure::ObstructionKind);
                    }
                    if !r.passed() {
                        failures.push(RowFailure::ObstructionFailed);
                    }
                    obstruction = Some(r);
                }
                Err(e) => failures.push(RowFailure::Obstruction(e)),
            }
        }
    }
    if entry.flat_class != FlatClass::NoCps && entry.obstruction.is_some() {
        failures.push(RowFailure::ObstructionKind);
    }
    RowReport {
        salamon: entry.salamon.clone(),
        admits: entry.admits,
        witnesses_verified: verified.len(),
        witness_count: entry.witnesses.len(),
        flat_class: entry.flat_class,
        obstruction,
        failures,
    }
}

pub fn verify_entries(entries: &[CatalogEntry], seed: u64) -> TableReport {
    TableReport {
        rows: entries.iter().map(|e| verify_entry(e, seed)).collect(),
    }
}

/// Verifies the built-in table and the three excluded algebras.
pub fn verify_table() -> TableReport {
    verify_entries(&table(), 0)
}

/// The three algebras without a CPS.
pub fn excluded_entries() -> Vec<CatalogEntry> {
    EXCLUDED
        .iter()
        .zip([
            ObstructionKind::CenterTooSmall,
            ObstructionKind::CenterTooSmall,
            ObstructionKind::EncodedProof,
        ])
        .map(|(s, kind)| CatalogEntry {
            salamon: s.to_string(),
            admits: [false; 3],
            witnesses: Vec::new(),
            flat_class: FlatClass::NoCps,
            nonflat_arguments: Vec::new(),
            obstruction: Some(kind),
        })
        .collect()
}

/// The fifteen rows followed by the three excluded algebras.
pub fn table() -> Vec<CatalogEntry> {
    let mut t = catalog();
    t.extend(excluded_entries());
    t
}

/// The built-in non-flat arguments, for lookup by id.
pub fn nonflat_argument(id: &str) -> Option<NonFlatArgument> {
    catalog()
        .into_iter()
        .flat_map(|e| e.nonflat_arguments)
        .find(|a| a.id == id)
}

/// Replay of the nonexistence argument for `(0,0,0,12,13+42,14+23)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedProof {
    /// Dimension of the subalgebra generated by `e1, e2`.
    pub generated_by_e1_e2: usize,
    pub overflow: bool,
    /// Random `x` tried, and how many gave a 2x2 block with determinant
    /// `±(x1² + x2²)` and forced `y3 = y4 = 0`.
    pub samples: usize,
    pub samples_passed: usize,
    pub center_dim: usize,
    /// On every catalog witness the invariant central ideal meets both
    /// eigenspaces, so the center cannot lie inside one of them.
    pub invariant_ideal_meets_both: bool,
}

impl EncodedProof {
    pub fn passed(&self) -> bool {
        self.overflow && self.samples_passed == self.samples && self.center_dim == 2 && self.invariant_ideal_meets_both
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonexistenceReport {
    CenterTooSmall(usize),
    EncodedProof(EncodedProof),
}

impl NonexistenceReport {
    pub fn kind(&self) -> ObstructionKind {
        match self {
            NonexistenceReport::CenterTooSmall(_) => ObstructionKind::CenterTooSmall,
            NonexistenceReport::EncodedProof(_) => ObstructionKind::EncodedProof,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            NonexistenceReport::CenterTooSmall(d) => *d < 2,
            NonexistenceReport::EncodedProof(p) => p.passed(),
        }
    }
}

pub fn nonexistence_report(salamon_text: &str) -> Result<NonexistenceReport, CatalogError> {
    nonexistence_report_seeded(salamon_text, 0)
}

pub fn nonexistence_report_seeded(salamon_text: &str, seed: u64) -> Result<NonexistenceReport, CatalogError> {
    let canon = salamon::canonicalize(salamon_text)?;
    let is = |s: &str| salamon::canonicalize(s).map(|c| c == canon).unwrap_or(false);
    if !EXCLUDED.iter().any(|s| is(s)) {
        return Err(CatalogError::NotExcluded(salamon_text.to_string()));
    }
    let g = salamon::parse_salamon(salamon_text)?;
    for o in structures::cps_obstructions(&g)? {
        match o {
            Obstruction::CenterTooSmall(d) => return Ok(NonexistenceReport::CenterTooSmall(d)),
        }
    }
    Ok(NonexistenceReport::EncodedProof(encoded_proof(&g, seed)))
}

fn encoded_proof(g: &LieAlgebra, seed: u64) -> EncodedProof {
    let n = 6;
    let generated = g.generated_subalgebra(&[u(0), u(1)]).dim();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 200;
    let mut passed = 0;
    let ys = Subspace::coordinate(n, &[2, 3, 4, 5]);
    for _ in 0..samples {
        let x: QVector = loop {
            let x: QVector = (0..n)
                .map(|_| frac(rng.gen_range(-20..=20), rng.gen_range(1..=5)))
                .collect();
            if !(x[0].is_zero() && x[1].is_zero()) {
                break x;
            }
        };
        // y with y1 = y2 = 0: [x, y] on the e5, e6 components is linear in (y3, y4)
        let col = |k: usize| g.bracket(&x, &u(k));
        let block = QMatrix::from_rows(&[
            alloc::vec![col(2)[4].clone(), col(3)[4].clone()],
            alloc::vec![col(2)[5].clone(), col(3)[5].clone()],
        ])
        .expect("2x2");
        let det = block.determinant().expect("square");
        let norm = &x[0] * &x[0] + &x[1] * &x[1];
        let det_ok = det == norm || det == -norm;
        // {y in <e3..e6> : [x,y] = 0} = <e5, e6>
        let ad = g.ad(&x);
        let kernel = ad.kernel().intersect(&ys).expect("same ambient");
        if det_ok && kernel == Subspace::coordinate(n, &[4, 5]) {
            passed += 1;
        }
    }

    let invariant_ideal_meets_both = catalog().iter().flat_map(|e| e.witnesses.clone()).all(|w| {
        let Ok(cps) = w.build() else { return false };
        let u = structures::largest_invariant_central(&cps);
        let a = u.intersect(cps.plus()).expect("same ambient").dim();
        let b = u.intersect(cps.minus()).expect("same ambient").dim();
        a == b && a >= 1 && a + b == u.dim()
    });

    EncodedProof {
        generated_by_e1_e2: generated,
        overflow: generated > 3,
        samples,
        samples_passed: passed,
        center_dim: g.center().dim(),
        invariant_ideal_meets_both,
    }
}

/// `n4` with `[e1,e2] = e3`, `[e1,e3] = e4` and Fried's left-symmetric
/// product.
pub fn fried_example() -> (LieAlgebra, LsaProduct) {
    let n4 = n4();
    let mats = fried_matrices();
    let conn = connection::Connection::from_matrices(n4.clone(), &mats).expect("4x4");
    let p = LsaProduct::from_connection(conn).expect("left-symmetric");
    (n4, p)
}

fn n4() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        &[
            (0, 1, rational::vec_of(&[0, 0, 1, 0])),
            (0, 2, rational::vec_of(&[0, 0, 0, 1])),
        ],
    )
    .expect("n4")
}

fn fried_matrices() -> Vec<QMatrix> {
    alloc::vec![
        QMatrix::from_int_rows(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
        QMatrix::from_int_rows(&[&[0, 0, 0, -1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        QMatrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        QMatrix::from_int_rows(&[&[0, -1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
    ]
}

/// `n4 ⋉ V` with `V` the underlying space of Fried's product, `E = +1` on
/// `n4` and `-1` on `V`, `J(x,0) = (0,x)`, `J(0,v) = (-v,0)`.
pub fn eight_dim_example() -> (LieAlgebra, Cps) {
    let rho = Representation::new(n4(), 4, fried_matrices()).expect("representation");
    let g = LieAlgebra::semidirect_product(&rho).expect("semidirect product");
    let b = |i| rational::unit(8, i);
    let j = Endo::complex_from_pairs(8, &[(b(0), b(4)), (b(1), b(5)), (b(2), b(6)), (b(3), b(7))]).expect("basis");
    let e = Endo::product_from_split(8, &[b(0), b(1), b(2), b(3)], &[b(4), b(5), b(6), b(7)]).expect("basis");
    let cps = assemble_cps(g.clone(), j, e).expect("complex product structure");
    (g, cps)
}

/// Three structures on `(0,0,0,0,13+42,14+23)` with double types
/// `(R3, R3)`, `(R3, h3)`, `(h3, h3)`.
pub fn heisenberg_complex_examples() -> Vec<(LieAlgebra, Cps)> {
    let g = salamon::parse_salamon("(0,0,0,0,13+42,14+23)").expect("valid");
    let v = |xs: &[i64]| rational::vec_of(xs);
    let j1 = Endo::complex_from_pairs(6, &[(u(0), u(2)), (u(1), u(3)), (u(4), u(5))]).expect("basis");
    let e1 = Endo::product_from_split(6, &[u(0), u(1), u(4)], &[u(2), u(3), u(5)]).expect("basis");
    // e1 -> e2 - e4, e2 -> -e1 - e3, e3 -> e4, e4 -> -e3, e5 -> e6
    let j2 = Endo::new(
        QMatrix::from_columns(
            6,
            &[
                v(&[0, 1, 0, -1, 0, 0]),
                v(&[-1, 0, -1, 0, 0, 0]),
                v(&[0, 0, 0, 1, 0, 0]),
                v(&[0, 0, -1, 0, 0, 0]),
                v(&[0, 0, 0, 0, 0, 1]),
                v(&[0, 0, 0, 0, -1, 0]),
            ],
        )
        .expect("6x6"),
    )
    .expect("square");
    let e2 = Endo::product_from_split(
        6,
        &[u(0), u(1), u(4)],
        &[v(&[1, 0, 1, 0, 0, 0]), v(&[0, -1, 0, 1, 0, 0]), u(5)],
    )
    .expect("basis");
    let e3 = Endo::product_from_split(
        6,
        &[v(&[1, 1, 1, 0, 0, 0]), v(&[1, -1, 0, 1, 0, 0]), v(&[0, 0, 0, 0, 1, -1])],
        &[
            v(&[-1, 1, -1, 0, 0, 0]),
            v(&[1, 1, 0, -1, 0, 0]),
            v(&[0, 0, 0, 0, 1, 1]),
        ],
    )
    .expect("basis");
    [(j1, e1), (j2.clone(), e2), (j2, e3)]
        .into_iter()
        .map(|(j, e)| {
            (
                g.clone(),
                assemble_cps(g.clone(), j, e).expect("complex product structure"),
            )
        })
        .collect()
}

/// `(0,0,0,12,13,14)` with `Je1 = -e2, Je3 = -e4, Je5 = -e6` and the two
/// product structures `E1` (`g+ = <e1,e3,e5>`, flat) and `E2`
/// (`g+ = <e1,e4,e6>`, non-flat).
pub fn filiform_examples() -> (Cps, Cps) {
    let g = salamon::parse_salamon("(0,0,0,12,13,14)").expect("valid");
    let j = Endo::complex_from_pairs(6, &[(u(0), m(u(1))), (u(2), m(u(3))), (u(4), m(u(5)))]).expect("basis");
    let e1 = Endo::product_from_split(6, &[u(0), u(2), u(4)], &[u(1), u(3), u(5)]).expect("basis");
    let e2 = Endo::product_from_split(6, &[u(0), u(3), u(5)], &[u(1), u(2), u(4)]).expect("basis");
    (
        assemble_cps(g.clone(), j.clone(), e1).expect("complex product structure"),
        assemble_cps(g, j, e2).expect("complex product structure"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_witness_verifies() {
        for entry in catalog() {
            for (i, w) in entry.witnesses.iter().enumerate() {
                if let Err(e) = verify_witness(&entry, w) {
                    panic!("{} witness {}: {} ({:?})", entry.salamon, i, e, e.stage());
                }
            }
        }
    }

    #[test]
    fn family_examples() {
        let (g, _) = build_family(Family::H3R10, &params(&[("C", int(1))])).unwrap();
        assert!(family_constraint_holds(Family::H3R10, &g));
        assert!(matches!(
            build_family(Family::H3R00, &Params::new()),
            Err(CatalogError::SideCondition(_))
        ));
        assert!(matches!(
            build_family(Family::R400, &params(&[("Q", int(1))])),
            Err(CatalogError::UnknownParam { .. })
        ));
    }

    #[test]
    fn h3r00_with_e_f_zero_is_heisenberg_times_r3() {
        let (g, _) = build_family(Family::H3R00, &params(&[("A", int(1))])).unwrap();
        let p = QMatrix::from_columns(6, &[u(E1), u(F1), u(E3), u(F2), u(F3), m(u(E2))]).unwrap();
        assert_eq!(
            g.change_basis(&p).unwrap(),
            salamon::parse_salamon("(0,0,0,0,0,12)").unwrap()
        );
    }

    #[test]
    fn singular_basis_change_fails_at_basis_stage() {
        let entry = &catalog()[1];
        let mut w = entry.witnesses[0].clone();
        w.basis_change = QMatrix::zeros(6, 6);
        assert_eq!(verify_witness(entry, &w).unwrap_err().stage(), Stage::Basis);
    }

    #[test]
    fn table_passes() {
        let r = verify_table();
        assert_eq!(r.rows.len(), 18);
        for row in &r.rows {
            assert!(row.passed(), "{}: {:?}", row.salamon, row.failures);
        }
    }

    #[test]
    fn nonexistence() {
        for s in &EXCLUDED[..2] {
            assert_eq!(nonexistence_report(s).unwrap(), NonexistenceReport::CenterTooSmall(1));
        }
        let r = nonexistence_report(EXCLUDED[2]).unwrap();
        assert!(r.passed(), "{:?}", r);
        assert!(nonexistence_report("(0,0,0,0,0,0)").is_err());
    }
}
