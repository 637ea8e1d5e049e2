//! Left-invariant connections, the canonical connection of a complex
//! product structure, curvature, and left-symmetric products.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::geodesic::{self, GeodesicParams, GeodesicReport, SparseGamma};
use crate::lie::{LieAlgebra, LieError};
use crate::matrix::QMatrix;
use crate::rational::{self, QVector, Rational};
use crate::structures::{Cps, Endo, PairDefect, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConnectionError {
    #[error("coefficient tensor of length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("connection has torsion at basis pair ({i}, {j})")]
    Torsion { i: usize, j: usize },
    #[error("connection does not parallelize {which}")]
    NotParallel { which: &'static str },
    #[error("left-symmetry fails at ({i}, {j}, {k})")]
    NotLeftSymmetric { i: usize, j: usize, k: usize },
    #[error("x·y - y·x != [x,y] at ({i}, {j})")]
    NotCompatible { i: usize, j: usize },
    #[error("product does not preserve the eigenspace")]
    NotClosed,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `∇_{e_i} e_j = Σ_k gamma[(i*n + j)*n + k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    algebra: LieAlgebra,
    gamma: Vec<Rational>,
}

impl Connection {
    pub fn new(algebra: LieAlgebra, gamma: Vec<Rational>) -> Result<Self, ConnectionError> {
        let n = algebra.dim();
        if gamma.len() != n * n * n {
            return Err(ConnectionError::LengthMismatch {
                expected: n * n * n,
                found: gamma.len(),
            });
        }
        Ok(Self { algebra, gamma })
    }

    pub fn zero(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            gamma: rational::zeros(n * n * n),
        }
    }

    /// From the matrices of `∇_{e_i}`, whose column `j` is `∇_{e_i} e_j`.
    pub fn from_matrices(algebra: LieAlgebra, matrices: &[QMatrix]) -> Result<Self, ConnectionError> {
        let n = algebra.dim();
        if matrices.len() != n || matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(ConnectionError::LengthMismatch {
                expected: n,
                found: matrices.len(),
            });
        }
        let mut gamma = rational::zeros(n * n * n);
        for (i, m) in matrices.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    gamma[(i * n + j) * n + k] = m.get(k, j).clone();
                }
            }
        }
        Ok(Self { algebra, gamma })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.gamma[(i * n + j) * n + k]
    }

    pub fn apply_basis(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        let s = (i * n + j) * n;
        &self.gamma[s..s + n]
    }

    /// `∇_x y`
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> QVector {
        let n = self.dim();
        let mut out = rational::zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                rational::axpy(&mut out, &(xi * yj), self.apply_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `∇_{e_i}`.
    pub fn matrix(&self, i: usize) -> QMatrix {
        let n = self.dim();
        let cols: Vec<QVector> = (0..n).map(|j| self.apply_basis(i, j).to_vec()).collect();
        QMatrix::from_columns(n, &cols).expect("square")
    }

    /// Matrix of `∇_x`.
    pub fn matrix_of(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.matrix(i).scaled(xi);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        rational::is_zero_vec(&self.gamma)
    }

    pub fn sparse_f64(&self) -> SparseGamma {
        let n = self.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let g = self.christoffel(i, j, k);
                    if !g.is_zero() {
                        terms.push((i, j, k, rational::to_f64(g)));
                    }
                }
            }
        }
        SparseGamma { dim: n, terms }
    }
}

/// The unique torsion-free connection with `∇J = ∇E = 0`:
///
/// ```text
/// ∇_{x+} y+ = -π+ J [x+, J y+]      ∇_{x+} y- = π- [x+, y-]
/// ∇_{x-} y- = -π- J [x-, J y-]      ∇_{x-} y+ = π+ [x-, y+]
/// ```
pub fn cp_connection(cps: &Cps) -> Result<Connection, ConnectionError> {
    let g = cps.algebra();
    let n = g.dim();
    let pp = cps.pi_plus();
    let pm = cps.pi_minus();
    let j = cps.j();
    let mut gamma = rational::zeros(n * n * n);
    for a in 0..n {
        let x = rational::unit(n, a);
        let (xp, xm) = (pp.apply(&x), pm.apply(&x));
        for b in 0..n {
            let y = rational::unit(n, b);
            let (yp, ym) = (pp.apply(&y), pm.apply(&y));
            let pp_term = rational::neg(&pp.apply(&j.apply(&g.bracket(&xp, &j.apply(&yp)))));
            let mm_term = rational::neg(&pm.apply(&j.apply(&g.bracket(&xm, &j.apply(&ym)))));
            let pm_term = pm.apply(&g.bracket(&xp, &ym));
            let mp_term = pp.apply(&g.bracket(&xm, &yp));
            let v = rational::add(&rational::add(&pp_term, &mm_term), &rational::add(&pm_term, &mp_term));
            for (k, c) in v.into_iter().enumerate() {
                gamma[(a * n + b) * n + k] = c;
            }
        }
    }
    let conn = Connection {
        algebra: g.clone(),
        gamma,
    };
    if let Some(d) = torsion_defect(&conn).first() {
        return Err(ConnectionError::Torsion { i: d.i, j: d.j });
    }
    if !parallel_defect(&conn, cps.j()).is_empty() {
        return Err(ConnectionError::NotParallel { which: "J" });
    }
    if !parallel_defect(&conn, cps.e()).is_empty() {
        return Err(ConnectionError::NotParallel { which: "E" });
    }
    Ok(conn)
}

/// Basis pairs `i < j` with `∇_x y - ∇_y x != [x,y]`.
pub fn torsion_defect(conn: &Connection) -> Vec<PairDefect> {
    let n = conn.dim();
    let g = conn.algebra();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = rational::sub(
                &rational::sub(conn.apply_basis(i, j), conn.apply_basis(j, i)),
                g.bracket_basis(i, j),
            );
            if !rational::is_zero_vec(&d) {
                out.push(PairDefect { i, j, defect: d });
            }
        }
    }
    out
}

/// All basis pairs `(i, j)` with `∇_{e_i}(A e_j) != A ∇_{e_i} e_j`.
pub fn parallel_defect(conn: &Connection, a: &Endo) -> Vec<PairDefect> {
    let n = conn.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let m = conn.matrix(i);
        let comm = m.commutator(a.matrix());
        for j in 0..n {
            let d = comm.column(j);
            if !rational::is_zero_vec(&d) {
                out.push(PairDefect { i, j, defect: d });
            }
        }
    }
    out
}

/// Curvature data on basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    dim: usize,
    /// `r[i*n + j]` is the matrix of `R(e_i, e_j)`.
    r: Vec<QMatrix>,
    pub ricci: QMatrix,
    pub is_flat: bool,
    pub is_ricci_flat: bool,
    /// Every `∇_{e_i}` is traceless.
    pub traceless: bool,
    pub torsion_free: bool,
}

impl CurvatureReport {
    pub fn r(&self, i: usize, j: usize) -> &QMatrix {
        &self.r[i * self.dim + j]
    }

    /// `R(e_i, e_j) e_k`
    pub fn r_apply(&self, i: usize, j: usize, k: usize) -> QVector {
        self.r(i, j).column(k)
    }

    /// `(i, j, k, l, value)` for every nonzero coefficient of `e_l` in
    /// `R(e_i, e_j) e_k`, with `i < j`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, usize, Rational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.r(i, j);
                for k in 0..n {
                    for l in 0..n {
                        let v = m.get(l, k);
                        if !v.is_zero() {
                            out.push((i, j, k, l, v.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn ricci_is_skew(&self) -> bool {
        (&self.ricci + &self.ricci.transpose()).is_zero()
    }
}

/// `R(x,y) = [∇_x, ∇_y] - ∇_{[x,y]}` and `ric(x,y) = tr(z -> R(z,x)y)`.
pub fn curvature(conn: &Connection) -> CurvatureReport {
    let n = conn.dim();
    let g = conn.algebra();
    let mats: Vec<QMatrix> = (0..n).map(|i| conn.matrix(i)).collect();
    let mut r = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = mats[i].commutator(&mats[j]);
            for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    m = &m - &mats[k].scaled(c);
                }
            }
            r.push(m);
        }
    }
    let mut ricci = QMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let mut t = Rational::zero();
            for i in 0..n {
                t += r[i * n + a].get(i, b);
            }
            ricci.set(a, b, t);
        }
    }
    let is_flat = r.iter().all(QMatrix::is_zero);
    let is_ricci_flat = ricci.is_zero();
    let traceless = mats.iter().all(|m| m.trace().is_zero());
    CurvatureReport {
        dim: n,
        r,
        ricci,
        is_flat,
        is_ricci_flat,
        traceless,
        torsion_free: torsion_defect(conn).is_empty(),
    }
}

/// `ric(x,y) = ½ tr ∇_{[x,y]}`.
///
/// For a torsion-free connection the first Bianchi identity gives
/// `ric(x,y) - ric(y,x) = tr ∇_{[x,y]}`, so this is the skew part of the
/// Ricci form, and equals it whenever the Ricci form is skew-symmetric, as
/// it is for canonical connections of complex product structures.
pub fn ricci_via_trace_identity(conn: &Connection) -> Result<QMatrix, ConnectionError> {
    if let Some(d) = torsion_defect(conn).first() {
        return Err(ConnectionError::Torsion { i: d.i, j: d.j });
    }
    let n = conn.dim();
    let g = conn.algebra();
    let traces: Vec<Rational> = (0..n).map(|k| conn.matrix(k).trace()).collect();
    let half = rational::frac(1, 2);
    let mut out = QMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let mut t = Rational::zero();
            for (k, c) in g.bracket_basis(a, b).iter().enumerate() {
                t += c * &traces[k];
            }
            out.set(a, b, &half * t);
        }
    }
    Ok(out)
}

/// Whether every `∇_{e_i}` maps each eigenspace of `E` into itself.
pub fn preserves_eigenspaces(conn: &Connection, cps: &Cps) -> bool {
    (0..conn.dim()).all(|i| {
        let m = conn.matrix(i);
        cps.plus().restrict_map(&m).is_some() && cps.minus().restrict_map(&m).is_some()
    })
}

/// A bilinear product with `x·(y·z) - (x·y)·z` symmetric in `x, y` and
/// `x·y - y·x = [x,y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsaProduct {
    conn: Connection,
}

impl LsaProduct {
    /// Validates both axioms on basis triples.
    pub fn new(algebra: LieAlgebra, gamma: Vec<Rational>) -> Result<Self, ConnectionError> {
        Self::from_connection(Connection::new(algebra, gamma)?)
    }

    /// A torsion-free flat connection read as `x·y = ∇_x y`.
    pub fn from_connection(conn: Connection) -> Result<Self, ConnectionError> {
        if let Some(d) = torsion_defect(&conn).first() {
            return Err(ConnectionError::NotCompatible { i: d.i, j: d.j });
        }
        let n = conn.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = rational::unit(n, i);
                    let ej = rational::unit(n, j);
                    let ek = rational::unit(n, k);
                    let a = rational::sub(
                        &conn.apply(&ei, conn.apply_basis(j, k)),
                        &conn.apply(conn.apply_basis(i, j), &ek),
                    );
                    let b = rational::sub(
                        &conn.apply(&ej, conn.apply_basis(i, k)),
                        &conn.apply(conn.apply_basis(j, i), &ek),
                    );
                    if a != b {
                        return Err(ConnectionError::NotLeftSymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(Self { conn })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.conn.algebra()
    }

    pub fn dim(&self) -> usize {
        self.conn.dim()
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> QVector {
        self.conn.apply(x, y)
    }

    /// `y -> e_i · y`
    pub fn left(&self, i: usize) -> QMatrix {
        self.conn.matrix(i)
    }

    /// `y -> y · e_i`
    pub fn right(&self, i: usize) -> QMatrix {
        let n = self.dim();
        let cols: Vec<QVector> = (0..n).map(|j| self.conn.apply_basis(j, i).to_vec()).collect();
        QMatrix::from_columns(n, &cols).expect("square")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// The canonical connection restricted to `g+` or `g-`, as a product on that
/// subalgebra in its echelon basis.
pub fn restrict_to_lsa(cps: &Cps, side: Side) -> Result<LsaProduct, ConnectionError> {
    let conn = cp_connection(cps)?;
    let sub = match side {
        Side::Plus => cps.plus(),
        Side::Minus => cps.minus(),
    };
    let h = cps.algebra().restrict(sub)?;
    let basis = sub.basis_vectors();
    let d = basis.len();
    let mut gamma = rational::zeros(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let v = conn.apply(&basis[i], &basis[j]);
            let coords = sub.coordinates(&v).ok_or(ConnectionError::NotClosed)?;
            for (k, c) in coords.into_iter().enumerate() {
                gamma[(i * d + j) * d + k] = c;
            }
        }
    }
    LsaProduct::new(h, gamma)
}

/// Completeness data of a left-symmetric product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsaCompleteness {
    /// `tr R_x = 0` for all `x`; linear in `x`, so checked on a basis.
    pub right_traces_zero: bool,
    pub right_basis_nilpotent: bool,
    pub left_basis_nilpotent: bool,
}

impl LsaCompleteness {
    pub fn complete(&self) -> bool {
        self.right_traces_zero && self.right_basis_nilpotent
    }
}

pub fn lsa_completeness(p: &LsaProduct) -> LsaCompleteness {
    let n = p.dim();
    LsaCompleteness {
        right_traces_zero: (0..n).all(|i| p.right(i).trace().is_zero()),
        right_basis_nilpotent: (0..n).all(|i| p.right(i).is_nilpotent()),
        left_basis_nilpotent: (0..n).all(|i| p.left(i).is_nilpotent()),
    }
}

/// Every right multiplication is nilpotent.
pub fn lsa_is_complete(p: &LsaProduct) -> bool {
    lsa_completeness(p).complete()
}

/// Left multiplications are all nilpotent. On a nilpotent Lie algebra the
/// left multiplications form a nilpotent linear Lie algebra, so checking a
/// basis suffices.
pub fn lsa_is_left_nilpotent(p: &LsaProduct) -> bool {
    lsa_completeness(p).left_basis_nilpotent
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompletenessMethod {
    /// Flat case: the connection is a left-symmetric product on `g`, and
    /// completeness is the trace criterion on right multiplications.
    Algebraic(LsaCompleteness),
    /// Non-flat case: geodesics fitted by quadratics.
    Numeric(GeodesicReport),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessCertificate {
    pub method: CompletenessMethod,
    pub verdict: bool,
}

impl CompletenessCertificate {
    pub fn method_name(&self) -> &'static str {
        match self.method {
            CompletenessMethod::Algebraic(_) => "algebraic",
            CompletenessMethod::Numeric(_) => "numeric",
        }
    }
}

pub fn connection_is_complete_certificate(conn: &Connection, params: &GeodesicParams) -> CompletenessCertificate {
    if curvature(conn).is_flat {
        if let Ok(p) = LsaProduct::from_connection(conn.clone()) {
            let c = lsa_completeness(&p);
            return CompletenessCertificate {
                verdict: c.complete(),
                method: CompletenessMethod::Algebraic(c),
            };
        }
    }
    let report = geodesic::quadratic_certificate(&conn.sparse_f64(), params);
    CompletenessCertificate {
        verdict: report.passed,
        method: CompletenessMethod::Numeric(report),
    }
}
