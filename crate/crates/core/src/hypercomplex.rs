//! Hypercomplex structures on the realified complexification.
//!
//! A CPS `{J, E}` on `g` lifts to `ĝ = (g^C)_R` (basis `e_1..e_n, ê_1..ê_n`)
//! as `J1 x = (Ex)^`, `J1 x̂ = -Ex`, `J2 = J` on both copies, `J3 = J1 J2`.
//! The canonical connection extends complex-bilinearly to the Obata
//! connection of `{J1, J2}`.

use alloc::vec::Vec;

use crate::connection::{self, Connection, ConnectionError};
use crate::lie::LieAlgebra;
use crate::matrix::QMatrix;
use crate::rational;
use crate::structures::{complex_integrability_defect, is_abelian_complex, Cps, Endo, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypercomplexError {
    #[error("quaternion relation fails: {0}")]
    NotQuaternionic(&'static str),
    #[error("{0} is not integrable")]
    NotIntegrable(&'static str),
    #[error("connection does not parallelize {0}")]
    NotParallel(&'static str),
    #[error("connection has torsion")]
    Torsion,
    #[error("base connection lives on dimension {found}, expected {expected}")]
    WrongBase { expected: usize, found: usize },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercomplexStructure {
    algebra: LieAlgebra,
    j1: Endo,
    j2: Endo,
    j3: Endo,
}

impl HypercomplexStructure {
    /// `J3 = J1 J2`; checks the quaternion relations and integrability of
    /// all three.
    pub fn new(algebra: LieAlgebra, j1: Endo, j2: Endo) -> Result<Self, HypercomplexError> {
        let j3 = j1.compose(&j2);
        for (m, name) in [(&j1, "J1^2 = -Id"), (&j2, "J2^2 = -Id"), (&j3, "J3^2 = -Id")] {
            if m.dim() != algebra.dim() || !m.is_almost_complex() {
                return Err(HypercomplexError::NotQuaternionic(name));
            }
        }
        if !j1.anticommutes(&j2) {
            return Err(HypercomplexError::NotQuaternionic("J1 J2 = -J2 J1"));
        }
        for (m, name) in [(&j1, "J1"), (&j2, "J2"), (&j3, "J3")] {
            if !complex_integrability_defect(&algebra, m)?.is_empty() {
                return Err(HypercomplexError::NotIntegrable(name));
            }
        }
        Ok(Self { algebra, j1, j2, j3 })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn j1(&self) -> &Endo {
        &self.j1
    }

    pub fn j2(&self) -> &Endo {
        &self.j2
    }

    pub fn j3(&self) -> &Endo {
        &self.j3
    }

    pub fn all(&self) -> [(&'static str, &Endo); 3] {
        [("J1", &self.j1), ("J2", &self.j2), ("J3", &self.j3)]
    }
}

fn hat_blocks(tl: &QMatrix, tr: &QMatrix, bl: &QMatrix, br: &QMatrix) -> QMatrix {
    let n = tl.rows();
    let mut m = QMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, tl.get(r, c).clone());
            m.set(r, n + c, tr.get(r, c).clone());
            m.set(n + r, c, bl.get(r, c).clone());
            m.set(n + r, n + c, br.get(r, c).clone());
        }
    }
    m
}

/// The lift of a CPS to the realified complexification.
pub fn lift_cps(cps: &Cps) -> Result<(LieAlgebra, HypercomplexStructure), HypercomplexError> {
    let g_hat = cps.algebra().complexify_realified();
    let n = cps.dim();
    let zero = QMatrix::zeros(n, n);
    let e = cps.e().matrix();
    let j = cps.j().matrix();
    let j1 = Endo::new(hat_blocks(&zero, &-e, e, &zero))?;
    let j2 = Endo::new(hat_blocks(j, &zero, &zero, j))?;
    let h = HypercomplexStructure::new(g_hat.clone(), j1, j2)?;
    Ok((g_hat, h))
}

/// Complex-bilinear extension of `base`: `∇_x ŷ = ∇_x̂ y = (∇_x y)^` and
/// `∇_x̂ ŷ = -∇_x y`. Verified torsion-free and parallel for `J1, J2, J3`,
/// which characterizes the Obata connection.
pub fn obata_connection(
    g_hat: &LieAlgebra,
    h: &HypercomplexStructure,
    base: &Connection,
) -> Result<Connection, HypercomplexError> {
    let n = base.dim();
    if g_hat.dim() != 2 * n {
        return Err(HypercomplexError::WrongBase {
            expected: g_hat.dim() / 2,
            found: n,
        });
    }
    let m = 2 * n;
    let mut gamma = rational::zeros(m * m * m);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in base.apply_basis(i, j).iter().enumerate() {
                gamma[(i * m + j) * m + k] = c.clone();
                gamma[(i * m + n + j) * m + n + k] = c.clone();
                gamma[((n + i) * m + j) * m + n + k] = c.clone();
                gamma[((n + i) * m + n + j) * m + k] = -c.clone();
            }
        }
    }
    let conn = Connection::new(g_hat.clone(), gamma)?;
    if !connection::torsion_defect(&conn).is_empty() {
        return Err(HypercomplexError::Torsion);
    }
    for (name, a) in h.all() {
        if !connection::parallel_defect(&conn, a).is_empty() {
            return Err(HypercomplexError::NotParallel(name));
        }
    }
    Ok(conn)
}

/// Each of `J1, J2, J3` satisfies `[Jx, Jy] = [x, y]`.
pub fn is_abelian_hypercomplex(h: &HypercomplexStructure) -> bool {
    h.all()
        .iter()
        .all(|(_, a)| is_abelian_complex(&h.algebra, a).unwrap_or(false))
}

/// Lift plus Obata connection in one step.
pub fn lift_with_obata(cps: &Cps) -> Result<(HypercomplexStructure, Connection), HypercomplexError> {
    let base = connection::cp_connection(cps)?;
    let (g_hat, h) = lift_cps(cps)?;
    let obata = obata_connection(&g_hat, &h, &base)?;
    Ok((h, obata))
}

/// Images of the basis vectors under an endomorphism, as `(source, image)`.
pub fn action_table(a: &Endo) -> Vec<(usize, rational::QVector)> {
    (0..a.dim()).map(|i| (i, a.matrix().column(i))).collect()
}
