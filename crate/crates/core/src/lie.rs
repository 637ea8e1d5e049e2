//! Finite-dimensional Lie algebras given by rational structure constants.
//!
//! `c[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`. Indices are
//! 0-based internally; text formats use 1-based indices.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::{MatrixError, QMatrix};
use crate::rational::{self, QVector, Rational};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("vector of length {found} used in an algebra of dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("structure constants are not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails on {count} basis triples, first ({i}, {j}, {k})")]
    JacobiFailure { count: usize, i: usize, j: usize, k: usize },
    #[error("representation identity fails at basis pair ({i}, {j})")]
    NotARepresentation { i: usize, j: usize },
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("expected a {expected}-dimensional subspace, found {found}")]
    WrongSubspaceDim { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// One failing basis triple of the Jacobi identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: QVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: alloc::vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds an algebra from the brackets `[e_i, e_j] = v` for the listed
    /// pairs; the opposite pairs are filled in by antisymmetry. Antisymmetry
    /// and Jacobi are checked.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, QVector)]) -> Result<Self, LieError> {
        let g = Self::from_brackets_unchecked(dim, brackets)?;
        g.validate()?;
        Ok(g)
    }

    /// Like [`Self::from_brackets`] but only antisymmetry is enforced, so the
    /// result may violate Jacobi.
    pub fn from_brackets_unchecked(dim: usize, brackets: &[(usize, usize, QVector)]) -> Result<Self, LieError> {
        let mut g = Self::abelian(dim);
        for (i, j, v) in brackets {
            if v.len() != dim {
                return Err(LieError::LengthMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if i == j {
                if !rational::is_zero_vec(v) {
                    return Err(LieError::NotAntisymmetric { i: *i, j: *j });
                }
                continue;
            }
            for (k, x) in v.iter().enumerate() {
                let idx = g.index(*i, *j, k);
                g.c[idx] += x;
                let idx = g.index(*j, *i, k);
                g.c[idx] -= x;
            }
        }
        Ok(g)
    }

    /// Dense tensor constructor, validated.
    pub fn from_tensor(dim: usize, c: Vec<Rational>) -> Result<Self, LieError> {
        if c.len() != dim * dim * dim {
            return Err(LieError::LengthMismatch {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        let g = Self { dim, c };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), LieError> {
        self.check_antisymmetry()?;
        let defects = self.jacobi_defect();
        if let Some(first) = defects.first() {
            return Err(LieError::JacobiFailure {
                count: defects.len(),
                i: first.i,
                j: first.j,
                k: first.k,
            });
        }
        Ok(())
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    if self.structure_constant(i, j, k) != &-self.structure_constant(j, i, k) {
                        return Err(LieError::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.index(i, j, k)]
    }

    pub fn tensor(&self) -> &[Rational] {
        &self.c
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.index(i, j, 0);
        &self.c[start..start + self.dim]
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::LengthMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn try_bracket(&self, x: &[Rational], y: &[Rational]) -> Result<QVector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket(x, y))
    }

    /// Bilinear extension of the basis brackets. Panics on length mismatch;
    /// see [`Self::try_bracket`] for the checked form.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> QVector {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = rational::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let b = self.bracket_basis(i, j);
                if rational::is_zero_vec(b) {
                    continue;
                }
                let coef = xi * yj;
                rational::axpy(&mut out, &coef, b);
            }
        }
        out
    }

    /// Matrix of `ad x = [x, -]`.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let cols: Vec<QVector> = (0..self.dim)
            .map(|j| self.bracket(x, &rational::unit(self.dim, j)))
            .collect();
        QMatrix::from_columns(self.dim, &cols).expect("square by construction")
    }

    pub fn ad_basis(&self, i: usize) -> QMatrix {
        self.ad(&rational::unit(self.dim, i))
    }

    /// Matrix of `x -> [x, e_k]`.
    pub fn right_bracket(&self, k: usize) -> QMatrix {
        -&self.ad_basis(k)
    }

    /// All basis triples where `[[e_i,e_j],e_k] + cyclic` is nonzero, `i < j < k`.
    pub fn jacobi_defect(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ei = rational::unit(n, i);
                    let ej = rational::unit(n, j);
                    let ek = rational::unit(n, k);
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let total = rational::add(&rational::add(&a, &b), &c);
                    if !rational::is_zero_vec(&total) {
                        out.push(JacobiDefect { i, j, k, defect: total });
                    }
                }
            }
        }
        out
    }

    /// `[U, V]` as a subspace.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in u.basis_vectors() {
            for y in v.basis_vectors() {
                let b = self.bracket(&x, &y);
                if !rational::is_zero_vec(&b) {
                    vs.push(b);
                }
            }
        }
        Subspace::span(self.dim, &vs).expect("brackets stay in the algebra")
    }

    /// `g^0 = g, g^k = [g^{k-1}, g]`, listed until the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut series = alloc::vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_subspaces(last, &full);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// Nilpotency step `k` (with `g^{k-1} != 0 = g^k`), or `None` when not nilpotent.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().is_some_and(Subspace::is_zero).then(|| s.len() - 1)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_subspaces(&full, &full)
    }

    /// Intersection of the kernels of `ad e_i`.
    pub fn center(&self) -> Subspace {
        let mut z = Subspace::full(self.dim);
        for i in 0..self.dim {
            z = z.intersect(&self.ad_basis(i).kernel()).expect("same ambient");
        }
        z
    }

    pub fn is_subalgebra(&self, v: &Subspace) -> bool {
        v.contains_subspace(&self.bracket_subspaces(v, v))
    }

    pub fn is_ideal(&self, v: &Subspace) -> bool {
        v.contains_subspace(&self.bracket_subspaces(v, &Subspace::full(self.dim)))
    }

    pub fn is_central(&self, v: &Subspace) -> bool {
        self.bracket_subspaces(v, &Subspace::full(self.dim)).is_zero()
    }

    /// Smallest subalgebra containing the given vectors.
    pub fn generated_subalgebra(&self, generators: &[QVector]) -> Subspace {
        let mut s = Subspace::span(self.dim, generators).expect("generators have the algebra length");
        loop {
            let next = s.sum(&self.bracket_subspaces(&s, &s)).expect("same ambient");
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// The subalgebra `v` as an algebra in its echelon basis.
    pub fn restrict(&self, v: &Subspace) -> Result<LieAlgebra, LieError> {
        let basis = v.basis_vectors();
        let d = basis.len();
        let mut c = alloc::vec![Rational::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let b = self.bracket(&basis[i], &basis[j]);
                let coords = v.coordinates(&b).ok_or(LieError::NotSubalgebra)?;
                for (k, x) in coords.into_iter().enumerate() {
                    c[(i * d + j) * d + k] = x;
                }
            }
        }
        Ok(LieAlgebra { dim: d, c })
    }

    /// Classifies a 3-dimensional subspace.
    pub fn iso_type_3d(&self, v: &Subspace) -> Result<Iso3, LieError> {
        if v.dim() != 3 {
            return Err(LieError::WrongSubspaceDim {
                expected: 3,
                found: v.dim(),
            });
        }
        if !self.is_subalgebra(v) {
            return Ok(Iso3::NotSubalgebra);
        }
        let h = self.restrict(v)?;
        let derived = h.derived_algebra();
        Ok(match derived.dim() {
            0 => Iso3::Abelian3,
            1 if h.is_central(&derived) => Iso3::Heisenberg3,
            _ => Iso3::Other,
        })
    }

    /// Same bracket written in a new basis; columns of `p` are the new basis
    /// vectors in old coordinates.
    pub fn change_basis(&self, p: &QMatrix) -> Result<LieAlgebra, LieError> {
        if !p.is_square() || p.rows() != self.dim {
            return Err(LieError::Matrix(MatrixError::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            }));
        }
        let p_inv = p.inverse()?;
        let n = self.dim;
        let cols: Vec<QVector> = (0..n).map(|j| p.column(j)).collect();
        let mut c = alloc::vec![Rational::zero(); n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                let b = p_inv.apply(&self.bracket(&cols[i], &cols[j]));
                for (k, x) in b.into_iter().enumerate() {
                    c[(j * n + i) * n + k] = -x.clone();
                    c[(i * n + j) * n + k] = x;
                }
            }
        }
        let g = LieAlgebra { dim: n, c };
        g.validate()?;
        Ok(g)
    }

    /// Direct sum `self (+) other` on the concatenated basis.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut g = LieAlgebra::abelian(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let idx = g.index(i, j, k);
                    g.c[idx] = self.structure_constant(i, j, k).clone();
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    let idx = g.index(o + i, o + j, o + k);
                    g.c[idx] = other.structure_constant(i, j, k).clone();
                }
            }
        }
        g
    }

    /// Semidirect product `h ⋉_rho V` on the basis `(h, V)`:
    /// `[(x,u),(y,v)] = ([x,y], rho(x)v - rho(y)u)`.
    pub fn semidirect_product(rho: &Representation) -> Result<LieAlgebra, LieError> {
        rho.validate()?;
        let h = &rho.algebra;
        let m = h.dim;
        let n = m + rho.space_dim;
        let mut g = LieAlgebra::abelian(n);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let idx = g.index(i, j, k);
                    g.c[idx] = h.structure_constant(i, j, k).clone();
                }
            }
            for a in 0..rho.space_dim {
                let col = rho.action[i].column(a);
                for (b, x) in col.into_iter().enumerate() {
                    let idx = g.index(i, m + a, m + b);
                    g.c[idx] = x.clone();
                    let idx = g.index(m + a, i, m + b);
                    g.c[idx] = -x;
                }
            }
        }
        g.validate()?;
        Ok(g)
    }

    /// Realified complexification on `{e_1..e_n, ê_1..ê_n}`:
    /// `[x̂,ŷ] = -[x,y]`, `[x̂,y] = [x,ŷ] = [x,y]^`.
    pub fn complexify_realified(&self) -> LieAlgebra {
        let n = self.dim;
        let mut g = LieAlgebra::abelian(2 * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let set = |g: &mut LieAlgebra, a: usize, b: usize, d: usize, v: Rational| {
                        let idx = g.index(a, b, d);
                        g.c[idx] = v;
                    };
                    set(&mut g, i, j, k, c.clone());
                    set(&mut g, n + i, n + j, k, -c.clone());
                    set(&mut g, n + i, j, n + k, c.clone());
                    set(&mut g, i, n + j, n + k, c.clone());
                }
            }
        }
        debug_assert!(g.validate().is_ok());
        g
    }

    /// The nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, QVector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let b = self.bracket_basis(i, j);
                if !rational::is_zero_vec(b) {
                    out.push((i, j, b.to_vec()));
                }
            }
        }
        out
    }
}

/// Isomorphism type of a 3-dimensional subspace under the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Iso3 {
    Abelian3,
    Heisenberg3,
    NotSubalgebra,
    Other,
}

impl Iso3 {
    pub fn name(self) -> &'static str {
        match self {
            Iso3::Abelian3 => "R3",
            Iso3::Heisenberg3 => "h3",
            Iso3::NotSubalgebra => "not-subalgebra",
            Iso3::Other => "other",
        }
    }
}

/// A linear action of a Lie algebra on `Q^space_dim`, one matrix per basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub algebra: LieAlgebra,
    pub space_dim: usize,
    pub action: Vec<QMatrix>,
}

impl Representation {
    pub fn new(algebra: LieAlgebra, space_dim: usize, action: Vec<QMatrix>) -> Result<Self, LieError> {
        let rho = Self {
            algebra,
            space_dim,
            action,
        };
        rho.validate()?;
        Ok(rho)
    }

    pub fn zero(algebra: LieAlgebra, space_dim: usize) -> Self {
        let action = (0..algebra.dim())
            .map(|_| QMatrix::zeros(space_dim, space_dim))
            .collect();
        Self {
            algebra,
            space_dim,
            action,
        }
    }

    /// Action of an arbitrary element.
    pub fn of(&self, x: &[Rational]) -> QMatrix {
        let mut m = QMatrix::zeros(self.space_dim, self.space_dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.action[i].scaled(xi);
            }
        }
        m
    }

    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.algebra.dim();
        if self.action.len() != n {
            return Err(LieError::LengthMismatch {
                expected: n,
                found: self.action.len(),
            });
        }
        for a in &self.action {
            if a.rows() != self.space_dim || a.cols() != self.space_dim {
                return Err(LieError::Matrix(MatrixError::DimensionMismatch {
                    expected: self.space_dim,
                    found: a.rows(),
                }));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.of(self.algebra.bracket_basis(i, j));
                let rhs = self.action[i].commutator(&self.action[j]);
                if lhs != rhs {
                    return Err(LieError::NotARepresentation { i, j });
                }
            }
        }
        Ok(())
    }
}

pub fn semidirect_product(rho: &Representation) -> Result<LieAlgebra, LieError> {
    LieAlgebra::semidirect_product(rho)
}

/// The Heisenberg algebra with `[e_1, e_2] = e_3`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, rational::vec_of(&[0, 0, 1]))]).expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{unit, vec_of};
    use alloc::vec;

    fn e(n: usize, i: usize) -> QVector {
        unit(n, i - 1)
    }

    #[test]
    fn jacobi_failure_detected() {
        // [e1,e2]=e3, [e1,e3]=e1: [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e3,e3] + 0 + [-e1,e2] = -e3
        let bad = LieAlgebra::from_brackets(3, &[(0, 1, vec_of(&[0, 0, 1])), (0, 2, vec_of(&[1, 0, 0]))]);
        assert!(matches!(bad, Err(LieError::JacobiFailure { .. })));
        let g =
            LieAlgebra::from_brackets_unchecked(3, &[(0, 1, vec_of(&[0, 0, 1])), (0, 2, vec_of(&[1, 0, 0]))]).unwrap();
        let d = g.jacobi_defect();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].defect, vec_of(&[0, 0, -1]));
        assert!(LieAlgebra::abelian(4).jacobi_defect().is_empty());
    }

    #[test]
    fn heisenberg_series_and_center() {
        let h = heisenberg3();
        let s = h.lower_central_series();
        assert_eq!(
            s,
            vec![Subspace::full(3), Subspace::coordinate(3, &[2]), Subspace::zero(3)]
        );
        assert_eq!(h.nilpotency_step(), Some(2));
        assert_eq!(h.center(), Subspace::coordinate(3, &[2]));
        assert_eq!(LieAlgebra::abelian(6).center(), Subspace::full(6));
        assert_eq!(
            LieAlgebra::abelian(2).lower_central_series(),
            vec![Subspace::full(2), Subspace::zero(2)]
        );
    }

    #[test]
    fn change_basis_swap() {
        let h = heisenberg3();
        let p = QMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let g = h.change_basis(&p).unwrap();
        assert_eq!(g.bracket(&e(3, 1), &e(3, 2)), vec_of(&[0, 0, -1]));
        assert_eq!(h.change_basis(&QMatrix::identity(3)).unwrap(), h);
        let singular = QMatrix::from_int_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(h.change_basis(&singular).is_err());
    }

    #[test]
    fn semidirect_with_zero_action_is_abelian() {
        let h = LieAlgebra::abelian(2);
        let g = LieAlgebra::semidirect_product(&Representation::zero(h, 3)).unwrap();
        assert_eq!(g, LieAlgebra::abelian(5));
    }

    #[test]
    fn bad_representation_rejected() {
        let h = heisenberg3();
        let x = QMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let y = QMatrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        // [x,y] = diag(1,-1) but rho(e3) = 0
        let r = Representation::new(h, 2, vec![x, y, QMatrix::zeros(2, 2)]);
        assert_eq!(r.unwrap_err(), LieError::NotARepresentation { i: 0, j: 1 });
    }

    #[test]
    fn bracket_length_checked() {
        let h = heisenberg3();
        assert!(matches!(
            h.try_bracket(&vec_of(&[1, 0]), &e(3, 1)),
            Err(LieError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn complexification_of_abelian() {
        assert_eq!(LieAlgebra::abelian(3).complexify_realified(), LieAlgebra::abelian(6));
    }
}
