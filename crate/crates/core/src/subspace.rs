//! Linear subspaces of `Q^n` in canonical reduced row-echelon form.
//!
//! Two subspaces with the same span have identical representations, so
//! equality is structural.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::{MatrixError, QMatrix};
use crate::rational::{self, QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: QMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: QMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[QVector]) -> Result<Self, MatrixError> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        for v in vectors {
            if v.len() != ambient {
                return Err(MatrixError::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        let m = QMatrix::from_rows(vectors)?;
        let (r, pivots) = m.rref();
        let rows: Vec<QVector> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = if rows.is_empty() {
            QMatrix::zeros(0, ambient)
        } else {
            QMatrix::from_rows(&rows)?
        };
        Ok(Self { ambient, basis, pivots })
    }

    /// Span of standard basis vectors `e_i` (0-based indices).
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<QVector> = indices.iter().map(|&i| rational::unit(ambient, i)).collect();
        Self::span(ambient, &vs).expect("unit vectors have the ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        assert_eq!(v.len(), self.ambient);
        // echelon rows have a 1 at their pivot and 0 at every other pivot
        let coords: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            rational::axpy(&mut residual, &-c.clone(), self.basis.row(i));
        }
        rational::is_zero_vec(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Annihilator in dual coordinates: `{f : f(u) = 0 for all u}`.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), MatrixError> {
        if self.ambient != other.ambient {
            return Err(MatrixError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, MatrixError> {
        self.check_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let stacked = a.basis.stack(&b.basis)?;
        if stacked.rows() == 0 {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(stacked.kernel())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, MatrixError> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs)
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &QMatrix) -> Result<Subspace, MatrixError> {
        if m.cols() != self.ambient {
            return Err(MatrixError::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let vs: Vec<QVector> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    /// `{x : m x in self}`.
    pub fn preimage(&self, m: &QMatrix) -> Result<Subspace, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != self.ambient {
            return Err(MatrixError::DimensionMismatch {
                expected: self.ambient,
                found: m.rows(),
            });
        }
        let ann = self.annihilator();
        if ann.is_zero() {
            return Ok(Subspace::full(self.ambient));
        }
        Ok((ann.basis() * m).kernel())
    }

    /// Projection onto `self` along `complement`, as an ambient matrix.
    ///
    /// The two subspaces must be complementary.
    pub fn projection_along(&self, complement: &Subspace) -> Result<QMatrix, MatrixError> {
        self.check_ambient(complement)?;
        let n = self.ambient;
        let mut cols = self.basis_vectors();
        cols.extend(complement.basis_vectors());
        if cols.len() != n {
            return Err(MatrixError::Singular);
        }
        let p = QMatrix::from_columns(n, &cols)?;
        let p_inv = p.inverse()?;
        let mut keep = QMatrix::zeros(n, n);
        for i in 0..self.dim() {
            keep.set(i, i, rational::one());
        }
        Ok(&(&p * &keep) * &p_inv)
    }

    /// Restricts a linear map preserving this subspace to the echelon basis.
    ///
    /// Returns `None` when `m` does not preserve the subspace.
    pub fn restrict_map(&self, m: &QMatrix) -> Option<QMatrix> {
        let d = self.dim();
        let mut out = QMatrix::zeros(d, d);
        for (j, v) in self.basis_vectors().iter().enumerate() {
            let coords = self.coordinates(&m.apply(v))?;
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.set(i, j, c);
                }
            }
        }
        Some(out)
    }
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, MatrixError> {
    u.intersect(v)
}

pub fn preimage(m: &QMatrix, v: &Subspace) -> Result<Subspace, MatrixError> {
    v.preimage(m)
}
