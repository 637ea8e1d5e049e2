//! Complex and product structures on a Lie algebra and their interaction.
//!
//! A complex product structure (CPS) is a pair `{J, E}` with `J` an
//! integrable complex structure, `E` an integrable product structure and
//! `JE = -EJ`. The eigenspaces of `E` form the double Lie algebra
//! `g = g+ ⋈ g-`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::lie::{Iso3, LieAlgebra, LieError};
use crate::matrix::{MatrixError, QMatrix};
use crate::rational::{self, QVector, Rational};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("endomorphism of size {found} on an algebra of dimension {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("J^2 != -Id")]
    NotAlmostComplex,
    #[error("E^2 != Id")]
    NotAlmostProduct,
    #[error("E = +Id or E = -Id")]
    TrivialProduct,
    #[error("JE != -EJ")]
    NotAnticommuting,
    #[error("J is not integrable ({count} failing basis pairs, first ({i}, {j}))")]
    ComplexNotIntegrable { count: usize, i: usize, j: usize },
    #[error("E is not integrable ({count} failing basis pairs, first ({i}, {j}))")]
    ProductNotIntegrable { count: usize, i: usize, j: usize },
    #[error("eigenspaces have dimensions {plus} and {minus}")]
    UnequalEigenspaces { plus: usize, minus: usize },
    #[error("the {0} eigenspace is not a subalgebra")]
    EigenspaceNotSubalgebra(Sign),
    #[error("J does not map the +1 eigenspace onto the -1 eigenspace")]
    NotSwapped,
    #[error("({p}, {q}) is not on the unit circle")]
    NotOnCircle { p: Rational, q: Rational },
    #[error("vectors do not form a basis")]
    NotABasis,
    #[error("the double Lie algebra is not of type (h3, h3)")]
    NotHeisenbergPair,
    #[error("J[e1,e2] is not a multiple of [Je1,Je2]")]
    NotProportional,
    #[error("expected a {expected}-dimensional algebra, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A basis pair `(i, j)`, `i < j`, where an identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDefect {
    pub i: usize,
    pub j: usize,
    pub defect: QVector,
}

/// A square matrix acting on a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endo {
    matrix: QMatrix,
}

impl Endo {
    pub fn new(matrix: QMatrix) -> Result<Self, StructureError> {
        if !matrix.is_square() {
            return Err(MatrixError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            }
            .into());
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: QMatrix::identity(n),
        }
    }

    /// The complex structure with `J u = w`, `J w = -u` for each pair.
    /// The pairs together must form a basis.
    pub fn complex_from_pairs(n: usize, pairs: &[(QVector, QVector)]) -> Result<Self, StructureError> {
        let mut cols = Vec::with_capacity(n);
        for (u, _) in pairs {
            cols.push(u.clone());
        }
        for (_, w) in pairs {
            cols.push(w.clone());
        }
        let k = pairs.len();
        if 2 * k != n {
            return Err(StructureError::NotABasis);
        }
        let mut j0 = QMatrix::zeros(n, n);
        for a in 0..k {
            j0.set(k + a, a, rational::one());
            j0.set(a, k + a, -rational::one());
        }
        Self::conjugated(n, &cols, &j0)
    }

    /// The product structure with the given `+1` and `-1` eigenvectors.
    pub fn product_from_split(n: usize, plus: &[QVector], minus: &[QVector]) -> Result<Self, StructureError> {
        let mut cols: Vec<QVector> = plus.to_vec();
        cols.extend(minus.iter().cloned());
        if cols.len() != n {
            return Err(StructureError::NotABasis);
        }
        let mut d = QMatrix::identity(n);
        for a in plus.len()..n {
            d.set(a, a, -rational::one());
        }
        Self::conjugated(n, &cols, &d)
    }

    fn conjugated(n: usize, cols: &[QVector], m: &QMatrix) -> Result<Self, StructureError> {
        let p = QMatrix::from_columns(n, cols)?;
        let p_inv = p.inverse().map_err(|_| StructureError::NotABasis)?;
        Ok(Self {
            matrix: &(&p * m) * &p_inv,
        })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> QMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Rational]) -> QVector {
        self.matrix.apply(v)
    }

    pub fn compose(&self, other: &Endo) -> Endo {
        Endo {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn is_almost_complex(&self) -> bool {
        let sq = &self.matrix * &self.matrix;
        sq == -&QMatrix::identity(self.dim())
    }

    pub fn is_almost_product(&self) -> bool {
        let sq = &self.matrix * &self.matrix;
        sq == QMatrix::identity(self.dim())
    }

    pub fn anticommutes(&self, other: &Endo) -> bool {
        let ab = &self.matrix * &other.matrix;
        let ba = &other.matrix * &self.matrix;
        (&ab + &ba).is_zero()
    }
}

fn check_size(g: &LieAlgebra, a: &Endo) -> Result<(), StructureError> {
    if a.dim() != g.dim() {
        return Err(StructureError::WrongSize {
            expected: g.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

fn check_complex(g: &LieAlgebra, j: &Endo) -> Result<(), StructureError> {
    check_size(g, j)?;
    if !j.is_almost_complex() {
        return Err(StructureError::NotAlmostComplex);
    }
    Ok(())
}

fn check_product(g: &LieAlgebra, e: &Endo) -> Result<(), StructureError> {
    check_size(g, e)?;
    if !e.is_almost_product() {
        return Err(StructureError::NotAlmostProduct);
    }
    let n = g.dim();
    if e.matrix == QMatrix::identity(n) || e.matrix == -&QMatrix::identity(n) {
        return Err(StructureError::TrivialProduct);
    }
    Ok(())
}

fn pair_defects(n: usize, f: impl Fn(&QVector, &QVector) -> QVector) -> Vec<PairDefect> {
    let mut out = Vec::new();
    for i in 0..n {
        let x = rational::unit(n, i);
        for j in i + 1..n {
            let y = rational::unit(n, j);
            let d = f(&x, &y);
            if !rational::is_zero_vec(&d) {
                out.push(PairDefect { i, j, defect: d });
            }
        }
    }
    out
}

/// Basis pairs where `J[x,y] = [Jx,y] + [x,Jy] + J[Jx,Jy]` fails.
pub fn complex_integrability_defect(g: &LieAlgebra, j: &Endo) -> Result<Vec<PairDefect>, StructureError> {
    check_complex(g, j)?;
    Ok(pair_defects(g.dim(), |x, y| {
        let jx = j.apply(x);
        let jy = j.apply(y);
        let lhs = j.apply(&g.bracket(x, y));
        let mut rhs = g.bracket(&jx, y);
        rhs = rational::add(&rhs, &g.bracket(x, &jy));
        rhs = rational::add(&rhs, &j.apply(&g.bracket(&jx, &jy)));
        rational::sub(&lhs, &rhs)
    }))
}

/// Basis pairs where `E[x,y] = [Ex,y] + [x,Ey] - E[Ex,Ey]` fails.
pub fn product_integrability_defect(g: &LieAlgebra, e: &Endo) -> Result<Vec<PairDefect>, StructureError> {
    check_product(g, e)?;
    Ok(pair_defects(g.dim(), |x, y| {
        let ex = e.apply(x);
        let ey = e.apply(y);
        let lhs = e.apply(&g.bracket(x, y));
        let mut rhs = g.bracket(&ex, y);
        rhs = rational::add(&rhs, &g.bracket(x, &ey));
        rhs = rational::sub(&rhs, &e.apply(&g.bracket(&ex, &ey)));
        rational::sub(&lhs, &rhs)
    }))
}

/// `[Jx,Jy] = [x,y]` on all basis pairs.
pub fn is_abelian_complex(g: &LieAlgebra, j: &Endo) -> Result<bool, StructureError> {
    check_complex(g, j)?;
    let bad = pair_defects(g.dim(), |x, y| {
        rational::sub(&g.bracket(&j.apply(x), &j.apply(y)), &g.bracket(x, y))
    });
    Ok(bad.is_empty())
}

/// `J[x,y] = [Jx,y]` on all basis pairs, i.e. `g` is a complex Lie algebra
/// with multiplication by `i` given by `J`.
pub fn is_complex_bilinear(g: &LieAlgebra, j: &Endo) -> Result<bool, StructureError> {
    check_complex(g, j)?;
    let n = g.dim();
    for a in 0..n {
        let x = rational::unit(n, a);
        for b in 0..n {
            let y = rational::unit(n, b);
            if j.apply(&g.bracket(&x, &y)) != g.bracket(&j.apply(&x), &y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(+1 eigenspace, -1 eigenspace)` of an involution.
pub fn eigenspaces(e: &Endo) -> Result<(Subspace, Subspace), StructureError> {
    if !e.is_almost_product() {
        return Err(StructureError::NotAlmostProduct);
    }
    let id = QMatrix::identity(e.dim());
    Ok(((&e.matrix - &id).kernel(), (&e.matrix + &id).kernel()))
}

/// Two complementary subalgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleLieAlgebra {
    pub algebra: LieAlgebra,
    pub plus: Subspace,
    pub minus: Subspace,
}

impl DoubleLieAlgebra {
    pub fn new(algebra: LieAlgebra, plus: Subspace, minus: Subspace) -> Result<Self, StructureError> {
        if !algebra.is_subalgebra(&plus) {
            return Err(StructureError::EigenspaceNotSubalgebra(Sign::Plus));
        }
        if !algebra.is_subalgebra(&minus) {
            return Err(StructureError::EigenspaceNotSubalgebra(Sign::Minus));
        }
        let sum = plus.sum(&minus)?;
        if !sum.is_full() || plus.dim() + minus.dim() != algebra.dim() {
            return Err(StructureError::NotABasis);
        }
        Ok(Self { algebra, plus, minus })
    }

    /// Isomorphism types of the two halves when both are 3-dimensional.
    pub fn double_type(&self) -> Option<(Iso3, Iso3)> {
        let a = self.algebra.iso_type_3d(&self.plus).ok()?;
        let b = self.algebra.iso_type_3d(&self.minus).ok()?;
        Some((a, b))
    }
}

/// A validated complex product structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cps {
    algebra: LieAlgebra,
    j: Endo,
    e: Endo,
    plus: Subspace,
    minus: Subspace,
}

/// Checks every defining property of a CPS and reports the first failure.
pub fn assemble_cps(g: LieAlgebra, j: Endo, e: Endo) -> Result<Cps, StructureError> {
    check_complex(&g, &j)?;
    check_product(&g, &e)?;
    if !j.anticommutes(&e) {
        return Err(StructureError::NotAnticommuting);
    }
    let cd = complex_integrability_defect(&g, &j)?;
    if let Some(f) = cd.first() {
        return Err(StructureError::ComplexNotIntegrable {
            count: cd.len(),
            i: f.i,
            j: f.j,
        });
    }
    let pd = product_integrability_defect(&g, &e)?;
    if let Some(f) = pd.first() {
        return Err(StructureError::ProductNotIntegrable {
            count: pd.len(),
            i: f.i,
            j: f.j,
        });
    }
    let (plus, minus) = eigenspaces(&e)?;
    for (s, sign) in [(&plus, Sign::Plus), (&minus, Sign::Minus)] {
        if !g.is_subalgebra(s) {
            return Err(StructureError::EigenspaceNotSubalgebra(sign));
        }
    }
    if plus.dim() != minus.dim() {
        return Err(StructureError::UnequalEigenspaces {
            plus: plus.dim(),
            minus: minus.dim(),
        });
    }
    if plus.image(j.matrix())? != minus {
        return Err(StructureError::NotSwapped);
    }
    Ok(Cps {
        algebra: g,
        j,
        e,
        plus,
        minus,
    })
}

impl Cps {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn j(&self) -> &Endo {
        &self.j
    }

    pub fn e(&self) -> &Endo {
        &self.e
    }

    pub fn plus(&self) -> &Subspace {
        &self.plus
    }

    pub fn minus(&self) -> &Subspace {
        &self.minus
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Projection onto `g+` along `g-`, i.e. `(Id + E) / 2`.
    pub fn pi_plus(&self) -> QMatrix {
        let n = self.dim();
        (&QMatrix::identity(n) + self.e.matrix()).scaled(&rational::frac(1, 2))
    }

    /// Projection onto `g-` along `g+`, i.e. `(Id - E) / 2`.
    pub fn pi_minus(&self) -> QMatrix {
        let n = self.dim();
        (&QMatrix::identity(n) - self.e.matrix()).scaled(&rational::frac(1, 2))
    }

    pub fn double(&self) -> DoubleLieAlgebra {
        DoubleLieAlgebra {
            algebra: self.algebra.clone(),
            plus: self.plus.clone(),
            minus: self.minus.clone(),
        }
    }

    pub fn double_type(&self) -> Option<(Iso3, Iso3)> {
        self.double().double_type()
    }

    pub fn is_abelian(&self) -> bool {
        is_abelian_complex(&self.algebra, &self.j).expect("validated")
    }

    /// Same data with `J` replaced by `-J`; swaps nothing else.
    pub fn conjugate(&self) -> Cps {
        let j = Endo {
            matrix: -self.j.matrix(),
        };
        assemble_cps(self.algebra.clone(), j, self.e.clone()).expect("-J is again compatible")
    }

    /// The same structure written in a new basis (columns of `p`).
    pub fn change_basis(&self, p: &QMatrix) -> Result<Cps, StructureError> {
        let g = self.algebra.change_basis(p)?;
        let p_inv = p.inverse()?;
        let j = Endo::new(&(&p_inv * self.j.matrix()) * p)?;
        let e = Endo::new(&(&p_inv * self.e.matrix()) * p)?;
        assemble_cps(g, j, e)
    }
}

/// `E' = pE + qJE` with `(p, q) = ((c²-1)/(c²+1), 2c/(c²+1))`.
pub fn rotate_product(cps: &Cps, c: &Rational) -> Result<Endo, StructureError> {
    let c2 = c * c;
    let den = &c2 + Rational::one();
    let p = (&c2 - Rational::one()) / &den;
    let q = (c * rational::int(2)) / &den;
    rotate_product_rational_angle(cps, &p, &q)
}

/// `E' = pE + qJE` for a rational point `(p, q)` on the unit circle.
pub fn rotate_product_rational_angle(cps: &Cps, p: &Rational, q: &Rational) -> Result<Endo, StructureError> {
    if p * p + q * q != Rational::one() {
        return Err(StructureError::NotOnCircle {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let je = cps.j.matrix() * cps.e.matrix();
    let m = &cps.e.matrix().scaled(p) + &je.scaled(q);
    let e = Endo { matrix: m };
    assemble_cps(cps.algebra.clone(), cps.j.clone(), e.clone())?;
    Ok(e)
}

/// The CPS `{J, pE + qJE}`.
pub fn rotated_cps(cps: &Cps, p: &Rational, q: &Rational) -> Result<Cps, StructureError> {
    let e = rotate_product_rational_angle(cps, p, q)?;
    assemble_cps(cps.algebra.clone(), cps.j.clone(), e)
}

/// `{x : [x, g] ⊂ w}`
fn bracket_preimage(g: &LieAlgebra, w: &Subspace) -> Subspace {
    let mut s = Subspace::full(g.dim());
    for k in 0..g.dim() {
        let r = w.preimage(&g.right_bracket(k)).expect("square of algebra size");
        s = s.intersect(&r).expect("same ambient");
    }
    s
}

/// `a_0 = 0`, `a_t = {x : [x,g] ⊂ a_{t-1}, [Jx,g] ⊂ a_{t-1}}`, listed until
/// the first repeated term.
pub fn ascending_series(g: &LieAlgebra, j: &Endo) -> Result<Vec<Subspace>, StructureError> {
    let defects = complex_integrability_defect(g, j)?;
    if let Some(f) = defects.first() {
        return Err(StructureError::ComplexNotIntegrable {
            count: defects.len(),
            i: f.i,
            j: f.j,
        });
    }
    let mut series = alloc::vec![Subspace::zero(g.dim())];
    loop {
        let last = series.last().expect("nonempty");
        let s = bracket_preimage(g, last);
        let next = s.intersect(&s.preimage(j.matrix())?)?;
        if &next == last {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn is_nilpotent_complex(g: &LieAlgebra, j: &Endo) -> Result<bool, StructureError> {
    Ok(ascending_series(g, j)?.last().is_some_and(Subspace::is_full))
}

/// The largest `J`- and `E`-invariant subspace of the center, if it has
/// dimension at least 2.
pub fn find_central_invariant_ideal(cps: &Cps) -> Option<Subspace> {
    let w = largest_invariant_central(cps);
    (w.dim() >= 2).then_some(w)
}

/// The largest `J`- and `E`-invariant subspace of the center, of any dimension.
pub fn largest_invariant_central(cps: &Cps) -> Subspace {
    let mut w = cps.algebra.center();
    loop {
        let next = w
            .intersect(&w.preimage(cps.j.matrix()).expect("square"))
            .and_then(|x| x.intersect(&w.preimage(cps.e.matrix()).expect("square")))
            .expect("same ambient");
        if next == w {
            return w;
        }
        w = next;
    }
}

/// A necessary condition for a CPS that the algebra fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A 6-dimensional nilpotent algebra with a CPS has a 2-dimensional
    /// central ideal; the center here has the given dimension.
    CenterTooSmall(usize),
}

/// Sound necessary conditions for a CPS on a 6-dimensional nilpotent
/// algebra. An empty list does not mean a CPS exists.
pub fn cps_obstructions(g: &LieAlgebra) -> Result<Vec<Obstruction>, StructureError> {
    if g.dim() != 6 {
        return Err(StructureError::WrongDimension {
            expected: 6,
            found: g.dim(),
        });
    }
    if !g.is_nilpotent() {
        return Err(StructureError::NotNilpotent);
    }
    let z = g.center().dim();
    let mut out = Vec::new();
    if z < 2 {
        out.push(Obstruction::CenterTooSmall(z));
    }
    Ok(out)
}

/// For a CPS of type `(h3, h3)`: the constant `c` with `J e3 = c f3`, where
/// `e1, e2` span `g+` modulo its center, `e3 = [e1,e2]`, `f_i = J e_i` and
/// `f3 = [f1,f2]`.
pub fn heisenberg_constant(cps: &Cps) -> Result<Rational, StructureError> {
    if cps.double_type() != Some((Iso3::Heisenberg3, Iso3::Heisenberg3)) {
        return Err(StructureError::NotHeisenbergPair);
    }
    let g = &cps.algebra;
    let basis = cps.plus.basis_vectors();
    let mut pair = None;
    'outer: for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            if !rational::is_zero_vec(&g.bracket(&basis[a], &basis[b])) {
                pair = Some((a, b));
                break 'outer;
            }
        }
    }
    let (a, b) = pair.ok_or(StructureError::NotHeisenbergPair)?;
    let e3 = g.bracket(&basis[a], &basis[b]);
    let f3 = g.bracket(&cps.j.apply(&basis[a]), &cps.j.apply(&basis[b]));
    let je3 = cps.j.apply(&e3);
    let k = f3
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(StructureError::NotProportional)?;
    let c = &je3[k] / &f3[k];
    if rational::scale(&c, &f3) != je3 {
        return Err(StructureError::NotProportional);
    }
    Ok(c)
}

/// The maps of `[x, x'] = -μ(x')x + ρ(x)x'` for `x ∈ g+`, `x' ∈ g-`:
/// `ρ(x)` acts on `g-` and `μ(x')` on `g+`, each in the echelon basis of its
/// eigenspace, one matrix per echelon basis vector.
pub fn induced_representations(cps: &Cps) -> (Vec<QMatrix>, Vec<QMatrix>) {
    let g = &cps.algebra;
    let pp = cps.pi_plus();
    let pm = cps.pi_minus();
    let rho = cps
        .plus
        .basis_vectors()
        .iter()
        .map(|x| {
            let m = &pm * &g.ad(x);
            cps.minus.restrict_map(&m).expect("projection lands in g-")
        })
        .collect();
    let mu = cps
        .minus
        .basis_vectors()
        .iter()
        .map(|y| {
            // μ(y)x = -π+[x,y] = π+[y,x]
            let m = &pp * &g.ad(y);
            cps.plus.restrict_map(&m).expect("projection lands in g+")
        })
        .collect();
    (rho, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vec_of};
    use crate::salamon::parse_salamon;
    use alloc::vec;

    fn e(n: usize, i: usize) -> QVector {
        rational::unit(n, i - 1)
    }

    fn hc() -> LieAlgebra {
        parse_salamon("(0,0,0,0,13+42,14+23)").unwrap()
    }

    fn hc_abelian_cps() -> Cps {
        let g = hc();
        let j = Endo::complex_from_pairs(6, &[(e(6, 1), e(6, 3)), (e(6, 2), e(6, 4)), (e(6, 5), e(6, 6))]).unwrap();
        let pe = Endo::product_from_split(6, &[e(6, 1), e(6, 2), e(6, 5)], &[e(6, 3), e(6, 4), e(6, 6)]).unwrap();
        assemble_cps(g, j, pe).unwrap()
    }

    #[test]
    fn complex_from_pairs_squares_to_minus_one() {
        let j = Endo::complex_from_pairs(4, &[(vec_of(&[1, 1, 0, 0]), e(4, 3)), (e(4, 2), e(4, 4))]).unwrap();
        assert!(j.is_almost_complex());
        assert_eq!(j.apply(&vec_of(&[1, 1, 0, 0])), e(4, 3));
        assert_eq!(j.apply(&e(4, 3)), vec_of(&[-1, -1, 0, 0]));
        assert!(Endo::complex_from_pairs(4, &[(e(4, 1), e(4, 1)), (e(4, 2), e(4, 4))]).is_err());
    }

    #[test]
    fn abelian_algebra_structures() {
        let g = LieAlgebra::abelian(4);
        let j = Endo::complex_from_pairs(4, &[(e(4, 1), e(4, 2)), (e(4, 3), e(4, 4))]).unwrap();
        assert!(complex_integrability_defect(&g, &j).unwrap().is_empty());
        assert!(is_abelian_complex(&g, &j).unwrap());
        assert_eq!(
            ascending_series(&g, &j).unwrap(),
            vec![Subspace::zero(4), Subspace::full(4)]
        );
    }

    #[test]
    fn hc_first_structure() {
        let cps = hc_abelian_cps();
        assert!(cps.is_abelian());
        assert_eq!(cps.double_type(), Some((Iso3::Abelian3, Iso3::Abelian3)));
        assert_eq!(
            find_central_invariant_ideal(&cps),
            Some(Subspace::coordinate(6, &[4, 5]))
        );
    }

    #[test]
    fn remark_structure_is_abelian_and_paracomplex() {
        let g = parse_salamon("(0,0,0,12,13+42,14+23)").unwrap();
        let j = Endo::complex_from_pairs(
            6,
            &[
                (e(6, 1), e(6, 2)),
                (e(6, 3), rational::neg(&e(6, 4))),
                (e(6, 5), e(6, 6)),
            ],
        )
        .unwrap();
        assert!(complex_integrability_defect(&g, &j).unwrap().is_empty());
        assert!(is_abelian_complex(&g, &j).unwrap());
        let pe = Endo::product_from_split(
            6,
            &[e(6, 1), e(6, 3), e(6, 5)],
            &[vec_of(&[1, 1, 0, 0, 0, 0]), vec_of(&[0, 0, 1, 1, 0, 0]), e(6, 6)],
        )
        .unwrap();
        assert!(product_integrability_defect(&g, &pe).unwrap().is_empty());
    }

    #[test]
    fn non_abelian_complex_structure() {
        let g = parse_salamon("(0,0,0,12,13,14)").unwrap();
        let m = |v: QVector| rational::neg(&v);
        let j = Endo::complex_from_pairs(
            6,
            &[(e(6, 1), m(e(6, 2))), (e(6, 3), m(e(6, 4))), (e(6, 5), m(e(6, 6)))],
        )
        .unwrap();
        assert!(complex_integrability_defect(&g, &j).unwrap().is_empty());
        assert!(!is_abelian_complex(&g, &j).unwrap());
    }

    #[test]
    fn product_structure_errors() {
        let g = LieAlgebra::abelian(2);
        assert_eq!(
            product_integrability_defect(&g, &Endo::identity(2)),
            Err(StructureError::TrivialProduct)
        );
        let not_inv = Endo::new(QMatrix::from_int_rows(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(eigenspaces(&not_inv), Err(StructureError::NotAlmostProduct));
    }

    #[test]
    fn commuting_pair_rejected() {
        let g = LieAlgebra::abelian(4);
        let j = Endo::complex_from_pairs(4, &[(e(4, 1), e(4, 2)), (e(4, 3), e(4, 4))]).unwrap();
        let pe = Endo::product_from_split(4, &[e(4, 1), e(4, 2)], &[e(4, 3), e(4, 4)]).unwrap();
        assert_eq!(assemble_cps(g, j, pe), Err(StructureError::NotAnticommuting));
    }

    #[test]
    fn rotation_parameters() {
        let cps = hc_abelian_cps();
        let je = cps.j().compose(cps.e());
        assert_eq!(rotate_product(&cps, &int(1)).unwrap(), je);
        let e2 = rotate_product(&cps, &int(2)).unwrap();
        let expect = &cps.e().matrix().scaled(&frac(3, 5)) + &je.matrix().scaled(&frac(4, 5));
        assert_eq!(e2.matrix(), &expect);
        assert_eq!(
            rotate_product_rational_angle(&cps, &int(1), &int(0)).unwrap(),
            cps.e().clone()
        );
        assert!(matches!(
            rotate_product_rational_angle(&cps, &int(1), &int(1)),
            Err(StructureError::NotOnCircle { .. })
        ));
    }

    #[test]
    fn obstructions_on_small_centers() {
        for s in ["(0,0,0,12,23,14-35)", "(0,0,12,13,23,14+25)"] {
            let g = parse_salamon(s).unwrap();
            assert_eq!(cps_obstructions(&g).unwrap(), vec![Obstruction::CenterTooSmall(1)]);
        }
        let g = parse_salamon("(0,0,0,12,13+42,14+23)").unwrap();
        assert!(cps_obstructions(&g).unwrap().is_empty());
        assert!(cps_obstructions(&LieAlgebra::abelian(4)).is_err());
    }

    #[test]
    fn complex_bilinear_on_hc() {
        let g = hc();
        let j = Endo::complex_from_pairs(6, &[(e(6, 1), e(6, 2)), (e(6, 3), e(6, 4)), (e(6, 5), e(6, 6))]).unwrap();
        assert!(is_complex_bilinear(&g, &j).unwrap());
        assert!(complex_integrability_defect(&g, &j).unwrap().is_empty());
    }
}
