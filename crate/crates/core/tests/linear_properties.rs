use nilcps_core::matrix::{is_nilpotent_matrix, kernel, rank};
use nilcps_core::rational::{frac, int};
use nilcps_core::subspace::{intersect, preimage};
use nilcps_core::{QMatrix, QVector, Rational, Subspace};
use num_traits::Zero;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(small(), rows * cols).prop_map(move |v| QMatrix::from_vec(rows, cols, v).unwrap())
}

fn square() -> impl Strategy<Value = QMatrix> {
    (1usize..=5).prop_flat_map(|n| matrix(n, n))
}

fn sparse_square(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop_oneof![3 => Just(int(0)), 1 => small()], n * n)
        .prop_map(move |v| QMatrix::from_vec(n, n, v).unwrap())
}

/// Unit lower-triangular times unit upper-triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    (matrix(n, n), matrix(n, n)).prop_map(move |(a, b)| {
        let mut l = QMatrix::identity(n);
        let mut u = QMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if r > c {
                    l.set(r, c, a.get(r, c).clone());
                }
                if r < c {
                    u.set(r, c, b.get(r, c).clone());
                }
            }
        }
        &l * &u
    })
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(small(), n), 0..=n).prop_map(move |vs| Subspace::span(n, &vs).unwrap())
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) by
/// Faddeev-LeVerrier.
fn char_poly(a: &QMatrix) -> Vec<Rational> {
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = int(1);
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &QMatrix::scalar(n, &c[n - k + 1]);
        c[n - k] = -(a * &m).trace() / int(k as i64);
    }
    c
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))) {
        prop_assert_eq!(rank(&m) + kernel(&m).dim(), m.cols());
        for v in kernel(&m).basis_vectors() {
            prop_assert!(m.apply(&v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn nilpotency_matches_characteristic_polynomial(a in prop_oneof![square(), (1usize..=5).prop_flat_map(sparse_square)]) {
        let cp = char_poly(&a);
        let oracle = cp[..a.rows()].iter().all(Zero::is_zero);
        prop_assert_eq!(is_nilpotent_matrix(&a), oracle);
    }

    #[test]
    fn conjugated_strict_triangular_is_nilpotent(
        (t, p) in (1usize..=5).prop_flat_map(|n| (matrix(n, n), invertible(n)))
    ) {
        let n = t.rows();
        let mut s = t.clone();
        for r in 0..n {
            for c in 0..=r {
                s.set(r, c, int(0));
            }
        }
        let a = &(&p * &s) * &p.inverse().unwrap();
        prop_assert!(is_nilpotent_matrix(&a));
        prop_assert!(a.pow(n as u32).is_zero());
        let shifted = &a + &QMatrix::identity(n);
        prop_assert!(!is_nilpotent_matrix(&shifted));
    }

    #[test]
    fn intersection_and_sum_laws((u, v) in (1usize..=5).prop_flat_map(|n| (subspace(n), subspace(n)))) {
        let i = intersect(&u, &v).unwrap();
        let s = u.sum(&v).unwrap();
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
        prop_assert_eq!(i.dim() + s.dim(), u.dim() + v.dim());
        prop_assert_eq!(&i, &intersect(&v, &u).unwrap());
        prop_assert_eq!(&intersect(&u, &u).unwrap(), &u);
    }

    #[test]
    fn preimage_maps_into_target((m, v) in (1usize..=5).prop_flat_map(|n| (matrix(n, n), subspace(n)))) {
        let pre = preimage(&m, &v).unwrap();
        for x in pre.basis_vectors() {
            prop_assert!(v.contains(&m.apply(&x)));
        }
        prop_assert!(pre.contains_subspace(&kernel(&m)));
        // every vector mapping into V lies in the preimage
        let image_part = v.intersect(&Subspace::span(m.rows(), &m.transpose().row_vectors()).unwrap()).unwrap();
        prop_assert_eq!(pre.dim(), kernel(&m).dim() + image_part.dim());
    }

    #[test]
    fn inverse_and_determinant(p in (1usize..=5).prop_flat_map(invertible)) {
        let inv = p.inverse().unwrap();
        prop_assert_eq!(&(&p * &inv), &QMatrix::identity(p.rows()));
        prop_assert_eq!(p.determinant().unwrap(), int(1));
    }
}

#[test]
fn faddeev_leverrier_oracle_on_known_matrix() {
    // [[2,1],[0,3]]: x^2 - 5x + 6
    let a = QMatrix::from_int_rows(&[&[2, 1], &[0, 3]]);
    assert_eq!(char_poly(&a), vec![int(6), int(-5), int(1)]);
    let shift: QVector = vec![int(0), int(1)];
    assert_eq!(a.apply(&shift), vec![int(1), int(3)]);
}
