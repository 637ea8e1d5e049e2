use nilcps_core::catalog::{self, EXCLUDED};
use nilcps_core::connection::cp_connection;
use nilcps_core::rational::{self, frac, int};
use nilcps_core::salamon::{d_squared_defects, emit_salamon, parse_salamon};
use nilcps_core::structures::{induced_representations, rotated_cps, Cps};
use nilcps_core::{LieAlgebra, QMatrix, Rational};
use proptest::prelude::*;
use proptest::sample::select;

fn catalog_strings() -> Vec<String> {
    let mut v: Vec<String> = catalog::catalog().into_iter().map(|e| e.salamon).collect();
    v.extend(EXCLUDED.iter().map(|s| s.to_string()));
    v
}

fn witnesses() -> Vec<Cps> {
    catalog::catalog()
        .iter()
        .flat_map(|e| e.witnesses.iter().map(|w| w.build().unwrap()).collect::<Vec<_>>())
        .collect()
}

fn small() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    (
        prop::collection::vec(small(), n * n),
        prop::collection::vec(small(), n * n),
        Just(n),
    )
        .prop_map(|(a, b, n)| {
            let mut l = QMatrix::identity(n);
            let mut u = QMatrix::identity(n);
            for r in 0..n {
                for c in 0..n {
                    if r > c {
                        l.set(r, c, a[r * n + c].clone());
                    }
                    if r < c {
                        u.set(r, c, b[r * n + c].clone());
                    }
                }
            }
            &l * &u
        })
}

/// Adds `delta` to the coefficient of `e_k` in `[e_i, e_j]`.
fn perturb(g: &LieAlgebra, i: usize, j: usize, k: usize, delta: Rational) -> LieAlgebra {
    let n = g.dim();
    let mut brackets = g.nonzero_brackets();
    brackets.push((i, j, rational::combo(n, &[(k, delta)])));
    LieAlgebra::from_brackets_unchecked(n, &brackets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn d_squared_agrees_with_jacobi(
        s in select(catalog_strings()),
        (i, j, k) in (0usize..5, 0usize..6).prop_filter("i < j", |(i, j)| i < j).prop_flat_map(|(i, j)| (Just(i), Just(j), 0usize..6)),
        delta in small(),
    ) {
        let g = parse_salamon(&s).unwrap();
        prop_assert!(d_squared_defects(&g).is_empty());
        let h = perturb(&g, i, j, k, delta);
        prop_assert!(h.check_antisymmetry().is_ok());
        prop_assert_eq!(d_squared_defects(&h).is_empty(), h.jacobi_defect().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn change_basis_round_trip(s in select(catalog_strings()), p in invertible(6)) {
        let g = parse_salamon(&s).unwrap();
        let h = g.change_basis(&p).unwrap();
        prop_assert!(h.jacobi_defect().is_empty());
        prop_assert_eq!(h.change_basis(&p.inverse().unwrap()).unwrap(), g.clone());
        prop_assert_eq!(h.center().dim(), g.center().dim());
        prop_assert_eq!(h.nilpotency_step(), g.nilpotency_step());
    }

    #[test]
    fn series_and_center(s in select(catalog_strings())) {
        let g = parse_salamon(&s).unwrap();
        let series = g.lower_central_series();
        for w in series.windows(2) {
            prop_assert!(g.is_ideal(&w[0]));
            prop_assert!(w[0].contains_subspace(&w[1]));
        }
        let z = g.center();
        prop_assert!(g.is_ideal(&z));
        for v in z.basis_vectors() {
            for i in 0..6 {
                prop_assert!(rational::is_zero_vec(&g.bracket(&v, &rational::unit(6, i))));
            }
        }
        prop_assert_eq!(emit_salamon(&g).map(|t| parse_salamon(&t).unwrap()), Ok(g.clone()));
    }

    #[test]
    fn complexification_restricts_to_original(s in select(catalog_strings())) {
        let g = parse_salamon(&s).unwrap();
        let c = g.complexify_realified();
        for i in 0..6 {
            for j in 0..6 {
                let b = c.bracket_basis(i, j);
                prop_assert_eq!(&b[..6], g.bracket_basis(i, j));
                prop_assert!(b[6..].iter().all(|x| *x == int(0)));
                let hatted: Vec<Rational> = c.bracket_basis(6 + i, 6 + j)[..6].to_vec();
                prop_assert_eq!(hatted, rational::neg(g.bracket_basis(i, j)));
            }
        }
    }
}

#[test]
fn connection_is_invariant_under_circle_rotations() {
    // (p, q) = ((t^2 - 1)/(t^2 + 1), 2t/(t^2 + 1))
    let ts = [frac(0, 1), frac(1, 2), frac(-2, 3), frac(3, 1), frac(-5, 4)];
    for cps in witnesses() {
        let base = cp_connection(&cps).unwrap();
        for t in &ts {
            let d = t * t + int(1);
            let p = (t * t - int(1)) / &d;
            let q = int(2) * t / &d;
            let rotated = rotated_cps(&cps, &p, &q).unwrap();
            assert_eq!(cp_connection(&rotated).unwrap(), base);
        }
    }
}

#[test]
fn induced_maps_are_representations() {
    for cps in witnesses() {
        let g = cps.algebra();
        let (rho, mu) = induced_representations(&cps);
        for (space, maps) in [(cps.plus(), &rho), (cps.minus(), &mu)] {
            let b = space.basis_vectors();
            for a in 0..b.len() {
                for c in 0..b.len() {
                    let coords = space.coordinates(&g.bracket(&b[a], &b[c])).unwrap();
                    let mut lhs = QMatrix::zeros(3, 3);
                    for (k, x) in coords.iter().enumerate() {
                        lhs = &lhs + &maps[k].scaled(x);
                    }
                    assert_eq!(lhs, maps[a].commutator(&maps[c]));
                }
            }
        }
        // [x, x'] = -μ(x')x + ρ(x)x'
        let bp = cps.plus().basis_vectors();
        let bm = cps.minus().basis_vectors();
        let from_minus = |c: &[Rational]| -> Vec<Rational> {
            let mut v = rational::zeros(6);
            for (k, x) in c.iter().enumerate() {
                rational::axpy(&mut v, x, &bm[k]);
            }
            v
        };
        let from_plus = |c: &[Rational]| -> Vec<Rational> {
            let mut v = rational::zeros(6);
            for (k, x) in c.iter().enumerate() {
                rational::axpy(&mut v, x, &bp[k]);
            }
            v
        };
        for (a, x) in bp.iter().enumerate() {
            for (c, y) in bm.iter().enumerate() {
                let rx = from_minus(&rho[a].apply(&rational::unit(3, c)));
                let my = from_plus(&mu[c].apply(&rational::unit(3, a)));
                assert_eq!(g.bracket(x, y), rational::sub(&rx, &my));
            }
        }
    }
}
