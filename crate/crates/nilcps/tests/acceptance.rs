//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints exactly one `PASS`/`FAIL` line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use nilcps::commands;
use nilcps::witness_data::builtin_entries;
use nilcps_core::catalog::{self, CatalogEntry, Family, FlatClass, Params, EXCLUDED};
use nilcps_core::connection::{
    self, connection_is_complete_certificate, cp_connection, curvature, lsa_completeness, lsa_is_complete,
    restrict_to_lsa, CompletenessMethod, Side,
};
use nilcps_core::geodesic::GeodesicParams;
use nilcps_core::hypercomplex::{lift_cps, lift_with_obata, obata_connection, HypercomplexStructure};
use nilcps_core::rational::{self, frac, int, unit, vec_of};
use nilcps_core::salamon::{emit_salamon, parse_salamon};
use nilcps_core::structures::{ascending_series, find_central_invariant_ideal, rotated_cps, Cps};
use nilcps_core::{LieAlgebra, Rational, Subspace};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// `(salamon, admits, flat class)` for the fifteen rows.
fn expected_table() -> Vec<(&'static str, [bool; 3], FlatClass)> {
    use FlatClass::*;
    let (y, n) = (true, false);
    vec![
        ("(0,0,0,0,0,0)", [y, n, n], FlatOnly),
        ("(0,0,0,0,0,12)", [y, n, n], FlatOnly),
        ("(0,0,0,0,0,12+34)", [y, n, n], FlatOnly),
        ("(0,0,0,0,12,14+25)", [y, n, n], Both),
        ("(0,0,0,0,12,13)", [n, y, y], FlatOnly),
        ("(0,0,0,0,13+42,14+23)", [y, y, y], FlatOnly),
        ("(0,0,0,0,12,14+23)", [y, y, y], FlatOnly),
        ("(0,0,0,0,12,34)", [y, y, y], FlatOnly),
        ("(0,0,0,12,13,14)", [n, y, y], Both),
        ("(0,0,0,12,13,23)", [n, y, y], FlatOnly),
        ("(0,0,0,12,14,24)", [n, y, y], NonFlatOnly),
        ("(0,0,0,12,13,24)", [n, y, y], NonFlatOnly),
        ("(0,0,0,12,13+14,24)", [n, y, y], Both),
        ("(0,0,0,12,13,14+23)", [n, y, y], FlatOnly),
        ("(0,0,0,12,14,13+42)", [n, y, y], Both),
    ]
}

fn entries() -> Vec<CatalogEntry> {
    builtin_entries().expect("shipped witness file parses")
}

/// Every witness, built, with its row and recorded flatness.
fn witnesses() -> Vec<(String, Cps, bool)> {
    entries()
        .iter()
        .flat_map(|e| {
            e.witnesses
                .iter()
                .map(|w| (e.salamon.clone(), w.build().expect("witness builds"), w.flat))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn same_algebra(a: &str, b: &str) -> bool {
    parse_salamon(a).unwrap() == parse_salamon(b).unwrap()
}

fn classification_table() -> Check {
    let entries = entries();
    let out = commands::verify_catalog(&entries, 0);
    ensure!(out.passed, "verify-catalog reports a failure: {}", out.report);
    let expected = expected_table();
    let rows: Vec<&CatalogEntry> = entries.iter().filter(|e| e.flat_class != FlatClass::NoCps).collect();
    ensure!(rows.len() == 15, "expected 15 rows, found {}", rows.len());
    for (row, (s, admits, _)) in rows.iter().zip(&expected) {
        ensure!(same_algebra(&row.salamon, s), "row order: {} vs {}", row.salamon, s);
        ensure!(
            row.admits == *admits,
            "{}: admits {:?}, table says {:?}",
            s,
            row.admits,
            admits
        );
        for (c, &yes) in admits.iter().enumerate() {
            let backed = row
                .witnesses
                .iter()
                .any(|w| catalog::verify_witness(row, w).is_ok() && catalog::column_of(w.double_type) == Some(c));
            ensure!(backed == yes, "{}: column {} backed = {}", s, c, backed);
        }
    }
    let excluded: Vec<&CatalogEntry> = entries.iter().filter(|e| e.flat_class == FlatClass::NoCps).collect();
    ensure!(excluded.len() == 3, "expected 3 excluded algebras");
    for s in EXCLUDED {
        let r = catalog::nonexistence_report(s).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "{}: nonexistence report fails: {:?}", s, r);
    }
    Ok(())
}

fn central_invariant_ideal() -> Check {
    for (row, cps, _) in witnesses() {
        let u = find_central_invariant_ideal(&cps).ok_or(format!("{row}: no invariant central ideal"))?;
        let g = cps.algebra();
        ensure!(u.dim() >= 2, "{}: dimension {}", row, u.dim());
        ensure!(g.is_central(&u) && g.is_ideal(&u), "{}: not a central ideal", row);
        for v in u.basis_vectors() {
            ensure!(u.contains(&cps.j().apply(&v)), "{}: not J-invariant", row);
            ensure!(u.contains(&cps.e().apply(&v)), "{}: not E-invariant", row);
        }
    }
    Ok(())
}

fn nilpotent_complex_structures() -> Check {
    for (row, cps, _) in witnesses() {
        let s = ascending_series(cps.algebra(), cps.j()).map_err(|e| e.to_string())?;
        ensure!(
            s.last().is_some_and(Subspace::is_full),
            "{}: ascending series stops short",
            row
        );
    }
    let (_, cps) = catalog::eight_dim_example();
    let s = ascending_series(cps.algebra(), cps.j()).map_err(|e| e.to_string())?;
    ensure!(
        s.iter().all(Subspace::is_zero),
        "8-dimensional example: series leaves zero"
    );
    Ok(())
}

fn connection_identities() -> Check {
    for (row, cps, _) in witnesses() {
        let conn = cp_connection(&cps).map_err(|e| e.to_string())?;
        ensure!(connection::torsion_defect(&conn).is_empty(), "{}: torsion", row);
        ensure!(
            connection::parallel_defect(&conn, cps.j()).is_empty(),
            "{}: J not parallel",
            row
        );
        ensure!(
            connection::parallel_defect(&conn, cps.e()).is_empty(),
            "{}: E not parallel",
            row
        );
        let c = curvature(&conn);
        ensure!(c.traceless, "{}: some nabla_z has nonzero trace", row);
        ensure!(c.is_ricci_flat && c.ricci.is_zero(), "{}: Ricci nonzero", row);
        let shortcut = connection::ricci_via_trace_identity(&conn).map_err(|e| e.to_string())?;
        ensure!(shortcut.is_zero(), "{}: trace identity nonzero", row);
    }
    Ok(())
}

fn p(pairs: &[(&str, Rational)]) -> Params {
    catalog::params(pairs)
}

fn get(ps: &Params, k: &str) -> Rational {
    ps.get(k).cloned().unwrap_or_else(|| int(0))
}

fn flatness_criteria() -> Check {
    let vals = [int(-1), frac(-1, 2), int(0), frac(1, 3), int(1)];
    let mut counts = [0usize; 2];
    for (fi, family) in [Family::H3R00, Family::H3R10].into_iter().enumerate() {
        for a in &vals {
            for c in &vals {
                for e in &vals {
                    for f in &vals {
                        if a == &int(0) && c == &int(0) {
                            continue;
                        }
                        let ps = p(&[
                            ("A", a.clone()),
                            ("C", c.clone()),
                            ("E", e.clone()),
                            ("F", f.clone()),
                            ("D", int(1)),
                        ]);
                        let Ok((_, cps)) = catalog::build_family(family, &ps) else {
                            continue;
                        };
                        counts[fi] += 1;
                        let conn = cp_connection(&cps).map_err(|e| e.to_string())?;
                        let curv = curvature(&conn);
                        let d = get(&ps, "A") * get(&ps, "F") - get(&ps, "C") * get(&ps, "E");
                        let (flat, coeff) = match family {
                            Family::H3R00 => (d.clone() == int(0), int(-2) * &d),
                            _ => (
                                get(&ps, "A") * (int(2) * get(&ps, "F") + int(1))
                                    == int(2) * get(&ps, "C") * get(&ps, "E"),
                                -(int(2) * &d + get(&ps, "A")),
                            ),
                        };
                        ensure!(curv.is_flat == flat, "{:?} {:?}: flat = {}", family, ps, curv.is_flat);
                        // R(e1, f1) e1 = coeff e3, R(e1, f1) f1 = coeff f3
                        let r_e1 = curv.r_apply(0, 3, 0);
                        let r_f1 = curv.r_apply(0, 3, 3);
                        ensure!(
                            r_e1 == rational::scale(&coeff, &unit(6, 2)),
                            "{:?} {:?}: R(e1,f1)e1",
                            family,
                            ps
                        );
                        ensure!(
                            r_f1 == rational::scale(&coeff, &unit(6, 5)),
                            "{:?} {:?}: R(e1,f1)f1",
                            family,
                            ps
                        );
                    }
                }
            }
        }
    }
    ensure!(counts.iter().all(|&c| c >= 20), "grid too small: {:?}", counts);
    let small = [int(-1), int(0), frac(1, 2), int(2)];
    let mut r4 = 0;
    for family in [Family::R400, Family::R410] {
        let names = family.param_names();
        for (k, x) in small.iter().enumerate() {
            for y in &small {
                let ps = p(&[
                    (names[k % 6], x.clone()),
                    (names[(k + 3) % 6], y.clone()),
                    (names[5], x.clone()),
                ]);
                let (_, cps) = catalog::build_family(family, &ps).map_err(|e| e.to_string())?;
                r4 += 1;
                ensure!(
                    curvature(&cp_connection(&cps).unwrap()).is_flat,
                    "{:?} {:?} not flat",
                    family,
                    ps
                );
            }
        }
    }
    ensure!(r4 >= 20, "R4 grid too small");
    for e in entries() {
        for w in &e.witnesses {
            if matches!(w.family, Family::R400 | Family::R410) {
                ensure!(w.flat, "{}: R4 witness recorded non-flat", e.salamon);
            }
        }
    }
    Ok(())
}

fn nonflat_classification() -> Check {
    let entries = entries();
    for (s, _, class) in expected_table() {
        let row = entries
            .iter()
            .find(|e| same_algebra(&e.salamon, s))
            .ok_or(format!("{s} missing"))?;
        ensure!(
            row.flat_class == class,
            "{}: class {:?}, expected {:?}",
            s,
            row.flat_class,
            class
        );
        let verified: Vec<bool> = row
            .witnesses
            .iter()
            .filter_map(|w| catalog::verify_witness(row, w).ok().map(|v| v.flat))
            .collect();
        let (f, nf) = (verified.iter().any(|&x| x), verified.iter().any(|&x| !x));
        match class {
            FlatClass::FlatOnly => ensure!(f && !nf, "{}: needs flat witnesses only", s),
            FlatClass::NonFlatOnly => {
                ensure!(!f && nf, "{}: needs non-flat witnesses only", s);
                ensure!(!row.nonflat_arguments.is_empty(), "{}: no argument recorded", s);
            }
            FlatClass::Both => ensure!(f && nf, "{}: needs one of each", s),
            FlatClass::NoCps => unreachable!(),
        }
    }
    Ok(())
}

fn completeness() -> Check {
    let params = GeodesicParams::default();
    for (row, cps, flat) in witnesses() {
        for side in [Side::Plus, Side::Minus] {
            let lsa = restrict_to_lsa(&cps, side).map_err(|e| format!("{row}: {e}"))?;
            let c = lsa_completeness(&lsa);
            ensure!(lsa_is_complete(&lsa), "{}: {:?} side incomplete", row, side);
            ensure!(
                c.complete() == c.left_basis_nilpotent,
                "{}: left/right nilpotency disagree",
                row
            );
        }
        if !flat {
            let conn = cp_connection(&cps).unwrap();
            let cert = connection_is_complete_certificate(&conn, &params);
            let CompletenessMethod::Numeric(report) = &cert.method else {
                return Err(format!("{row}: non-flat witness certified algebraically"));
            };
            ensure!(cert.verdict, "{}: geodesic residual {}", row, report.max_residual);
        }
    }
    Ok(())
}

fn rotation_invariance() -> Check {
    let ts = [
        int(0),
        int(1),
        int(-1),
        frac(1, 2),
        frac(-1, 2),
        int(2),
        int(-2),
        frac(1, 3),
        int(3),
        frac(-3, 4),
    ];
    for (row, cps, _) in witnesses() {
        let base = cp_connection(&cps).unwrap();
        for t in &ts {
            let d = t * t + int(1);
            let (pp, q) = ((t * t - int(1)) / &d, int(2) * t / &d);
            let rotated = rotated_cps(&cps, &pp, &q).map_err(|e| format!("{row}: {e}"))?;
            ensure!(
                cp_connection(&rotated).unwrap() == base,
                "{}: connection changes at t = {}",
                row,
                t
            );
        }
    }
    Ok(())
}

fn hat(i: usize) -> Vec<Rational> {
    unit(12, 6 + i - 1)
}

fn e12(i: usize) -> Vec<Rational> {
    unit(12, i - 1)
}

fn hypercomplex_lift() -> Check {
    let (c1, c2) = catalog::filiform_examples();
    let (g_hat, h1) = lift_cps(&c1).map_err(|e| e.to_string())?;
    let neg = |v: Vec<Rational>| rational::neg(&v);
    // brackets of the realified complexification
    for (i, j, k) in [(1, 2, 4), (1, 3, 5), (1, 4, 6)] {
        ensure!(g_hat.bracket(&e12(i), &e12(j)) == neg(e12(k)), "[e{},e{}]", i, j);
        ensure!(g_hat.bracket(&hat(i), &hat(j)) == e12(k), "[ê{},ê{}]", i, j);
        ensure!(g_hat.bracket(&hat(i), &e12(j)) == neg(hat(k)), "[ê{},e{}]", i, j);
        ensure!(g_hat.bracket(&e12(i), &hat(j)) == neg(hat(k)), "[e{},ê{}]", i, j);
    }
    let nonzero = g_hat.nonzero_brackets().len();
    ensure!(nonzero == 12, "expected 12 nonzero brackets, found {}", nonzero);
    let (_, h2) = lift_cps(&c2).map_err(|e| e.to_string())?;
    let jj = h1.j2();
    for (a, b) in [(1, 2), (3, 4), (5, 6)] {
        ensure!(jj.apply(&e12(a)) == neg(e12(b)), "J e{}", a);
        ensure!(jj.apply(&hat(a)) == neg(hat(b)), "J ê{}", a);
    }
    ensure!(h2.j2() == jj, "same J in both lifts");
    for (h, plus, minus) in [(&h1, [1, 3, 5], [2, 4, 6]), (&h2, [1, 4, 6], [2, 3, 5])] {
        for i in plus {
            ensure!(h.j1().apply(&e12(i)) == hat(i), "I e{} = ê{}", i, i);
        }
        for i in minus {
            ensure!(h.j1().apply(&e12(i)) == neg(hat(i)), "I e{} = -ê{}", i, i);
        }
    }
    let (_, o1) = lift_with_obata(&c1).map_err(|e| e.to_string())?;
    let (_, o2) = lift_with_obata(&c2).map_err(|e| e.to_string())?;
    let (k1, k2) = (curvature(&o1), curvature(&o2));
    ensure!(k1.is_flat, "Obata of the first lift not flat");
    ensure!(
        !k2.is_flat && k2.is_ricci_flat,
        "Obata of the second lift: flat {} ricci-flat {}",
        k2.is_flat,
        k2.is_ricci_flat
    );
    for (row, cps, flat) in witnesses() {
        let (g, h) = lift_cps(&cps).map_err(|e| format!("{row}: {e}"))?;
        let again = HypercomplexStructure::new(g.clone(), h.j1().clone(), h.j2().clone());
        ensure!(again.is_ok(), "{}: quaternion relations or integrability fail", row);
        let base = cp_connection(&cps).unwrap();
        let o = obata_connection(&g, &h, &base).map_err(|e| format!("{row}: {e}"))?;
        let k = curvature(&o);
        ensure!(k.is_flat == flat && k.is_ricci_flat, "{}: Obata flatness differs", row);
    }
    Ok(())
}

fn fried_and_eight_dim() -> Check {
    let (n4, lsa) = catalog::fried_example();
    ensure!(lsa_is_complete(&lsa), "Fried product incomplete");
    let conn = lsa.connection();
    ensure!(!conn.matrix(3).is_zero(), "nabla_e4 vanishes");
    ensure!(
        conn.apply_basis(1, 3) == vec_of(&[-1, 0, 0, 0]).as_slice(),
        "nabla_e2 e4"
    );
    ensure!(
        conn.apply_basis(0, 1) == vec_of(&[0, 0, 1, 0]).as_slice(),
        "nabla_e1 e2"
    );
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (unit(4, i), unit(4, j));
            let lhs = rational::sub(&lsa.product(&x, &y), &lsa.product(&y, &x));
            ensure!(lhs == n4.bracket(&x, &y), "x.y - y.x != [x,y] at ({}, {})", i, j);
        }
    }
    let (g, cps) = catalog::eight_dim_example();
    ensure!(
        g.center() == Subspace::coordinate(8, &[4]),
        "center is not span{{(0,e1)}}"
    );
    ensure!(
        find_central_invariant_ideal(&cps).is_none(),
        "unexpected central invariant ideal"
    );
    ensure!(cps.double_type().is_none(), "double type defined in dimension 8");
    Ok(())
}

fn parser_round_trip() -> Check {
    let mut strings: Vec<String> = expected_table().iter().map(|(s, _, _)| s.to_string()).collect();
    strings.extend(EXCLUDED.iter().map(|s| s.to_string()));
    for s in &strings {
        let g = parse_salamon(s).map_err(|e| format!("{s}: {e}"))?;
        let emitted = emit_salamon(&g).map_err(|e| format!("{s}: {e}"))?;
        ensure!(
            parse_salamon(&emitted).unwrap() == g,
            "{} -> {} changes the algebra",
            s,
            emitted
        );
        ensure!(
            emit_salamon(&parse_salamon(&emitted).unwrap()).unwrap() == emitted,
            "{}: emit not stable",
            s
        );
    }
    let g = parse_salamon("(0,0,0,0,12,14+23)").unwrap();
    let mut expected = LieAlgebra::abelian(6).nonzero_brackets();
    expected.push((0, 1, rational::neg(&unit(6, 4))));
    expected.push((0, 3, rational::neg(&unit(6, 5))));
    expected.push((1, 2, rational::neg(&unit(6, 5))));
    ensure!(
        g.nonzero_brackets() == expected,
        "worked example: {:?}",
        g.nonzero_brackets()
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("classification table", classification_table),
        ("invariant central ideal of dimension >= 2", central_invariant_ideal),
        ("J nilpotent, 8-dim series trivial", nilpotent_complex_structures),
        ("torsion-free, parallel, traceless, Ricci-flat", connection_identities),
        ("flatness conditions and curvature values", flatness_criteria),
        ("flat/non-flat classification", nonflat_classification),
        ("completeness", completeness),
        ("connection invariant under rotations of E", rotation_invariance),
        ("hypercomplex lift", hypercomplex_lift),
        ("Fried product and 8-dim example", fried_and_eight_dim),
        ("Salamon parse/emit round trip", parser_round_trip),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {}", n + 1, name),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {}", n + 1, name, e);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
