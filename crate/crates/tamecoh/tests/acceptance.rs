//! Acceptance suite: one test per headline claim, each printing a
//! PASS/FAIL line.  Run with `cargo test --test acceptance -- --nocapture`
//! to see the summary lines.

use std::collections::BTreeMap;

use tamecoh::ainfty::{
    check_transfer_morphism, kadeishvili_transfer, load_ainfty, transfer_classes, TransferOptions,
};
use tamecoh::exactlin::Field;
use tamecoh::grpalg::{
    alternating_words, build_group, spanning_check, standard_env, verify_relation, Family,
};
use tamecoh::hochci::{
    clifford_complex, degree_monomial_enumeration, koszul_hh_dim, load_matrix_factorization,
    verify_matrix_factorization, CIPresentation, HochciError,
};
use tamecoh::ncalg::{catalog, Mode, Monomial, MultiDegree, NcError, Poly};
use tamecoh::resolve::{
    dg_endomorphism, graded_ext_slots, hochschild_dims, minimal_resolution, FdModule,
    FiniteDimAlgebra,
};
use tamecoh::series::parse_series;

/// Rebuild a presentation with a deeper truncation bound: resolution-side
/// Ext computations probe internal degrees beyond the catalog default.
fn deepen(p: &tamecoh::ncalg::Presentation, bound: i64) -> tamecoh::ncalg::Presentation {
    tamecoh::ncalg::Presentation::new(
        p.field,
        p.arity,
        p.scale,
        p.mode,
        p.vertices.clone(),
        p.gens.clone(),
        p.relations.clone(),
        bound,
    )
    .unwrap()
}

fn report(criterion: u32, what: &str) {
    // Reached only if every assertion above held.
    println!("criterion {criterion}: PASS — {what}");
}

#[test]
fn criterion_01_group_presentations() {
    for q in [2usize, 4] {
        let grp = build_group(Family::Semidihedral, q).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let e = 2 * q - 1;
        assert!(verify_relation(&grp, &env, "X^2", "0").unwrap().holds);
        assert!(verify_relation(
            &grp,
            &env,
            "Y^2",
            &format!("X*(Y*X)^{e} + (Y*X)^{}", 2 * q)
        )
        .unwrap()
        .holds);
        // The socle-term-free variant fails.
        assert!(!verify_relation(&grp, &env, "Y^2", &format!("X*(Y*X)^{e}")).unwrap().holds);
        // The 8q alternating words are a basis.
        let words = alternating_words(8 * q);
        let refs: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
        assert!(spanning_check(&grp, &env, &refs).unwrap().is_basis, "q={q}");
    }
    // Quaternion q = 1 over GF(4).
    let grp = build_group(Family::Quaternion, 1).unwrap();
    let env = standard_env(&grp, Field::GF4).unwrap();
    assert!(verify_relation(&grp, &env, "X^2", "Y*X*Y").unwrap().holds);
    assert!(verify_relation(&grp, &env, "Y^2", "X*Y*X").unwrap().holds);
    assert!(verify_relation(&grp, &env, "X^4", "0").unwrap().holds);
    assert!(verify_relation(&grp, &env, "Y^4", "0").unwrap().holds);
    // Quaternion q ∈ {2,4} over GF(2).
    for q in [2usize, 4] {
        let grp = build_group(Family::Quaternion, q).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let e = 2 * q - 1;
        assert!(verify_relation(
            &grp,
            &env,
            "X^2",
            &format!("(Y*X)^{e}*Y + (X*Y)^{}", 2 * q)
        )
        .unwrap()
        .holds);
        assert!(verify_relation(
            &grp,
            &env,
            "Y^2",
            &format!("(X*Y)^{e}*X + (Y*X)^{}", 2 * q)
        )
        .unwrap()
        .holds);
        assert!(verify_relation(&grp, &env, "X^4", "0").unwrap().holds);
        assert!(verify_relation(&grp, &env, "Y^4", "0").unwrap().holds);
    }
    report(1, "semidihedral and quaternion group-algebra presentations verified");
}

#[test]
fn criterion_02_ext_rings() {
    // dim Ext^n_{kD8}(k,k) = n + 1.
    let grp = build_group(Family::Dihedral, 2).unwrap();
    let alg = FiniteDimAlgebra::from_group(&grp, Field::GF2);
    let simple = FdModule::simple(&alg, 0);
    let res = minimal_resolution(&alg, &simple, 8).unwrap();
    for n in 0..=8 {
        assert_eq!(res.ext_dim(n, 0), n + 1, "kD8 n={n}");
    }
    assert!(res.check_exact());
    // SL(2,3) principal block, trivial module: 1,0,0,1,1,0,0,1,1.
    let pres = catalog("SL23-quiver").unwrap();
    let alg = FiniteDimAlgebra::from_presentation(&pres).unwrap();
    let vk = pres.vertices.iter().position(|v| v == "k").unwrap();
    let simple = FdModule::simple(&alg, vk);
    let res = minimal_resolution(&alg, &simple, 8).unwrap();
    let expected = [1, 0, 0, 1, 1, 0, 0, 1, 1];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(res.ext_dim(n, vk), e, "SL23 n={n}");
    }
    // Yoneda product: xy = 0 in Ext_{kD8}, x² ≠ 0.
    let pres = catalog("kD:q=2").unwrap();
    let alg = FiniteDimAlgebra::from_presentation(&pres).unwrap();
    let simple = FdModule::simple(&alg, 0);
    let res = minimal_resolution(&alg, &simple, 4).unwrap();
    let deg_of = |s: usize| res.slots[1][s].degree.clone().unwrap().0;
    let x = (0..2).find(|&s| deg_of(s) == vec![2, 0]).unwrap();
    let y = (0..2).find(|&s| deg_of(s) == vec![0, 2]).unwrap();
    let mut cx = vec![0; 2];
    cx[x] = 1;
    let mut cy = vec![0; 2];
    cy[y] = 1;
    assert!(res.yoneda_product(1, &cx, 1, &cy).unwrap().iter().all(|&c| c == 0));
    assert!(res.yoneda_product(1, &cy, 1, &cx).unwrap().iter().all(|&c| c == 0));
    assert!(res.yoneda_product(1, &cx, 1, &cx).unwrap().iter().any(|&c| c != 0));
    report(2, "Ext dimension patterns and the Yoneda relation xy = 0 verified");
}

#[test]
fn criterion_03_hochschild_of_dihedral_group_algebra() {
    let grp = build_group(Family::Dihedral, 2).unwrap();
    let alg = FiniteDimAlgebra::from_group(&grp, Field::GF2);
    let dims = hochschild_dims(&alg, 3).unwrap();
    assert_eq!(dims, vec![5, 9, 13, 17]); // 4n + 5
    assert_eq!(dims[0], alg.center_dim());
    report(3, "HH^n(kD8) = 4n+5 for n ≤ 3; HH⁰ is the centre (dim 5)");
}

#[test]
fn criterion_04_clifford_koszul_and_ext_routes_agree() {
    // Quadratic case: the Clifford and Koszul-dual Hochschild routes agree
    // degreewise on the dihedral cohomology ring.
    let d = CIPresentation::new(catalog("HBD:q=2").unwrap()).unwrap();
    let cliff = clifford_complex(&d).unwrap();
    for h in -4..=0i32 {
        for a in -3..=3i32 {
            for b in [-4, -2, 0, 2] {
                let deg = [h, a, b, b];
                let (dim, _) = cliff.hh_dim(&deg).unwrap();
                assert_eq!(dim, koszul_hh_dim(&d.pres, &deg).unwrap(), "degree {deg:?}");
            }
        }
    }
    // The remaining catalog rings have a cubic relation, so the Koszul-dual
    // route reports NonQuadratic by contract.
    for name in ["HBQ", "SD1:q=2", "SD2:q=2"] {
        let p = catalog(name).unwrap();
        assert!(
            matches!(koszul_hh_dim(&p, &[-1, 0, 0][..p.arity + 1]), Err(HochciError::Nc(NcError::NonQuadratic(_)))),
            "{name}"
        );
    }
    // ext_ci agrees with the resolution-side graded Ext for all four rings.
    for name in ["HBD:q=2", "HBQ", "SD1:q=2", "SD2:q=2"] {
        let pres = deepen(&catalog(name).unwrap(), 96);
        let slots = graded_ext_slots(&pres, 5, 20).unwrap();
        let ci = CIPresentation::new(catalog(name).unwrap()).unwrap();
        let ext = tamecoh::hochci::ext_ci(&ci).unwrap();
        for (n, degs) in slots.iter().enumerate() {
            let mut counts: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
            for d in degs {
                *counts.entry(d.neg().0).or_insert(0) += 1;
            }
            for (internal, &want) in &counts {
                let mut full = vec![-(n as i32)];
                full.extend(internal);
                let got = ext.degree_basis(&MultiDegree(full.clone())).unwrap().dimension;
                assert_eq!(got, want, "{name} Ext degree {full:?}");
            }
        }
    }
    // For the non-quadratic semidihedral rings, cross-check the Clifford
    // route against the closed-form Hochschild cohomology presentations.
    for (ring, hh_name) in [("SD1:q=2", "HHSD1:q=2"), ("SD2:q=2", "HHSD2:q=2")] {
        let ci = CIPresentation::new(catalog(ring).unwrap()).unwrap();
        let cliff = clifford_complex(&ci).unwrap();
        let hh = catalog(hh_name).unwrap();
        for h in -2..=0i32 {
            for a in -5..=5i32 {
                for b in -5..=5i32 {
                    let deg = [h, a, b];
                    let (dim, _) = cliff.hh_dim(&deg).unwrap();
                    let want = hh.degree_basis(&MultiDegree(deg.to_vec())).unwrap().dimension;
                    assert_eq!(dim, want, "{ring} HH degree {deg:?}");
                }
            }
        }
    }
    report(4, "Clifford/Koszul Hochschild routes and the two Ext routes agree");
}

#[test]
fn criterion_05_degree_line_enumerations() {
    // Dihedral q=2: exactly one HH monomial on the line (−n, n−2, 0, 0) for
    // 2 < n ≤ 12, namely s²t at n = 4 — via both the Clifford complex and
    // the catalogued cohomology presentation.
    let d = CIPresentation::new(catalog("HBD:q=2").unwrap()).unwrap();
    let cliff = clifford_complex(&d).unwrap();
    let hh = catalog("HHHBD:q=2").unwrap();
    for n in 3..=12i32 {
        let deg = [-n, n - 2, 0, 0];
        let (dim, names) = cliff.hh_dim(&deg).unwrap();
        let piece = hh.degree_basis(&MultiDegree(deg.to_vec())).unwrap();
        assert_eq!(dim, piece.dimension, "n={n}");
        if n == 4 {
            assert_eq!(dim, 1, "n=4");
            assert!(names[0].contains("s^2*t"), "rep {}", names[0]);
            let cat_names: Vec<String> =
                piece.basis.iter().map(|m| hh.monomial_name(m)).collect();
            assert_eq!(cat_names, vec!["s^2*t".to_string()]);
        } else {
            assert_eq!(dim, 0, "n={n}");
        }
    }
    // Semidihedral (both rings): the line (−n, n−2, 0) is empty, 2 < n ≤ 20.
    for name in ["HHSD1:q=2", "HHSD2:q=2"] {
        let hh = catalog(name).unwrap();
        let degrees: Vec<MultiDegree> =
            (3..=20).map(|n| MultiDegree(vec![-n, n - 2, 0])).collect();
        for (d, names) in degree_monomial_enumeration(&hh, &degrees).unwrap() {
            assert!(names.is_empty(), "{name} {d:?}: {names:?}");
        }
    }
    report(5, "unique monomial s²t at n=4 (dihedral); semidihedral line empty to n=20");
}

#[test]
fn criterion_06_kadeishvili_transfer() {
    // Dihedral: m₃ ≡ 0 and m₄(x,y,x,y) = m₄(y,x,y,x) = t.
    let pres = catalog("kD:q=2").unwrap();
    let alg = FiniteDimAlgebra::from_presentation(&pres).unwrap();
    let simple = FdModule::simple(&alg, 0);
    let res = minimal_resolution(&alg, &simple, 8).unwrap();
    let dga = dg_endomorphism(&res, 8).unwrap();
    let classes = transfer_classes(&dga, 4).unwrap();
    let opts = TransferOptions { n_max: 4, hom_cap: 4, side_conditions: false };
    let out = kadeishvili_transfer(&dga, classes, &opts).unwrap();
    if let Some(m3) = out.structure.m.get(&3) {
        assert!(m3.values().all(|v| v.is_empty()), "m3 ≠ 0");
    }
    let x = out.structure.classes_of_degree(1, Some(&[-2, 0]))[0];
    let y = out.structure.classes_of_degree(1, Some(&[0, -2]))[0];
    let t = out.structure.classes_of_degree(2, Some(&[-4, -4]))[0];
    assert_eq!(out.structure.m_eval(4, &[x, y, x, y]), vec![(t, 1)]);
    assert_eq!(out.structure.m_eval(4, &[y, x, y, x]), vec![(t, 1)]);
    assert!(out.structure.check_stasheff(4, 4).is_empty());
    assert!(check_transfer_morphism(&dga, &out).is_empty());

    // SL(2,3) block: with the witness side conditions, m_n ≡ 0 for
    // 3 ≤ n ≤ 6 — the Ext algebra is formal.
    let pres = catalog("SL23-quiver").unwrap();
    let alg = FiniteDimAlgebra::from_presentation(&pres).unwrap();
    let vk = pres.vertices.iter().position(|v| v == "k").unwrap();
    let simple = FdModule::simple(&alg, vk);
    // m₆ on six degree-3 classes lands in degree 14 and its projection
    // probes degree 17; keep a wide margin below the truncation depth so
    // hom-complex products there are complete.
    let depth = 24;
    let res = minimal_resolution(&alg, &simple, depth).unwrap();
    let dga = dg_endomorphism(&res, depth).unwrap();
    let classes = transfer_classes(&dga, 17).unwrap();
    let opts = TransferOptions { n_max: 6, hom_cap: 18, side_conditions: true };
    let out = kadeishvili_transfer(&dga, classes, &opts).unwrap();
    let mut checked = 0usize;
    for n in 3..=6 {
        if let Some(table) = out.structure.m.get(&n) {
            for (tuple, val) in table {
                assert!(val.is_empty(), "m{n}({tuple:?}) ≠ 0");
                checked += 1;
            }
        }
    }
    assert!(checked > 0, "no higher-operation tuples were in range");
    assert!(out.structure.check_stasheff(6, 18).is_empty());
    report(6, "dihedral transfer gives m₄(x,y,x,y)=t; SL(2,3) block is formal to m₆");
}

#[test]
fn criterion_07_circle_product_recursion() {
    let data = tamecoh::data_dir();
    let a = load_ainfty(&std::fs::read_to_string(data.join("dihedral_q2.txt")).unwrap()).unwrap();
    let xi = a.pres.gen_index("x").unwrap() as u8;
    let yi = a.pres.gen_index("y").unwrap() as u8;
    let word = |letters: &[u8]| Monomial { word: letters.to_vec(), vertex: 0 };
    let cands: Vec<(Monomial, i64)> = (1..=6)
        .flat_map(|e| {
            [
                (word(&vec![xi; e as usize]), e),
                (word(&vec![yi; e as usize]), e),
            ]
        })
        .collect();
    // δm₄ = 0 over all 5-tuples within the weight window.
    let mut seen = 0usize;
    tamecoh::ainfty::for_tuples(&cands, 5, 9, &mut |tuple| {
        assert!(a.delta_m(4, tuple)?.is_zero(), "δm₄ ≠ 0 at {tuple:?}");
        seen += 1;
        Ok(())
    })
    .unwrap();
    assert!(seen > 100);
    // δm₆ = m₄ ∘ m₄ over all 7-tuples within the window.
    let mut nonzero = 0usize;
    tamecoh::ainfty::for_tuples(&cands, 7, 10, &mut |tuple| {
        let lhs = a.delta_m(6, tuple)?;
        let rhs = a.circle_mm(4, 4, tuple)?;
        assert_eq!(lhs, rhs, "δm₆ ≠ m₄∘m₄ at {tuple:?}");
        if !lhs.is_zero() {
            nonzero += 1;
        }
        Ok(())
    })
    .unwrap();
    assert!(nonzero > 10);
    // Semidihedral loop table: m₃ ∘ m₃ = 0.
    let s = load_ainfty(&std::fs::read_to_string(data.join("loop_sd1.txt")).unwrap()).unwrap();
    let gens: Vec<Monomial> = [
        vec![s.pres.gen_index("xh").unwrap() as u8],
        vec![s.pres.gen_index("yh").unwrap() as u8],
        vec![
            s.pres.gen_index("xh").unwrap() as u8,
            s.pres.gen_index("yh").unwrap() as u8,
        ],
    ]
    .into_iter()
    .map(|w| {
        let mut w = w;
        w.sort();
        Monomial { word: w, vertex: 0 }
    })
    .collect();
    for a1 in &gens {
        for a2 in &gens {
            for a3 in &gens {
                for a4 in &gens {
                    for a5 in &gens {
                        let t =
                            [a1.clone(), a2.clone(), a3.clone(), a4.clone(), a5.clone()];
                        assert!(s.circle_mm(3, 3, &t).unwrap().is_zero(), "m₃∘m₃ ≠ 0");
                    }
                }
            }
        }
    }
    report(7, "δm₄ = 0, δm₆ = m₄∘m₄ (dihedral); m₃∘m₃ = 0 (semidihedral loop)");
}

#[test]
fn criterion_08_series_identities() {
    // Koszul-dual substitution: 1/((1−st⁻²)(1−st⁻⁴)) ↦ (1+st)(1+st³).
    let inp = parse_series("1/((1-s*t^-2)*(1-s*t^-4))").unwrap();
    let want = parse_series("(1+s*t)*(1+s*t^3)").unwrap();
    assert!(inp.koszul_dual_series().unwrap().eq_series(&want));
    // Semidihedral Ext series matches resolution dims through total order 8.
    let s = parse_series("(1+t*u^4)*(1+t*u)/(1-t*u-t*u^3-t^2*u^3)").unwrap();
    let pres = deepen(&catalog("HBSD").unwrap(), 96);
    let slots = graded_ext_slots(&pres, 8, 16).unwrap();
    let mut dims: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for (n, degs) in slots.iter().enumerate() {
        for d in degs {
            *dims.entry((n as i32, -d.0[0])).or_insert(0) += 1;
        }
    }
    let bad = s.compare_with_dims(&dims, 8).unwrap();
    assert!(bad.is_empty(), "mismatches: {bad:?}");
    // (1+t)³/(1−3t) expands to 1, 6, 21, 64, 192, 576.
    let c = parse_series("(1+t)^3/(1-3*t)").unwrap().expand(5).unwrap();
    let got: Vec<i64> = (0..=5).map(|n| c.get(&(n, 0)).copied().unwrap_or(0)).collect();
    assert_eq!(got, vec![1, 6, 21, 64, 192, 576]);
    // Product-formula simplification identities.
    let g2l = parse_series("(1+t^2)(1+t^3)(1+t^4)(1+t^5)(1+t^6)/((1-t^8)(1-t^10))").unwrap();
    let g2r = parse_series("(1+t^3)(1+t^6)/((1-t^2)(1-t^5))").unwrap();
    assert!(g2l.eq_series(&g2r));
    let bl = parse_series(
        "(1+t^7)(1+t^11)(1+t^13)(1+t^14)(1+t^6)(1+t^10)(1+t^12)/((1-t^20)(1-t^24)(1-t^26))",
    )
    .unwrap();
    let br = parse_series("(1+t^7)(1+t^11)(1+t^14)/((1-t^6)(1-t^10)(1-t^13))").unwrap();
    assert!(bl.eq_series(&br));
    report(8, "Koszul-dual, Ext-series, expansion and simplification identities hold");
}

#[test]
fn criterion_09_matrix_factorizations() {
    for name in ["mf1.txt", "mf2.txt", "mf3_j1.txt", "mf3_j2.txt", "mf4_j1.txt", "mf4_j2.txt"] {
        let text = std::fs::read_to_string(tamecoh::data_dir().join(name)).unwrap();
        let (p, f, a, b) = load_matrix_factorization(&text).unwrap();
        assert_eq!(p.mode, Mode::Commutative);
        assert!(!f.is_zero());
        assert!(verify_matrix_factorization(&p, &f, &a, &b).unwrap(), "{name}");
    }
    report(9, "all four factorisation families (j = 1, 2) satisfy A·B = B·A = f·I");
}

#[test]
fn criterion_10_quiver_derived_relations() {
    let sd2 = catalog("SD2-quiver:q=2").unwrap();
    for rel in ["d^2*b = 0", "c*d^2 = 0", "b*c*b = 0", "c*b*c = 0"] {
        assert!(sd2.derived_relation_check(rel).unwrap(), "SD2: {rel}");
    }
    let sl = catalog("SL23-quiver").unwrap();
    for rel in [
        "a*c*d = 0",
        "b*a*c = 0",
        "b*f*e = 0",
        "c*e*f = 0",
        "d*b*a = 0",
        "d*c*e = 0",
        "e*a*b = 0",
        "f*d*c = 0",
        "f*e*a = 0",
        "c*e*a = b*f*d",
        "e*a*c = d*b*f",
        "a*c*e = f*d*b",
    ] {
        assert!(sl.derived_relation_check(rel).unwrap(), "SL23: {rel}");
    }
    let sd1 = catalog("SD1-quiver:q=2").unwrap();
    for rel in ["f^3 = 0", "c*a*c = 0", "a*c*a = 0", "d^5 = 0"] {
        assert!(sd1.derived_relation_check(rel).unwrap(), "Q1 quiver: {rel}");
    }
    report(10, "all listed derived relations hold in the three quiver algebras");
}

#[test]
fn criterion_cross_check_poly_sanity() {
    // Guard for the suite itself: a deliberately wrong relation must fail.
    let sd2 = catalog("SD2-quiver:q=2").unwrap();
    assert!(!sd2.derived_relation_check("d^2 = 0").unwrap());
    let z = Poly::zero();
    assert!(z.is_zero());
}
