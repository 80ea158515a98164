//! Randomised property tests for the structural invariants: exact linear
//! algebra identities, linearity of normal forms, multiplicativity of the
//! augmentation, series-expansion arithmetic, and the formal calculus of
//! divided derivatives.  All inputs are small and the checks are exact.

use std::collections::BTreeMap;

use proptest::prelude::*;

use tamecoh::exactlin::{kernel, rank, solve, Field, Matrix};
use tamecoh::grpalg::{build_group, Family, GroupAlgebraElement};
use tamecoh::hochci::{zdivided2, zpartial, ZPoly};
use tamecoh::ncalg::{catalog, Monomial, Poly};
use tamecoh::series::{Poly2, RationalSeries};

fn gf2_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
            .prop_map(move |rows| Matrix::from_rows(Field::GF2, &rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_kernel_columns(m in gf2_matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.cols, m.cols);
        for j in 0..k.cols {
            let col = k.col(j);
            prop_assert!(m.mul_vec(&col).iter().all(|&c| c == 0));
            prop_assert!(col.iter().any(|&c| c != 0));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(
        m in gf2_matrix(),
        x in proptest::collection::vec(0u8..2, 0..7),
    ) {
        let mut xv = x;
        xv.resize(m.cols, 0);
        let b = m.mul_vec(&xv);
        let y = solve(&m, &b);
        prop_assert!(y.is_some());
        prop_assert_eq!(m.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(
        words in proptest::collection::vec(proptest::collection::vec(0u8..3, 0..5), 1..5),
        more in proptest::collection::vec(proptest::collection::vec(0u8..3, 0..5), 1..5),
    ) {
        let pres = catalog("HBD:q=2").unwrap();
        let field = pres.field;
        let poly_of = |ws: &[Vec<u8>]| {
            let mut p = Poly::zero();
            for w in ws {
                let mut w = w.clone();
                w.sort();
                p.add_term(field, Monomial { word: w, vertex: 0 }, 1);
            }
            p
        };
        let a = poly_of(&words);
        let b = poly_of(&more);
        let ra = pres.reduce(&a).unwrap();
        let rb = pres.reduce(&b).unwrap();
        // idempotence
        prop_assert_eq!(&pres.reduce(&ra).unwrap(), &ra);
        // linearity
        prop_assert_eq!(
            pres.reduce(&a.add(field, &b)).unwrap(),
            ra.add(field, &rb)
        );
    }

    #[test]
    fn reduction_respects_products(
        w1 in proptest::collection::vec(0u8..3, 0..4),
        w2 in proptest::collection::vec(0u8..3, 0..4),
    ) {
        // reduce(a·b) = reduce(reduce(a)·reduce(b))
        let pres = catalog("HBD:q=2").unwrap();
        let mono = |w: &[u8]| {
            let mut w = w.to_vec();
            w.sort();
            Poly::monomial(Monomial { word: w, vertex: 0 }, 1)
        };
        let a = mono(&w1);
        let b = mono(&w2);
        let direct = pres.reduce(&pres.mul_polys(&a, &b)).unwrap();
        let ra = pres.reduce(&a).unwrap();
        let rb = pres.reduce(&b).unwrap();
        let reduced = pres.reduce(&pres.mul_polys(&ra, &rb)).unwrap();
        prop_assert_eq!(direct, reduced);
    }

    #[test]
    fn augmentation_is_multiplicative(
        ia in proptest::collection::vec(0usize..8, 1..4),
        ib in proptest::collection::vec(0usize..8, 1..4),
    ) {
        let grp = build_group(Family::Dihedral, 2).unwrap();
        let f = Field::GF2;
        let elt = |idx: &[usize]| {
            let mut e = GroupAlgebraElement::zero(f, &grp);
            for &i in idx {
                e = e.add(&GroupAlgebraElement::group_element(f, &grp, i));
            }
            e
        };
        let a = elt(&ia);
        let b = elt(&ib);
        prop_assert_eq!(
            a.mul(&b, &grp).augmentation(),
            f.mul(a.augmentation(), b.augmentation())
        );
    }

    #[test]
    fn series_expansion_is_multiplicative(
        ta in proptest::collection::vec((0i32..4, 0i32..4, -3i64..4), 1..4),
        tb in proptest::collection::vec((0i32..4, 0i32..4, -3i64..4), 1..4),
    ) {
        let poly = |ts: &[(i32, i32, i64)]| {
            let mut p = Poly2::zero();
            for &(a, b, c) in ts {
                p = p.add(&Poly2::monomial(a, b, c));
            }
            p
        };
        let vars = vec!["s".to_string(), "t".to_string()];
        let a = RationalSeries::from_poly(vars.clone(), poly(&ta));
        let b = RationalSeries::from_poly(vars, poly(&tb));
        let prod = a.mul(&b).unwrap();
        let ea = a.expand(16).unwrap();
        let eb = b.expand(16).unwrap();
        let ep = prod.expand(16).unwrap();
        let mut conv: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for (&(i, j), &x) in &ea {
            for (&(k, l), &y) in &eb {
                if i + k + j + l <= 16 {
                    *conv.entry((i + k, j + l)).or_insert(0) += x * y;
                }
            }
        }
        conv.retain(|_, c| *c != 0);
        prop_assert_eq!(ep, conv);
    }

    #[test]
    fn divided_derivative_calculus(
        terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..4, 3), -3i64..4),
            1..6,
        ),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let mut f = ZPoly::new();
        for (e, c) in terms {
            *f.entry(e).or_insert(0) += c;
        }
        // partials commute
        prop_assert_eq!(zpartial(&zpartial(&f, i), j), zpartial(&zpartial(&f, j), i));
        // the honest second partial is twice the divided square
        let twice: ZPoly = zdivided2(&f, i)
            .into_iter()
            .map(|(e, c)| (e, 2 * c))
            .filter(|(_, c)| *c != 0)
            .collect();
        prop_assert_eq!(zpartial(&zpartial(&f, i), i), twice);
    }
}
