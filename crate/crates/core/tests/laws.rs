use std::sync::Arc;

use proptest::prelude::*;

use hinfty::htensor::TensorModule;
use hinfty::{Field, HopfAlgebra, LinearMap, Perm, Scalar, SetMap, Vector};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn setmap(m: usize, n: usize) -> impl Strategy<Value = SetMap> {
    prop::collection::vec(0..n, m).prop_map(move |v| SetMap::new(n, v).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(prop::collection::vec(-3i64..4, rows), cols).prop_map(move |cs| {
        let cols = cs.into_iter().map(|c| Vector::from_dense(&c.into_iter().map(Scalar::from).collect::<Vec<_>>())).collect();
        LinearMap::from_columns(rows, cols).unwrap()
    })
}

fn element(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..4, dim).prop_map(|c| Vector::from_dense(&c.into_iter().map(Scalar::from).collect::<Vec<_>>()))
}

fn s3() -> HopfAlgebra {
    HopfAlgebra::symmetric(Field::Rational, 3).unwrap()
}

proptest! {
    #[test]
    fn rational_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn perm_group_laws(p in perm(5), q in perm(5), r in perm(5)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        for i in 0..5 {
            prop_assert_eq!(p.compose(&q).apply(i), p.apply(q.apply(i)));
        }
        prop_assert_eq!(&Perm::all(5)[p.rank()], &p);
    }

    #[test]
    fn setmap_composition(f in setmap(4, 3), g in setmap(3, 3), h in setmap(3, 2)) {
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let sizes: usize = f.fiber_sizes().iter().sum();
        prop_assert_eq!(sizes, 4);
        prop_assert!(SetMap::all(4, 3).contains(&f));
    }

    #[test]
    fn matrix_laws(a in matrix(3, 4), b in matrix(4, 2), v in element(2)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.apply(&v), a.apply(&b.apply(&v)));
        prop_assert!(ab.rank(Field::Rational) <= a.rank(Field::Rational).min(b.rank(Field::Rational)));
    }

    #[test]
    fn inverse_when_full_rank(a in matrix(3, 3)) {
        match a.inverse(Field::Rational) {
            Ok(inv) => {
                prop_assert_eq!(a.rank(Field::Rational), 3);
                prop_assert_eq!(a.compose(&inv).unwrap(), LinearMap::identity(3));
            }
            Err(_) => prop_assert!(a.rank(Field::Rational) < 3),
        }
    }

    #[test]
    fn s3_bialgebra_laws(x in element(6), y in element(6)) {
        let h = s3();
        let xy = h.mul(&x, &y);
        prop_assert_eq!(h.antipode(&xy), h.mul(&h.antipode(&y), &h.antipode(&x)));
        prop_assert_eq!(h.counit(&xy), &h.counit(&x) * &h.counit(&y));
        prop_assert_eq!(h.coproduct(&xy), h.mul_tensors(&h.coproduct(&x), &h.coproduct(&y)));
    }

    #[test]
    fn outer_module_action_is_multiplicative(
        u in prop::collection::vec(0usize..6, 2),
        w in prop::collection::vec(0usize..6, 2),
        x in element(36),
    ) {
        let h = Arc::new(s3());
        let reg = TensorModule::regular(h.clone()).unwrap();
        let m = TensorModule::outer(&[&reg, &reg]).unwrap();
        let mut via_product = Vector::new();
        for (word, c) in h.mul_words(&u, &w).iter() {
            via_product.add_scaled(&m.act_word(word, &x), c);
        }
        prop_assert_eq!(m.act_word(&u, &m.act_word(&w, &x)), via_product);
    }
}
