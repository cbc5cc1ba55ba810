use canrel::sparse::{op_commutator, op_compose, scalar_on_subspace, InteriorMask, SparseOperator};
use num_complex::Complex64;
use proptest::prelude::*;

const DIM: usize = 6;

fn operator() -> impl Strategy<Value = SparseOperator> {
    proptest::collection::vec((0..DIM, 0..DIM, -4i32..=4, -4i32..=4), 0..14).prop_map(|t| {
        let triplets = t
            .into_iter()
            .map(|(r, c, re, im)| (r, c, Complex64::new(re as f64 / 2.0, im as f64 / 2.0)));
        SparseOperator::from_triplets(DIM, triplets).unwrap()
    })
}

fn diff(a: &SparseOperator, b: &SparseOperator) -> f64 {
    a.sub(b).unwrap().max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjoint_is_an_involution(a in operator()) {
        prop_assert!(a.adjoint().adjoint().exact_eq(&a));
    }

    #[test]
    fn adjoint_reverses_products(a in operator(), b in operator()) {
        let lhs = op_compose(&a, &b).unwrap().adjoint();
        let rhs = op_compose(&b.adjoint(), &a.adjoint()).unwrap();
        prop_assert!(diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        let l = op_compose(&op_compose(&a, &b).unwrap(), &c).unwrap();
        let r = op_compose(&a, &op_compose(&b, &c).unwrap()).unwrap();
        prop_assert!(diff(&l, &r) < 1e-10);
    }

    #[test]
    fn commutator_is_antisymmetric(a in operator(), b in operator()) {
        let ab = op_commutator(&a, &b).unwrap();
        let ba = op_commutator(&b, &a).unwrap();
        prop_assert!(diff(&ab, &ba.scale(Complex64::new(-1.0, 0.0))) < 1e-12);
        prop_assert!(op_commutator(&a, &a).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn no_stored_zeros(a in operator(), b in operator()) {
        let s = a.sub(&a).unwrap();
        prop_assert_eq!(s.nnz(), 0);
        let p = op_compose(&a, &b).unwrap();
        prop_assert!(p.entries().all(|(_, _, v)| v != Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn scaled_identity_is_scalar_on_any_mask(v in -5.0f64..5.0, flags in proptest::collection::vec(any::<bool>(), DIM)) {
        let op = SparseOperator::scalar(DIM, Complex64::new(v, 0.0));
        let mask = InteriorMask::from_flags(flags.clone(), 0);
        let got = scalar_on_subspace(&op, &mask, 1e-12);
        if flags.iter().any(|&f| f) {
            prop_assert_eq!(got, Some(Complex64::new(v, 0.0)));
        } else {
            prop_assert_eq!(got, None);
        }
    }

    #[test]
    fn norms_bound_entries(a in operator()) {
        prop_assert!(a.max_abs() <= a.norm_inf() + 1e-15);
        prop_assert!(a.max_abs_on(&InteriorMask::full(DIM)) == a.max_abs());
    }
}
