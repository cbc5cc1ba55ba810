use canrel::transforms::{
    boost_finite, compose, group_exp, invariant_forms, reciprocity_map, symplectic_pair_form, BoostParams,
    GroupElement, PhaseSpacePoint, PhysicalConstants, RotationParams,
};
use nalgebra::Matrix3;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = PhaseSpacePoint> {
    proptest::collection::vec(-2.0f64..2.0, 8).prop_map(|v| PhaseSpacePoint::from_slice(&v).unwrap())
}

fn constants() -> impl Strategy<Value = PhysicalConstants> {
    (0.3f64..3.0, 0.3f64..3.0).prop_map(|(c, b)| PhysicalConstants::new(c, b, 1.0).unwrap())
}

fn boost() -> impl Strategy<Value = BoostParams> {
    (proptest::array::uniform3(-1.0f64..1.0), proptest::array::uniform3(-1.0f64..1.0), constants(), 0.0f64..5.0)
        .prop_filter("nonzero direction", |(b, g, _, _)| b.iter().chain(g).any(|x| x.abs() > 1e-3))
        .prop_map(|(b, g, k, rho)| {
            let p = BoostParams::new(b, g, k);
            p.scaled(rho / p.rho())
        })
}

fn rotation() -> impl Strategy<Value = RotationParams> {
    (proptest::array::uniform3(-1.0f64..1.0), -1.0f64..1.0, proptest::array::uniform6(-1.0f64..1.0)).prop_map(
        |(a, t, s)| {
            let m = Matrix3::new(s[0], s[1], s[2], s[1], s[3], s[4], s[2], s[4], s[5]);
            RotationParams::new(a, t, m).unwrap()
        },
    )
}

fn close(a: &PhaseSpacePoint, b: &PhaseSpacePoint, tol: f64) -> bool {
    (a.to_vector() - b.to_vector()).amax() <= tol * a.to_vector().amax().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boosts_preserve_zeta2(b in boost(), p in point()) {
        let k = b.constants;
        let before = invariant_forms(&p, &k).zeta2;
        let after = invariant_forms(&boost_finite(&b, &p), &k).zeta2;
        prop_assert!((after - before).abs() < 1e-10 * before.abs().max(1.0));
    }

    #[test]
    fn inverse_boost_undoes(b in boost(), p in point()) {
        let back = boost_finite(&b.inverse(), &boost_finite(&b, &p));
        prop_assert!(close(&back, &p, 1e-10));
    }

    #[test]
    fn group_exp_preserves_sigma(r in rotation(), b in boost(), p1 in point(), p2 in point()) {
        let k = b.constants;
        let g = group_exp(&r, &b.scaled(0.5), 1e-14).unwrap();
        let before = symplectic_pair_form(&p1, &p2, &k);
        let after = symplectic_pair_form(&g.apply(&p1), &g.apply(&p2), &k);
        let scale = g.linear.amax().powi(2).max(1.0);
        prop_assert!((after - before).abs() < 1e-10 * scale, "{} vs {}", after, before);
    }

    #[test]
    fn sigma_is_antisymmetric(k in constants(), p1 in point(), p2 in point()) {
        prop_assert_eq!(symplectic_pair_form(&p1, &p1, &k), 0.0);
        prop_assert_eq!(symplectic_pair_form(&p1, &p2, &k), -symplectic_pair_form(&p2, &p1, &k));
    }

    #[test]
    fn velocity_boost_ignores_b(beta in proptest::array::uniform3(-2.0f64..2.0), b1 in 0.3f64..3.0, b2 in 0.3f64..3.0, p in point()) {
        let k1 = PhysicalConstants::new(1.5, b1, 1.0).unwrap();
        let k2 = PhysicalConstants::new(1.5, b2, 1.0).unwrap();
        let x = boost_finite(&BoostParams::new(beta, [0.0; 3], k1), &p);
        let y = boost_finite(&BoostParams::new(beta, [0.0; 3], k2), &p);
        prop_assert!(close(&x, &y, 1e-12));
    }

    #[test]
    fn force_boost_ignores_c(gamma in proptest::array::uniform3(-2.0f64..2.0), c1 in 0.3f64..3.0, c2 in 0.3f64..3.0, p in point()) {
        let k1 = PhysicalConstants::new(c1, 1.5, 1.0).unwrap();
        let k2 = PhysicalConstants::new(c2, 1.5, 1.0).unwrap();
        let x = boost_finite(&BoostParams::new([0.0; 3], gamma, k1), &p);
        let y = boost_finite(&BoostParams::new([0.0; 3], gamma, k2), &p);
        prop_assert!(close(&x, &y, 1e-12));
    }

    #[test]
    fn reciprocity_preserves_zeta2(p in point()) {
        let k = PhysicalConstants::natural();
        let r = reciprocity_map(&p);
        prop_assert!((invariant_forms(&r, &k).zeta2 - invariant_forms(&p, &k).zeta2).abs() < 1e-14);
    }

    #[test]
    fn composition_is_associative(t1 in point(), t2 in point(), t3 in point(), b in boost()) {
        let k = b.constants;
        let g1 = compose(&GroupElement::translation(&t1), &GroupElement::linear(canrel::transforms::boost_matrix(&b.scaled(0.3))), &k);
        let (g2, g3) = (GroupElement::translation(&t2), GroupElement::translation(&t3));
        let l = compose(&compose(&g1, &g2, &k), &g3, &k);
        let r = compose(&g1, &compose(&g2, &g3, &k), &k);
        prop_assert!((l.phase - r.phase).abs() < 1e-10 * l.phase.abs().max(1.0));
        prop_assert!((l.translation - r.translation).amax() < 1e-10 * l.translation.amax().max(1.0));
    }
}
