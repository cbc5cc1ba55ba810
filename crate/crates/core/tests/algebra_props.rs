use canrel::algebra::{
    check_jacobi, convert_basis, structure_table, AlgebraElement, BasisKind, Coef, Family, GeneratorId,
};
use proptest::prelude::*;

fn element(kind: BasisKind) -> impl Strategy<Value = AlgebraElement> {
    let gens = kind.generators();
    let n = gens.len();
    proptest::collection::vec((0..n, -3i64..=3, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut e = AlgebraElement::zero();
        for (g, re, im) in terms {
            e.add_term(gens[g], &Coef::complex(re, im, 1));
        }
        e
    })
}

/// `A_a^± ↦ A_a^∓`, `Z_ab ↦ Z_ba`, `I ↦ I`, with conjugated coefficients.
fn dagger(e: &AlgebraElement) -> AlgebraElement {
    e.conj().map_linear(|g| {
        let image = match g.family() {
            Family::Aplus => GeneratorId::a_minus(g.index(0)),
            Family::Aminus => GeneratorId::a_plus(g.index(0)),
            Family::Z => GeneratorId::z(g.index(1), g.index(0)),
            _ => *g,
        };
        AlgebraElement::gen(image)
    })
}

#[test]
fn conjugation_is_an_anti_automorphism() {
    let table = structure_table(BasisKind::Complex);
    for x in table.generators() {
        for y in table.generators() {
            let lhs = dagger(&table.entry(x, y));
            let (dx, dy) = (dagger(&AlgebraElement::gen(*x)), dagger(&AlgebraElement::gen(*y)));
            assert_eq!(lhs, table.bracket(&dy, &dx).unwrap(), "[{x}, {y}]");
        }
    }
}

#[test]
fn central_element_commutes_everywhere() {
    for kind in BasisKind::ALL {
        let table = structure_table(kind);
        for g in table.generators() {
            assert!(table.entry(&GeneratorId::central(), g).is_zero(), "{kind}: [I, {g}]");
        }
    }
}

#[test]
fn jacobi_counts_unordered_triples() {
    for kind in BasisKind::ALL {
        let table = structure_table(kind);
        let n = table.generators().len();
        assert_eq!(check_jacobi(&table).triples_checked, n * (n - 1) * (n - 2) / 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_alternating_and_bilinear(x in element(BasisKind::Real), y in element(BasisKind::Real), z in element(BasisKind::Real)) {
        let t = structure_table(BasisKind::Real);
        prop_assert!(t.bracket(&x, &x).unwrap().is_zero());
        prop_assert_eq!(t.bracket(&x, &y).unwrap(), t.bracket(&y, &x).unwrap().neg());
        let two = Coef::int(2);
        prop_assert_eq!(
            t.bracket(&x.scale(&two).add(&z), &y).unwrap(),
            t.bracket(&x, &y).unwrap().scale(&two).add(&t.bracket(&z, &y).unwrap())
        );
    }

    #[test]
    fn jacobi_on_elements(x in element(BasisKind::Complex), y in element(BasisKind::Complex), z in element(BasisKind::Complex)) {
        let t = structure_table(BasisKind::Complex);
        let b = |p: &AlgebraElement, q: &AlgebraElement| t.bracket(p, q).unwrap();
        let sum = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn conversions_round_trip(x in element(BasisKind::Real), p in element(BasisKind::Physical)) {
        let c = convert_basis(&x, BasisKind::Real, BasisKind::Complex).unwrap();
        prop_assert_eq!(convert_basis(&c, BasisKind::Complex, BasisKind::Real).unwrap(), x);
        let r = convert_basis(&p, BasisKind::Physical, BasisKind::Real).unwrap();
        prop_assert_eq!(convert_basis(&r, BasisKind::Real, BasisKind::Physical).unwrap(), p);
    }

    #[test]
    fn physical_conversion_is_a_homomorphism(x in element(BasisKind::Physical), y in element(BasisKind::Physical)) {
        let phys = structure_table(BasisKind::Physical);
        let real = structure_table(BasisKind::Real);
        let to_real = |e: &AlgebraElement| convert_basis(e, BasisKind::Physical, BasisKind::Real).unwrap();
        prop_assert_eq!(to_real(&phys.bracket(&x, &y).unwrap()), real.bracket(&to_real(&x), &to_real(&y)).unwrap());
    }
}
