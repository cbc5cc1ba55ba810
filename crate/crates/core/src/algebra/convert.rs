//! Linear changes of generator basis.
//!
//! Complex to real: `A_a^± = (X_a ± iY_a)/√2`, `Z_ab = (M_ab + iL_ab)/2`,
//! `I ↦ −I`. Real to physical: `K_i = −L_0i`, `N_i = M_0i`,
//! `J_i = −ε_ijk L_jk`, `R0 = M_00`. Both maps are exact isomorphisms of the
//! corresponding structure tables.

use super::coeff::Coef;
use super::element::AlgebraElement;
use super::generator::{Family, GeneratorId};
use super::table::{levi, BasisKind};
use crate::error::Error;

/// Re-express `el`, written in basis `from`, in basis `to`.
///
/// Supported: complex ↔ real, real ↔ physical, and the identity.
pub fn convert_basis(
    el: &AlgebraElement,
    from: BasisKind,
    to: BasisKind,
) -> Result<AlgebraElement, Error> {
    if let Some(g) = el.generators().find(|g| !from.contains(g)) {
        return Err(Error::BasisMismatch {
            generator: g.to_string(),
            basis: from.to_string(),
        });
    }
    use BasisKind::*;
    Ok(match (from, to) {
        _ if from == to => el.clone(),
        (Complex, Real) => el.map_linear(complex_gen_to_real),
        (Real, Complex) => el.map_linear(real_gen_to_complex),
        (Real, Physical) => real_to_physical(el),
        (Physical, Real) => physical_to_real(el),
        _ => {
            return Err(Error::UnsupportedConversion {
                from: from.to_string(),
                to: to.to_string(),
            })
        }
    })
}

fn gen(g: GeneratorId) -> AlgebraElement {
    AlgebraElement::gen(g)
}

fn complex_gen_to_real(g: &GeneratorId) -> AlgebraElement {
    let h = Coef::inv_sqrt2();
    let ih = &h * &Coef::i();
    match g.family() {
        Family::Aplus => gen(GeneratorId::x(g.index(0)))
            .scale(&h)
            .add(&gen(GeneratorId::y(g.index(0))).scale(&ih)),
        Family::Aminus => gen(GeneratorId::x(g.index(0)))
            .scale(&h)
            .sub(&gen(GeneratorId::y(g.index(0))).scale(&ih)),
        Family::Z => {
            let (a, b) = (g.index(0), g.index(1));
            AlgebraElement::m(a, b)
                .scale(&Coef::frac(1, 2))
                .add(&AlgebraElement::l(a, b).scale(&Coef::complex(0, 1, 2)))
        }
        Family::I => gen(*g).neg(),
        _ => unreachable!("checked membership"),
    }
}

fn real_gen_to_complex(g: &GeneratorId) -> AlgebraElement {
    let h = Coef::inv_sqrt2();
    let ih = &h * &Coef::i();
    let z = |a, b| gen(GeneratorId::z(a, b));
    match g.family() {
        Family::X => {
            let a = g.index(0);
            gen(GeneratorId::a_plus(a))
                .add(&gen(GeneratorId::a_minus(a)))
                .scale(&h)
        }
        Family::Y => {
            let a = g.index(0);
            gen(GeneratorId::a_minus(a))
                .sub(&gen(GeneratorId::a_plus(a)))
                .scale(&ih)
        }
        Family::M => {
            let (a, b) = (g.index(0), g.index(1));
            z(a, b).add(&z(b, a))
        }
        Family::L => {
            let (a, b) = (g.index(0), g.index(1));
            z(a, b).sub(&z(b, a)).scale(&Coef::complex(0, -1, 1))
        }
        Family::I => gen(*g).neg(),
        _ => unreachable!("checked membership"),
    }
}

/// Physical generators written in the real basis. Generators shared by both
/// bases pass through.
pub(crate) fn physical_to_real(el: &AlgebraElement) -> AlgebraElement {
    el.map_linear(|g| match g.family() {
        Family::J => {
            let i = g.index(0);
            let mut out = AlgebraElement::zero();
            for j in 1..4 {
                for k in 1..4 {
                    out.add_scaled(&AlgebraElement::l(j, k), &Coef::int(-levi(i, j, k)));
                }
            }
            out
        }
        Family::K => AlgebraElement::l(0, g.index(0)).neg(),
        Family::N => AlgebraElement::m(0, g.index(0)),
        Family::R0 => AlgebraElement::m(0, 0),
        _ => gen(*g),
    })
}

/// Real generators written in the physical basis.
pub(crate) fn real_to_physical(el: &AlgebraElement) -> AlgebraElement {
    el.map_linear(|g| match g.family() {
        Family::L if g.index(0) == 0 => gen(GeneratorId::k(g.index(1))).neg(),
        Family::L => {
            let (j, k) = (g.index(0), g.index(1));
            let mut out = AlgebraElement::zero();
            for i in 1..4 {
                out.add_term(GeneratorId::j(i), &Coef::frac(-levi(i, j, k), 2));
            }
            out
        }
        Family::M if g.index(0) == 0 && g.index(1) == 0 => gen(GeneratorId::r0()),
        Family::M if g.index(0) == 0 => gen(GeneratorId::n(g.index(1))),
        _ => gen(*g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::table::structure_table;

    fn g(s: &str) -> AlgebraElement {
        AlgebraElement::gen(s.parse().unwrap())
    }

    #[test]
    fn z01_to_real() {
        let r = convert_basis(&g("Z_01"), BasisKind::Complex, BasisKind::Real).unwrap();
        let want = g("M_01")
            .scale(&Coef::frac(1, 2))
            .add(&g("L_01").scale(&Coef::complex(0, 1, 2)));
        assert_eq!(r, want);
    }

    #[test]
    fn z10_picks_up_the_antisymmetric_sign() {
        let r = convert_basis(&g("Z_10"), BasisKind::Complex, BasisKind::Real).unwrap();
        let want = g("M_01")
            .scale(&Coef::frac(1, 2))
            .sub(&g("L_01").scale(&Coef::complex(0, 1, 2)));
        assert_eq!(r, want);
    }

    #[test]
    fn round_trips_are_exact() {
        for (a, b) in [
            (BasisKind::Complex, BasisKind::Real),
            (BasisKind::Real, BasisKind::Complex),
            (BasisKind::Real, BasisKind::Physical),
            (BasisKind::Physical, BasisKind::Real),
        ] {
            for x in a.generators() {
                let e = AlgebraElement::gen(x);
                let there = convert_basis(&e, a, b).unwrap();
                let back = convert_basis(&there, b, a).unwrap();
                assert_eq!(back, e, "{a} -> {b} -> {a} on {x}");
            }
        }
    }

    #[test]
    fn physical_images() {
        assert_eq!(
            physical_to_real(&g("J_1")),
            g("L_23").scale(&Coef::int(-2))
        );
        assert_eq!(physical_to_real(&g("J_2")), g("L_13").scale(&Coef::int(2)));
        assert_eq!(physical_to_real(&g("K_3")), g("L_03").neg());
        assert_eq!(physical_to_real(&g("N_2")), g("M_02"));
        assert_eq!(physical_to_real(&g("R0")), g("M_00"));
    }

    #[test]
    fn unsupported_pair() {
        let err = convert_basis(&g("Z_01"), BasisKind::Complex, BasisKind::Physical).unwrap_err();
        assert!(matches!(err, Error::UnsupportedConversion { .. }));
        let err = convert_basis(&g("J_1"), BasisKind::Real, BasisKind::Physical).unwrap_err();
        assert!(matches!(err, Error::BasisMismatch { .. }));
    }

    #[test]
    fn bracket_commutes_with_complex_real_change() {
        let real = structure_table(BasisKind::Real);
        let complex = structure_table(BasisKind::Complex);
        for x in BasisKind::Real.generators() {
            for y in BasisKind::Real.generators() {
                let (ex, ey) = (AlgebraElement::gen(x), AlgebraElement::gen(y));
                let lhs = convert_basis(
                    &real.bracket(&ex, &ey).unwrap(),
                    BasisKind::Real,
                    BasisKind::Complex,
                )
                .unwrap();
                let cx = convert_basis(&ex, BasisKind::Real, BasisKind::Complex).unwrap();
                let cy = convert_basis(&ey, BasisKind::Real, BasisKind::Complex).unwrap();
                assert_eq!(lhs, complex.bracket(&cx, &cy).unwrap(), "[{x}, {y}]");
            }
        }
    }
}
