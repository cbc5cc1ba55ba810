//! Wigner–Inönü contraction of a structure table.
//!
//! A scaling sends each source generator `g` to `f_g · ε^{s_g} · g'`, where
//! `g'` is a target generator (or nothing, for generators that vanish in the
//! limit). A term `c_h h` of `[g1, g2]` becomes
//! `f_1 f_2 c_h / f_h · ε^{s_1 + s_2 − s_h} h'`; negative powers diverge, zero
//! powers survive and positive powers vanish as `ε → 0`.
//!
//! Generators with no target are quotiented out. That is only consistent when
//! they span an ideal of the limit algebra, which is checked.

use std::collections::BTreeMap;

use super::coeff::GaussianRational;
use super::element::AlgebraElement;
use super::generator::GeneratorId;
use super::table::{BasisKind, StructureTable};
use crate::error::Error;

/// Image of one source generator under the rescaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionRule {
    /// `None` for generators sent to zero.
    pub target: Option<GeneratorId>,
    pub exponent: i32,
    pub factor: GaussianRational,
}

impl ContractionRule {
    pub fn to(target: GeneratorId, exponent: i32, factor: GaussianRational) -> Self {
        Self {
            target: Some(target),
            exponent,
            factor,
        }
    }

    pub fn vanishing(exponent: i32) -> Self {
        Self {
            target: None,
            exponent,
            factor: GaussianRational::one(),
        }
    }
}

pub type Scaling = BTreeMap<GeneratorId, ContractionRule>;

/// Scaling of the physical basis that holds the rotation, velocity, force,
/// momentum and energy-time parameters fixed as `b, c → ∞` with `ħ` fixed:
/// time scales like `ε`, energy like `1/ε`, boosts like `ε`, and `R0` and the
/// spatial `M_ij` like `ε²`. The prefactors normalize `J`, `G`, `F`, `R0` so
/// that the limit reads as the built-in contracted table.
pub fn default_scaling() -> Scaling {
    let r = GaussianRational::frac;
    let mut s = Scaling::new();
    for i in 1..4 {
        s.insert(GeneratorId::j(i), ContractionRule::to(GeneratorId::j(i), 0, r(-1, 2)));
        s.insert(GeneratorId::k(i), ContractionRule::to(GeneratorId::g(i), 1, r(1, 1)));
        s.insert(GeneratorId::n(i), ContractionRule::to(GeneratorId::f(i), 1, r(-1, 1)));
        s.insert(GeneratorId::x(i), ContractionRule::to(GeneratorId::x(i), 0, r(1, 1)));
        s.insert(GeneratorId::y(i), ContractionRule::to(GeneratorId::y(i), 0, r(1, 1)));
        for j in i..4 {
            s.insert(GeneratorId::m(i, j), ContractionRule::vanishing(2));
        }
    }
    s.insert(GeneratorId::r0(), ContractionRule::to(GeneratorId::r0(), 2, GaussianRational::i()));
    s.insert(GeneratorId::x(0), ContractionRule::to(GeneratorId::x(0), 1, r(1, 1)));
    s.insert(GeneratorId::y(0), ContractionRule::to(GeneratorId::y(0), -1, r(1, 1)));
    s.insert(GeneratorId::central(), ContractionRule::to(GeneratorId::central(), 0, r(1, 1)));
    s
}

/// Contract `table` under `scaling`, producing a table in the contracted basis.
pub fn contract_table(table: &StructureTable, scaling: &Scaling) -> Result<StructureTable, Error> {
    let mut targets = BTreeMap::new();
    for g in table.generators() {
        let rule = scaling
            .get(g)
            .ok_or_else(|| Error::InvalidScaling(format!("no rule for {g}")))?;
        if rule.factor.is_zero() {
            return Err(Error::InvalidScaling(format!("zero prefactor for {g}")));
        }
        if let Some(t) = rule.target {
            if !BasisKind::ContractedNewtonian.contains(&t) {
                return Err(Error::InvalidScaling(format!("{t} is not a contracted generator")));
            }
            if let Some(prev) = targets.insert(t, *g) {
                return Err(Error::InvalidScaling(format!("{prev} and {g} both map to {t}")));
            }
        }
    }
    let mut want = BasisKind::ContractedNewtonian.generators();
    want.retain(|t| !targets.contains_key(t));
    if let Some(t) = want.first() {
        return Err(Error::InvalidScaling(format!("nothing maps to {t}")));
    }

    let gens = table.generators();
    let mut limit: BTreeMap<(GeneratorId, GeneratorId), AlgebraElement> = BTreeMap::new();
    for (n, g1) in gens.iter().enumerate() {
        for g2 in &gens[n + 1..] {
            let (r1, r2) = (&scaling[g1], &scaling[g2]);
            let mut out = AlgebraElement::zero();
            for (h, c) in table.entry(g1, g2).iter() {
                let rh = &scaling[h];
                let exponent = r1.exponent + r2.exponent - rh.exponent;
                let label = |g: &GeneratorId| table.basis_kind.label(g);
                if exponent < 0 {
                    return Err(Error::Divergent {
                        x: label(g1),
                        y: label(g2),
                        term: label(h),
                        exponent,
                    });
                }
                if exponent > 0 {
                    continue;
                }
                let Some(th) = rh.target else { continue };
                if r1.target.is_none() || r2.target.is_none() {
                    return Err(Error::NotAnIdeal {
                        x: label(g1),
                        y: label(g2),
                        term: label(h),
                    });
                }
                let k = quotient(&(&r1.factor * &r2.factor), &rh.factor);
                out.add_term(th, &c.scale(&k));
            }
            if let (Some(t1), Some(t2), false) = (r1.target, r2.target, out.is_zero()) {
                limit.insert((t1, t2), out);
            }
        }
    }
    let mut result = StructureTable::from_rule(
        BasisKind::ContractedNewtonian,
        BasisKind::ContractedNewtonian.generators(),
        |_, _| AlgebraElement::zero(),
    );
    for ((t1, t2), v) in limit {
        result.set_entry(t1, t2, v);
    }
    Ok(result)
}

fn quotient(n: &GaussianRational, d: &GaussianRational) -> GaussianRational {
    n * &d.inv().expect("prefactors are checked nonzero")
}

/// Entries of `table` that differ from `reference`, as
/// `(x, y, found, expected)` with `x < y`.
pub fn table_differences(
    table: &StructureTable,
    reference: &StructureTable,
) -> Vec<(GeneratorId, GeneratorId, AlgebraElement, AlgebraElement)> {
    let gens = reference.generators();
    let mut out = Vec::new();
    for (n, x) in gens.iter().enumerate() {
        for y in &gens[n + 1..] {
            let (a, b) = (table.entry(x, y), reference.entry(x, y));
            if a != b {
                out.push((*x, *y, a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Coef;
    use crate::algebra::table::structure_table;

    fn g(s: &str) -> GeneratorId {
        s.parse().unwrap()
    }

    fn e(s: &str) -> AlgebraElement {
        AlgebraElement::gen(g(s))
    }

    #[test]
    fn default_scaling_reproduces_contracted_table() {
        let out = contract_table(&structure_table(BasisKind::Physical), &default_scaling()).unwrap();
        let reference = structure_table(BasisKind::ContractedNewtonian);
        let diff = table_differences(&out, &reference);
        assert!(diff.is_empty(), "{:?}", diff.first());
        assert_eq!(out, reference);
    }

    #[test]
    fn bracket_examples() {
        let out = contract_table(&structure_table(BasisKind::Physical), &default_scaling()).unwrap();
        assert_eq!(out.entry(&g("F_2"), &g("G_2")), e("R0"));
        assert_eq!(out.entry(&g("G_1"), &g("X_1")), e("X_0").scale(&Coef::i()));
        assert_eq!(out.entry(&g("Y_3"), &g("X_3")), e("I").scale(&Coef::i()));
    }

    #[test]
    fn divergence_is_reported_with_the_pair() {
        let mut s = default_scaling();
        s.insert(g("Y_0"), ContractionRule::to(g("Y_0"), -2, GaussianRational::one()));
        let err = contract_table(&structure_table(BasisKind::Physical), &s).unwrap_err();
        assert!(matches!(err, Error::Divergent { .. }), "{err}");
    }

    #[test]
    fn non_ideal_quotient_is_rejected() {
        let mut s = default_scaling();
        s.insert(g("K_1"), ContractionRule::to(g("G_1"), -1, GaussianRational::one()));
        let err = contract_table(&structure_table(BasisKind::Physical), &s).unwrap_err();
        assert!(matches!(err, Error::NotAnIdeal { .. }), "{err}");
    }

    #[test]
    fn missing_rule_is_rejected() {
        let mut s = default_scaling();
        s.remove(&g("N_1"));
        assert!(matches!(
            contract_table(&structure_table(BasisKind::Physical), &s),
            Err(Error::InvalidScaling(_))
        ));
    }
}
