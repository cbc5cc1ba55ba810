//! Jacobi identity checking over all unordered generator triples.

use rayon::prelude::*;

use super::element::AlgebraElement;
use super::generator::GeneratorId;
use super::table::StructureTable;

/// Triples whose cyclic Jacobi sum is not identically zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub triples_checked: usize,
    pub violations: Vec<(GeneratorId, GeneratorId, GeneratorId, AlgebraElement)>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn nested(t: &StructureTable, x: &GeneratorId, y: &GeneratorId, z: &GeneratorId) -> AlgebraElement {
    let yz = t.entry(y, z);
    let mut out = AlgebraElement::zero();
    for (g, c) in yz.iter() {
        out.add_scaled(&t.entry(x, g), c);
    }
    out
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` for every `x < y < z`, exactly.
/// Triples with a repeated generator vanish by antisymmetry and are skipped.
pub fn check_jacobi(table: &StructureTable) -> ViolationReport {
    let gens = table.generators();
    let n = gens.len();
    let firsts: Vec<usize> = (0..n).collect();
    let per_first: Vec<(usize, Vec<_>)> = firsts
        .par_iter()
        .map(|&a| {
            let mut count = 0;
            let mut bad = Vec::new();
            for b in a + 1..n {
                for c in b + 1..n {
                    count += 1;
                    let (x, y, z) = (&gens[a], &gens[b], &gens[c]);
                    let s = nested(table, x, y, z)
                        .add(&nested(table, y, z, x))
                        .add(&nested(table, z, x, y));
                    if !s.is_zero() {
                        bad.push((*x, *y, *z, s));
                    }
                }
            }
            (count, bad)
        })
        .collect();
    let mut report = ViolationReport::default();
    for (count, bad) in per_first {
        report.triples_checked += count;
        report.violations.extend(bad);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Coef;
    use crate::algebra::table::{structure_table, BasisKind};

    #[test]
    fn builtin_tables_satisfy_jacobi() {
        for kind in BasisKind::ALL {
            let r = check_jacobi(&structure_table(kind));
            let n = kind.generators().len();
            assert_eq!(r.triples_checked, n * (n - 1) * (n - 2) / 6);
            assert!(r.is_clean(), "{kind}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn perturbed_constant_is_detected() {
        let mut t = structure_table(BasisKind::Real);
        let (x, y): (GeneratorId, GeneratorId) = ("L_01".parse().unwrap(), "L_02".parse().unwrap());
        let v = t.entry(&x, &y).add(&AlgebraElement::gen("L_12".parse().unwrap()).scale(&Coef::one()));
        t.set_entry(x, y, v);
        let r = check_jacobi(&t);
        assert!(!r.is_clean());
        assert!(r
            .violations
            .iter()
            .any(|(a, b, c, _)| [a, b, c].contains(&&x) && [a, b, c].contains(&&y)));
    }
}
