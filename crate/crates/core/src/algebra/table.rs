//! Built-in structure tables and the bilinear bracket.
//!
//! Conventions fixed here (η = diag(−1, 1, 1, 1)):
//!
//! Complex basis:
//! `[Z_ab, Z_cd] = η_bc Z_ad − η_ad Z_cb`, `[Z_ab, A_c^+] = −η_ac A_b^+`,
//! `[Z_ab, A_c^−] = η_bc A_a^−`, `[A_a^+, A_b^−] = η_ab I`.
//!
//! Real basis, the exact image of the complex table under
//! `A^± = (X ± iY)/√2`, `Z_ab = (M_ab + iL_ab)/2`, `I ↦ −I`:
//!
//! ```text
//! [L_ab, L_cd] = −i(η_ad L_bc + η_bc L_ad − η_ac L_bd − η_bd L_ac)
//! [L_ab, M_cd] = −i(−η_ad M_bc + η_bc M_ad − η_ac M_bd + η_bd M_ac)
//! [M_ab, M_cd] = −i(−η_ad L_bc − η_bc L_ad − η_ac L_bd − η_bd L_ac)
//! [Y_a, X_b]   = i η_ab I
//! [L_ab, Y_c]  = i(η_ac Y_b − η_bc Y_a)      [L_ab, X_c] = i(η_ac X_b − η_bc X_a)
//! [M_ab, Y_c]  = i(η_ac X_b + η_bc X_a)      [M_ab, X_c] = −i(η_ac Y_b + η_bc Y_a)
//! ```
//!
//! Dropping the overall `−i` on the U(1,3) lines breaks the Jacobi identity.
//!
//! Physical basis: `K_i = −L_0i`, `N_i = M_0i`, `J_i = −ε_ijk L_jk` (summed, so
//! `J_1 = −2 L_23`), `R0 = M_00`, spatial `M_ij`, with `X`, `Y`, `I` unchanged.
//! Its table is computed from the real one by conversion.
//!
//! Contracted (Newtonian) basis, with `T = X_0`, `Q_i = X_i`, `E = Y_0`,
//! `P_i = Y_i`:
//!
//! ```text
//! [J_i, J_j] = iε_ijk J_k   [J_i, G_j] = iε_ijk G_k   [J_i, F_j] = iε_ijk F_k
//! [J_i, Q_j] = iε_ijk Q_k   [J_i, P_j] = iε_ijk P_k   [F_i, G_j] = δ_ij R0
//! [G_i, Q_j] = iδ_ij T      [F_i, P_j] = −iδ_ij T
//! [G_i, E] = iP_i           [F_i, E] = iQ_i           [R0, E] = 2T
//! [P_i, Q_j] = iδ_ij I      [E, T] = −iI
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::coeff::Coef;
use super::convert::{physical_to_real, real_to_physical};
use super::element::AlgebraElement;
use super::generator::{Family, GeneratorId};
use crate::error::Error;

/// The Minkowski-signature metric on the index `a = 0..3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricTensor {
    pub eta: [i8; 4],
}

impl Default for MetricTensor {
    fn default() -> Self {
        Self { eta: [-1, 1, 1, 1] }
    }
}

impl MetricTensor {
    /// `η_ab` as an integer (zero off the diagonal).
    pub fn get(&self, a: usize, b: usize) -> i64 {
        if a == b {
            self.eta[a] as i64
        } else {
            0
        }
    }
}

pub(crate) fn eta(a: usize, b: usize) -> i64 {
    MetricTensor::default().get(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    Complex,
    Real,
    Physical,
    ContractedNewtonian,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [
        BasisKind::Complex,
        BasisKind::Real,
        BasisKind::Physical,
        BasisKind::ContractedNewtonian,
    ];

    /// Generators of this basis in canonical order.
    pub fn generators(self) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        match self {
            BasisKind::Complex => {
                for a in 0..4 {
                    for b in 0..4 {
                        out.push(GeneratorId::z(a, b));
                    }
                }
                out.extend((0..4).map(GeneratorId::a_plus));
                out.extend((0..4).map(GeneratorId::a_minus));
                out.push(GeneratorId::central());
            }
            BasisKind::Real => {
                out.push(GeneratorId::central());
                for a in 0..4 {
                    for b in a + 1..4 {
                        out.push(GeneratorId::l(a, b));
                    }
                }
                for a in 0..4 {
                    for b in a..4 {
                        out.push(GeneratorId::m(a, b));
                    }
                }
                out.extend((0..4).map(GeneratorId::x));
                out.extend((0..4).map(GeneratorId::y));
            }
            BasisKind::Physical => {
                out.push(GeneratorId::central());
                for i in 1..4 {
                    for j in i..4 {
                        out.push(GeneratorId::m(i, j));
                    }
                }
                out.extend((0..4).map(GeneratorId::x));
                out.extend((0..4).map(GeneratorId::y));
                out.extend((1..4).map(GeneratorId::j));
                out.extend((1..4).map(GeneratorId::k));
                out.extend((1..4).map(GeneratorId::n));
                out.push(GeneratorId::r0());
            }
            BasisKind::ContractedNewtonian => {
                out.push(GeneratorId::central());
                out.extend((0..4).map(GeneratorId::x));
                out.extend((0..4).map(GeneratorId::y));
                out.extend((1..4).map(GeneratorId::j));
                out.push(GeneratorId::r0());
                out.extend((1..4).map(GeneratorId::g));
                out.extend((1..4).map(GeneratorId::f));
            }
        }
        out.sort();
        out
    }

    /// Whether `g` is a generator of this basis.
    pub fn contains(self, g: &GeneratorId) -> bool {
        match (self, g.family()) {
            (BasisKind::Complex, Family::Z | Family::Aplus | Family::Aminus | Family::I) => true,
            (BasisKind::Real, Family::L | Family::M | Family::X | Family::Y | Family::I) => true,
            (BasisKind::Physical, Family::M) => g.index(0) > 0,
            (
                BasisKind::Physical,
                Family::X | Family::Y | Family::I | Family::J | Family::K | Family::N | Family::R0,
            ) => true,
            (
                BasisKind::ContractedNewtonian,
                Family::X | Family::Y | Family::I | Family::J | Family::R0 | Family::G | Family::F,
            ) => true,
            _ => false,
        }
    }

    pub fn label(&self, g: &GeneratorId) -> String {
        match self {
            BasisKind::Physical | BasisKind::ContractedNewtonian => g.physical_label(),
            _ => g.to_string(),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Complex => "complex",
            BasisKind::Real => "real",
            BasisKind::Physical => "physical",
            BasisKind::ContractedNewtonian => "contracted",
        })
    }
}

impl FromStr for BasisKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "complex" => Ok(BasisKind::Complex),
            "real" => Ok(BasisKind::Real),
            "physical" => Ok(BasisKind::Physical),
            "contracted" | "newtonian" | "contracted-newtonian" => {
                Ok(BasisKind::ContractedNewtonian)
            }
            _ => Err(Error::Usage(format!("unknown basis '{s}'"))),
        }
    }
}

/// Complete bracket table of one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub basis_kind: BasisKind,
    pub metric: MetricTensor,
    generators: Vec<GeneratorId>,
    entries: BTreeMap<(GeneratorId, GeneratorId), AlgebraElement>,
}

impl StructureTable {
    /// Build a table from a bracket rule evaluated on `x < y`; the reverse
    /// order is stored as the negation so antisymmetry holds by construction.
    pub fn from_rule<F>(basis_kind: BasisKind, generators: Vec<GeneratorId>, mut rule: F) -> Self
    where
        F: FnMut(&GeneratorId, &GeneratorId) -> AlgebraElement,
    {
        let mut entries = BTreeMap::new();
        for (n, x) in generators.iter().enumerate() {
            for y in &generators[n + 1..] {
                let v = rule(x, y);
                if !v.is_zero() {
                    entries.insert((*y, *x), v.neg());
                    entries.insert((*x, *y), v);
                }
            }
        }
        Self {
            basis_kind,
            metric: MetricTensor::default(),
            generators,
            entries,
        }
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn contains(&self, g: &GeneratorId) -> bool {
        self.generators.binary_search(g).is_ok()
    }

    /// `[x, y]` for two generators; zero when absent.
    pub fn entry(&self, x: &GeneratorId, y: &GeneratorId) -> AlgebraElement {
        self.entries
            .get(&(*x, *y))
            .cloned()
            .unwrap_or_else(AlgebraElement::zero)
    }

    /// Stored nonzero entries, both orders, in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&(GeneratorId, GeneratorId), &AlgebraElement)> {
        self.entries.iter()
    }

    /// Overwrite one entry and its antisymmetric partner (fault injection
    /// and hand-edited tables).
    pub fn set_entry(&mut self, x: GeneratorId, y: GeneratorId, v: AlgebraElement) {
        if v.is_zero() {
            self.entries.remove(&(x, y));
            self.entries.remove(&(y, x));
        } else {
            self.entries.insert((y, x), v.neg());
            self.entries.insert((x, y), v);
        }
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_members(x)?;
        self.check_members(y)?;
        let mut out = AlgebraElement::zero();
        for (gx, cx) in x.iter() {
            for (gy, cy) in y.iter() {
                if let Some(v) = self.entries.get(&(*gx, *gy)) {
                    out.add_scaled(v, &(cx * cy));
                }
            }
        }
        Ok(out)
    }

    fn check_members(&self, x: &AlgebraElement) -> Result<(), Error> {
        match x.generators().find(|g| !self.contains(g)) {
            Some(g) => Err(Error::BasisMismatch {
                generator: g.to_string(),
                basis: self.basis_kind.to_string(),
            }),
            None => Ok(()),
        }
    }
}

/// Free-function form of [`StructureTable::bracket`].
pub fn bracket(
    x: &AlgebraElement,
    y: &AlgebraElement,
    table: &StructureTable,
) -> Result<AlgebraElement, Error> {
    table.bracket(x, y)
}

/// The built-in table of a basis. Tables are constructed once and cached.
pub fn structure_table(kind: BasisKind) -> StructureTable {
    static CACHE: OnceLock<[StructureTable; 4]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let complex = complex_table();
        let real = real_table();
        let physical = physical_table(&real);
        let contracted = contracted_table();
        [complex, real, physical, contracted]
    });
    all[kind as usize].clone()
}

fn c(n: i64) -> Coef {
    Coef::int(n)
}

fn ci(n: i64) -> Coef {
    Coef::complex(0, n, 1)
}

fn elem(terms: &[(Coef, AlgebraElement)]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (k, e) in terms {
        out.add_scaled(e, k);
    }
    out
}

fn gen(g: GeneratorId) -> AlgebraElement {
    AlgebraElement::gen(g)
}

/// Bracket of two complex-basis generators.
pub(crate) fn complex_rule(x: &GeneratorId, y: &GeneratorId) -> AlgebraElement {
    use Family::*;
    match (x.family(), y.family()) {
        (I, _) | (_, I) => AlgebraElement::zero(),
        (Z, Z) => {
            let (a, b, cc, d) = (x.index(0), x.index(1), y.index(0), y.index(1));
            elem(&[
                (c(eta(b, cc)), gen(GeneratorId::z(a, d))),
                (c(-eta(a, d)), gen(GeneratorId::z(cc, b))),
            ])
        }
        (Z, Aplus) => {
            let (a, b, cc) = (x.index(0), x.index(1), y.index(0));
            gen(GeneratorId::a_plus(b)).scale(&c(-eta(a, cc)))
        }
        (Z, Aminus) => {
            let (a, b, cc) = (x.index(0), x.index(1), y.index(0));
            gen(GeneratorId::a_minus(a)).scale(&c(eta(b, cc)))
        }
        (Aplus | Aminus, Z) => complex_rule(y, x).neg(),
        (Aplus, Aminus) => gen(GeneratorId::central()).scale(&c(eta(x.index(0), y.index(0)))),
        (Aminus, Aplus) => complex_rule(y, x).neg(),
        _ => AlgebraElement::zero(),
    }
}

/// Real-basis bracket in the Jacobi-consistent convention documented above.
pub(crate) fn real_rule(x: &GeneratorId, y: &GeneratorId) -> AlgebraElement {
    use Family::*;
    let l = AlgebraElement::l;
    let m = AlgebraElement::m;
    let mi = ci(-1);
    match (x.family(), y.family()) {
        (I, _) | (_, I) => AlgebraElement::zero(),
        (L, L) => {
            let (a, b, cc, d) = (x.index(0), x.index(1), y.index(0), y.index(1));
            elem(&[
                (c(eta(a, d)), l(b, cc)),
                (c(eta(b, cc)), l(a, d)),
                (c(-eta(a, cc)), l(b, d)),
                (c(-eta(b, d)), l(a, cc)),
            ])
            .scale(&mi)
        }
        (L, M) => {
            let (a, b, cc, d) = (x.index(0), x.index(1), y.index(0), y.index(1));
            elem(&[
                (c(-eta(a, d)), m(b, cc)),
                (c(eta(b, cc)), m(a, d)),
                (c(-eta(a, cc)), m(b, d)),
                (c(eta(b, d)), m(a, cc)),
            ])
            .scale(&mi)
        }
        (M, M) => {
            let (a, b, cc, d) = (x.index(0), x.index(1), y.index(0), y.index(1));
            elem(&[
                (c(-eta(a, d)), l(b, cc)),
                (c(-eta(b, cc)), l(a, d)),
                (c(-eta(a, cc)), l(b, d)),
                (c(-eta(b, d)), l(a, cc)),
            ])
            .scale(&mi)
        }
        (Y, X) => gen(GeneratorId::central()).scale(&ci(eta(x.index(0), y.index(0)))),
        (L, Y) | (L, X) => {
            let (a, b, cc) = (x.index(0), x.index(1), y.index(0));
            let v = |i: usize| {
                if y.family() == Y {
                    gen(GeneratorId::y(i))
                } else {
                    gen(GeneratorId::x(i))
                }
            };
            elem(&[(ci(eta(a, cc)), v(b)), (ci(-eta(b, cc)), v(a))])
        }
        (M, Y) => {
            let (a, b, cc) = (x.index(0), x.index(1), y.index(0));
            elem(&[
                (ci(eta(a, cc)), gen(GeneratorId::x(b))),
                (ci(eta(b, cc)), gen(GeneratorId::x(a))),
            ])
        }
        (M, X) => {
            let (a, b, cc) = (x.index(0), x.index(1), y.index(0));
            elem(&[
                (ci(-eta(a, cc)), gen(GeneratorId::y(b))),
                (ci(-eta(b, cc)), gen(GeneratorId::y(a))),
            ])
        }
        (M, L) | (X, Y) | (Y | X, L | M) => real_rule(y, x).neg(),
        _ => AlgebraElement::zero(),
    }
}

fn complex_table() -> StructureTable {
    StructureTable::from_rule(
        BasisKind::Complex,
        BasisKind::Complex.generators(),
        complex_rule,
    )
}

fn real_table() -> StructureTable {
    StructureTable::from_rule(BasisKind::Real, BasisKind::Real.generators(), real_rule)
}

fn physical_table(real: &StructureTable) -> StructureTable {
    StructureTable::from_rule(
        BasisKind::Physical,
        BasisKind::Physical.generators(),
        |x, y| {
            let rx = physical_to_real(&AlgebraElement::gen(*x));
            let ry = physical_to_real(&AlgebraElement::gen(*y));
            let r = real.bracket(&rx, &ry).expect("real-basis images");
            real_to_physical(&r)
        },
    )
}

/// Levi-Civita symbol on spatial indices 1..=3.
pub(crate) fn levi(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
        _ => 0,
    }
}

pub(crate) fn contracted_rule(x: &GeneratorId, y: &GeneratorId) -> AlgebraElement {
    use Family::*;
    let delta = |i: usize, j: usize| i64::from(i == j);
    let cross = |i: usize, j: usize, f: fn(usize) -> GeneratorId| {
        let mut out = AlgebraElement::zero();
        for k in 1..4 {
            out.add_term(f(k), &ci(levi(i, j, k)));
        }
        out
    };
    let t = || gen(GeneratorId::x(0));
    let spatial_x = |g: &GeneratorId| g.family() == X && g.index(0) > 0;
    let spatial_y = |g: &GeneratorId| g.family() == Y && g.index(0) > 0;
    let energy = |g: &GeneratorId| g.family() == Y && g.index(0) == 0;
    let time = |g: &GeneratorId| g.family() == X && g.index(0) == 0;
    match (x.family(), y.family()) {
        (I, _) | (_, I) => AlgebraElement::zero(),
        (J, J) => cross(x.index(0), y.index(0), GeneratorId::j),
        (J, G) => cross(x.index(0), y.index(0), GeneratorId::g),
        (J, F) => cross(x.index(0), y.index(0), GeneratorId::f),
        (J, X) if spatial_x(y) => cross(x.index(0), y.index(0), GeneratorId::x),
        (J, Y) if spatial_y(y) => cross(x.index(0), y.index(0), GeneratorId::y),
        (F, G) => gen(GeneratorId::r0()).scale(&c(delta(x.index(0), y.index(0)))),
        (G, X) if spatial_x(y) => t().scale(&ci(delta(x.index(0), y.index(0)))),
        (F, Y) if spatial_y(y) => t().scale(&ci(-delta(x.index(0), y.index(0)))),
        (G, Y) if energy(y) => gen(GeneratorId::y(x.index(0))).scale(&ci(1)),
        (F, Y) if energy(y) => gen(GeneratorId::x(x.index(0))).scale(&ci(1)),
        (R0, Y) if energy(y) => t().scale(&c(2)),
        (Y, X) if spatial_y(x) && spatial_x(y) => {
            gen(GeneratorId::central()).scale(&ci(delta(x.index(0), y.index(0))))
        }
        (Y, X) if energy(x) && time(y) => gen(GeneratorId::central()).scale(&ci(-1)),
        (X | Y | G | F | R0, J)
        | (G, F)
        | (X, G)
        | (Y, F | G | R0)
        | (X, Y) => contracted_rule(y, x).neg(),
        _ => AlgebraElement::zero(),
    }
}

fn contracted_table() -> StructureTable {
    StructureTable::from_rule(
        BasisKind::ContractedNewtonian,
        BasisKind::ContractedNewtonian.generators(),
        contracted_rule,
    )
}
