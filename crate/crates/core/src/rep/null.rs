//! Null representation: little group Os(2) ⊗ CE(1) for the standard vector
//! `(1, 0, 0, 1)`.
//!
//! Basis `|m, j, k⟩` with `k` two-sided. With `h = (j + κ1)/2`, `p = h + m`,
//! `q = h − m`:
//!
//! ```text
//! J+ : √((p+1) q)      (2m+2)          J− : √(p (q+1))      (2m−2)
//! J3 = 2m              Z° = j + κ1/2 − κ2
//! C1+ : √(κ0(p+1))     (2m+1, j+1)     C1− : √(κ0 p)         (2m−1, j−1)
//! C2+ : √(κ0(q+1))     (2m−1, j+1)     C2− : √(κ0 q)         (2m+1, j−1)
//! I° = κ0
//! A°+ : κ3 = −κ0/2     (k−1)           A°− : κ4 = −κ0/2      (k+1)
//! R = k + ν1 with ν1 = j − k + κ2
//! A1+ : √(κ5 p)        (2m−1, j−1, k−1)   A1− : √(κ5(p+1))   (2m+1, j+1, k+1)
//! A2+ : √(κ5 q)        (2m+1, j−1, k−1)   A2− : √(κ5(q+1))   (2m−1, j+1, k+1)
//! I = κ0, κ5 = κ0
//! ```
//!
//! The 17 surviving generators, as elements of the complex algebra:
//!
//! ```text
//! J+ = Z_12   J− = Z_21   J3 = Z_11 − Z_22   Z° = Z_11 + Z_22
//! C_i+ = Z_i0 − Z_i3   C_i− = Z_0i − Z_3i   (i = 1, 2)
//! I° = −(Z_03 + Z_30)   R = −Z_00 + Z_11 + Z_22 + Z_33
//! A°± = (A_3± − A_0±)/2   A_1±   A_2±   I
//! ```
//!
//! The complementary eight, `Z_i0 + Z_i3`, `Z_0i + Z_3i`, `Z_00 + Z_33`,
//! `Z_03 − Z_30` and `A_3± + A_0±`, act as zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, Coef, GeneratorId, Sign};
use crate::error::Error;
use crate::rep::{assemble, combine, max_residual, re, RepBasis, RepCase, RepSet};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NullBasisState {
    pub twice_m: i32,
    pub j: u32,
    pub k: i32,
}

impl NullBasisState {
    pub fn new(twice_m: i32, j: u32, k: i32) -> Self {
        Self { twice_m, j, k }
    }

    fn key(&self) -> (i32, u32, i32) {
        (self.k, self.j, self.twice_m)
    }
}

/// Canonical order: `(k, j, 2m)` ascending.
impl Ord for NullBasisState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for NullBasisState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NullBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2m={}, j={}, k={})", self.twice_m, self.j, self.k)
    }
}

/// Free labels of the null representation; the remaining constants are
/// derived from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullRepLabels {
    pub kappa0: f64,
    pub kappa1: u32,
    pub kappa2: i32,
}

impl NullRepLabels {
    pub fn new(kappa0: f64, kappa1: u32, kappa2: i32) -> Result<Self, Error> {
        if !(kappa0.is_finite() && kappa0 > 0.0) {
            return Err(Error::Usage(format!("kappa0 must be positive, got {kappa0}")));
        }
        Ok(Self {
            kappa0,
            kappa1,
            kappa2,
        })
    }

    pub fn kappa3(&self) -> f64 {
        -self.kappa0 / 2.0
    }

    pub fn kappa4(&self) -> f64 {
        -self.kappa0 / 2.0
    }

    pub fn kappa5(&self) -> f64 {
        self.kappa0
    }

    pub fn nu1(&self, s: &NullBasisState) -> i64 {
        s.j as i64 - s.k as i64 + self.kappa2 as i64
    }

    pub fn is_valid(&self, s: &NullBasisState) -> bool {
        let top = (s.j + self.kappa1) as i32;
        s.twice_m.abs() <= top && (top - s.twice_m) % 2 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NullTruncation {
    pub j_max: u32,
    pub k_max: u32,
    pub margin: usize,
}

impl NullTruncation {
    pub fn new(j_max: u32, k_max: u32, margin: usize) -> Result<Self, Error> {
        if margin > j_max.min(k_max) as usize {
            return Err(Error::Usage(format!(
                "margin {margin} exceeds min(jmax, kmax) = {}",
                j_max.min(k_max)
            )));
        }
        Ok(Self {
            j_max,
            k_max,
            margin,
        })
    }
}

/// The 17 generators of the null construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NullGen {
    J(Sign),
    J3,
    Z0,
    /// `C_i±`, `i ∈ {1, 2}`.
    C(u8, Sign),
    I0,
    /// `A°±`.
    Ao(Sign),
    R,
    /// `A_i±`, `i ∈ {1, 2}`.
    A(u8, Sign),
    I,
}

impl NullGen {
    pub fn all() -> Vec<NullGen> {
        use NullGen::*;
        let mut out = vec![J(Sign::Plus), J(Sign::Minus), J3, Z0];
        for s in [Sign::Plus, Sign::Minus] {
            out.extend([C(1, s), C(2, s)]);
        }
        out.extend([I0, Ao(Sign::Plus), Ao(Sign::Minus), R]);
        for s in [Sign::Plus, Sign::Minus] {
            out.extend([A(1, s), A(2, s)]);
        }
        out.push(I);
        out
    }

    /// Little-group (`a`), standard-vector (`b`) or Heisenberg (`h`) class.
    fn class(self) -> char {
        use NullGen::*;
        match self {
            J(_) | J3 | Z0 | C(..) | I0 => 'a',
            Ao(_) | R => 'b',
            A(..) | I => 'h',
        }
    }

    /// This generator as an element of the complex algebra.
    pub fn element(self) -> AlgebraElement {
        use NullGen::*;
        let z = |a, b| AlgebraElement::gen(GeneratorId::z(a, b));
        let g = AlgebraElement::gen;
        match self {
            J(Sign::Plus) => z(1, 2),
            J(Sign::Minus) => z(2, 1),
            J3 => z(1, 1).sub(&z(2, 2)),
            Z0 => z(1, 1).add(&z(2, 2)),
            C(i, Sign::Plus) => z(i as usize, 0).sub(&z(i as usize, 3)),
            C(i, Sign::Minus) => z(0, i as usize).sub(&z(3, i as usize)),
            I0 => z(0, 3).add(&z(3, 0)).neg(),
            R => z(1, 1).add(&z(2, 2)).add(&z(3, 3)).sub(&z(0, 0)),
            Ao(s) => g(GeneratorId::a(s, 3))
                .sub(&g(GeneratorId::a(s, 0)))
                .scale(&Coef::frac(1, 2)),
            A(i, s) => g(GeneratorId::a(s, i as usize)),
            I => g(GeneratorId::central()),
        }
    }
}

/// The eight complex-algebra combinations that vanish in the null
/// representation.
pub fn excluded_elements() -> Vec<(String, AlgebraElement)> {
    let z = |a, b| AlgebraElement::gen(GeneratorId::z(a, b));
    let g = AlgebraElement::gen;
    let mut out = Vec::new();
    for i in 1..3 {
        out.push((format!("Z_{i}0+Z_{i}3"), z(i, 0).add(&z(i, 3))));
        out.push((format!("Z_0{i}+Z_3{i}"), z(0, i).add(&z(3, i))));
    }
    out.push(("Z_00+Z_33".into(), z(0, 0).add(&z(3, 3))));
    out.push(("Z_03-Z_30".into(), z(0, 3).sub(&z(3, 0))));
    for s in [Sign::Plus, Sign::Minus] {
        let a3 = GeneratorId::a(s, 3);
        out.push((format!("{a3}+{}", GeneratorId::a(s, 0)), g(a3).add(&g(GeneratorId::a(s, 0)))));
    }
    out
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

impl fmt::Display for NullGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NullGen::*;
        match self {
            J(s) => write!(f, "J{}", sign_char(*s)),
            J3 => write!(f, "J3"),
            Z0 => write!(f, "Z0"),
            C(i, s) => write!(f, "C{i}{}", sign_char(*s)),
            I0 => write!(f, "I0"),
            Ao(s) => write!(f, "Ao{}", sign_char(*s)),
            R => write!(f, "R"),
            A(i, s) => write!(f, "A{i}{}", sign_char(*s)),
            I => write!(f, "I"),
        }
    }
}

impl FromStr for NullGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let canon = s.replace('°', "o").replace("Zo", "Z0").replace("Io", "I0");
        Self::all()
            .into_iter()
            .find(|g| g.to_string() == canon)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

type Raw = (i64, i64, i64);

fn raw_action(gen: NullGen, s: &NullBasisState, l: &NullRepLabels) -> (Raw, f64) {
    use NullGen::*;
    let (tm, j, k) = (s.twice_m as i64, s.j as i64, s.k as i64);
    let h2 = j + l.kappa1 as i64;
    let p = ((h2 + tm) / 2) as f64;
    let q = ((h2 - tm) / 2) as f64;
    let k0 = l.kappa0;
    let k5 = l.kappa5();
    let same = (tm, j, k);
    match gen {
        J(Sign::Plus) => ((tm + 2, j, k), ((p + 1.0) * q).sqrt()),
        J(Sign::Minus) => ((tm - 2, j, k), (p * (q + 1.0)).sqrt()),
        J3 => (same, tm as f64),
        Z0 => (same, j as f64 + l.kappa1 as f64 / 2.0 - l.kappa2 as f64),
        C(1, Sign::Plus) => ((tm + 1, j + 1, k), (k0 * (p + 1.0)).sqrt()),
        C(2, Sign::Plus) => ((tm - 1, j + 1, k), (k0 * (q + 1.0)).sqrt()),
        C(1, Sign::Minus) => ((tm - 1, j - 1, k), (k0 * p).sqrt()),
        C(2, Sign::Minus) => ((tm + 1, j - 1, k), (k0 * q).sqrt()),
        I0 => (same, k0),
        Ao(Sign::Plus) => ((tm, j, k - 1), l.kappa3()),
        Ao(Sign::Minus) => ((tm, j, k + 1), l.kappa4()),
        R => (same, (k + l.nu1(s)) as f64),
        A(1, Sign::Plus) => ((tm - 1, j - 1, k - 1), (k5 * p).sqrt()),
        A(2, Sign::Plus) => ((tm + 1, j - 1, k - 1), (k5 * q).sqrt()),
        A(1, Sign::Minus) => ((tm + 1, j + 1, k + 1), (k5 * (p + 1.0)).sqrt()),
        A(2, Sign::Minus) => ((tm - 1, j + 1, k + 1), (k5 * (q + 1.0)).sqrt()),
        I => (same, k0),
        C(..) | A(..) => unreachable!("index range fixed by NullGen::all"),
    }
}

fn to_state(raw: Raw, l: &NullRepLabels) -> Option<NullBasisState> {
    let (tm, j, k) = raw;
    if j < 0 {
        return None;
    }
    let s = NullBasisState::new(tm as i32, j as u32, k as i32);
    l.is_valid(&s).then_some(s)
}

/// Action of a null generator: at most one target, zero amplitudes and
/// targets outside the state space omitted.
pub fn null_generator_action(
    gen: NullGen,
    s: &NullBasisState,
    l: &NullRepLabels,
) -> Result<Vec<(NullBasisState, f64)>, Error> {
    if !l.is_valid(s) {
        return Err(Error::InvalidState(s.to_string()));
    }
    let (raw, amp) = raw_action(gen, s, l);
    Ok(match to_state(raw, l) {
        Some(t) if amp != 0.0 => vec![(t, amp)],
        _ => vec![],
    })
}

/// States with `|k| ≤ k_max`, `j ≤ j_max`, ordered by `(k, j, 2m)`.
pub fn enumerate_basis_null(l: &NullRepLabels, t: &NullTruncation) -> Vec<NullBasisState> {
    let mut out = Vec::new();
    let km = t.k_max as i32;
    for k in -km..=km {
        for j in 0..=t.j_max {
            let top = (j + l.kappa1) as i32;
            for tm in (-top..=top).step_by(2) {
                out.push(NullBasisState::new(tm, j, k));
            }
        }
    }
    out
}

pub fn build_null_rep(l: &NullRepLabels, t: &NullTruncation) -> Result<RepSet, Error> {
    let basis = enumerate_basis_null(l, t);
    let dim = basis.len();
    let index: HashMap<NullBasisState, usize> =
        basis.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let locate = |raw: Raw| {
        to_state(raw, l)
            .filter(|s| s.j <= t.j_max && s.k.unsigned_abs() <= t.k_max)
            .map(|s| index[&s])
    };
    let mut leaky = vec![false; dim];
    let mut named = BTreeMap::new();
    for gen in NullGen::all() {
        let op = assemble(dim, &mut leaky, |s| {
            let (raw, amp) = raw_action(gen, &basis[s], l);
            Some((locate(raw), amp))
        });
        named.insert(gen.to_string(), op);
    }

    let one = re(1.0);
    let half = re(0.5);
    let mut ops = BTreeMap::new();
    let mut put = |g: GeneratorId, terms: &[(&str, Complex64)]| {
        ops.insert(g, combine(dim, &named, terms));
    };
    put(GeneratorId::z(1, 1), &[("Z0", half), ("J3", half)]);
    put(GeneratorId::z(2, 2), &[("Z0", half), ("J3", -half)]);
    put(GeneratorId::z(1, 2), &[("J+", one)]);
    put(GeneratorId::z(2, 1), &[("J-", one)]);
    for i in 1..3 {
        let (cp, cm) = (format!("C{i}+"), format!("C{i}-"));
        put(GeneratorId::z(i, 0), &[(&cp, half)]);
        put(GeneratorId::z(i, 3), &[(&cp, -half)]);
        put(GeneratorId::z(0, i), &[(&cm, half)]);
        put(GeneratorId::z(3, i), &[(&cm, -half)]);
    }
    put(GeneratorId::z(0, 0), &[("R", -half), ("Z0", half)]);
    put(GeneratorId::z(3, 3), &[("R", half), ("Z0", -half)]);
    put(GeneratorId::z(0, 3), &[("I0", -half)]);
    put(GeneratorId::z(3, 0), &[("I0", -half)]);
    for (s, c) in [(Sign::Plus, '+'), (Sign::Minus, '-')] {
        put(GeneratorId::a(s, 3), &[(&format!("Ao{c}"), one)]);
        put(GeneratorId::a(s, 0), &[(&format!("Ao{c}"), -one)]);
        put(GeneratorId::a(s, 1), &[(&format!("A1{c}"), one)]);
        put(GeneratorId::a(s, 2), &[(&format!("A2{c}"), one)]);
    }
    put(GeneratorId::central(), &[("I", one)]);

    Ok(RepSet::new(
        RepCase::Null {
            labels: *l,
            trunc: *t,
        },
        RepBasis::Null(basis),
        ops,
        named,
        &leaky,
    ))
}

/// Closure of the 17 generators, grouped as (a) little group, (b) standard
/// vector group, (c) relations involving `A_i±, I`, (d) little group against
/// standard vector group, plus (e) exact vanishing of the excluded eight.
pub fn verify_null_closure(rep: &RepSet, margin: usize, tol: f64) -> Result<Report, Error> {
    let mask = rep.interior(margin);
    let gens = NullGen::all();
    let mut groups: BTreeMap<&str, Vec<(String, AlgebraElement, AlgebraElement)>> = BTreeMap::new();
    for (n, x) in gens.iter().enumerate() {
        for y in &gens[n + 1..] {
            let group = match (x.class(), y.class()) {
                ('a', 'a') => "a_little_group",
                ('b', 'b') => "b_standard_vector",
                ('a', 'b') | ('b', 'a') => "d_little_vs_vector",
                _ => "c_heisenberg_cross",
            };
            groups
                .entry(group)
                .or_default()
                .push((format!("[{x}, {y}]"), x.element(), y.element()));
        }
    }
    let mut report = Report::new("null_closure", 0.0, tol, "none");
    for (name, pairs) in &groups {
        let (max, worst) = max_residual(rep, pairs, &mask)?;
        report.absorb(&Report::new(*name, max, tol, worst));
    }
    for (name, el) in excluded_elements() {
        let op = rep.operator_of(&el, crate::algebra::BasisKind::Complex)?;
        if !op.is_zero() {
            report.violation(format!("excluded generator {name} is nonzero"));
        }
    }
    report.detail("e_excluded_zero", "checked");
    report.detail("interior_states", mask.count());
    report.detail("dim", rep.dim());
    report.echo_case(&rep.case);
    report.echo("interior_margin", margin);
    Ok(report)
}

pub fn verify_null_rep(l: &NullRepLabels, t: &NullTruncation, tol: f64) -> Result<Report, Error> {
    if t.margin < 2 {
        return Err(Error::Usage(format!("closure needs margin >= 2, got {}", t.margin)));
    }
    let rep = build_null_rep(l, t)?;
    verify_null_closure(&rep, t.margin, tol)
}
