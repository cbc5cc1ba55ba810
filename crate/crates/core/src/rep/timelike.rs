//! Time-like representation: little group U(3) ⊗ Os(1).
//!
//! Basis `|m, j, n, k⟩` with `m` half-integral (stored as `2m`), the SU(3)
//! tower label `ν1 = n`, and `k` the level of the oscillator attached to the
//! time direction. Writing `h = (j + κ1)/2`, `p = h + m`, `q = h − m`:
//!
//! ```text
//! T+ : √((p+1) q)          (2m+2)          T− : √(p (q+1))          (2m−2)
//! U+ : √((n−j)(q+1))       (2m−1, j+1)     U− : √((n−j+1) q)        (2m+1, j−1)
//! V+ : √((n−j+1) p)        (2m−1, j−1)     V− : √((n−j)(p+1))       (2m+1, j+1)
//! T° = m    Y = j − (2n − κ1)/3    Z° = n + κ2    R = k + ν2 + 1
//! A0+ : √(κ0(k+1))         (k+1)           A0− : √(κ0 k)             (k−1)
//! B1+ : √((n−j+1)(k+1))    (n+1, k+1)      B1− : √((n−j) k)          (n−1, k−1)
//! B2+ : √((p+1)(k+1))      (2m+1, j+1, n+1, k+1)
//! B2− : √(p k)             (2m−1, j−1, n−1, k−1)
//! B3+ : √((q+1)(k+1))      (2m−1, j+1, n+1, k+1)
//! B3− : √(q k)             (2m+1, j−1, n−1, k−1)
//! A1+ : √(κ0(n−j))         (n−1)           A1− : √(κ0(n−j+1))        (n+1)
//! A2+ : √(κ0 p)            (2m−1, j−1, n−1)
//! A2− : √(κ0(p+1))         (2m+1, j+1, n+1)
//! A3+ : √(κ0 q)            (2m+1, j−1, n−1)
//! A3− : √(κ0(q+1))         (2m−1, j+1, n+1)
//! I = κ0
//! ```
//!
//! Complex-basis dictionary:
//!
//! ```text
//! Z_23 = T+   Z_32 = T−   Z_31 = U+   Z_13 = U−   Z_12 = V+   Z_21 = V−
//! Z_i0 = B_i+   Z_0i = B_i−   Z_00 = R
//! Z_11 = Z°/3 − Y   Z_22 = Z°/3 + Y/2 + T°   Z_33 = Z°/3 + Y/2 − T°
//! A_a^± = A_a±   I = I
//! ```
//!
//! `T°` is `(Z_22 − Z_33)/2`, the Cartan element paired with `T± = Z_23, Z_32`.
//! The `B_i±` amplitudes coincide with those of `A_i^− A_0^+ / κ0` and its
//! adjoint, so they represent `Z_i0` and `Z_0i` without a factor `1/2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::algebra::{GeneratorId, Sign};
use crate::error::Error;
use crate::rep::{assemble, combine, re, RepBasis, RepCase, RepSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub twice_m: i32,
    pub j: u32,
    pub n: u32,
    pub k: u32,
}

impl BasisState {
    pub fn new(twice_m: i32, j: u32, n: u32, k: u32) -> Self {
        Self { twice_m, j, n, k }
    }

    fn key(&self) -> (u32, u32, u32, i32) {
        (self.k, self.n, self.j, self.twice_m)
    }
}

/// Canonical basis order: `(k, n, j, 2m)` ascending.
impl Ord for BasisState {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for BasisState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2m={}, j={}, n={}, k={})", self.twice_m, self.j, self.n, self.k)
    }
}

/// Labels `κ0 > 0`, `κ1 ≥ 0`, `κ2`, `ν2 ≥ 0` of a time-like representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepLabels {
    pub kappa0: f64,
    pub kappa1: u32,
    pub kappa2: i32,
    pub nu2: u32,
}

impl RepLabels {
    pub fn new(kappa0: f64, kappa1: u32, kappa2: i32, nu2: u32) -> Result<Self, Error> {
        if !(kappa0.is_finite() && kappa0 > 0.0) {
            return Err(Error::Usage(format!("kappa0 must be positive, got {kappa0}")));
        }
        Ok(Self {
            kappa0,
            kappa1,
            kappa2,
            nu2,
        })
    }

    /// Whether `s` satisfies `j ≤ n`, `|2m| ≤ j + κ1` and the parity rule.
    pub fn is_valid(&self, s: &BasisState) -> bool {
        let top = (s.j + self.kappa1) as i32;
        s.j <= s.n && s.twice_m.abs() <= top && (top - s.twice_m) % 2 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub n_max: u32,
    pub k_max: u32,
    pub margin: usize,
}

impl TruncationPolicy {
    pub fn new(n_max: u32, k_max: u32, margin: usize) -> Result<Self, Error> {
        if margin > n_max.min(k_max) as usize {
            return Err(Error::Usage(format!(
                "margin {margin} exceeds min(nmax, kmax) = {}",
                n_max.min(k_max)
            )));
        }
        Ok(Self {
            n_max,
            k_max,
            margin,
        })
    }
}

/// Generators of the time-like construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimelikeGen {
    T(Sign),
    U(Sign),
    V(Sign),
    T0,
    Y,
    Z0,
    R,
    /// `B_i±`, `i = 1..=3`.
    B(u8, Sign),
    /// `A_a±`, `a = 0..=3`; `A_0±` is the oscillator pair.
    A(u8, Sign),
    I,
}

impl TimelikeGen {
    pub fn all() -> Vec<TimelikeGen> {
        use TimelikeGen::*;
        let mut out = Vec::new();
        for s in [Sign::Plus, Sign::Minus] {
            out.extend([T(s), U(s), V(s)]);
        }
        out.extend([T0, Y, Z0, R]);
        for s in [Sign::Plus, Sign::Minus] {
            out.extend((1..4).map(|i| B(i, s)));
            out.extend((0..4).map(|a| A(a, s)));
        }
        out.push(I);
        out
    }

    fn is_little_group(self) -> bool {
        use TimelikeGen::*;
        matches!(self, T(_) | U(_) | V(_) | T0 | Y | Z0 | R | A(0, _))
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Plus => '+',
        Sign::Minus => '-',
    }
}

impl fmt::Display for TimelikeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TimelikeGen::*;
        match self {
            T(s) => write!(f, "T{}", sign_char(*s)),
            U(s) => write!(f, "U{}", sign_char(*s)),
            V(s) => write!(f, "V{}", sign_char(*s)),
            T0 => write!(f, "T0"),
            Y => write!(f, "Y"),
            Z0 => write!(f, "Z0"),
            R => write!(f, "R"),
            B(i, s) => write!(f, "B{i}{}", sign_char(*s)),
            A(a, s) => write!(f, "A{a}{}", sign_char(*s)),
            I => write!(f, "I"),
        }
    }
}

impl FromStr for TimelikeGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let canon = match s {
            "T°" => "T0",
            "Z°" => "Z0",
            "OscA+" => "A0+",
            "OscA-" => "A0-",
            other => other,
        };
        Self::all()
            .into_iter()
            .find(|g| g.to_string() == canon)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// Unvalidated target `(2m, j, n, k)`.
type Raw = (i64, i64, i64, i64);

/// Single target and amplitude of `gen` on `s`, before any range check.
fn raw_action(gen: TimelikeGen, s: &BasisState, l: &RepLabels) -> (Raw, f64) {
    use TimelikeGen::*;
    let (tm, j, n, k) = (s.twice_m as i64, s.j as i64, s.n as i64, s.k as i64);
    let h2 = j + l.kappa1 as i64;
    let p = ((h2 + tm) / 2) as f64;
    let q = ((h2 - tm) / 2) as f64;
    let (jf, nf, kf) = (j as f64, n as f64, k as f64);
    let k0 = l.kappa0;
    let same = (tm, j, n, k);
    match gen {
        T(Sign::Plus) => ((tm + 2, j, n, k), ((p + 1.0) * q).sqrt()),
        T(Sign::Minus) => ((tm - 2, j, n, k), (p * (q + 1.0)).sqrt()),
        U(Sign::Plus) => ((tm - 1, j + 1, n, k), ((nf - jf) * (q + 1.0)).sqrt()),
        U(Sign::Minus) => ((tm + 1, j - 1, n, k), ((nf - jf + 1.0) * q).sqrt()),
        V(Sign::Plus) => ((tm - 1, j - 1, n, k), ((nf - jf + 1.0) * p).sqrt()),
        V(Sign::Minus) => ((tm + 1, j + 1, n, k), ((nf - jf) * (p + 1.0)).sqrt()),
        T0 => (same, tm as f64 / 2.0),
        Y => (same, jf - (2.0 * nf - l.kappa1 as f64) / 3.0),
        Z0 => (same, nf + l.kappa2 as f64),
        R => (same, kf + l.nu2 as f64 + 1.0),
        A(0, Sign::Plus) => ((tm, j, n, k + 1), (k0 * (kf + 1.0)).sqrt()),
        A(0, Sign::Minus) => ((tm, j, n, k - 1), (k0 * kf).sqrt()),
        B(1, Sign::Plus) => ((tm, j, n + 1, k + 1), ((nf - jf + 1.0) * (kf + 1.0)).sqrt()),
        B(1, Sign::Minus) => ((tm, j, n - 1, k - 1), ((nf - jf) * kf).sqrt()),
        B(2, Sign::Plus) => ((tm + 1, j + 1, n + 1, k + 1), ((p + 1.0) * (kf + 1.0)).sqrt()),
        B(2, Sign::Minus) => ((tm - 1, j - 1, n - 1, k - 1), (p * kf).sqrt()),
        B(3, Sign::Plus) => ((tm - 1, j + 1, n + 1, k + 1), ((q + 1.0) * (kf + 1.0)).sqrt()),
        B(3, Sign::Minus) => ((tm + 1, j - 1, n - 1, k - 1), (q * kf).sqrt()),
        A(1, Sign::Plus) => ((tm, j, n - 1, k), (k0 * (nf - jf)).sqrt()),
        A(1, Sign::Minus) => ((tm, j, n + 1, k), (k0 * (nf - jf + 1.0)).sqrt()),
        A(2, Sign::Plus) => ((tm - 1, j - 1, n - 1, k), (k0 * p).sqrt()),
        A(2, Sign::Minus) => ((tm + 1, j + 1, n + 1, k), (k0 * (p + 1.0)).sqrt()),
        A(3, Sign::Plus) => ((tm + 1, j - 1, n - 1, k), (k0 * q).sqrt()),
        A(3, Sign::Minus) => ((tm - 1, j + 1, n + 1, k), (k0 * (q + 1.0)).sqrt()),
        I => (same, k0),
        B(..) | A(..) => unreachable!("index range fixed by TimelikeGen::all"),
    }
}

fn to_state(raw: Raw, l: &RepLabels) -> Option<BasisState> {
    let (tm, j, n, k) = raw;
    if j < 0 || n < 0 || k < 0 {
        return None;
    }
    let s = BasisState::new(tm as i32, j as u32, n as u32, k as u32);
    l.is_valid(&s).then_some(s)
}

/// Action of any time-like generator: at most one target, zero amplitudes and
/// targets outside the state space omitted.
pub fn action(gen: TimelikeGen, s: &BasisState, l: &RepLabels) -> Result<Vec<(BasisState, f64)>, Error> {
    if !l.is_valid(s) {
        return Err(Error::InvalidState(s.to_string()));
    }
    let (raw, amp) = raw_action(gen, s, l);
    Ok(match to_state(raw, l) {
        Some(t) if amp != 0.0 => vec![(t, amp)],
        _ => vec![],
    })
}

fn restricted(
    gen: TimelikeGen,
    allowed: impl Fn(TimelikeGen) -> bool,
    s: &BasisState,
    l: &RepLabels,
) -> Result<Vec<(BasisState, f64)>, Error> {
    if !allowed(gen) {
        return Err(Error::UnknownGenerator(gen.to_string()));
    }
    action(gen, s, l)
}

/// SU(3), U(1) and oscillator generators.
pub fn little_group_action(
    gen: TimelikeGen,
    s: &BasisState,
    l: &RepLabels,
) -> Result<Vec<(BasisState, f64)>, Error> {
    restricted(gen, TimelikeGen::is_little_group, s, l)
}

/// `B_i±`.
pub fn boost_action(gen: TimelikeGen, s: &BasisState, l: &RepLabels) -> Result<Vec<(BasisState, f64)>, Error> {
    restricted(gen, |g| matches!(g, TimelikeGen::B(..)), s, l)
}

/// `A_a±` and `I`.
pub fn heisenberg_action(
    gen: TimelikeGen,
    s: &BasisState,
    l: &RepLabels,
) -> Result<Vec<(BasisState, f64)>, Error> {
    restricted(gen, |g| matches!(g, TimelikeGen::A(..) | TimelikeGen::I), s, l)
}

/// All states with `k ≤ k_max`, `n ≤ n_max`, `j ≤ n` and the allowed `2m`, in
/// canonical order.
pub fn enumerate_basis(l: &RepLabels, t: &TruncationPolicy) -> Vec<BasisState> {
    let mut out = Vec::new();
    for k in 0..=t.k_max {
        for n in 0..=t.n_max {
            for j in 0..=n {
                let top = (j + l.kappa1) as i32;
                for tm in (-top..=top).step_by(2) {
                    out.push(BasisState::new(tm, j, n, k));
                }
            }
        }
    }
    out
}

/// Assemble every named generator and the 25 complex-basis generators.
pub fn build_rep(l: &RepLabels, t: &TruncationPolicy) -> Result<RepSet, Error> {
    let basis = enumerate_basis(l, t);
    let dim = basis.len();
    let index: HashMap<BasisState, usize> = basis.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let locate = |raw: Raw| {
        to_state(raw, l)
            .filter(|s| s.n <= t.n_max && s.k <= t.k_max)
            .map(|s| index[&s])
    };
    let mut leaky = vec![false; dim];
    let mut named = BTreeMap::new();
    for gen in TimelikeGen::all() {
        let op = assemble(dim, &mut leaky, |s| {
            let (raw, amp) = raw_action(gen, &basis[s], l);
            Some((locate(raw), amp))
        });
        named.insert(gen.to_string(), op);
    }

    let third = re(1.0 / 3.0);
    let half = re(0.5);
    let one = re(1.0);
    let mut ops = BTreeMap::new();
    let mut put = |g: GeneratorId, terms: &[(&str, num_complex::Complex64)]| {
        ops.insert(g, combine(dim, &named, terms));
    };
    put(GeneratorId::z(2, 3), &[("T+", one)]);
    put(GeneratorId::z(3, 2), &[("T-", one)]);
    put(GeneratorId::z(3, 1), &[("U+", one)]);
    put(GeneratorId::z(1, 3), &[("U-", one)]);
    put(GeneratorId::z(1, 2), &[("V+", one)]);
    put(GeneratorId::z(2, 1), &[("V-", one)]);
    for (i, bp, bm) in [(1, "B1+", "B1-"), (2, "B2+", "B2-"), (3, "B3+", "B3-")] {
        put(GeneratorId::z(i, 0), &[(bp, one)]);
        put(GeneratorId::z(0, i), &[(bm, one)]);
    }
    put(GeneratorId::z(0, 0), &[("R", one)]);
    put(GeneratorId::z(1, 1), &[("Z0", third), ("Y", -one)]);
    put(GeneratorId::z(2, 2), &[("Z0", third), ("Y", half), ("T0", one)]);
    put(GeneratorId::z(3, 3), &[("Z0", third), ("Y", half), ("T0", -one)]);
    for a in 0..4 {
        put(GeneratorId::a_plus(a), &[(&format!("A{a}+"), one)]);
        put(GeneratorId::a_minus(a), &[(&format!("A{a}-"), one)]);
    }
    put(GeneratorId::central(), &[("I", one)]);

    Ok(RepSet::new(
        RepCase::Timelike {
            labels: *l,
            trunc: *t,
        },
        RepBasis::Timelike(basis),
        ops,
        named,
        &leaky,
    ))
}

/// Build the representation and check closure against the complex table on
/// the margin interior, together with exact hermiticity.
pub fn verify_rep(l: &RepLabels, t: &TruncationPolicy, tol: f64) -> Result<crate::report::Report, Error> {
    if t.margin < 2 {
        return Err(Error::Usage(format!("closure needs margin >= 2, got {}", t.margin)));
    }
    let rep = build_rep(l, t)?;
    let mut report = crate::rep::verify_closure(&rep, t.margin, tol)?;
    if let Err(pair) = crate::rep::check_hermiticity(&rep) {
        report.violation(format!("hermiticity: {pair}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{op_commutator, op_compose, SparseOperator};

    fn labels(k0: f64, k1: u32, k2: i32, nu2: u32) -> RepLabels {
        RepLabels::new(k0, k1, k2, nu2).unwrap()
    }

    fn g(s: &str) -> TimelikeGen {
        s.parse().unwrap()
    }

    #[test]
    fn small_bases() {
        let l = labels(1.0, 0, 0, 0);
        let b = enumerate_basis(&l, &TruncationPolicy::new(1, 0, 0).unwrap());
        assert_eq!(
            b,
            vec![
                BasisState::new(0, 0, 0, 0),
                BasisState::new(0, 0, 1, 0),
                BasisState::new(-1, 1, 1, 0),
                BasisState::new(1, 1, 1, 0),
            ]
        );
        assert_eq!(enumerate_basis(&l, &TruncationPolicy::new(0, 0, 0).unwrap()).len(), 1);
    }

    #[test]
    fn su3_block_sizes() {
        for (n, k1) in [(1u32, 0u32), (0, 1), (2, 0), (3, 0), (1, 1)] {
            let l = labels(1.0, k1, 0, 0);
            let count = enumerate_basis(&l, &TruncationPolicy::new(n, 0, 0).unwrap())
                .iter()
                .filter(|s| s.n == n)
                .count();
            let mu = (n + k1) as usize;
            if k1 == 0 {
                assert_eq!(count, (mu + 1) * (mu + 2) / 2, "n={n}");
            } else {
                assert!(count > mu);
            }
        }
    }

    #[test]
    fn reference_amplitudes() {
        let l = labels(1.0, 0, 0, 0);
        let t0 = little_group_action(g("T°"), &BasisState::new(1, 1, 1, 0), &l).unwrap();
        assert_eq!(t0, vec![(BasisState::new(1, 1, 1, 0), 0.5)]);
        let up = little_group_action(g("OscA+"), &BasisState::new(0, 0, 0, 0), &l).unwrap();
        assert_eq!(up, vec![(BasisState::new(0, 0, 0, 1), 1.0)]);
        assert!(little_group_action(g("OscA-"), &BasisState::new(0, 0, 0, 0), &l)
            .unwrap()
            .is_empty());
        let tp = little_group_action(g("T+"), &BasisState::new(-1, 1, 1, 0), &l).unwrap();
        assert_eq!(tp, vec![(BasisState::new(1, 1, 1, 0), 1.0)]);
        let b1 = boost_action(g("B1+"), &BasisState::new(0, 0, 0, 0), &l).unwrap();
        assert_eq!(b1, vec![(BasisState::new(0, 0, 1, 1), 1.0)]);
        let b2 = boost_action(g("B2-"), &BasisState::new(1, 1, 1, 1), &l).unwrap();
        assert_eq!(b2, vec![(BasisState::new(0, 0, 0, 0), 1.0)]);
        for s in enumerate_basis(&l, &TruncationPolicy::new(2, 0, 0).unwrap()) {
            assert!(boost_action(g("B1-"), &s, &l).unwrap().is_empty());
        }
        let a1 = heisenberg_action(g("A1-"), &BasisState::new(0, 0, 0, 0), &l).unwrap();
        assert_eq!(a1, vec![(BasisState::new(0, 0, 1, 0), 1.0)]);
        assert!(heisenberg_action(g("A1+"), &BasisState::new(0, 0, 0, 0), &l)
            .unwrap()
            .is_empty());
        let l2 = labels(2.5, 1, 0, 0);
        let i = heisenberg_action(g("I"), &BasisState::new(1, 0, 3, 2), &l2).unwrap();
        assert_eq!(i, vec![(BasisState::new(1, 0, 3, 2), 2.5)]);
    }

    #[test]
    fn action_families_are_separated() {
        let l = labels(1.0, 0, 0, 0);
        let s = BasisState::new(0, 0, 0, 0);
        assert!(little_group_action(g("B1+"), &s, &l).is_err());
        assert!(boost_action(g("A1+"), &s, &l).is_err());
        assert!(heisenberg_action(g("T+"), &s, &l).is_err());
        assert!(action(g("T+"), &BasisState::new(1, 0, 0, 0), &l).is_err());
        assert!("W+".parse::<TimelikeGen>().is_err());
    }

    #[test]
    fn tower_label_follows_n() {
        let l = labels(1.0, 0, 0, 0);
        for n in 1..5u32 {
            let out = little_group_action(g("U+"), &BasisState::new(0, 0, n, 0), &l).unwrap();
            assert_eq!(out, vec![(BasisState::new(-1, 1, n, 0), (n as f64).sqrt())]);
        }
    }

    #[test]
    fn composed_heisenberg_diagonal() {
        let l = labels(1.0, 0, 0, 0);
        let t = TruncationPolicy::new(4, 1, 0).unwrap();
        let rep = build_rep(&l, &t).unwrap();
        let prod = op_compose(rep.named("A1-").unwrap(), rep.named("A1+").unwrap()).unwrap();
        if let RepBasis::Timelike(basis) = &rep.basis {
            for (i, s) in basis.iter().enumerate() {
                if s.n < 4 {
                    assert!((prod.get(i, i).re - (s.n - s.j) as f64).abs() < 1e-12, "{s}");
                }
            }
        }
    }

    #[test]
    fn a1_column_of_ground_state() {
        let l = labels(1.0, 0, 0, 0);
        let rep = build_rep(&l, &TruncationPolicy::new(2, 2, 0).unwrap()).unwrap();
        let op = rep.build_operator("A1-").unwrap();
        let col: Vec<_> = op.entries().filter(|&(_, c, _)| c == 0).collect();
        let RepBasis::Timelike(basis) = &rep.basis else { unreachable!() };
        assert_eq!(col.len(), 1);
        assert_eq!(basis[col[0].0], BasisState::new(0, 0, 1, 0));
        assert_eq!(col[0].2.re, 1.0);
        assert_eq!(
            rep.build_operator("I").unwrap(),
            SparseOperator::identity(rep.dim()).scale(re(1.0))
        );
    }

    #[test]
    fn trivial_labels_close() {
        let l = labels(1.0, 0, 0, 0);
        let t = TruncationPolicy::new(6, 6, 2).unwrap();
        let r = verify_rep(&l, &t, 1e-9).unwrap();
        assert!(r.passed, "{}", r.to_kv_text());
    }

    #[test]
    fn heisenberg_pairs_on_interior() {
        let l = labels(2.0, 1, 0, 1);
        let rep = build_rep(&l, &TruncationPolicy::new(6, 6, 2).unwrap()).unwrap();
        let mask = rep.interior(2);
        assert!(mask.count() > 0);
        for a in 0..4 {
            let c = op_commutator(
                rep.operator(&GeneratorId::a_plus(a)).unwrap(),
                rep.operator(&GeneratorId::a_minus(a)).unwrap(),
            )
            .unwrap();
            let eta = if a == 0 { -2.0 } else { 2.0 };
            let resid = c.sub(&SparseOperator::identity(rep.dim()).scale(re(eta))).unwrap();
            assert!(resid.max_abs_on(&mask) < 1e-12, "a={a}");
        }
    }

    #[test]
    fn flipped_amplitude_is_caught() {
        let l = labels(1.0, 0, 0, 0);
        let t = TruncationPolicy::new(6, 6, 2).unwrap();
        let mut rep = build_rep(&l, &t).unwrap();
        let g = GeneratorId::z(1, 0);
        let op = rep.operators[&g].clone();
        let (r0, c0, v0) = op
            .entries()
            .find(|&(_, c, _)| rep.interior(2).contains(c))
            .unwrap();
        let flipped = op
            .axpby(
                re(1.0),
                &SparseOperator::from_triplets(rep.dim(), [(r0, c0, -v0 * 2.0)]).unwrap(),
                re(1.0),
            )
            .unwrap();
        rep.operators.insert(g, flipped);
        let report = crate::rep::verify_closure(&rep, 2, 1e-9).unwrap();
        assert!(!report.passed);
        assert!(report.worst_item.contains("Z_10"), "{}", report.worst_item);
    }

    #[test]
    fn selection_rules() {
        let l = labels(1.0, 1, 0, 0);
        let rep = build_rep(&l, &TruncationPolicy::new(4, 4, 0).unwrap()).unwrap();
        let RepBasis::Timelike(basis) = &rep.basis else { unreachable!() };
        let shift = |name: &str| -> Vec<(i64, i64)> {
            rep.named(name)
                .unwrap()
                .entries()
                .map(|(r, c, _)| {
                    let (a, b) = (basis[r], basis[c]);
                    (a.n as i64 - b.n as i64, a.k as i64 - b.k as i64)
                })
                .collect()
        };
        for i in 1..4 {
            assert!(shift(&format!("B{i}+")).iter().all(|&(dn, dk)| dn + dk == 2));
            assert!(shift(&format!("B{i}-")).iter().all(|&(dn, dk)| dn + dk == -2));
            assert!(shift(&format!("A{i}+")).iter().all(|&d| d == (-1, 0)));
            assert!(shift(&format!("A{i}-")).iter().all(|&d| d == (1, 0)));
        }
        assert!(shift("A0+").iter().all(|&d| d == (0, 1)));
        assert!(shift("A0-").iter().all(|&d| d == (0, -1)));
        for name in ["T0", "Y", "Z0", "R", "I"] {
            assert!(rep.named(name).unwrap().entries().all(|(r, c, _)| r == c));
        }
        for (_, op) in rep.named.iter().filter(|(n, _)| n.starts_with('B')) {
            assert!(op.entries().all(|(_, _, v)| v.re >= 0.0 && v.im == 0.0));
        }
    }
}
