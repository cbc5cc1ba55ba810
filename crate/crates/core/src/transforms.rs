//! Action of CR(1,3) on classical phase-space points `(T, E, Q, P)`.
//!
//! With explicit constants the dimensionless coordinates are
//! `X = (T, Q/c)` and `Y = (E/(bc), P/b)`, both in units of time. The
//! group acts on `X + iY` through `u(1,3)`, which preserves
//! `s² = η(XX + YY)` and `σ(p1, p2) = η_ab (Y1^a X2^b − X1^a Y2^b)`.
//!
//! First-order action:
//!
//! ```text
//! δT = β·Q/c² + γ·P/b² + θ E/(bc)²
//! δE = −γ·Q + β·P − θ T
//! δQ = α × Q + β T − γ E/b² + θ_ij P_j/b²
//! δP = α × P + γ T + β E/c² − θ_ij Q_j/c²
//! ```
//!
//! Rotations act on `Q` and `P` separately. `θ_ij` is symmetric.

use nalgebra::{Matrix3, SMatrix, SVector, Vector3};
use rayon::prelude::*;

use crate::error::Error;

pub type Matrix8 = SMatrix<f64, 8, 8>;
pub type Vector8 = SVector<f64, 8>;

/// Below this rapidity `sinh ρ/ρ` and `(cosh ρ − 1)/ρ²` use their series.
const SERIES_RHO: f64 = 1e-6;
const MAX_SQUARINGS: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub b: f64,
    pub hbar: f64,
}

impl PhysicalConstants {
    pub fn new(c: f64, b: f64, hbar: f64) -> Result<Self, Error> {
        for (name, v) in [("c", c), ("b", b), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidState(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { c, b, hbar })
    }

    pub fn natural() -> Self {
        Self { c: 1.0, b: 1.0, hbar: 1.0 }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseSpacePoint {
    pub t: f64,
    pub e: f64,
    pub q: Vector3<f64>,
    pub p: Vector3<f64>,
}

impl PhaseSpacePoint {
    pub fn new(t: f64, e: f64, q: [f64; 3], p: [f64; 3]) -> Self {
        Self {
            t,
            e,
            q: Vector3::from(q),
            p: Vector3::from(p),
        }
    }

    /// Components in the order `T, E, Q1, Q2, Q3, P1, P2, P3`.
    pub fn to_vector(&self) -> Vector8 {
        Vector8::from_column_slice(&[
            self.t, self.e, self.q.x, self.q.y, self.q.z, self.p.x, self.p.y, self.p.z,
        ])
    }

    pub fn from_vector(v: &Vector8) -> Self {
        Self::new(v[0], v[1], [v[2], v[3], v[4]], [v[5], v[6], v[7]])
    }

    pub fn from_slice(v: &[f64]) -> Result<Self, Error> {
        if v.len() != 8 {
            return Err(Error::DimensionMismatch { left: v.len(), right: 8 });
        }
        Ok(Self::from_vector(&Vector8::from_column_slice(v)))
    }

    pub fn is_finite(&self) -> bool {
        self.to_vector().iter().all(|x| x.is_finite())
    }

    /// `(X, Y)` as 4-vectors in units of time.
    pub fn xy(&self, k: &PhysicalConstants) -> ([f64; 4], [f64; 4]) {
        let x = [self.t, self.q.x / k.c, self.q.y / k.c, self.q.z / k.c];
        let y = [
            self.e / (k.b * k.c),
            self.p.x / k.b,
            self.p.y / k.b,
            self.p.z / k.b,
        ];
        (x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostParams {
    pub beta: Vector3<f64>,
    pub gamma: Vector3<f64>,
    pub constants: PhysicalConstants,
}

impl BoostParams {
    pub fn new(beta: [f64; 3], gamma: [f64; 3], constants: PhysicalConstants) -> Self {
        Self {
            beta: Vector3::from(beta),
            gamma: Vector3::from(gamma),
            constants,
        }
    }

    pub fn zero(constants: PhysicalConstants) -> Self {
        Self::new([0.0; 3], [0.0; 3], constants)
    }

    /// `ρ = sqrt(β·β/c² + γ·γ/b²)`.
    pub fn rho(&self) -> f64 {
        let k = &self.constants;
        (self.beta.norm_squared() / (k.c * k.c) + self.gamma.norm_squared() / (k.b * k.b)).sqrt()
    }

    pub fn inverse(&self) -> Self {
        Self {
            beta: -self.beta,
            gamma: -self.gamma,
            constants: self.constants,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            beta: self.beta * s,
            gamma: self.gamma * s,
            constants: self.constants,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RotationParams {
    pub alpha: Vector3<f64>,
    pub theta: f64,
    pub theta_ij: Matrix3<f64>,
}

impl RotationParams {
    pub fn new(alpha: [f64; 3], theta: f64, theta_ij: Matrix3<f64>) -> Result<Self, Error> {
        let asym = (theta_ij - theta_ij.transpose()).abs().max();
        if asym > 1e-12 * theta_ij.abs().max().max(1.0) {
            return Err(Error::InvalidState("theta_ij must be symmetric".into()));
        }
        Ok(Self {
            alpha: Vector3::from(alpha),
            theta,
            theta_ij,
        })
    }

    pub fn rotation(alpha: [f64; 3]) -> Self {
        Self {
            alpha: Vector3::from(alpha),
            ..Self::default()
        }
    }
}

/// Quadratic invariants of one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantValues {
    pub s2: f64,
    /// The symplectic form vanishes on a single point; see
    /// [`symplectic_pair_form`] for pairs.
    pub sigma: f64,
    pub zeta2: f64,
}

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

pub fn invariant_forms(p: &PhaseSpacePoint, k: &PhysicalConstants) -> InvariantValues {
    let (x, y) = p.xy(k);
    let s2: f64 = (0..4).map(|a| ETA[a] * (x[a] * x[a] + y[a] * y[a])).sum();
    InvariantValues {
        s2,
        sigma: symplectic_pair_form(p, p, k),
        zeta2: s2 / 2.0,
    }
}

/// `σ(p1, p2) = η_ab (Y1^a X2^b − X1^a Y2^b)`; `σ(T = 1, E = 1) = 1` in
/// natural units.
pub fn symplectic_pair_form(p1: &PhaseSpacePoint, p2: &PhaseSpacePoint, k: &PhysicalConstants) -> f64 {
    let (x1, y1) = p1.xy(k);
    let (x2, y2) = p2.xy(k);
    (0..4).map(|a| ETA[a] * (y1[a] * x2[a] - x1[a] * y2[a])).sum()
}

fn delta(rot: &RotationParams, boost: &BoostParams, p: &PhaseSpacePoint) -> PhaseSpacePoint {
    let k = &boost.constants;
    let (b, g) = (&boost.beta, &boost.gamma);
    let (c2, b2, bc2) = (k.c * k.c, k.b * k.b, (k.b * k.c).powi(2));
    PhaseSpacePoint {
        t: b.dot(&p.q) / c2 + g.dot(&p.p) / b2 + rot.theta * p.e / bc2,
        e: -g.dot(&p.q) + b.dot(&p.p) - rot.theta * p.t,
        q: rot.alpha.cross(&p.q) + b * p.t - g * (p.e / b2) + rot.theta_ij * p.p / b2,
        p: rot.alpha.cross(&p.p) + g * p.t + b * (p.e / c2) - rot.theta_ij * p.q / c2,
    }
}

/// `p + δp` with the first-order action.
pub fn infinitesimal_apply(rot: &RotationParams, boost: &BoostParams, p: &PhaseSpacePoint) -> PhaseSpacePoint {
    PhaseSpacePoint::from_vector(&(p.to_vector() + delta(rot, boost, p).to_vector()))
}

/// The 8×8 generator `δp = M p`.
pub fn generator_matrix(rot: &RotationParams, boost: &BoostParams) -> Matrix8 {
    let mut m = Matrix8::zeros();
    for j in 0..8 {
        let mut e = Vector8::zeros();
        e[j] = 1.0;
        m.set_column(j, &delta(rot, boost, &PhaseSpacePoint::from_vector(&e)).to_vector());
    }
    m
}

/// `(sinh ρ/ρ, (cosh ρ − 1)/ρ²)`.
fn boost_factors(rho: f64) -> (f64, f64) {
    if rho < SERIES_RHO {
        let r2 = rho * rho;
        (1.0 + r2 / 6.0, 0.5 + r2 / 24.0)
    } else {
        let h = (rho / 2.0).sinh();
        (rho.sinh() / rho, 2.0 * h * h / (rho * rho))
    }
}

/// Closed-form finite boost `1 + (sinh ρ/ρ) G + ((cosh ρ − 1)/ρ²) G²`,
/// using `G³ = ρ² G`.
pub fn boost_matrix(boost: &BoostParams) -> Matrix8 {
    let g = generator_matrix(&RotationParams::default(), boost);
    let (s, c) = boost_factors(boost.rho());
    Matrix8::identity() + g * s + g * g * c
}

pub fn boost_finite(boost: &BoostParams, p: &PhaseSpacePoint) -> PhaseSpacePoint {
    PhaseSpacePoint::from_vector(&(boost_matrix(boost) * p.to_vector()))
}

/// Affine phase-space map with a central phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub linear: Matrix8,
    pub translation: Vector8,
    pub phase: f64,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            linear: Matrix8::identity(),
            translation: Vector8::zeros(),
            phase: 0.0,
        }
    }

    pub fn linear(linear: Matrix8) -> Self {
        Self {
            linear,
            ..Self::identity()
        }
    }

    pub fn translation(t: &PhaseSpacePoint) -> Self {
        Self {
            translation: t.to_vector(),
            ..Self::identity()
        }
    }

    pub fn apply(&self, p: &PhaseSpacePoint) -> PhaseSpacePoint {
        PhaseSpacePoint::from_vector(&(self.linear * p.to_vector() + self.translation))
    }
}

/// `exp(M)` of the generator matrix by scaling and squaring.
pub fn group_exp(rot: &RotationParams, boost: &BoostParams, precision: f64) -> Result<GroupElement, Error> {
    if precision.is_nan() || precision <= 0.0 {
        return Err(Error::Usage(format!("precision must be positive, got {precision}")));
    }
    Ok(GroupElement::linear(expm(&generator_matrix(rot, boost), precision)?))
}

fn expm(m: &Matrix8, precision: f64) -> Result<Matrix8, Error> {
    let norm = m.abs().row_sum().max();
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale /= 2.0;
        squarings += 1;
        if squarings > MAX_SQUARINGS {
            return Err(Error::NonConvergence(squarings));
        }
    }
    let a = m * scale;
    let a_norm = norm * scale;
    let mut sum = Matrix8::identity();
    let mut term = Matrix8::identity();
    let mut n = 1u32;
    // With ‖A‖ ≤ 1/2 the tail after the term of size t is at most 2t.
    let mut bound = 1.0;
    while 2.0 * bound >= precision * 1e-3 && n < 200 {
        term = term * a / n as f64;
        sum += term;
        bound = bound * a_norm / n as f64;
        n += 1;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    Ok(sum)
}

/// Semidirect product law with the Heisenberg cocycle
/// `phase = φ1 + φ2 + ½ σ(t1, L1 t2)`.
pub fn compose(g1: &GroupElement, g2: &GroupElement, k: &PhysicalConstants) -> GroupElement {
    let moved = g1.linear * g2.translation;
    GroupElement {
        linear: g1.linear * g2.linear,
        translation: g1.translation + moved,
        phase: g1.phase
            + g2.phase
            + 0.5
                * symplectic_pair_form(
                    &PhaseSpacePoint::from_vector(&g1.translation),
                    &PhaseSpacePoint::from_vector(&moved),
                    k,
                ),
    }
}

/// `(T, E, Q, P) → (T, E, −P, Q)` in natural units.
pub fn reciprocity_map(p: &PhaseSpacePoint) -> PhaseSpacePoint {
    PhaseSpacePoint {
        t: p.t,
        e: p.e,
        q: -p.p,
        p: p.q,
    }
}

/// The `b, c → ∞` limit of the first-order action:
/// `T' = T`, `E' = E − γ·Q + β·P − θT`, `Q' = Q + α×Q + βT`,
/// `P' = P + α×P + γT`. For pure boosts this is also the exact finite map,
/// since its generator squares to zero.
pub fn newtonian_limit_apply(rot: &RotationParams, boost: &BoostParams, p: &PhaseSpacePoint) -> PhaseSpacePoint {
    let (b, g) = (&boost.beta, &boost.gamma);
    PhaseSpacePoint {
        t: p.t,
        e: p.e - g.dot(&p.q) + b.dot(&p.p) - rot.theta * p.t,
        q: p.q + rot.alpha.cross(&p.q) + b * p.t,
        p: p.p + rot.alpha.cross(&p.p) + g * p.t,
    }
}

/// `‖boost_finite(b = c = 10^s) − newtonian_limit_apply‖∞` for each `s`.
pub fn limit_deviations(beta: [f64; 3], gamma: [f64; 3], p: &PhaseSpacePoint, exponents: &[f64]) -> Vec<f64> {
    exponents
        .iter()
        .map(|&s| {
            let scale = 10f64.powf(s);
            let boost = BoostParams::new(beta, gamma, PhysicalConstants { c: scale, b: scale, hbar: 1.0 });
            let finite = boost_finite(&boost, p).to_vector();
            let limit = newtonian_limit_apply(&RotationParams::default(), &boost, p).to_vector();
            (finite - limit).amax()
        })
        .collect()
}

/// Least-squares slope of `log10 y` against `x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let ly: Vec<f64> = y.iter().map(|v| v.log10()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// One sample of a parameter sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub point: PhaseSpacePoint,
    pub s2: f64,
    pub zeta2: f64,
}

/// `steps` evenly spaced samples of `lo..=hi`.
pub fn sweep_params(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Evaluate `f` at every parameter; invariants use the constants `f`
/// returns alongside the point.
pub fn sweep<F>(params: &[f64], f: F) -> Vec<SweepRow>
where
    F: Fn(f64) -> (PhaseSpacePoint, PhysicalConstants) + Sync,
{
    params
        .par_iter()
        .map(|&param| {
            let (point, k) = f(param);
            let inv = invariant_forms(&point, &k);
            SweepRow {
                param,
                point,
                s2: inv.s2,
                zeta2: inv.zeta2,
            }
        })
        .collect()
}

/// Contraction sweep: the finite boost at `b = c = 10^s` for each `s`.
pub fn contraction_sweep(beta: [f64; 3], gamma: [f64; 3], p: &PhaseSpacePoint, exponents: &[f64]) -> Vec<SweepRow> {
    sweep(exponents, |s| {
        let scale = 10f64.powf(s);
        let k = PhysicalConstants { c: scale, b: scale, hbar: 1.0 };
        (boost_finite(&BoostParams::new(beta, gamma, k), p), k)
    })
}

/// `param,T,E,Q1,Q2,Q3,P1,P2,P3,s2,zeta2` rows.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("param,T,E,Q1,Q2,Q3,P1,P2,P3,s2,zeta2\n");
    for r in rows {
        let v = r.point.to_vector();
        let cells: Vec<String> = std::iter::once(r.param)
            .chain(v.iter().copied())
            .chain([r.s2, r.zeta2])
            .map(|x| format!("{x:?}"))
            .collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
