//! W operators and the Casimir invariants `C0 … C4`.
//!
//! `W_ab = A_a^− A_b^+ − I Z_ab` and
//! `C_n = η^{a_1 a_2n} η^{a_2 a_3} ⋯ W_{a_1 a_2} W_{a_3 a_4} ⋯`, i.e. with
//! diagonal `η` the trace of the `n`-th power of the operator matrix `Wη`,
//! multiplied in left-to-right order. `C_0 = I`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{AlgebraElement, BasisKind, GeneratorId};
use crate::error::Error;
use crate::rep::{timelike, NullRepLabels, RepBasis, RepCase, RepLabels, RepSet, TruncationPolicy};
use crate::report::Report;
use crate::sparse::{op_commutator, op_compose, scalar_spread, InteriorMask, SparseOperator};

const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `W[a][b] = ρ(A_a^−) ρ(A_b^+) − ρ(I) ρ(Z_ab)`.
pub fn build_w(rep: &RepSet) -> Result<Vec<Vec<SparseOperator>>, Error> {
    let i = rep.operator(&GeneratorId::central())?;
    let mut w = Vec::with_capacity(4);
    for a in 0..4 {
        let mut row = Vec::with_capacity(4);
        for b in 0..4 {
            let aa = op_compose(
                rep.operator(&GeneratorId::a_minus(a))?,
                rep.operator(&GeneratorId::a_plus(b))?,
            )?;
            let iz = op_compose(i, rep.operator(&GeneratorId::z(a, b))?)?;
            row.push(aa.sub(&iz)?);
        }
        w.push(row);
    }
    Ok(w)
}

/// Largest leak distance present, i.e. the largest usable margin.
fn available_margin(rep: &RepSet) -> usize {
    rep.leak_distances()
        .iter()
        .map(|&d| if d == u32::MAX { usize::MAX } else { d as usize })
        .max()
        .unwrap_or(0)
}

/// `C_order` assembled from `W`. Fails when no basis state lies
/// `2·order` ladder steps inside the truncation.
pub fn casimir_operator(rep: &RepSet, order: usize) -> Result<SparseOperator, Error> {
    casimir_operator_check(rep, order)?;
    if order == 0 {
        return Ok(rep.operator(&GeneratorId::central())?.clone());
    }
    casimir_from_w(&build_w(rep)?, order)
}

/// `tr((Wη)^order)` with operator entries.
pub fn casimir_from_w(w: &[Vec<SparseOperator>], order: usize) -> Result<SparseOperator, Error> {
    let dim = w[0][0].dim();
    let weta: Vec<Vec<SparseOperator>> = (0..4)
        .map(|a| (0..4).map(|b| w[a][b].scale(c(ETA[b]))).collect())
        .collect();
    let mut power = weta.clone();
    for _ in 1..order {
        let mut next = Vec::with_capacity(4);
        for a in 0..4 {
            let mut row = Vec::with_capacity(4);
            for b in 0..4 {
                let mut acc = SparseOperator::zeros(dim);
                for m in 0..4 {
                    acc = acc.add(&op_compose(&power[a][m], &weta[m][b])?)?;
                }
                row.push(acc);
            }
            next.push(row);
        }
        power = next;
    }
    let mut trace = SparseOperator::zeros(dim);
    for (a, row) in power.iter().enumerate() {
        trace = trace.add(&row[a])?;
    }
    Ok(trace)
}

/// Closed-form eigenvalues, keyed by Casimir order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedFormCase {
    /// Orders 0..=3.
    Timelike(RepLabels),
    /// Orders 0..=2.
    Null(NullRepLabels),
    /// SU(3) tower `μ1 = ν1 + κ1`: orders 2 and 3.
    Su3Block { mu1: u32 },
    /// `A⁻A⁺ − I R` of the oscillator factor, reported as order 1.
    OscillatorBlock { kappa0: f64, nu2: u32 },
}

pub fn closed_form_values(case: ClosedFormCase) -> Vec<(usize, f64)> {
    match case {
        ClosedFormCase::Timelike(l) => {
            let (k0, d, nu) = (l.kappa0, l.kappa1 as f64 - l.kappa2 as f64, l.nu2 as f64);
            vec![
                (0, k0),
                (1, k0 * (d + nu)),
                (2, k0 * k0 * (d * d / 3.0 + nu * nu)),
                (3, k0.powi(3) * (d.powi(3) / 9.0 + nu.powi(3))),
            ]
        }
        ClosedFormCase::Null(l) => {
            let (k0, k1, k2) = (l.kappa0, l.kappa1 as f64, l.kappa2 as f64);
            vec![
                (0, k0),
                (1, k0 * (k1 - k2)),
                (2, k0 * k0 / 4.0 * ((k1 - k2).powi(2) + 9.0 * k2 * k2)),
            ]
        }
        ClosedFormCase::Su3Block { mu1 } => {
            let mu = mu1 as f64;
            vec![
                (2, 2.0 * mu * (mu + 3.0) / 3.0),
                (3, mu * (mu + 3.0) * (2.0 * mu - 6.0) / 9.0),
            ]
        }
        ClosedFormCase::OscillatorBlock { kappa0, nu2 } => vec![(1, -kappa0 * nu2 as f64)],
    }
}

/// Orders whose closed forms are checked; the null `C2` is only reported.
pub fn asserted_orders(case: &RepCase) -> &'static [usize] {
    match case {
        RepCase::Timelike { .. } => &[0, 1, 2, 3],
        RepCase::Null { .. } => &[0, 1],
    }
}

/// Whether `v` is scalar and, where asserted, matches its closed form, both
/// to `tol` relative.
pub fn casimir_passes(case: &RepCase, v: &CasimirValue, tol: f64) -> bool {
    let scalar = v.spread < tol * v.measured.norm().max(1.0);
    let matches = !asserted_orders(case).contains(&v.order) || v.rel_err().is_some_and(|e| e < tol);
    scalar && matches
}

/// A measured Casimir scalar with its closed form, if one is known.
#[derive(Clone, Debug, PartialEq)]
pub struct CasimirValue {
    pub order: usize,
    pub measured: Complex64,
    pub closed_form: Option<f64>,
    /// Largest deviation from `measured · Id` over the interior columns.
    pub spread: f64,
    pub interior_states: usize,
}

impl CasimirValue {
    pub fn abs_err(&self) -> Option<f64> {
        self.closed_form.map(|v| (self.measured - c(v)).norm())
    }

    pub fn rel_err(&self) -> Option<f64> {
        self.closed_form.map(|v| (self.measured - c(v)).norm() / v.abs().max(1.0))
    }
}

/// Measure `C_order` on the margin-`2·order` interior for each order.
pub fn measure_casimirs(rep: &RepSet, orders: &[usize]) -> Result<Vec<CasimirValue>, Error> {
    let closed = match &rep.case {
        RepCase::Timelike { labels, .. } => closed_form_values(ClosedFormCase::Timelike(*labels)),
        RepCase::Null { labels, .. } => closed_form_values(ClosedFormCase::Null(*labels)),
    };
    let w = if orders.iter().any(|&o| o > 0) {
        Some(build_w(rep)?)
    } else {
        None
    };
    let mut out = Vec::new();
    for &order in orders {
        casimir_operator_check(rep, order)?;
        let op = match order {
            0 => rep.operator(&GeneratorId::central())?.clone(),
            _ => casimir_from_w(w.as_ref().expect("built above"), order)?,
        };
        let mask = rep.interior(2 * order);
        let (measured, spread) = scalar_spread(&op, &mask).expect("nonempty interior");
        out.push(CasimirValue {
            order,
            measured,
            closed_form: closed.iter().find(|(o, _)| *o == order).map(|p| p.1),
            spread,
            interior_states: mask.count(),
        });
    }
    Ok(out)
}

fn casimir_operator_check(rep: &RepSet, order: usize) -> Result<(), Error> {
    if order > 4 {
        return Err(Error::Usage(format!("Casimir order {order} is not in 0..=4")));
    }
    let have = available_margin(rep);
    if have < 2 * order {
        return Err(Error::MarginTooSmall {
            order,
            margin: have,
            needed: 2 * order,
        });
    }
    Ok(())
}

/// `order,measured_re,measured_im,closed_form,abs_err,spread` rows.
pub fn casimir_csv(values: &[CasimirValue]) -> String {
    let mut s = String::from("order,measured_re,measured_im,closed_form,abs_err,spread\n");
    for v in values {
        let opt = |x: Option<f64>| x.map(|x| format!("{x:?}")).unwrap_or_default();
        s.push_str(&format!(
            "{},{:?},{:?},{},{},{:?}\n",
            v.order,
            v.measured.re,
            v.measured.im,
            opt(v.closed_form),
            opt(v.abs_err()),
            v.spread
        ));
    }
    s
}

/// Compare `η^{ab} W_ab` with its phase-space expansion
/// `½η^{ab}(X_a X_b + Y_a Y_b) + (i/2) η^{ab}[X_a, Y_b] − I η^{ab} Z_ab`,
/// where `X`, `Y` are rebuilt from `A^±` and the commutators are operator
/// commutators.
pub fn c1_expansion_check(rep: &RepSet, margin: usize, tol: f64) -> Result<Report, Error> {
    let (lhs, rhs) = c1_both_sides(rep)?;
    let mask = rep.interior(margin);
    let diff = lhs.sub(&rhs)?.max_abs_on(&mask);
    let mut report = Report::new("c1_expansion", diff, tol, "eta^ab W_ab - expansion");
    report.detail("interior_states", mask.count());
    report.echo_case(&rep.case);
    report.echo("interior_margin", margin);
    Ok(report)
}

/// `(η^{ab} W_ab, phase-space expansion)` as full matrices.
pub fn c1_both_sides(rep: &RepSet) -> Result<(SparseOperator, SparseOperator), Error> {
    let dim = rep.dim();
    let lhs = casimir_from_w(&build_w(rep)?, 1)?;
    let i = rep.operator(&GeneratorId::central())?;
    let mut rhs = SparseOperator::zeros(dim);
    for a in 0..4 {
        let x = rep.operator_of(&AlgebraElement::gen(GeneratorId::x(a)), BasisKind::Real)?;
        let y = rep.operator_of(&AlgebraElement::gen(GeneratorId::y(a)), BasisKind::Real)?;
        let quad = op_compose(&x, &x)?.add(&op_compose(&y, &y)?)?;
        let comm = op_commutator(&x, &y)?;
        let iz = op_compose(i, rep.operator(&GeneratorId::z(a, a))?)?;
        let term = quad
            .scale(c(0.5))
            .add(&comm.scale(Complex64::new(0.0, 0.5)))?
            .sub(&iz)?;
        rhs = rhs.add(&term.scale(c(ETA[a])))?;
    }
    Ok((lhs, rhs))
}

/// Residual of `ρ(A_0^−)ρ(A_0^+) − ρ(I)ρ(R) + κ0 ν2` on the interior.
pub fn oscillator_identity_residual(rep: &RepSet, margin: usize) -> Result<f64, Error> {
    let RepCase::Timelike { labels, .. } = &rep.case else {
        return Err(Error::Usage("the oscillator identity needs a time-like representation".into()));
    };
    let lhs = op_compose(rep.named("A0-")?, rep.named("A0+")?)?
        .sub(&op_compose(rep.named("I")?, rep.named("R")?)?)?;
    let want = SparseOperator::identity(rep.dim()).scale(c(-labels.kappa0 * labels.nu2 as f64));
    Ok(lhs.sub(&want)?.max_abs_on(&rep.interior(margin)))
}

/// The eight SU(3) generators, in a fixed order.
pub const SU3_GENERATORS: [&str; 8] = ["T+", "T-", "U+", "U-", "V+", "V-", "T0", "Y"];

fn block(rep: &RepSet, n: u32, name: &str) -> Result<DMatrix<Complex64>, Error> {
    let RepBasis::Timelike(basis) = &rep.basis else {
        return Err(Error::Usage("SU(3) blocks need a time-like representation".into()));
    };
    let idx: Vec<usize> = (0..basis.len())
        .filter(|&i| basis[i].n == n && basis[i].k == 0)
        .collect();
    let op = rep.named(name)?;
    Ok(DMatrix::from_fn(idx.len(), idx.len(), |r, c| op.get(idx[r], idx[c])))
}

/// Result of the SU(3) commutant oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct Su3Oracle {
    /// Normalized quadratic Casimir on the `μ1 = 1, 2, 3` towers.
    pub values: Vec<(u32, f64)>,
    /// Smallest and next singular values of the invariance system.
    pub null_singular: f64,
    pub gap_singular: f64,
    /// Largest deviation from a scalar on any tower.
    pub spread: f64,
}

/// Solve for the ad-invariant symmetric form on the SU(3) generators using
/// structure constants read off the `μ1 = 1` tower, normalize the quadratic
/// Casimir it defines to `8/3` there, and evaluate it on `μ1 = 2, 3`.
pub fn su3_commutant_oracle() -> Result<Su3Oracle, Error> {
    let labels = RepLabels::new(1.0, 0, 0, 0)?;
    let rep = timelike::build_rep(&labels, &TruncationPolicy::new(3, 0, 0)?)?;
    let blocks = |n: u32| -> Result<Vec<DMatrix<Complex64>>, Error> {
        SU3_GENERATORS.iter().map(|g| block(&rep, n, g)).collect()
    };
    let fund = blocks(1)?;
    let d = fund[0].nrows();
    // Structure constants: [X_A, X_B] = Σ_D f[A][B][D] X_D by least squares.
    let basis = DMatrix::from_fn(d * d, 8, |r, col| fund[col][(r / d, r % d)]);
    let svd = basis.clone().svd(true, true);
    let mut f = vec![vec![vec![Complex64::new(0.0, 0.0); 8]; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let comm = &fund[a] * &fund[b] - &fund[b] * &fund[a];
            let rhs = DMatrix::from_fn(d * d, 1, |r, _| comm[(r / d, r % d)]);
            let sol = svd.solve(&rhs, 1e-12).map_err(|e| Error::Usage(e.to_string()))?;
            for dd in 0..8 {
                f[a][b][dd] = sol[(dd, 0)];
            }
        }
    }
    // Unknowns g_AB = g_BA, A ≤ B.
    let pairs: Vec<(usize, usize)> = (0..8).flat_map(|a| (a..8).map(move |b| (a, b))).collect();
    let slot = |a: usize, b: usize| {
        let (x, y) = (a.min(b), a.max(b));
        pairs.iter().position(|&p| p == (x, y)).expect("pair listed")
    };
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for cc in 0..8 {
        for a in 0..8 {
            for b in a..8 {
                let mut row = vec![Complex64::new(0.0, 0.0); pairs.len()];
                for dd in 0..8 {
                    row[slot(dd, b)] += f[cc][a][dd];
                    row[slot(a, dd)] += f[cc][b][dd];
                }
                rows.push(row);
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), pairs.len(), |r, col| rows[r][col]);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]));
    let null_row = order[0];
    let g = DMatrix::from_fn(8, 8, |a, b| v_t[(null_row, slot(a, b))].conj());
    // The Casimir contracts with the inverse of the invariant form.
    let g_inv = g
        .try_inverse()
        .ok_or_else(|| Error::InvalidState("degenerate invariant form".into()))?;
    let casimir_on = |n: u32| -> Result<(Complex64, f64), Error> {
        let xs = blocks(n)?;
        let dim = xs[0].nrows();
        let mut cmat = DMatrix::<Complex64>::zeros(dim, dim);
        for a in 0..8 {
            for b in 0..8 {
                cmat += (&xs[a] * &xs[b]) * g_inv[(a, b)];
            }
        }
        let lambda = cmat[(0, 0)];
        let mut spread: f64 = 0.0;
        for r in 0..dim {
            for col in 0..dim {
                let want = if r == col { lambda } else { Complex64::new(0.0, 0.0) };
                spread = spread.max((cmat[(r, col)] - want).norm());
            }
        }
        Ok((lambda, spread / lambda.norm().max(1e-300)))
    };
    let (base, s1) = casimir_on(1)?;
    let scale = Complex64::new(8.0 / 3.0, 0.0) / base;
    let mut values = vec![(1, (base * scale).re)];
    let mut spread = s1;
    for n in [2, 3] {
        let (v, s) = casimir_on(n)?;
        values.push((n, (v * scale).re));
        spread = spread.max(s);
    }
    Ok(Su3Oracle {
        values,
        null_singular: svd.singular_values[order[0]],
        gap_singular: svd.singular_values[order[1]],
        spread,
    })
}

/// `[ρ(A_c^±), W_ab]` and `[ρ(Z_ab), W_cd] − (η_bc W_ad − η_ad W_cb)` on the
/// interior; returns the largest residual.
pub fn w_relations_residual(rep: &RepSet, mask: &InteriorMask) -> Result<f64, Error> {
    let w = build_w(rep)?;
    let mut worst: f64 = 0.0;
    for cc in 0..4 {
        for gen in [GeneratorId::a_plus(cc), GeneratorId::a_minus(cc)] {
            let a = rep.operator(&gen)?;
            for row in &w {
                for wab in row {
                    worst = worst.max(op_commutator(a, wab)?.max_abs_on(mask));
                }
            }
        }
    }
    for a in 0..4 {
        for b in 0..4 {
            let z = rep.operator(&GeneratorId::z(a, b))?;
            for cc in 0..4 {
                for d in 0..4 {
                    let mut want = SparseOperator::zeros(rep.dim());
                    if b == cc {
                        want = want.add(&w[a][d].scale(c(ETA[b])))?;
                    }
                    if a == d {
                        want = want.sub(&w[cc][b].scale(c(ETA[a])))?;
                    }
                    let got = op_commutator(z, &w[cc][d])?;
                    worst = worst.max(got.sub(&want)?.max_abs_on(mask));
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::timelike::build_rep;
    use crate::sparse::scalar_on_subspace;

    fn rep(k0: f64, k1: u32, k2: i32, nu2: u32, n: u32, k: u32) -> RepSet {
        build_rep(
            &RepLabels::new(k0, k1, k2, nu2).unwrap(),
            &TruncationPolicy::new(n, k, 2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn closed_form_spot_values() {
        let l = RepLabels::new(1.0, 2, 1, 1).unwrap();
        let v = closed_form_values(ClosedFormCase::Timelike(l));
        let want = [1.0, 2.0, 4.0 / 3.0, 10.0 / 9.0];
        for ((o, got), w) in v.iter().zip(want) {
            assert!((got - w).abs() < 1e-15, "C{o}");
        }
        let su3 = closed_form_values(ClosedFormCase::Su3Block { mu1: 1 });
        assert!((su3[0].1 - 8.0 / 3.0).abs() < 1e-15);
        let null = closed_form_values(ClosedFormCase::Null(NullRepLabels::new(1.0, 2, 2).unwrap()));
        assert_eq!(null[1].1, 0.0);
    }

    #[test]
    fn c0_and_c1_on_spot_labels() {
        let r = rep(1.0, 2, 1, 1, 8, 4);
        let c0 = casimir_operator(&r, 0).unwrap();
        assert_eq!(scalar_on_subspace(&c0, &r.interior(0), 1e-12), Some(c(1.0)));
        let c1 = casimir_operator(&r, 1).unwrap();
        let l = scalar_on_subspace(&c1, &r.interior(2), 1e-9).unwrap();
        assert!((l - c(2.0)).norm() < 1e-9, "{l}");
    }

    #[test]
    fn trivial_labels_give_zero_c1() {
        let r = rep(1.0, 0, 0, 0, 6, 6);
        let c1 = casimir_operator(&r, 1).unwrap();
        let l = scalar_on_subspace(&c1, &r.interior(2), 1e-9).unwrap();
        assert!(l.norm() < 1e-9);
    }

    #[test]
    fn c4_is_scalar() {
        let r = rep(1.0, 0, 0, 1, 9, 9);
        let c4 = casimir_operator(&r, 4).unwrap();
        assert!(scalar_on_subspace(&c4, &r.interior(8), 1e-8).is_some());
    }

    #[test]
    fn margin_too_small() {
        let r = rep(1.0, 0, 0, 0, 2, 2);
        assert!(matches!(casimir_operator(&r, 3), Err(Error::MarginTooSmall { .. })));
        assert!(matches!(casimir_operator(&r, 5), Err(Error::Usage(_))));
    }

    #[test]
    fn w_relations_hold_on_trivial_labels() {
        let r = rep(1.0, 0, 0, 0, 6, 6);
        assert!(w_relations_residual(&r, &r.interior(3)).unwrap() < 1e-9);
    }

    #[test]
    fn c1_expansion_on_trivial_labels() {
        let r = rep(1.0, 0, 0, 0, 6, 6);
        let report = c1_expansion_check(&r, 2, 1e-9).unwrap();
        assert!(report.passed, "{}", report.to_kv_text());
        let (lhs, rhs) = c1_both_sides(&r).unwrap();
        assert!(lhs.sub(&lhs.adjoint()).unwrap().max_abs() < 1e-12);
        assert!(rhs.sub(&rhs.adjoint()).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn c1_scales_with_kappa0() {
        let a = measure_casimirs(&rep(1.0, 1, 0, 1, 8, 4), &[1]).unwrap();
        let b = measure_casimirs(&rep(2.0, 1, 0, 1, 8, 4), &[1]).unwrap();
        assert!((b[0].measured - a[0].measured * 2.0).norm() < 1e-9);
    }

    #[test]
    fn oscillator_identity() {
        for nu2 in 0..3 {
            let r = rep(2.0, 1, 0, nu2, 3, 5);
            assert!(oscillator_identity_residual(&r, 2).unwrap() < 1e-12);
        }
    }

    #[test]
    fn su3_oracle() {
        let o = su3_commutant_oracle().unwrap();
        assert!(o.null_singular < 1e-10 && o.gap_singular > 1e-3, "{o:?}");
        let want = [(1, 8.0 / 3.0), (2, 20.0 / 3.0), (3, 12.0)];
        for ((n, got), (m, w)) in o.values.iter().zip(want) {
            assert_eq!(*n, m);
            assert!((got - w).abs() < 1e-10, "mu={n}: {got}");
        }
    }

    #[test]
    fn csv_header() {
        let csv = casimir_csv(&[CasimirValue {
            order: 1,
            measured: c(2.0),
            closed_form: Some(2.0),
            spread: 0.0,
            interior_states: 3,
        }]);
        assert_eq!(csv, "order,measured_re,measured_im,closed_form,abs_err,spread\n1,2.0,0.0,2.0,0.0,0.0\n");
    }
}
