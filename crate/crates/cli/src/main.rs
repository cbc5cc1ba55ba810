//! `canrel`: exit 0 on pass, 1 on a failed verification, 2 on usage,
//! configuration or I/O errors.

mod args;

use std::path::Path;
use std::process::ExitCode;

use canrel::algebra::{check_jacobi, structure_table, BasisKind};
use canrel::casimir::{casimir_csv, casimir_passes, measure_casimirs};
use canrel::io::{algebra_csv, load_rep, save_rep, write_file};
use canrel::rep::{verify_rep_set, NullRepLabels, NullTruncation, RepCase, RepLabels, TruncationPolicy};
use canrel::report::Report;
use canrel::transforms::{
    boost_finite, contraction_sweep, invariant_forms, limit_deviations, log_log_slope, sweep_csv, sweep_params,
    BoostParams, PhaseSpacePoint, PhysicalConstants,
};
use canrel::Error;
use clap::error::ErrorKind;
use clap::Parser;

use args::{AlgebraCmd, BuildArgs, CaseArg, Cli, Command, ContractCmd, Format, Output, RepCmd};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("canrel: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(passed)` or a usage/configuration error.
fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Algebra(AlgebraCmd::Check { basis, out }) => {
            let kinds = match basis {
                Some(b) => vec![b.parse()?],
                None => BasisKind::ALL.to_vec(),
            };
            // Exact arithmetic: the residual is the number of failing
            // relations, so the report passes only when it is zero.
            let mut failures = 0usize;
            let mut worst = String::from("none");
            let mut notes = Vec::new();
            for kind in kinds {
                let table = structure_table(kind);
                let jacobi = check_jacobi(&table);
                notes.push((format!("{kind}.triples_checked"), jacobi.triples_checked.to_string()));
                notes.push((format!("{kind}.violations"), jacobi.violations.len().to_string()));
                failures += jacobi.violations.len();
                for (x, y, z, r) in jacobi.violations.iter().take(10) {
                    notes.push(("violation".into(), format!("{kind}: Jacobi({x}, {y}, {z}) = {r}")));
                }
                if let Some((x, y, z, _)) = jacobi.violations.first() {
                    worst = format!("{kind}: ({x}, {y}, {z})");
                }
                for ((x, y), v) in table.entries() {
                    if table.entry(y, x) != v.neg() {
                        failures += 1;
                        notes.push(("violation".into(), format!("{kind}: [{y}, {x}] != -[{x}, {y}]")));
                    }
                }
                notes.push((format!("basis.{kind}"), "checked".into()));
            }
            let mut report = Report::new("algebra_check", failures as f64, 1.0, worst);
            for (k, v) in notes {
                report.detail(k, v);
            }
            emit(&out, Format::Kv, &report.to_kv_text(), None)?;
            Ok(report.passed)
        }
        Command::Algebra(AlgebraCmd::Table { basis, out }) => {
            let table = structure_table(basis.parse()?);
            emit(&out, Format::Csv, &algebra_csv(&table), None)?;
            Ok(true)
        }
        Command::Rep(RepCmd::Build(b)) => {
            let case = build_case(&b)?;
            let rep = case.build()?;
            save_rep(&rep, &b.out)?;
            eprintln!("wrote {} states to {}", rep.dim(), b.out.display());
            Ok(true)
        }
        Command::Rep(RepCmd::Verify { dir, margin, tol, out }) => {
            check_tol(tol)?;
            let rep = load_rep(&dir)?;
            let margin = margin.unwrap_or(rep.case.margin());
            let mut report = verify_rep_set(&rep, margin, tol)?;
            report.echo("archive", dir.display());
            report.echo("tol", format!("{tol:e}"));
            emit(&out, Format::Kv, &report.to_kv_text(), None)?;
            Ok(report.passed)
        }
        Command::Casimir(a) => {
            check_tol(a.tol)?;
            let rep = load_rep(&a.dir)?;
            let values = measure_casimirs(&rep, &a.orders)?;
            let passed = values.iter().all(|v| casimir_passes(&rep.case, v, a.tol));
            let mut report = Report::new(
                "casimir",
                values.iter().filter_map(|v| v.rel_err()).fold(0.0, f64::max),
                a.tol,
                "largest relative error",
            );
            report.echo_case(&rep.case);
            report.echo("tol", format!("{:e}", a.tol));
            for v in &values {
                report.detail(format!("C{}.measured", v.order), format!("{:?}", v.measured.re));
                report.detail(format!("C{}.spread", v.order), format!("{:e}", v.spread));
                match v.closed_form {
                    Some(c) => report.detail(format!("C{}.closed_form", v.order), format!("{c:?}")),
                    None => report.detail(format!("C{}.closed_form", v.order), "none"),
                }
                if !casimir_passes(&rep.case, v, a.tol) {
                    report.violation(format!("C{} fails", v.order));
                }
            }
            emit(&a.out, Format::Csv, &casimir_csv(&values), Some(&report.to_kv_text()))?;
            Ok(passed)
        }
        Command::Boost(a) => {
            let k = constants(a.constants.c, a.constants.b)?;
            let boost = BoostParams::new(a.beta, a.gamma, k);
            let p = PhaseSpacePoint::from_slice(&a.point)?;
            let q = boost_finite(&boost, &p);
            let (before, after) = (invariant_forms(&p, &k).zeta2, invariant_forms(&q, &k).zeta2);
            let drift = (after - before).abs() / before.abs().max(1.0);
            let mut report = Report::new("boost", drift, 1e-10, "zeta2");
            report.echo("beta", fmt_slice(&a.beta));
            report.echo("gamma", fmt_slice(&a.gamma));
            report.echo("b", format!("{:?}", k.b));
            report.echo("c", format!("{:?}", k.c));
            report.echo("point", fmt_slice(&a.point));
            report.detail("rho", format!("{:?}", boost.rho()));
            report.detail("image", fmt_slice(q.to_vector().as_slice()));
            report.detail("zeta2_before", format!("{before:?}"));
            report.detail("zeta2_after", format!("{after:?}"));
            let rows = boost_row(boost.rho(), q, k);
            emit(&a.out, Format::Kv, &report.to_kv_text(), Some(&rows)).map(|_| report.passed)
        }
        Command::Contract(ContractCmd::Sweep { beta, gamma, point, sweep, out }) => {
            let p = PhaseSpacePoint::from_slice(&point)?;
            let params = sweep_params(sweep.lo, sweep.hi, sweep.steps);
            let rows = contraction_sweep(beta, gamma, &p, &params);
            let dev = limit_deviations(beta, gamma, &p, &params);
            let slope = if params.len() > 1 { log_log_slope(&params, &dev) } else { f64::NAN };
            let mut report = Report::new("contract_sweep", (slope + 2.0).abs(), 0.1, "|slope + 2|");
            report.echo("beta", fmt_slice(&beta));
            report.echo("gamma", fmt_slice(&gamma));
            report.echo("point", fmt_slice(&point));
            report.echo("sweep", format!("{:?}..{:?}:{}", sweep.lo, sweep.hi, sweep.steps));
            for (s, d) in params.iter().zip(&dev) {
                report.detail(format!("deviation.{s:?}"), format!("{d:e}"));
            }
            report.detail("slope", format!("{slope:?}"));
            let csv = sweep_csv(&rows);
            match out.format.unwrap_or(Format::Csv) {
                Format::Csv => emit(&out, Format::Csv, &csv, None).map(|_| true),
                Format::Kv => emit(&out, Format::Kv, &report.to_kv_text(), None).map(|_| report.passed),
            }
        }
    }
}

fn boost_row(rho: f64, q: PhaseSpacePoint, k: PhysicalConstants) -> String {
    let inv = invariant_forms(&q, &k);
    sweep_csv(&[canrel::transforms::SweepRow {
        param: rho,
        point: q,
        s2: inv.s2,
        zeta2: inv.zeta2,
    }])
}

fn fmt_slice(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

fn check_tol(tol: f64) -> Result<(), Error> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn constants(c: f64, b: f64) -> Result<PhysicalConstants, Error> {
    PhysicalConstants::new(c, b, 1.0)
}

fn build_case(b: &BuildArgs) -> Result<RepCase, Error> {
    let default_margin = |lim: u32| b.margin.unwrap_or(2.min(lim as usize));
    match b.case {
        CaseArg::Timelike => {
            if b.jmax.is_some() {
                return Err(Error::Usage("--jmax applies to --case null".into()));
            }
            let nmax = b.nmax.ok_or_else(|| Error::Usage("--case timelike needs --nmax".into()))?;
            Ok(RepCase::Timelike {
                labels: RepLabels::new(b.kappa0, b.kappa1, b.kappa2, b.nu2)?,
                trunc: TruncationPolicy::new(nmax, b.kmax, default_margin(nmax.min(b.kmax)))?,
            })
        }
        CaseArg::Null => {
            if b.nmax.is_some() || b.nu2 != 0 {
                return Err(Error::Usage("--nmax and --nu2 apply to --case timelike".into()));
            }
            let jmax = b.jmax.ok_or_else(|| Error::Usage("--case null needs --jmax".into()))?;
            Ok(RepCase::Null {
                labels: NullRepLabels::new(b.kappa0, b.kappa1, b.kappa2)?,
                trunc: NullTruncation::new(jmax, b.kmax, default_margin(jmax.min(b.kmax)))?,
            })
        }
    }
}

/// Write the primary text (`csv`) or the kv report, to `--out` or stdout.
/// `alt` is the other format when a command has both.
fn emit(out: &Output, default: Format, primary: &str, alt: Option<&str>) -> Result<(), Error> {
    let format = out.format.unwrap_or(default);
    let text = match (format == default, alt) {
        (true, _) | (false, None) => primary,
        (false, Some(a)) => a,
    };
    match &out.out {
        Some(path) => write_file(Path::new(path), text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
