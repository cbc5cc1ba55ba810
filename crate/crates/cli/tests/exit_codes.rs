use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn canrel(args: &[&str], cwd: &Path) -> Output {
    canrel_env(args, cwd, &[])
}

fn canrel_env(args: &[&str], cwd: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_canrel"));
    cmd.args(args).current_dir(cwd);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TRIVIAL: [&str; 16] = [
    "rep", "build", "--case", "timelike", "--kappa0", "1", "--kappa1", "0", "--kappa2", "0", "--nu2", "0", "--nmax",
    "6", "--kmax", "6",
];

fn build(dir: &Path, out: &str, env: &[(&str, &str)]) {
    let mut args = TRIVIAL.to_vec();
    args.extend(["--out", out]);
    let o = canrel_env(&args, dir, env);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

fn archive_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    for sub in ["", "complex", "named"] {
        let mut entries: Vec<_> = fs::read_dir(dir.join(sub))
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.is_file())
            .collect();
        entries.sort();
        for p in entries {
            out.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
        }
    }
    out
}

#[test]
fn algebra_check_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = canrel(&["algebra", "check", "--basis", "real"], tmp.path());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("status = pass"));
}

#[test]
fn usage_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    for args in [
        vec!["algebra", "check", "--bogus"],
        vec!["nonsense"],
        vec!["algebra", "check", "--basis", "imaginary"],
        vec!["boost", "--beta", "1,2", "--point", "1,0,0,0,0,0,0,0"],
        vec!["contract", "sweep", "--point", "1,0,0,0,0,0,0,0", "--sweep", "5..2:3"],
        vec!["rep", "build", "--case", "timelike", "--kappa0", "-1", "--nmax", "2", "--kmax", "2", "--out", "r"],
        vec!["rep", "verify", "missing"],
        vec!["casimir", "missing"],
    ] {
        let o = canrel(&args, tmp.path());
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = canrel(&["--frobnicate"], tmp.path());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn build_verify_casimir_round() {
    let tmp = tempfile::tempdir().unwrap();
    build(tmp.path(), "rep", &[]);
    let o = canrel(&["rep", "verify", "rep", "--margin", "2"], tmp.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    let residual: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("max_residual = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-9);

    let o = canrel(&["casimir", "rep", "--orders", "0,1,2,3"], tmp.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("order,measured_re,measured_im,closed_form,abs_err,spread"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    // Labels (1, 0, 0, 0): C0 = 1, C1 = C2 = C3 = 0.
    for (row, want) in rows.iter().zip([1.0, 0.0, 0.0, 0.0]) {
        assert!((row[1] - want).abs() < 1e-8, "{row:?}");
    }
}

#[test]
fn casimir_needs_margin() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = TRIVIAL.to_vec();
    args[13] = "2";
    args[15] = "2";
    args.extend(["--out", "small"]);
    assert_eq!(code(&canrel(&args, tmp.path())), 0);
    let o = canrel(&["casimir", "small", "--orders", "3"], tmp.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("raise the truncation"));
}

#[test]
fn failed_closure_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = TRIVIAL.to_vec();
    args[7] = "1";
    args[11] = "1";
    args.extend(["--out", "rep"]);
    assert_eq!(code(&canrel(&args, tmp.path())), 0);
    let o = canrel(&["rep", "verify", "rep"], tmp.path());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("status = fail"));
}

#[test]
fn archives_are_deterministic_across_threads() {
    let tmp = tempfile::tempdir().unwrap();
    build(tmp.path(), "one", &[("RAYON_NUM_THREADS", "1")]);
    build(tmp.path(), "four", &[("RAYON_NUM_THREADS", "4")]);
    build(tmp.path(), "again", &[]);
    let one = archive_files(&tmp.path().join("one"));
    assert_eq!(one, archive_files(&tmp.path().join("four")));
    assert_eq!(one, archive_files(&tmp.path().join("again")));
    assert!(one.len() > 25);
}

#[test]
fn null_build_and_verify_run() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "rep", "build", "--case", "null", "--kappa0", "1", "--kappa1", "1", "--kappa2", "0", "--jmax", "6", "--kmax",
        "6", "--out", "null",
    ];
    assert_eq!(code(&canrel(&args, tmp.path())), 0);
    let o = canrel(&["rep", "verify", "null"], tmp.path());
    assert!(matches!(code(&o), 0 | 1));
    assert!(stdout(&o).contains("report = null_closure"));
    let o = canrel(&["casimir", "null", "--orders", "0,1"], tmp.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn boost_and_sweep_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let o = canrel(&["boost", "--beta", "0.5,0,0", "--point", "1,0,0,0,0,0,0,0", "--format", "csv"], tmp.path());
    assert_eq!(code(&o), 0);
    let row: Vec<f64> = stdout(&o).lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[1] - 0.5f64.cosh()).abs() < 1e-15 && (row[3] - 0.5f64.sinh()).abs() < 1e-15);

    let o = canrel(
        &["contract", "sweep", "--beta", "0.3,0,0", "--point", "1,0,0,0,0,0,0,0", "--sweep", "2..5:7", "--out", "s.csv"],
        tmp.path(),
    );
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(tmp.path().join("s.csv")).unwrap();
    let params: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(params.len(), 7);
    assert!(params.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn algebra_table_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let o = canrel(&["algebra", "table", "--basis", "contracted"], tmp.path());
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("g1,g2,g3,re,im,sqrt2_pow\n"));
    // Canonical order puts Q before P: [Q_1, P_1] = -i I.
    assert!(csv.contains("Q_1,P_1,I,0,-1,0\n"), "{csv}");
}
