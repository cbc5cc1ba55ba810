//! Text archives of representations and CSV/kv exports.
//!
//! An archive directory holds
//!
//! * `manifest`: `key = value` lines with the case, labels, truncation and
//!   `basis_order_version`;
//! * `basis`: one state per line followed by its leak distance;
//! * `complex/<generator>.mtx` and `named/<generator>.mtx`: one matrix each,
//!   a `# dim=<n> generator=<name>` header then `row col re im` lines.
//!
//! Floats are written in shortest round-trip form, so reloading is
//! bit-exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::algebra::{BasisKind, GeneratorId, StructureTable};
use crate::error::Error;
use crate::rep::{
    BasisState, NullBasisState, NullRepLabels, NullTruncation, RepBasis, RepCase, RepLabels, RepSet,
    TruncationPolicy, BASIS_ORDER_VERSION,
};
use crate::report::TOOL_VERSION;
use crate::sparse::SparseOperator;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    fs::write(path, text).map_err(io_err(path))
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// `key = value` lines.
pub fn kv_text(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

pub fn parse_kv(path: &Path, text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once(" = ").ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg: format!("expected 'key = value', got '{line}'"),
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn matrix_text(name: &str, op: &SparseOperator) -> String {
    let mut s = format!("# dim={} generator={}\n", op.dim(), name);
    for (r, c, v) in op.entries() {
        s.push_str(&format!("{r} {c} {:?} {:?}\n", v.re, v.im));
    }
    s
}

pub fn parse_matrix(path: &Path, text: &str) -> Result<(String, SparseOperator), Error> {
    let bad = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    let rest = header
        .strip_prefix("# dim=")
        .ok_or_else(|| bad(1, format!("bad header '{header}'")))?;
    let (dim, name) = rest
        .split_once(" generator=")
        .ok_or_else(|| bad(1, format!("bad header '{header}'")))?;
    let dim: usize = dim.parse().map_err(|_| bad(1, format!("bad dimension '{dim}'")))?;
    let mut triplets = Vec::new();
    for (n, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(bad(n + 1, format!("expected 'row col re im', got '{line}'")));
        }
        let idx = |s: &str| -> Result<usize, Error> {
            let v: usize = s.parse().map_err(|_| bad(n + 1, format!("bad index '{s}'")))?;
            if v >= dim {
                return Err(bad(n + 1, format!("index {v} out of range for dim {dim}")));
            }
            Ok(v)
        };
        let num = |s: &str| -> Result<f64, Error> { s.parse().map_err(|_| bad(n + 1, format!("bad number '{s}'"))) };
        triplets.push((idx(f[0])?, idx(f[1])?, Complex64::new(num(f[2])?, num(f[3])?)));
    }
    Ok((name.to_string(), SparseOperator::from_triplets(dim, triplets)?))
}

fn manifest_pairs(rep: &RepSet) -> Vec<(String, String)> {
    let mut pairs = vec![
        ("basis_order_version".to_string(), BASIS_ORDER_VERSION.to_string()),
        ("tool_version".into(), TOOL_VERSION.into()),
        ("case".into(), rep.case.name().into()),
        ("dim".into(), rep.dim().to_string()),
    ];
    pairs.extend(rep.case.config_pairs().into_iter().map(|(k, v)| (k.to_string(), v)));
    pairs
}

fn basis_text(rep: &RepSet) -> String {
    let dist = rep.leak_distances();
    let mut s = String::new();
    match &rep.basis {
        RepBasis::Timelike(states) => {
            s.push_str("# twice_m j n k leak_distance\n");
            for (st, d) in states.iter().zip(dist) {
                s.push_str(&format!("{} {} {} {} {}\n", st.twice_m, st.j, st.n, st.k, d));
            }
        }
        RepBasis::Null(states) => {
            s.push_str("# twice_m j k leak_distance\n");
            for (st, d) in states.iter().zip(dist) {
                s.push_str(&format!("{} {} {} {}\n", st.twice_m, st.j, st.k, d));
            }
        }
    }
    s
}

/// Write `rep` as a text archive under `dir`.
pub fn save_rep(rep: &RepSet, dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_file(&dir.join("manifest"), &kv_text(&manifest_pairs(rep)))?;
    write_file(&dir.join("basis"), &basis_text(rep))?;
    for (g, op) in &rep.operators {
        let name = g.to_string();
        write_file(&dir.join("complex").join(format!("{name}.mtx")), &matrix_text(&name, op))?;
    }
    for (name, op) in &rep.named {
        write_file(&dir.join("named").join(format!("{name}.mtx")), &matrix_text(name, op))?;
    }
    Ok(())
}

fn get<'a>(m: &'a BTreeMap<String, String>, path: &Path, key: &str) -> Result<&'a str, Error> {
    m.get(key).map(String::as_str).ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        msg: format!("missing key '{key}'"),
    })
}

fn get_num<T: std::str::FromStr>(m: &BTreeMap<String, String>, path: &Path, key: &str) -> Result<T, Error> {
    let v = get(m, path, key)?;
    v.parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        msg: format!("bad value '{v}' for '{key}'"),
    })
}

fn case_from_manifest(m: &BTreeMap<String, String>, path: &Path) -> Result<RepCase, Error> {
    let kappa0: f64 = get_num(m, path, "kappa0")?;
    let kappa1: u32 = get_num(m, path, "kappa1")?;
    let kappa2: i32 = get_num(m, path, "kappa2")?;
    let kmax: u32 = get_num(m, path, "kmax")?;
    let margin: usize = get_num(m, path, "margin")?;
    match get(m, path, "case")? {
        "timelike" => Ok(RepCase::Timelike {
            labels: RepLabels::new(kappa0, kappa1, kappa2, get_num(m, path, "nu2")?)?,
            trunc: TruncationPolicy::new(get_num(m, path, "nmax")?, kmax, margin)?,
        }),
        "null" => Ok(RepCase::Null {
            labels: NullRepLabels::new(kappa0, kappa1, kappa2)?,
            trunc: NullTruncation::new(get_num(m, path, "jmax")?, kmax, margin)?,
        }),
        other => Err(Error::ManifestMismatch {
            path: path.to_path_buf(),
            key: "case".into(),
            found: other.into(),
            expected: "timelike or null".into(),
        }),
    }
}

fn parse_basis(path: &Path, text: &str, timelike: bool) -> Result<(RepBasis, Vec<u32>), Error> {
    let width = if timelike { 5 } else { 4 };
    let mut tl = Vec::new();
    let mut nl = Vec::new();
    let mut dist = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            msg,
        };
        let f: Vec<i64> = line
            .split_whitespace()
            .map(|s| s.parse::<i64>().map_err(|_| bad(format!("bad integer '{s}'"))))
            .collect::<Result<_, _>>()?;
        if f.len() != width {
            return Err(bad(format!("expected {width} fields, got {}", f.len())));
        }
        let nonneg = |v: i64| u32::try_from(v).map_err(|_| bad(format!("negative or oversized value {v}")));
        if timelike {
            tl.push(BasisState::new(f[0] as i32, nonneg(f[1])?, nonneg(f[2])?, nonneg(f[3])?));
        } else {
            nl.push(NullBasisState::new(f[0] as i32, nonneg(f[1])?, f[2] as i32));
        }
        dist.push(nonneg(f[width - 1])?);
    }
    let basis = if timelike { RepBasis::Timelike(tl) } else { RepBasis::Null(nl) };
    Ok((basis, dist))
}

fn load_dir(dir: &Path, mut f: impl FnMut(&Path) -> Result<(), Error>) -> Result<(), Error> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .map(|e| e.map(|e| e.path()).map_err(io_err(dir)))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for p in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "mtx")) {
        f(p)?;
    }
    Ok(())
}

/// Read an archive written by [`save_rep`]. Nothing is returned unless the
/// whole archive parses and matches this build's basis order.
pub fn load_rep(dir: &Path) -> Result<RepSet, Error> {
    let manifest_path = dir.join("manifest");
    let m = parse_kv(&manifest_path, &read_file(&manifest_path)?)?;
    let version = get(&m, &manifest_path, "basis_order_version")?;
    if version != BASIS_ORDER_VERSION.to_string() {
        return Err(Error::ManifestMismatch {
            path: manifest_path,
            key: "basis_order_version".into(),
            found: version.into(),
            expected: BASIS_ORDER_VERSION.to_string(),
        });
    }
    let case = case_from_manifest(&m, &manifest_path)?;
    let dim: usize = get_num(&m, &manifest_path, "dim")?;
    let basis_path = dir.join("basis");
    let (basis, dist) = parse_basis(
        &basis_path,
        &read_file(&basis_path)?,
        matches!(case, RepCase::Timelike { .. }),
    )?;
    if basis.len() != dim {
        return Err(Error::DimensionMismatch {
            left: basis.len(),
            right: dim,
        });
    }
    let check_dim = |op: &SparseOperator| {
        if op.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: op.dim(), right: dim })
        }
    };
    let mut operators = BTreeMap::new();
    load_dir(&dir.join("complex"), |p| {
        let (name, op) = parse_matrix(p, &read_file(p)?)?;
        check_dim(&op)?;
        let g: GeneratorId = name.parse()?;
        if !BasisKind::Complex.contains(&g) {
            return Err(Error::BasisMismatch {
                generator: name,
                basis: BasisKind::Complex.to_string(),
            });
        }
        operators.insert(g, op);
        Ok(())
    })?;
    if let Some(g) = BasisKind::Complex.generators().into_iter().find(|g| !operators.contains_key(g)) {
        return Err(Error::MissingGenerator(g.to_string()));
    }
    let mut named = BTreeMap::new();
    load_dir(&dir.join("named"), |p| {
        let (name, op) = parse_matrix(p, &read_file(p)?)?;
        check_dim(&op)?;
        named.insert(name, op);
        Ok(())
    })?;
    Ok(RepSet::from_parts(case, basis, operators, named, dist))
}

/// `g1,g2,g3,re,im,sqrt2_pow`: one row per nonzero term of `[g1, g2]` with
/// `g1 < g2` in canonical order.
pub fn algebra_csv(table: &StructureTable) -> String {
    let kind = table.basis_kind;
    let mut s = String::from("g1,g2,g3,re,im,sqrt2_pow\n");
    let gens = table.generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            for (g, c) in table.entry(x, y).iter() {
                for (pow, v) in c.components() {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        kind.label(x),
                        kind.label(y),
                        kind.label(g),
                        v.re,
                        v.im,
                        pow
                    ));
                }
            }
        }
    }
    s
}
