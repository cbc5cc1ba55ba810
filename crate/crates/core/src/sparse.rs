//! Row-compressed complex sparse operators over an enumerated basis.
//!
//! Every reduction walks rows in ordinal order and entries in column order, so
//! results do not depend on the number of threads.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Error;

type Row = Vec<(usize, Complex64)>;

/// Square complex matrix; each row keeps its nonzero entries sorted by column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<Row>,
}

fn check_dims(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

/// Sort by column and merge duplicates, dropping entries with `|v| <= tol`.
fn normalize(mut row: Row, tol: f64) -> Row {
    row.sort_by_key(|&(c, _)| c);
    let mut out: Row = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| v.norm() > tol);
    out
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, v: Complex64) -> Self {
        Self::diagonal(&vec![v; dim])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let rows = values
            .iter()
            .enumerate()
            .map(|(i, &v)| if v == Complex64::new(0.0, 0.0) { vec![] } else { vec![(i, v)] })
            .collect();
        Self {
            dim: values.len(),
            rows,
        }
    }

    /// Duplicate positions are summed; exact zeros are dropped.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut rows = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::InvalidState(format!(
                    "entry ({r}, {c}) outside dimension {dim}"
                )));
            }
            rows[r].push((c, v));
        }
        let rows = rows.into_iter().map(|r| normalize(r, 0.0)).collect();
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let row = &self.rows[r];
        match row.binary_search_by_key(&c, |&(cc, _)| cc) {
            Ok(i) => row[i].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Complex64)] {
        &self.rows[r]
    }

    /// Stored entries, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn adjoint(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.conj()));
        }
        // Entries arrive in increasing r for each c, so rows are already sorted.
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(c, v)| (c, v * s))
                    .filter(|(_, v)| v.norm() > 0.0)
                    .collect()
            })
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    /// `a·self + b·other`, with exact cancellations removed.
    pub fn axpby(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self, Error> {
        check_dims(self.dim, other.dim)?;
        let rows = self
            .rows
            .par_iter()
            .zip(other.rows.par_iter())
            .map(|(x, y)| {
                let mut out = Vec::with_capacity(x.len() + y.len());
                let (mut i, mut j) = (0, 0);
                while i < x.len() || j < y.len() {
                    let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
                    let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
                    let (c, v) = if take_x {
                        i += 1;
                        (x[i - 1].0, a * x[i - 1].1)
                    } else if take_y {
                        j += 1;
                        (y[j - 1].0, b * y[j - 1].1)
                    } else {
                        i += 1;
                        j += 1;
                        (x[i - 1].0, a * x[i - 1].1 + b * y[j - 1].1)
                    };
                    if v.norm() > 0.0 {
                        out.push((c, v));
                    }
                }
                out
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            rows,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.axpby(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// Induced ∞-norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, v)| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus among columns in `mask`.
    pub fn max_abs_on(&self, mask: &InteriorMask) -> f64 {
        self.entries()
            .filter(|&(_, c, _)| mask.contains(c))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Whether the stored entries coincide as numbers (`-0.0 == 0.0`).
    pub fn exact_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Whether the stored entries coincide bit for bit.
    pub fn bit_equal(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rows.iter().zip(&other.rows).all(|(x, y)| {
                x.len() == y.len()
                    && x.iter().zip(y).all(|(p, q)| {
                        p.0 == q.0
                            && p.1.re.to_bits() == q.1.re.to_bits()
                            && p.1.im.to_bits() == q.1.im.to_bits()
                    })
            })
    }
}

/// `a·b`, dropping entries with modulus `<= drop_tol`. With `drop_tol = 0` only
/// exact zeros are removed.
pub fn op_compose_with_tol(
    a: &SparseOperator,
    b: &SparseOperator,
    drop_tol: f64,
) -> Result<SparseOperator, Error> {
    check_dims(a.dim, b.dim)?;
    let rows = a
        .rows
        .par_iter()
        .map(|arow| {
            let mut acc: Row = Vec::new();
            for &(k, av) in arow {
                acc.extend(b.rows[k].iter().map(|&(c, bv)| (c, av * bv)));
            }
            normalize(acc, drop_tol)
        })
        .collect();
    Ok(SparseOperator { dim: a.dim, rows })
}

/// Matrix product `a·b`.
pub fn op_compose(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator, Error> {
    op_compose_with_tol(a, b, 0.0)
}

/// `a·b − b·a`.
pub fn op_commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator, Error> {
    op_compose(a, b)?.sub(&op_compose(b, a)?)
}

/// Basis ordinals on which an operator identity is expected to hold exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorMask {
    allowed: Vec<bool>,
    pub margin: usize,
}

impl InteriorMask {
    pub fn full(dim: usize) -> Self {
        Self {
            allowed: vec![true; dim],
            margin: 0,
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            allowed: vec![false; dim],
            margin: 0,
        }
    }

    pub fn from_flags(allowed: Vec<bool>, margin: usize) -> Self {
        Self { allowed, margin }
    }

    pub fn dim(&self) -> usize {
        self.allowed.len()
    }

    pub fn contains(&self, ordinal: usize) -> bool {
        self.allowed.get(ordinal).copied().unwrap_or(false)
    }

    pub fn count(&self) -> usize {
        self.allowed.iter().filter(|&&b| b).count()
    }

    pub fn ordinals(&self) -> impl Iterator<Item = usize> + '_ {
        self.allowed
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

/// Zero every column outside the mask.
pub fn restrict_interior(op: &SparseOperator, mask: &InteriorMask) -> SparseOperator {
    let rows = op
        .rows
        .iter()
        .map(|row| row.iter().copied().filter(|&(c, _)| mask.contains(c)).collect())
        .collect();
    SparseOperator { dim: op.dim, rows }
}

/// The scalar `λ` such that `op·e_s = λ·e_s` within `tol` for every masked
/// ordinal `s`, read off the first masked diagonal entry.
pub fn scalar_on_subspace(op: &SparseOperator, mask: &InteriorMask, tol: f64) -> Option<Complex64> {
    scalar_spread(op, mask).and_then(|(l, spread)| (spread <= tol).then_some(l))
}

/// `λ` from the first masked diagonal entry together with the largest
/// deviation `|(op − λ)e_s|∞` over masked `s`. `None` for an empty mask.
pub fn scalar_spread(op: &SparseOperator, mask: &InteriorMask) -> Option<(Complex64, f64)> {
    let first = mask.ordinals().next()?;
    let lambda = op.get(first, first);
    let mut diag_seen: BTreeMap<usize, ()> = BTreeMap::new();
    let mut spread: f64 = 0.0;
    for (r, c, v) in op.entries() {
        if !mask.contains(c) {
            continue;
        }
        let d = if r == c {
            diag_seen.insert(c, ());
            (v - lambda).norm()
        } else {
            v.norm()
        };
        spread = spread.max(d);
    }
    for s in mask.ordinals() {
        if !diag_seen.contains_key(&s) {
            spread = spread.max(lambda.norm());
        }
    }
    Some((lambda, spread))
}
