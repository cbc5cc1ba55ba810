//! Explicit representations on truncated bases.
//!
//! A [`RepSet`] carries the matrices of the 25 complex-basis generators plus
//! the named generators of the little-group construction. Truncation makes
//! some ladder amplitudes leave the enumerated basis; such states are *leaky*.
//! A state is margin-`M` interior when every state within `M − 1` ladder steps
//! of it is non-leaky, which is exactly the condition for a product of `M`
//! generators to be computed without truncation error on it.

pub mod null;
pub mod timelike;

use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{
    convert_basis, structure_table, AlgebraElement, BasisKind, GeneratorId,
};
use crate::error::Error;
use crate::report::Report;
use crate::sparse::{op_commutator, InteriorMask, SparseOperator};

pub use null::{NullBasisState, NullRepLabels, NullTruncation};
pub use timelike::{BasisState, RepLabels, TruncationPolicy};

/// Version stamp of the basis enumeration order, recorded in archives.
pub const BASIS_ORDER_VERSION: u32 = 1;

/// Which construction a representation comes from, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum RepCase {
    Timelike {
        labels: RepLabels,
        trunc: TruncationPolicy,
    },
    Null {
        labels: NullRepLabels,
        trunc: NullTruncation,
    },
}

impl RepCase {
    pub fn name(&self) -> &'static str {
        match self {
            RepCase::Timelike { .. } => "timelike",
            RepCase::Null { .. } => "null",
        }
    }

    pub fn margin(&self) -> usize {
        match self {
            RepCase::Timelike { trunc, .. } => trunc.margin,
            RepCase::Null { trunc, .. } => trunc.margin,
        }
    }

    pub fn kappa0(&self) -> f64 {
        match self {
            RepCase::Timelike { labels, .. } => labels.kappa0,
            RepCase::Null { labels, .. } => labels.kappa0,
        }
    }

    /// Labels and truncation as `key, value` pairs; `kappa0` is written in
    /// shortest round-trip form.
    pub fn config_pairs(&self) -> Vec<(&'static str, String)> {
        match self {
            RepCase::Timelike { labels, trunc } => vec![
                ("kappa0", format!("{:?}", labels.kappa0)),
                ("kappa1", labels.kappa1.to_string()),
                ("kappa2", labels.kappa2.to_string()),
                ("nu2", labels.nu2.to_string()),
                ("nmax", trunc.n_max.to_string()),
                ("kmax", trunc.k_max.to_string()),
                ("margin", trunc.margin.to_string()),
            ],
            RepCase::Null { labels, trunc } => vec![
                ("kappa0", format!("{:?}", labels.kappa0)),
                ("kappa1", labels.kappa1.to_string()),
                ("kappa2", labels.kappa2.to_string()),
                ("jmax", trunc.j_max.to_string()),
                ("kmax", trunc.k_max.to_string()),
                ("margin", trunc.margin.to_string()),
            ],
        }
    }

    /// Build the representation this case describes.
    pub fn build(&self) -> Result<RepSet, Error> {
        match self {
            RepCase::Timelike { labels, trunc } => timelike::build_rep(labels, trunc),
            RepCase::Null { labels, trunc } => null::build_null_rep(labels, trunc),
        }
    }
}

/// Enumerated basis of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepBasis {
    Timelike(Vec<BasisState>),
    Null(Vec<NullBasisState>),
}

impl RepBasis {
    pub fn len(&self) -> usize {
        match self {
            RepBasis::Timelike(v) => v.len(),
            RepBasis::Null(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A truncated representation: basis, generator matrices and boundary data.
#[derive(Clone, Debug)]
pub struct RepSet {
    pub case: RepCase,
    pub basis: RepBasis,
    /// The 25 complex-basis generators.
    pub operators: BTreeMap<GeneratorId, SparseOperator>,
    /// Generators of the little-group construction (`T+`, `B1-`, `C2+`, ...).
    pub named: BTreeMap<String, SparseOperator>,
    leak_distance: Vec<u32>,
}

impl RepSet {
    pub(crate) fn new(
        case: RepCase,
        basis: RepBasis,
        operators: BTreeMap<GeneratorId, SparseOperator>,
        named: BTreeMap<String, SparseOperator>,
        leaky: &[bool],
    ) -> Self {
        let leak_distance = leak_distances(&named, leaky);
        Self {
            case,
            basis,
            operators,
            named,
            leak_distance,
        }
    }

    /// Reassemble a representation whose leak distances are already known.
    pub(crate) fn from_parts(
        case: RepCase,
        basis: RepBasis,
        operators: BTreeMap<GeneratorId, SparseOperator>,
        named: BTreeMap<String, SparseOperator>,
        leak_distance: Vec<u32>,
    ) -> Self {
        Self {
            case,
            basis,
            operators,
            named,
            leak_distance,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ladder steps from each state to the nearest leaky state
    /// (`u32::MAX` if none is reachable).
    pub fn leak_distances(&self) -> &[u32] {
        &self.leak_distance
    }

    /// States at least `margin` steps from every leaky state.
    pub fn interior(&self, margin: usize) -> InteriorMask {
        let flags = self
            .leak_distance
            .iter()
            .map(|&d| d as u64 >= margin as u64)
            .collect();
        InteriorMask::from_flags(flags, margin)
    }

    pub fn operator(&self, g: &GeneratorId) -> Result<&SparseOperator, Error> {
        self.operators
            .get(g)
            .ok_or_else(|| Error::MissingGenerator(g.to_string()))
    }

    pub fn named(&self, name: &str) -> Result<&SparseOperator, Error> {
        self.named
            .get(name)
            .ok_or_else(|| Error::MissingGenerator(name.to_string()))
    }

    /// `ρ(el)` for an element of the complex, real or physical basis.
    pub fn operator_of(&self, el: &AlgebraElement, basis: BasisKind) -> Result<SparseOperator, Error> {
        let complex = match basis {
            BasisKind::Complex => el.clone(),
            BasisKind::Real => convert_basis(el, BasisKind::Real, BasisKind::Complex)?,
            BasisKind::Physical => {
                let r = convert_basis(el, BasisKind::Physical, BasisKind::Real)?;
                convert_basis(&r, BasisKind::Real, BasisKind::Complex)?
            }
            BasisKind::ContractedNewtonian => {
                return Err(Error::UnsupportedConversion {
                    from: basis.to_string(),
                    to: "representation".into(),
                })
            }
        };
        self.combination(&complex)
    }

    fn combination(&self, el: &AlgebraElement) -> Result<SparseOperator, Error> {
        let mut out = SparseOperator::zeros(self.dim());
        for (g, c) in el.iter() {
            out = out.axpby(Complex64::new(1.0, 0.0), self.operator(g)?, c.to_complex())?;
        }
        Ok(out)
    }

    /// Look up a generator by name: a complex, real or physical generator
    /// label (`Z_01`, `L_23`, `K_1`, ...) or a named representation generator.
    pub fn build_operator(&self, name: &str) -> Result<SparseOperator, Error> {
        if let Some(op) = self.named.get(name) {
            return Ok(op.clone());
        }
        let g: GeneratorId = name.parse()?;
        for basis in [BasisKind::Complex, BasisKind::Real, BasisKind::Physical] {
            if basis.contains(&g) {
                return self.operator_of(&AlgebraElement::gen(g), basis);
            }
        }
        Err(Error::UnknownGenerator(name.to_string()))
    }
}

/// Multi-source breadth-first search from the leaky states along the
/// (undirected) ladder graph of the named generators.
fn leak_distances(named: &BTreeMap<String, SparseOperator>, leaky: &[bool]) -> Vec<u32> {
    let dim = leaky.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for op in named.values() {
        for (r, c, _) in op.entries() {
            if r != c {
                adj[r].push(c);
                adj[c].push(r);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut dist = vec![u32::MAX; dim];
    let mut queue = VecDeque::new();
    for (s, &l) in leaky.iter().enumerate() {
        if l {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &t in &adj[s] {
            if dist[t] == u32::MAX {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Column-wise assembly of one generator. `act(s)` gives the single target
/// of basis state `s` and its amplitude; a `None` target means the amplitude
/// leaves the basis, which marks `s` leaky when the amplitude is nonzero.
pub(crate) fn assemble<F>(dim: usize, leaky: &mut [bool], act: F) -> SparseOperator
where
    F: Fn(usize) -> Option<(Option<usize>, f64)>,
{
    let mut triplets = Vec::new();
    for s in 0..dim {
        if let Some((target, amp)) = act(s) {
            if amp == 0.0 {
                continue;
            }
            match target {
                Some(t) => triplets.push((t, s, Complex64::new(amp, 0.0))),
                None => leaky[s] = true,
            }
        }
    }
    SparseOperator::from_triplets(dim, triplets).expect("targets are in range")
}

/// `ρ` of a complex-basis element as an exact linear combination of named
/// operators, `Σ c · named[name]`.
pub(crate) fn combine(
    dim: usize,
    named: &BTreeMap<String, SparseOperator>,
    terms: &[(&str, Complex64)],
) -> SparseOperator {
    let mut out = SparseOperator::zeros(dim);
    for (name, c) in terms {
        out = out
            .axpby(Complex64::new(1.0, 0.0), &named[*name], *c)
            .expect("equal dimensions");
    }
    out
}

/// Residual of one bracket relation on the interior columns.
pub fn bracket_residual(
    rep: &RepSet,
    x: &AlgebraElement,
    y: &AlgebraElement,
    mask: &InteriorMask,
) -> Result<f64, Error> {
    let table = structure_table(BasisKind::Complex);
    let rx = rep.combination(x)?;
    let ry = rep.combination(y)?;
    let lhs = op_commutator(&rx, &ry)?;
    let rhs = rep.combination(&table.bracket(x, y)?)?;
    Ok(lhs.sub(&rhs)?.max_abs_on(mask))
}

/// Largest residual over a list of labelled complex-basis pairs, computed in
/// parallel and reduced in list order (the first maximum wins).
pub(crate) fn max_residual(
    rep: &RepSet,
    pairs: &[(String, AlgebraElement, AlgebraElement)],
    mask: &InteriorMask,
) -> Result<(f64, String), Error> {
    let residuals: Vec<Result<f64, Error>> = pairs
        .par_iter()
        .map(|(_, x, y)| bracket_residual(rep, x, y, mask))
        .collect();
    let mut worst = (0.0, String::from("none"));
    for ((name, _, _), r) in pairs.iter().zip(residuals) {
        let r = r?;
        if r > worst.0 {
            worst = (r, name.clone());
        }
    }
    Ok(worst)
}

/// Every unordered pair of complex-basis generators.
pub fn complex_generator_pairs() -> Vec<(String, AlgebraElement, AlgebraElement)> {
    let gens = BasisKind::Complex.generators();
    let mut out = Vec::new();
    for (n, x) in gens.iter().enumerate() {
        for y in &gens[n + 1..] {
            out.push((
                format!("[{x}, {y}]"),
                AlgebraElement::gen(*x),
                AlgebraElement::gen(*y),
            ));
        }
    }
    out
}

/// Closure check `[ρ(x), ρ(y)] = ρ([x, y])` over all complex generator pairs
/// on the margin interior.
pub fn verify_closure(rep: &RepSet, margin: usize, tol: f64) -> Result<Report, Error> {
    let mask = rep.interior(margin);
    let (max, worst) = max_residual(rep, &complex_generator_pairs(), &mask)?;
    let mut report = Report::new("closure", max, tol, worst);
    report.detail("interior_states", mask.count());
    report.detail("dim", rep.dim());
    report.echo_case(&rep.case);
    report.echo("interior_margin", margin);
    Ok(report)
}

/// Closure on the margin interior for either case, plus exact hermiticity.
pub fn verify_rep_set(rep: &RepSet, margin: usize, tol: f64) -> Result<Report, Error> {
    if margin < 2 {
        return Err(Error::Usage(format!("closure needs margin >= 2, got {margin}")));
    }
    let mut report = match rep.case {
        RepCase::Timelike { .. } => verify_closure(rep, margin, tol)?,
        RepCase::Null { .. } => null::verify_null_closure(rep, margin, tol)?,
    };
    if let Err(pair) = check_hermiticity(rep) {
        report.violation(format!("hermiticity: {pair}"));
    }
    Ok(report)
}

/// Exact hermiticity: `ρ(A_a^+) = ρ(A_a^−)†` and `ρ(Z_ab) = ρ(Z_ba)†` on every
/// stored entry. Returns the first offending pair.
pub fn check_hermiticity(rep: &RepSet) -> Result<(), String> {
    for a in 0..4 {
        let p = &rep.operators[&GeneratorId::a_plus(a)];
        let m = &rep.operators[&GeneratorId::a_minus(a)];
        if !p.exact_eq(&m.adjoint()) {
            return Err(format!("A+_{a} vs A-_{a}"));
        }
        for b in 0..4 {
            let x = &rep.operators[&GeneratorId::z(a, b)];
            let y = &rep.operators[&GeneratorId::z(b, a)];
            if !x.exact_eq(&y.adjoint()) {
                return Err(format!("Z_{a}{b} vs Z_{b}{a}"));
            }
        }
    }
    Ok(())
}

pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

