//! Finite linear combinations of generators with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::{Coef, GaussianRational};
use super::generator::GeneratorId;

/// `Σ c_g · g` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<GeneratorId, Coef>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::term(g, Coef::one())
    }

    pub fn term(g: GeneratorId, c: Coef) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &c);
        e
    }

    /// `L_ab` for arbitrary indices: `−L_ba` when `a > b`, zero when `a = b`.
    pub fn l(a: usize, b: usize) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Self::gen(GeneratorId::l(a, b)),
            std::cmp::Ordering::Greater => Self::term(GeneratorId::l(b, a), Coef::int(-1)),
            std::cmp::Ordering::Equal => Self::zero(),
        }
    }

    /// `M_ab` for arbitrary indices (symmetric).
    pub fn m(a: usize, b: usize) -> Self {
        Self::gen(GeneratorId::m(a, b))
    }

    pub fn add_term(&mut self, g: GeneratorId, c: &Coef) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Coef::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Coef) {
        for (g, v) in &other.terms {
            self.add_term(*g, &(c * v));
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Coef::one());
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Coef::int(-1));
        out
    }

    pub fn scale(&self, c: &Coef) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        self.scale(&c.clone().into())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coef::int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GeneratorId) -> Coef {
        self.terms.get(g).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Coef)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = &GeneratorId> {
        self.terms.keys()
    }

    /// Replace each generator by its image and extend linearly.
    pub fn map_linear<F>(&self, mut image: F) -> Self
    where
        F: FnMut(&GeneratorId) -> AlgebraElement,
    {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_scaled(&image(g), c);
        }
        out
    }

    /// Complex-conjugate every coefficient.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(*g, &c.conj());
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (g, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *c == Coef::one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{c}·{g}")?;
            }
        }
        Ok(())
    }
}
