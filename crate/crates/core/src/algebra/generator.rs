//! Generator labels for the four bases of the CR(1,3) algebra.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Generator family. Declaration order is the canonical serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Z,
    Aplus,
    Aminus,
    I,
    L,
    M,
    X,
    Y,
    J,
    K,
    N,
    R0,
    G,
    F,
}

impl Family {
    pub fn arity(self) -> usize {
        match self {
            Family::Z | Family::L | Family::M => 2,
            Family::I | Family::R0 => 0,
            _ => 1,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::Z => "Z",
            Family::Aplus => "A+",
            Family::Aminus => "A-",
            Family::I => "I",
            Family::L => "L",
            Family::M => "M",
            Family::X => "X",
            Family::Y => "Y",
            Family::J => "J",
            Family::K => "K",
            Family::N => "N",
            Family::R0 => "R0",
            Family::G => "G",
            Family::F => "F",
        }
    }

    const ALL: [Family; 14] = [
        Family::Z,
        Family::Aplus,
        Family::Aminus,
        Family::I,
        Family::L,
        Family::M,
        Family::X,
        Family::Y,
        Family::J,
        Family::K,
        Family::N,
        Family::R0,
        Family::G,
        Family::F,
    ];
}

/// A canonical generator label.
///
/// `L` is stored with its indices strictly ascending and `M` with its indices
/// non-decreasing; use [`AlgebraElement::l`](super::AlgebraElement::l) for the
/// signed antisymmetric lookup of arbitrary index pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    family: Family,
    idx: [u8; 2],
}

impl GeneratorId {
    fn raw(family: Family, a: u8, b: u8) -> Self {
        Self { family, idx: [a, b] }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn indices(&self) -> &[u8] {
        &self.idx[..self.family.arity()]
    }

    pub fn index(&self, pos: usize) -> usize {
        self.indices()[pos] as usize
    }

    pub fn z(a: usize, b: usize) -> Self {
        assert!(a < 4 && b < 4);
        Self::raw(Family::Z, a as u8, b as u8)
    }

    pub fn a_plus(a: usize) -> Self {
        assert!(a < 4);
        Self::raw(Family::Aplus, a as u8, 0)
    }

    pub fn a_minus(a: usize) -> Self {
        assert!(a < 4);
        Self::raw(Family::Aminus, a as u8, 0)
    }

    pub fn a(sign: Sign, a: usize) -> Self {
        match sign {
            Sign::Plus => Self::a_plus(a),
            Sign::Minus => Self::a_minus(a),
        }
    }

    pub fn central() -> Self {
        Self::raw(Family::I, 0, 0)
    }

    /// Canonical `L_ab` with `a < b`.
    pub fn l(a: usize, b: usize) -> Self {
        assert!(a < b && b < 4, "L_ab requires a < b");
        Self::raw(Family::L, a as u8, b as u8)
    }

    /// Canonical `M_ab`; the indices are sorted.
    pub fn m(a: usize, b: usize) -> Self {
        assert!(a < 4 && b < 4);
        Self::raw(Family::M, a.min(b) as u8, a.max(b) as u8)
    }

    pub fn x(a: usize) -> Self {
        assert!(a < 4);
        Self::raw(Family::X, a as u8, 0)
    }

    pub fn y(a: usize) -> Self {
        assert!(a < 4);
        Self::raw(Family::Y, a as u8, 0)
    }

    pub fn j(i: usize) -> Self {
        Self::spatial(Family::J, i)
    }

    pub fn k(i: usize) -> Self {
        Self::spatial(Family::K, i)
    }

    pub fn n(i: usize) -> Self {
        Self::spatial(Family::N, i)
    }

    pub fn r0() -> Self {
        Self::raw(Family::R0, 0, 0)
    }

    pub fn g(i: usize) -> Self {
        Self::spatial(Family::G, i)
    }

    pub fn f(i: usize) -> Self {
        Self::spatial(Family::F, i)
    }

    fn spatial(family: Family, i: usize) -> Self {
        assert!((1..=3).contains(&i), "spatial index must be 1..=3");
        Self::raw(family, i as u8, 0)
    }

    /// Label used in the physical and contracted bases, where the Heisenberg
    /// generators read as time, energy, position and momentum.
    pub fn physical_label(&self) -> String {
        match (self.family, self.idx[0]) {
            (Family::X, 0) => "T".into(),
            (Family::Y, 0) => "E".into(),
            (Family::X, i) => format!("Q_{i}"),
            (Family::Y, i) => format!("P_{i}"),
            _ => self.to_string(),
        }
    }
}

/// Raising/lowering sign of a Heisenberg generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.family.prefix();
        match self.family.arity() {
            0 => write!(f, "{p}"),
            1 => write!(f, "{p}_{}", self.idx[0]),
            _ => write!(f, "{p}_{}{}", self.idx[0], self.idx[1]),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let (head, tail) = match s.split_once('_') {
            Some((h, t)) => (h, t),
            None => (s, ""),
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.prefix() == head)
            .ok_or_else(bad)?;
        let digits: Vec<usize> = tail
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        if digits.len() != family.arity() || digits.iter().any(|&d| d > 3) {
            return Err(bad());
        }
        let id = match family {
            Family::Z => Self::z(digits[0], digits[1]),
            Family::Aplus => Self::a_plus(digits[0]),
            Family::Aminus => Self::a_minus(digits[0]),
            Family::I => Self::central(),
            Family::L if digits[0] < digits[1] => Self::l(digits[0], digits[1]),
            Family::L => return Err(bad()),
            Family::M if digits[0] <= digits[1] => Self::m(digits[0], digits[1]),
            Family::M => return Err(bad()),
            Family::X => Self::x(digits[0]),
            Family::Y => Self::y(digits[0]),
            Family::R0 => Self::r0(),
            _ if digits[0] == 0 => return Err(bad()),
            Family::J => Self::j(digits[0]),
            Family::K => Self::k(digits[0]),
            Family::N => Self::n(digits[0]),
            Family::G => Self::g(digits[0]),
            Family::F => Self::f(digits[0]),
        };
        Ok(id)
    }
}
