//! Exact coefficients: Gaussian rationals and their quadratic extension by √2.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A number `re + i·im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::new(ratio(n, 1), BigRational::zero())
    }

    /// `n/d` on the real axis.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(ratio(n, d), BigRational::zero())
    }

    /// `(re_n + i·im_n)/d`.
    pub fn complex(re_n: i64, im_n: i64, d: i64) -> Self {
        Self::new(ratio(re_n, d), ratio(im_n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im, false),
            (false, false) => {
                write!(f, "({}", self.re)?;
                write_imag(f, &self.im, true)?;
                write!(f, ")")
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational, with_sign: bool) -> fmt::Result {
    let sign = if im.is_negative() {
        "-"
    } else if with_sign {
        "+"
    } else {
        ""
    };
    let mag = im.abs();
    if mag.is_one() {
        write!(f, "{sign}i")
    } else {
        write!(f, "{sign}{mag}i")
    }
}

/// An element `rat + sqrt2·√2` of Q(i)(√2).
///
/// The √2 component is only ever populated by the complex/real basis change
/// `A± = (X ± iY)/√2`; structure constants live entirely in `rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coef {
    pub rat: GaussianRational,
    pub sqrt2: GaussianRational,
}

impl Coef {
    pub fn new(rat: GaussianRational, sqrt2: GaussianRational) -> Self {
        Self { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::one().into()
    }

    pub fn i() -> Self {
        GaussianRational::i().into()
    }

    pub fn int(n: i64) -> Self {
        GaussianRational::int(n).into()
    }

    pub fn frac(n: i64, d: i64) -> Self {
        GaussianRational::frac(n, d).into()
    }

    /// `(re_n + i·im_n)/d`.
    pub fn complex(re_n: i64, im_n: i64, d: i64) -> Self {
        GaussianRational::complex(re_n, im_n, d).into()
    }

    /// `q·√2^pow` for `pow` of either parity.
    pub fn with_sqrt2_pow(q: GaussianRational, pow: i32) -> Self {
        // √2^pow = 2^(pow div 2) · √2^(pow mod 2), floor division.
        let half = pow.div_euclid(2);
        let odd = pow.rem_euclid(2) == 1;
        let two = if half >= 0 {
            GaussianRational::new(
                BigRational::from_integer(BigInt::from(2).pow(half as u32)),
                BigRational::zero(),
            )
        } else {
            GaussianRational::new(
                BigRational::new(BigInt::one(), BigInt::from(2).pow((-half) as u32)),
                BigRational::zero(),
            )
        };
        let scaled = &q * &two;
        if odd {
            Self::new(GaussianRational::zero(), scaled)
        } else {
            Self::new(scaled, GaussianRational::zero())
        }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::frac(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.rat.conj(), self.sqrt2.conj())
    }

    /// Division by a nonzero Gaussian rational.
    pub fn div_gaussian(&self, d: &GaussianRational) -> Option<Self> {
        let inv = d.inv()?;
        Some(Self::new(&self.rat * &inv, &self.sqrt2 * &inv))
    }

    pub fn scale(&self, g: &GaussianRational) -> Self {
        Self::new(&self.rat * g, &self.sqrt2 * g)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.rat.to_complex() + self.sqrt2.to_complex() * std::f64::consts::SQRT_2
    }

    /// Nonzero components as `(sqrt2_pow, value)` pairs, `sqrt2_pow ∈ {0, 1}`.
    pub fn components(&self) -> Vec<(i32, &GaussianRational)> {
        let mut out = Vec::new();
        if !self.rat.is_zero() {
            out.push((0, &self.rat));
        }
        if !self.sqrt2.is_zero() {
            out.push((1, &self.sqrt2));
        }
        out
    }
}

impl From<GaussianRational> for Coef {
    fn from(g: GaussianRational) -> Self {
        Self::new(g, GaussianRational::zero())
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, o: &Coef) -> Coef {
        Coef::new(&self.rat + &o.rat, &self.sqrt2 + &o.sqrt2)
    }
}

impl AddAssign<&Coef> for Coef {
    fn add_assign(&mut self, o: &Coef) {
        *self = &*self + o;
    }
}

impl Sub for &Coef {
    type Output = Coef;
    fn sub(self, o: &Coef) -> Coef {
        Coef::new(&self.rat - &o.rat, &self.sqrt2 - &o.sqrt2)
    }
}

impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, o: &Coef) -> Coef {
        let two = GaussianRational::int(2);
        let rat = &(&self.rat * &o.rat) + &(&two * &(&self.sqrt2 * &o.sqrt2));
        let sqrt2 = &(&self.rat * &o.sqrt2) + &(&self.sqrt2 * &o.rat);
        Coef::new(rat, sqrt2)
    }
}

impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef::new(-&self.rat, -&self.sqrt2)
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt2.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}·√2", self.sqrt2),
            (false, false) => write!(f, "({} + {}·√2)", self.rat, self.sqrt2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Coef::with_sqrt2_pow(GaussianRational::one(), 1);
        assert_eq!(&s * &s, Coef::int(2));
        let h = Coef::inv_sqrt2();
        assert_eq!(&h * &h, Coef::frac(1, 2));
        assert_eq!(Coef::with_sqrt2_pow(GaussianRational::one(), -1), h);
        assert_eq!(Coef::with_sqrt2_pow(GaussianRational::one(), -2), Coef::frac(1, 2));
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussianRational::complex(3, -4, 5);
        let w = &z * &z.inv().unwrap();
        assert_eq!(w, GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Coef::i().to_string(), "i");
        assert_eq!(Coef::complex(-1, 0, 2).to_string(), "-1/2");
        assert_eq!(Coef::complex(0, -1, 2).to_string(), "-1/2i");
        assert_eq!(Coef::inv_sqrt2().to_string(), "1/2·√2");
    }

    #[test]
    fn to_complex_matches() {
        let c = &Coef::inv_sqrt2() + &Coef::i();
        let z = c.to_complex();
        assert!((z.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(z.im, 1.0);
    }
}
