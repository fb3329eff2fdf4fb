use std::fmt::{Debug, Display};

use rug::Rational;

use super::complex::{tolerance, Complex};

/// Field element used as a matrix entry.
///
/// Two backends exist: exact [`Rational`] (GMP) and [`Complex`] with a fixed binary
/// precision. The associated `Context` carries whatever is needed to build constants
/// (nothing for rationals, the precision for complex numbers).
pub trait Scalar: Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    type Context: Copy + Debug + PartialEq + Send + Sync;

    /// True when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    fn context(&self) -> Self::Context;
    fn zero(ctx: Self::Context) -> Self;
    fn one(ctx: Self::Context) -> Self;
    fn from_i64(v: i64, ctx: Self::Context) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for an exact zero.
    fn recip(&self) -> Option<Self>;
    fn div_i64(&self, d: i64) -> Self;

    fn is_zero(&self) -> bool;
    /// Approximate modulus, for pivot choice and relative thresholds.
    fn magnitude(&self) -> f64;
    /// Relative threshold below which a value counts as zero (0 for exact backends).
    fn tolerance(ctx: Self::Context) -> f64;

    /// Whether `self` is zero up to the backend tolerance relative to `scale`.
    fn is_negligible(&self, scale: f64) -> bool {
        self.is_zero() || (!Self::EXACT && self.magnitude() <= Self::tolerance(self.context()) * scale)
    }

    fn to_complex(&self, prec: u32) -> Complex;
}

impl Scalar for Rational {
    type Context = ();
    const EXACT: bool = true;

    fn context(&self) -> Self::Context {}

    fn zero(_: ()) -> Self {
        Rational::new()
    }

    fn one(_: ()) -> Self {
        Rational::from(1)
    }

    fn from_i64(v: i64, _: ()) -> Self {
        Rational::from(v)
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }

    fn neg(&self) -> Self {
        Rational::from(-self)
    }

    fn recip(&self) -> Option<Self> {
        if self.cmp0().is_eq() {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }

    fn div_i64(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self / Rational::from(d)
    }

    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    fn tolerance(_: ()) -> f64 {
        0.0
    }

    fn to_complex(&self, prec: u32) -> Complex {
        Complex::from_rational(prec, self)
    }
}

impl Scalar for Complex {
    type Context = u32;
    const EXACT: bool = false;

    fn context(&self) -> u32 {
        self.prec()
    }

    fn zero(prec: u32) -> Self {
        Complex::zero(prec)
    }

    fn one(prec: u32) -> Self {
        Complex::one(prec)
    }

    fn from_i64(v: i64, prec: u32) -> Self {
        Complex::from_i64(prec, v)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn recip(&self) -> Option<Self> {
        Complex::recip(self)
    }

    fn div_i64(&self, d: i64) -> Self {
        Complex::div_i64(self, d)
    }

    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }

    fn magnitude(&self) -> f64 {
        self.norm_f64()
    }

    fn tolerance(prec: u32) -> f64 {
        tolerance(prec)
    }

    fn to_complex(&self, prec: u32) -> Complex {
        self.with_prec(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let a = Rational::from((6, -4));
        assert_eq!(a.to_string(), "-3/2");
        let b = Scalar::mul(&a, &Rational::from((2, 3)));
        assert_eq!(b, Rational::from(-1));
        assert!(b.denom().cmp0().is_gt());
        assert_eq!(Scalar::recip(&Rational::zero(())), None);
    }

    #[test]
    fn complex_negligible_is_relative() {
        let tiny = Complex::from_f64(256, 1e-50, 0.0);
        assert!(tiny.is_negligible(1.0));
        assert!(!tiny.is_negligible(1e-40));
        assert!(!Rational::from((1, 1_000_000_000)).is_negligible(1e30));
    }
}
