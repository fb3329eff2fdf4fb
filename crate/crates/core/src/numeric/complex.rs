//! Complex numbers with a configurable binary precision, built on MPFR floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Relative comparison tolerance `2^(-prec/2)` used throughout the complex backend.
pub fn tolerance(prec: u32) -> f64 {
    2f64.powi(-(prec as i32) / 2)
}

/// A complex number whose real and imaginary parts share one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    re: Float,
    im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        let mut re = re;
        let mut im = im;
        re.set_prec(prec);
        im.set_prec(prec);
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Complex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_i64(prec: u32, re: i64) -> Self {
        Complex { re: Float::with_val(prec, re), im: Float::new(prec) }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        Complex { re: Float::with_val(prec, q), im: Float::new(prec) }
    }

    pub fn from_float(re: Float) -> Self {
        let im = Float::new(re.prec());
        Complex { re, im }
    }

    /// Parses a pair of decimal strings (`"1.5"`, `"-2e-3"`, ...).
    pub fn parse(re: &str, im: &str, prec: u32) -> Result<Self> {
        let part = |s: &str| {
            Float::parse(s.trim())
                .map(|p| Float::with_val(prec, p))
                .map_err(|e| Error::InvalidArgument(format!("bad decimal {s:?}: {e}")))
        };
        let c = Complex { re: part(re)?, im: part(im)? };
        if !c.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite value ({re}, {im})")));
        }
        Ok(c)
    }

    /// Decimal representation of `(re, im)` with enough digits to round-trip at this precision.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (self.re.to_string_radix(10, None), self.im.to_string_radix(10, None))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Modulus `|z|`.
    pub fn norm(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm().to_f64()
    }

    /// Argument in `(-pi, pi]`; a signed zero imaginary part is treated as `+0`.
    pub fn arg(&self) -> Float {
        let im = if self.im.is_zero() { Float::new(self.prec()) } else { self.im.clone() };
        im.atan2(&self.re)
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    /// `r * exp(i theta)`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec().max(theta.prec());
        let (sin, cos) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        Complex { re: Float::with_val(prec, r * &cos), im: Float::with_val(prec, r * &sin) }
    }

    /// `exp(i theta)`.
    pub fn cis(theta: &Float) -> Self {
        Complex::from_polar(&Float::with_val(theta.prec(), 1), theta)
    }

    /// `omega^j` where `omega = exp(2 pi i / n)`.
    ///
    /// The exponent is reduced mod `n` first and the exact points `1, -1, ±i` are
    /// produced without rounding.
    pub fn root_of_unity(n: usize, j: i64, prec: u32) -> Self {
        assert!(n > 0, "root of unity of order zero");
        let n_i = n as i64;
        let j = j.rem_euclid(n_i);
        if j == 0 {
            return Complex::one(prec);
        }
        if 2 * j == n_i {
            return Complex::from_f64(prec, -1.0, 0.0);
        }
        if 4 * j == n_i {
            return Complex::i(prec);
        }
        if 4 * j == 3 * n_i {
            return Complex::from_f64(prec, 0.0, -1.0);
        }
        let pi = Float::with_val(prec, Constant::Pi);
        let theta = Float::with_val(prec, &pi * (2 * j)) / n_i;
        Complex::cis(&theta)
    }

    pub fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        Complex { re: Float::with_val(self.prec(), &self.re * k), im: Float::with_val(self.prec(), &self.im * k) }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        Complex { re: Float::with_val(self.prec(), &self.re / k), im: Float::with_val(self.prec(), &self.im / k) }
    }

    /// `1 / z`, or `None` for an exact zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let prec = self.prec();
        let denom = Float::with_val(prec, self.re.square_ref()) + Float::with_val(prec, self.im.square_ref());
        Some(Complex {
            re: Float::with_val(prec, &self.re / &denom),
            im: Float::with_val(prec, -Float::with_val(prec, &self.im / &denom)),
        })
    }

    pub fn checked_div(&self, rhs: &Complex) -> Option<Self> {
        rhs.recip().map(|r| self * &r)
    }

    /// `|self - other|` as `f64`.
    pub fn dist(&self, other: &Complex) -> f64 {
        (self - other).norm_f64()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision();
        let re = self.re.to_string_radix(10, digits);
        let im = Float::with_val(self.prec(), self.im.abs_ref());
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{re} {sign} {}i", im.to_string_radix(10, digits))
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &'a Complex) -> Complex {
        let prec = self.prec().max(rhs.prec());
        Complex { re: Float::with_val(prec, &self.re + &rhs.re), im: Float::with_val(prec, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &'a Complex) -> Complex {
        let prec = self.prec().max(rhs.prec());
        Complex { re: Float::with_val(prec, &self.re - &rhs.re), im: Float::with_val(prec, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &'a Complex) -> Complex {
        let prec = self.prec().max(rhs.prec());
        let ac = Float::with_val(prec, &self.re * &rhs.re);
        let bd = Float::with_val(prec, &self.im * &rhs.im);
        let ad = Float::with_val(prec, &self.re * &rhs.im);
        let bc = Float::with_val(prec, &self.im * &rhs.re);
        Complex { re: ac - bd, im: ad + bc }
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, rhs: &'a Complex) -> Complex {
        self.checked_div(rhs).expect("complex division by zero")
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: Float::with_val(self.prec(), -&self.re), im: Float::with_val(self.prec(), -&self.im) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

/// Orders by modulus; used for pivot and root selection only.
pub fn cmp_norm(a: &Complex, b: &Complex) -> Ordering {
    a.norm().partial_cmp(&b.norm()).unwrap_or(Ordering::Equal)
}

/// Largest `|a_i - b_i|` divided by `max(max_i |b_i|, floor)`.
pub fn max_relative_error(actual: &[Complex], expected: &[Complex]) -> f64 {
    assert_eq!(actual.len(), expected.len(), "length mismatch in comparison");
    let scale = expected.iter().map(Complex::norm_f64).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let diff = actual.iter().zip(expected).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);
    diff / scale
}
