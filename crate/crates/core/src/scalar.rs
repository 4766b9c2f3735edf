//! Exact Gaussian rational arithmetic: complex numbers with arbitrary-precision
//! rational real and imaginary parts.
//!
//! Every coefficient in the polynomial layer is a [`GaussRat`]. Spectra and
//! balances that cannot be represented exactly are carried as [`ScalarValue::Numeric`]
//! with an explicit error radius attached at the call site.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// A Gaussian rational: `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact rational `p/q`. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, an exact non-negative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero GaussRat");
        GaussRat::new(&self.re / &n, -&self.im / &n)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRat::one();
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

    /// Integer power with negative exponents allowed (panics on zero base).
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact square root in the Gaussian rationals, when one exists.
    ///
    /// For `z = a + bi`: a root `c + di` requires `a^2 + b^2` to be a rational
    /// square `r^2`, and then `(a + r)/2` to be a rational square `c^2`.
    pub fn sqrt_exact(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        if self.im.is_zero() {
            if self.re.is_positive() {
                return rational_sqrt(&self.re).map(GaussRat::from_rational);
            }
            let d = rational_sqrt(&(-self.re.clone()))?;
            return Some(GaussRat::new(BigRational::zero(), d));
        }
        let r = rational_sqrt(&self.norm_sq())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let c_sq = (&self.re + &r) / &two;
        let c = rational_sqrt(&c_sq)?;
        if c.is_zero() {
            return None;
        }
        let d = &self.im / &(&two * &c);
        Some(GaussRat::new(c, d))
    }
}

/// Exact square root of a non-negative rational, when it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'b GaussRat) -> GaussRat {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'b> $trait<&'b GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'b GaussRat) -> GaussRat {
                $trait::$method(&self, rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| GaussRat::new(&a.re + &b.re, &a.im + &b.im));
impl_binop!(Sub, sub, |a, b| GaussRat::new(&a.re - &b.re, &a.im - &b.im));
impl_binop!(Mul, mul, |a, b| GaussRat::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
impl_binop!(Div, div, |a, b| a * &b.inv());

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Canonical form: `p/q` when real, `a+bi` / `a-bi` otherwise, `bi` when
    /// purely imaginary. Parsed back by [`GaussRat::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_mag = self.im.abs();
        let unit = im_mag.is_one();
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im_part = if unit { "i".to_string() } else { format!("{}i", fmt_rational(&im_mag)) };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{lead}{im_part}");
        }
        write!(f, "{}{}{}", fmt_rational(&self.re), sign, im_part)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| format!("bad integer `{s}`"))?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl FromStr for GaussRat {
    type Err = String;

    /// Accepts `p/q`, `a+bi`, `a-bi`, `bi`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix('i') {
            // Split at the sign separating real and imaginary parts, skipping
            // any leading sign and signs inside exponents (none: rationals only).
            let bytes = body.as_bytes();
            let mut split = None;
            for (idx, &b) in bytes.iter().enumerate().skip(1) {
                if (b == b'+' || b == b'-') && bytes[idx - 1] != b'/' {
                    split = Some(idx);
                }
            }
            if let Some(idx) = split {
                let re = parse_rational(&body[..idx])?;
                let im_str = &body[idx..];
                let im = if im_str == "+" {
                    BigRational::one()
                } else if im_str == "-" {
                    -BigRational::one()
                } else {
                    parse_rational(im_str)?
                };
                return Ok(GaussRat::new(re, im));
            }
            let im = if body.is_empty() {
                BigRational::one()
            } else if body == "-" {
                -BigRational::one()
            } else {
                parse_rational(body)?
            };
            return Ok(GaussRat::new(BigRational::zero(), im));
        }
        Ok(GaussRat::from_rational(parse_rational(s)?))
    }
}

/// A value that is either exact or a float approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarValue {
    Exact(GaussRat),
    Numeric(Complex64),
}

impl ScalarValue {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            ScalarValue::Exact(g) => g.to_c64(),
            ScalarValue::Numeric(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match self {
            ScalarValue::Exact(g) => Some(g),
            ScalarValue::Numeric(_) => None,
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Exact(g) => write!(f, "{g}"),
            ScalarValue::Numeric(z) => write!(f, "{:.16e}{:+.16e}i", z.re, z.im),
        }
    }
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// by continued fractions. Returns `None` for non-finite input.
pub fn nearest_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    // Convergents p/q of the continued fraction expansion.
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a;
        if frac < 1e-18 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1.is_zero() {
        return None;
    }
    let mut r = BigRational::new(p1, q1);
    if negative {
        r = -r;
    }
    Some(r)
}

/// Round a float to the nearest Gaussian rational with bounded denominator,
/// accepting only when both parts land within `eps`.
pub fn rationalize_c64(z: Complex64, max_den: u64, eps: f64) -> Option<GaussRat> {
    let re = nearest_rational(z.re, max_den)?;
    let im = nearest_rational(z.im, max_den)?;
    let dre = (re.to_f64()? - z.re).abs();
    let dim = (im.to_f64()? - z.im).abs();
    if dre <= eps && dim <= eps {
        Some(GaussRat::new(re, im))
    } else {
        None
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64, q: i64) -> GaussRat {
        GaussRat::from_ratio(p, q)
    }

    #[test]
    fn field_ops() {
        let a = GaussRat::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        );
        let b = GaussRat::from_int(2);
        assert_eq!(&a + &b, GaussRat::new(
            BigRational::new(BigInt::from(5), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        ));
        let prod = &a * &a.conj();
        assert!(prod.is_real());
        assert_eq!(prod.re, a.norm_sq());
        let inv = a.inv();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(g(9, 4).sqrt_exact(), Some(g(3, 2)));
        assert_eq!(g(-4, 1).sqrt_exact(), Some(GaussRat::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2)))));
        assert_eq!(g(2, 1).sqrt_exact(), None);
        // (1+i)^2 = 2i
        let two_i = GaussRat::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2)));
        let r = two_i.sqrt_exact().unwrap();
        assert_eq!(&r * &r, two_i);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["3", "-1/2", "1/2+3/4i", "-2-5i", "i", "-i", "3/7i"] {
            let v: GaussRat = s.parse().unwrap();
            assert_eq!(v.to_string(), s, "canonical form mismatch for {s}");
            let back: GaussRat = v.to_string().parse().unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn continued_fraction_recovery() {
        let r = nearest_rational(0.333333333333333, 100).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(3)));
        let r = nearest_rational(-2.5, 100).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(-5), BigInt::from(2)));
        let z = rationalize_c64(Complex64::new(0.5, -0.25), 100, 1e-9).unwrap();
        assert_eq!(z, GaussRat::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(4)),
        ));
    }
}
