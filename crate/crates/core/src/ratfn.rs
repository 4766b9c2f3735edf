//! Rational functions: quotients of multivariate polynomials over the
//! Gaussian rationals.
//!
//! Normal form: common polynomial factors cancelled (gcd reduction up to a
//! documented total-degree cap) and the denominator monic in graded-lex
//! order. Semantic equality across representations is `equivalent`, by
//! cross-multiplication.

use crate::poly::{poly_gcd, Poly};
use crate::scalar::GaussRat;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// gcd cancellation is attempted only while both operands stay at or below
/// this total degree; larger quotients keep their raw form.
pub const GCD_DEGREE_CAP: u32 = 12;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// The denominator vanishes at the requested point; callers resample.
    DenominatorVanishes,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DenominatorVanishes => write!(f, "denominator vanishes at the point"),
        }
    }
}

impl std::error::Error for EvalError {}

impl RationalFn {
    /// Build and normalize. Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.nvars(), den.nvars(), "rational function nvars mismatch");
        let mut f = RationalFn { num, den };
        f.reduce();
        f
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFn { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFn::from_poly(Poly::zero(nvars))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.nvars());
            return;
        }
        let within_cap = self.num.total_degree().unwrap_or(0) <= GCD_DEGREE_CAP
            && self.den.total_degree().unwrap_or(0) <= GCD_DEGREE_CAP;
        if within_cap && !self.den.is_constant() && !self.num.is_constant() {
            let g = poly_gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.exact_div(&g).expect("gcd divides numerator");
                self.den = self.den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        // Denominator monic in graded-lex fixes the scalar freedom.
        let lc = self.den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Semantic equality by cross-multiplication (no gcd needed).
    pub fn equivalent(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> RationalFn {
        let n = &(&self.den * &self.num.partial(idx)) - &(&self.num * &self.den.partial(idx));
        RationalFn::new(n, (&self.den).mul(&self.den))
    }

    /// Exact evaluation; errors when the denominator vanishes at `point`.
    pub fn eval(&self, point: &[GaussRat]) -> Result<GaussRat, EvalError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(EvalError::DenominatorVanishes);
        }
        Ok(&self.num.eval(point) / &d)
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        self.num.eval_c64(point) / self.den.eval_c64(point)
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        RationalFn::new(self.num.pow(e), self.den.pow(e))
    }

    pub fn recip(&self) -> RationalFn {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    /// Lowest-order rational homogeneous part `G0/H0` and the lowest degree
    /// `d(F) = deg G0 - deg H0`.
    pub fn lowest_order_part(&self) -> (RationalFn, i64) {
        assert!(!self.num.is_zero(), "lowest-order part of zero");
        let g0 = self.num.lowest_degree_part();
        let h0 = self.den.lowest_degree_part();
        let d = g0.total_degree().unwrap() as i64 - h0.total_degree().unwrap() as i64;
        (RationalFn::new(g0, h0), d)
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.den.is_constant() {
            self.num.to_string_with(vars)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_with(vars),
                self.den.to_string_with(vars)
            )
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn normalization_makes_denominator_monic() {
        // (2x) / (2y) -> x / y
        let f = RationalFn::new(
            x(2, 0).scale(&GaussRat::from_int(2)),
            x(2, 1).scale(&GaussRat::from_int(2)),
        );
        assert_eq!(f.num(), &x(2, 0));
        assert_eq!(f.den(), &x(2, 1));
    }

    #[test]
    fn gcd_cancellation() {
        // (x^2 - y^2)/(x - y) -> x + y
        let xp = x(2, 0);
        let yp = x(2, 1);
        let f = RationalFn::new(&(&xp * &xp) - &(&yp * &yp), &xp - &yp);
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &(&xp + &yp));
    }

    #[test]
    fn eval_and_denominator_vanish() {
        // (x+y)/(x-y) at (3,1) -> 2 ; at (1,1) -> error
        let xp = x(2, 0);
        let yp = x(2, 1);
        let f = RationalFn::new(&xp + &yp, &xp - &yp);
        let v = f.eval(&[GaussRat::from_int(3), GaussRat::from_int(1)]).unwrap();
        assert_eq!(v, GaussRat::from_int(2));
        assert_eq!(
            f.eval(&[GaussRat::from_int(1), GaussRat::from_int(1)]),
            Err(EvalError::DenominatorVanishes)
        );
    }

    #[test]
    fn lowest_order_parts() {
        // (x^2 + x^3)/(y + y^5) -> x^2/y, d = 1
        let p = Poly::from_int_terms(2, &[(1, &[2, 0]), (1, &[3, 0])]);
        let q = Poly::from_int_terms(2, &[(1, &[0, 1]), (1, &[0, 5])]);
        let f = RationalFn::new(p, q);
        let (f0, d) = f.lowest_order_part();
        assert_eq!(d, 1);
        assert!(f0.equivalent(&RationalFn::new(
            Poly::from_int_terms(2, &[(1, &[2, 0])]),
            Poly::from_int_terms(2, &[(1, &[0, 1])]),
        )));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x/y) = 1/y
        let f = RationalFn::new(x(2, 0), x(2, 1));
        let d = f.partial(0);
        assert!(d.equivalent(&RationalFn::new(Poly::one(2), x(2, 1))));
    }
}
