//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Representation: `BTreeMap` from exponent vector to nonzero coefficient,
//! keyed by graded lexicographic order (total degree first, then lex with
//! earlier variables larger). The map is canonical: two polynomials are
//! equal iff their term maps are equal.

use crate::scalar::GaussRat;
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent multi-index with graded lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `m` in `nvars` variables, in
/// descending graded-lex order: `x1^m` first, `xn^m` last.
pub fn monomials_of_degree(nvars: usize, m: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Mono>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Mono(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(&mut out, &mut cur, 0, m);
    out
}

/// All exponent vectors of total degree in `lo..=hi`, descending graded-lex
/// within each degree, higher degrees first.
pub fn monomials_up_to(nvars: usize, lo: u32, hi: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for m in (lo..=hi).rev() {
        out.extend(monomials_of_degree(nvars, m));
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, GaussRat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, GaussRat::one())
    }

    /// The variable `x_idx`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Poly::monomial(nvars, e, GaussRat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: GaussRat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(Mono(exps), coeff);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, GaussRat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(Mono(e), c);
        }
        p
    }

    /// Test helper style constructor: integer coefficients with exponents.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Poly::from_terms(
            nvars,
            terms.iter().map(|(c, e)| (e.to_vec(), GaussRat::from_int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().total_degree() == 0)
    }

    pub fn constant_value(&self) -> Option<GaussRat> {
        if self.is_zero() {
            Some(GaussRat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, mono: &Mono) -> GaussRat {
        self.terms.get(mono).cloned().unwrap_or_else(GaussRat::zero)
    }

    fn add_term(&mut self, mono: Mono, coeff: GaussRat) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(mono.0.len(), self.nvars);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.total_degree())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Scalar multiple making the graded-lex leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv()),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
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

    /// Partial derivative with respect to variable `idx`.
    pub fn partial(&self, idx: usize) -> Poly {
        assert!(idx < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            out.add_term(Mono(exps), c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension mismatch");
        let max_deg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<GaussRat>> = (0..self.nvars)
            .map(|i| {
                let mut v = Vec::with_capacity(max_deg[i] as usize + 1);
                v.push(GaussRat::one());
                for k in 1..=max_deg[i] as usize {
                    let next = &v[k - 1] * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Float evaluation at a complex point.
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for i in 0..self.nvars {
                for _ in 0..m.0[i] {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `args[i]` for variable `i`. All `args` must share a common
    /// variable count, which becomes the result's.
    pub fn substitute(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.nvars);
        let out_nvars = args.first().map_or(0, Poly::nvars);
        assert!(args.iter().all(|a| a.nvars() == out_nvars));
        let max_deg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        // powers[i][k] = args[i]^k, built incrementally
        let powers: Vec<Vec<Poly>> = (0..self.nvars)
            .map(|i| {
                let mut v = Vec::with_capacity(max_deg[i] as usize + 1);
                v.push(Poly::one(out_nvars));
                for k in 1..=max_deg[i] as usize {
                    let next = &v[k - 1] * &args[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(out_nvars, c.clone());
            for i in 0..self.nvars {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Shift of origin: returns `p(c + x)` in the same variables.
    pub fn shift(&self, c: &[GaussRat]) -> Poly {
        assert_eq!(c.len(), self.nvars);
        let args: Vec<Poly> = (0..self.nvars)
            .map(|i| &Poly::constant(self.nvars, c[i].clone()) + &Poly::var(self.nvars, i))
            .collect();
        self.substitute(&args)
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The nonzero homogeneous part of lowest total degree.
    pub fn lowest_degree_part(&self) -> Poly {
        match self.terms.keys().next() {
            None => Poly::zero(self.nvars),
            Some(m) => self.homogeneous_component(m.total_degree()),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Weighted degree `⟨m, s⟩` of a monomial; groups terms by that value.
    pub fn weight_layers(&self, s: &[i64]) -> BTreeMap<i64, Poly> {
        assert_eq!(s.len(), self.nvars);
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w: i64 = m.0.iter().zip(s).map(|(&e, &si)| e as i64 * si).sum();
            out.entry(w)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// The coefficient of `x_idx^d` as a polynomial in the remaining
    /// variables (exponent of `x_idx` zeroed in the result).
    pub fn coeff_of_power(&self, idx: usize, d: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[idx] == d {
                let mut e = m.0.clone();
                e[idx] = 0;
                out.add_term(Mono(e), c.clone());
            }
        }
        out
    }

    /// Multiply by `x_idx^d`.
    fn mul_var_pow(&self, idx: usize, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[idx] += d;
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        assert_eq!(self.nvars, d.nvars);
        let (lm_d, lc_d) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_d.divides(&lm_r) {
                return None;
            }
            let exps: Vec<u32> = lm_r.0.iter().zip(&lm_d.0).map(|(a, b)| a - b).collect();
            let t = Poly::monomial(self.nvars, exps, &lc_r / &lc_d);
            q = &q + &t;
            rem = &rem - &(&t * d);
        }
        Some(q)
    }

    /// Extend to `new_nvars` variables (old variables keep their indices).
    pub fn extend_vars(&self, new_nvars: usize) -> Poly {
        assert!(new_nvars >= self.nvars);
        Poly {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(new_nvars, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Render with the given variable names.
    pub fn to_string_with(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms_desc().enumerate() {
            let var_part: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{}", vars[i], e)
                    }
                })
                .collect();
            let is_const_term = var_part.is_empty();
            let (sign, mag) = coeff_display(c, is_const_term);
            if idx == 0 {
                if sign < 0 {
                    out.push('-');
                }
            } else if sign < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            match (mag, is_const_term) {
                (Some(ms), true) => out.push_str(&ms),
                (Some(ms), false) => {
                    out.push_str(&ms);
                    out.push('*');
                    out.push_str(&var_part.join("*"));
                }
                (None, _) => out.push_str(&var_part.join("*")),
            }
        }
        out
    }
}

/// Splits a coefficient into (sign, magnitude text). Magnitude `None` means
/// an implicit factor 1 in front of a variable part. Complex coefficients
/// print parenthesized and always with positive sign.
fn coeff_display(c: &GaussRat, is_const_term: bool) -> (i32, Option<String>) {
    use crate::scalar::rational_sign;
    if c.is_real() {
        let sgn = rational_sign(&c.re);
        let mag = (-c.clone()).re;
        let abs = if sgn < 0 { mag } else { c.re.clone() };
        let one = abs == num_rational::BigRational::from_integer(num_bigint::BigInt::from(1));
        if one && !is_const_term {
            (sgn, None)
        } else {
            let s = if abs.denom() == &num_bigint::BigInt::from(1) {
                format!("{}", abs.numer())
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            (sgn, Some(s))
        }
    } else {
        (1, Some(format!("({})", complex_literal(c))))
    }
}

/// Complex literal in the input grammar's form, e.g. `1/2 + 3/4 i`.
fn complex_literal(c: &GaussRat) -> String {
    use crate::scalar::rational_sign;
    let fmt_r = |r: &num_rational::BigRational| {
        if r.denom() == &num_bigint::BigInt::from(1) {
            format!("{}", r.numer())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    if c.im.is_zero() {
        return fmt_r(&c.re);
    }
    let (op, im_abs) = if rational_sign(&c.im) < 0 {
        ("-", -c.im.clone())
    } else {
        ("+", c.im.clone())
    };
    format!("{} {} {} i", fmt_r(&c.re), op, fmt_r(&im_abs))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "poly nvars mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "poly nvars mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "poly nvars mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(exps), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Greatest common divisor via primitive pseudo-remainder sequences,
/// normalized monic in graded-lex order.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars());
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    // Main variable: first one occurring in either operand.
    let v = (0..a.nvars())
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("non-constant polynomial has a variable");
    if a.degree_in(v) == 0 {
        return poly_gcd(&content_in(b, v), a).monic();
    }
    if b.degree_in(v) == 0 {
        return poly_gcd(&content_in(a, v), b).monic();
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = poly_gcd(&ca, &cb);
    let mut ap = a.exact_div(&ca).expect("content divides");
    let mut bp = b.exact_div(&cb).expect("content divides");
    if ap.degree_in(v) < bp.degree_in(v) {
        std::mem::swap(&mut ap, &mut bp);
    }
    loop {
        let r = pseudo_rem(&ap, &bp, v);
        if r.is_zero() {
            break;
        }
        ap = bp;
        let cr = content_in(&r, v);
        bp = r.exact_div(&cr).expect("content divides");
        if bp.degree_in(v) == 0 {
            // Coprime in the main variable; only the content gcd survives.
            return c.monic();
        }
        if ap.degree_in(v) < bp.degree_in(v) {
            std::mem::swap(&mut ap, &mut bp);
        }
    }
    (&c * &bp).monic()
}

/// gcd of the coefficients of `p` viewed as univariate in `x_v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for d in 0..=p.degree_in(v) {
        let cd = p.coeff_of_power(v, d);
        if !cd.is_zero() {
            acc = if acc.is_zero() { cd } else { poly_gcd(&acc, &cd) };
            if acc.is_constant() {
                return Poly::one(p.nvars());
            }
        }
    }
    acc
}

/// Pseudo-remainder of `a` by `b` in the variable `x_v` (deg_v a >= deg_v b).
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.coeff_of_power(v, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_of_power(v, dr);
        r = &(&r * &lb) - &(b * &lr).mul_var_pow(v, dr - db);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_plus_y() -> Poly {
        Poly::from_int_terms(2, &[(1, &[1, 0]), (1, &[0, 1])])
    }

    #[test]
    fn grlex_order() {
        // x^2 > xy > y^2 > x > y > 1
        let m = |e: &[u32]| Mono(e.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
    }

    #[test]
    fn degree_basis_enumeration() {
        let b = monomials_of_degree(2, 2);
        assert_eq!(b, vec![Mono(vec![2, 0]), Mono(vec![1, 1]), Mono(vec![0, 2])]);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = x_plus_y();
        let q = &p * &p; // x^2 + 2xy + y^2
        assert_eq!(q.num_terms(), 3);
        assert_eq!(q.coeff(&Mono(vec![1, 1])), GaussRat::from_int(2));
        let val = q.eval(&[GaussRat::from_int(2), GaussRat::from_int(3)]);
        assert_eq!(val, GaussRat::from_int(25));
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y + y) = 2xy
        let p = Poly::from_int_terms(2, &[(1, &[2, 1]), (1, &[0, 1])]);
        assert_eq!(p.partial(0), Poly::from_int_terms(2, &[(2, &[1, 1])]));
        assert_eq!(
            p.partial(1),
            Poly::from_int_terms(2, &[(1, &[2, 0]), (1, &[0, 0])])
        );
    }

    #[test]
    fn substitution_shift() {
        // p = x^2, shift by c=1: (1+x)^2 = 1 + 2x + x^2
        let p = Poly::from_int_terms(1, &[(1, &[2])]);
        let s = p.shift(&[GaussRat::from_int(1)]);
        assert_eq!(
            s,
            Poly::from_int_terms(1, &[(1, &[2]), (2, &[1]), (1, &[0])])
        );
    }

    #[test]
    fn exact_division() {
        let p = x_plus_y();
        let q = &p * &p;
        assert_eq!(q.exact_div(&p), Some(p.clone()));
        let r = Poly::from_int_terms(2, &[(1, &[1, 0])]);
        assert_eq!(q.exact_div(&r), None);
    }

    #[test]
    fn gcd_multivariate() {
        let p = x_plus_y();
        let xminusy = Poly::from_int_terms(2, &[(1, &[1, 0]), (-1, &[0, 1])]);
        let y = Poly::from_int_terms(2, &[(1, &[0, 1])]);
        let a = &(&p * &p) * &xminusy;
        let b = &p * &y;
        let g = poly_gcd(&a, &b);
        assert_eq!(g, p.monic());
        // coprime case
        let g2 = poly_gcd(&xminusy, &y);
        assert!(g2.is_constant());
    }

    #[test]
    fn lowest_degree_part_and_layers() {
        let p = Poly::from_int_terms(2, &[(1, &[2, 0]), (1, &[0, 1])]); // x^2 + y
        assert_eq!(p.lowest_degree_part(), Poly::from_int_terms(2, &[(1, &[0, 1])]));
        // weights s=(2,3): x^2 -> 4, y -> 3
        let layers = p.weight_layers(&[2, 3]);
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[&3], Poly::from_int_terms(2, &[(1, &[0, 1])]));
        assert_eq!(layers[&4], Poly::from_int_terms(2, &[(1, &[2, 0])]));
    }

    #[test]
    fn display_forms() {
        let p = Poly::from_terms(
            2,
            vec![
                (vec![2, 0], GaussRat::from_ratio(3, 2)),
                (vec![1, 0], GaussRat::from_int(1)),
                (vec![0, 1], GaussRat::from_int(-1)),
            ],
        );
        assert_eq!(
            p.to_string_with(&["x".into(), "y".into()]),
            "3/2*x^2 + x - y"
        );
        let c = Poly::constant(1, GaussRat::new(
            num_rational::BigRational::new(1.into(), 2.into()),
            num_rational::BigRational::new(3.into(), 4.into()),
        ));
        assert_eq!(c.to_string_with(&["x".into()]), "(1/2 + 3/4 i)");
    }
}
