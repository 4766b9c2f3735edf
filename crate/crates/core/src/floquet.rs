//! Monodromy matrices and characteristic multipliers of linear periodic
//! systems `ẋ = A(t)x`, with `A(t)` a matrix of trigonometric polynomials.
//!
//! The time-`T` flow matrix is integrated with the classical 4th-order
//! one-step scheme at fixed step; the error estimate comes from a
//! step-halving Richardson comparison. Multipliers feed the multiplicative
//! resonant lattice, whose rank bounds the number of functionally
//! independent generalized rational first integrals of the periodic system.

use crate::matrix::{ExactMat, Matrix, NumMat};
use crate::resonance::{multiplicative_lattice, Lattice, ResonanceError};
use crate::scalar::{GaussRat, ScalarValue};
use crate::spectral::{eigenvalues, SpectrumReport};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::fmt;

/// One matrix entry: a constant plus a finite trigonometric polynomial in
/// multiples of the base frequency `w = 2π/T`, all coefficients rational.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TrigEntry {
    pub constant: BigRational,
    /// (harmonic k, cos coefficient, sin coefficient)
    pub harmonics: Vec<(u32, BigRational, BigRational)>,
}

impl TrigEntry {
    pub fn constant_only(c: BigRational) -> Self {
        TrigEntry { constant: c, harmonics: vec![] }
    }

    pub fn is_constant(&self) -> bool {
        self.harmonics
            .iter()
            .all(|(_, c, s)| c.is_zero() && s.is_zero())
    }

    fn eval(&self, w_t: f64) -> f64 {
        let mut v = self.constant.to_f64().unwrap_or(f64::NAN);
        for (k, c, s) in &self.harmonics {
            let phase = *k as f64 * w_t;
            v += c.to_f64().unwrap_or(0.0) * phase.cos();
            v += s.to_f64().unwrap_or(0.0) * phase.sin();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Period {
    /// `r * π`, exact rational `r`.
    RationalPi(BigRational),
    Decimal(f64),
}

impl Period {
    pub fn value(&self) -> f64 {
        match self {
            Period::RationalPi(r) => r.to_f64().unwrap_or(f64::NAN) * PI,
            Period::Decimal(v) => *v,
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::RationalPi(r) => {
                if r.denom().is_one() {
                    write!(f, "{}*pi", r.numer())
                } else {
                    write!(f, "{}/{}*pi", r.numer(), r.denom())
                }
            }
            Period::Decimal(v) => write!(f, "{v}"),
        }
    }
}

/// `ẋ = A(t)x` with `A` T-periodic by construction (all frequencies are
/// integer multiples of `2π/T`).
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicLinearSystem {
    pub n: usize,
    pub period: Period,
    /// row-major `n*n`
    pub entries: Vec<TrigEntry>,
}

impl PeriodicLinearSystem {
    pub fn entry(&self, i: usize, j: usize) -> &TrigEntry {
        &self.entries[i * self.n + j]
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(TrigEntry::is_constant)
    }

    /// The constant part as an exact matrix (the full matrix when
    /// `is_constant`).
    pub fn constant_part(&self) -> ExactMat {
        let mut m = ExactMat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = GaussRat::from_rational(self.entry(i, j).constant.clone());
            }
        }
        m
    }

    fn eval_at(&self, t: f64) -> Vec<f64> {
        let w = 2.0 * PI / self.period.value();
        self.entries.iter().map(|e| e.eval(w * t)).collect()
    }

    /// `∫₀ᵀ trace A(t) dt` in closed form: the oscillatory terms vanish over
    /// a full period, leaving `T · Σ const(A_ii)`.
    pub fn trace_integral(&self) -> f64 {
        let sum: f64 = (0..self.n)
            .map(|i| self.entry(i, i).constant.to_f64().unwrap_or(0.0))
            .sum();
        sum * self.period.value()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorStats {
    pub steps: usize,
    pub est_error: f64,
}

/// Monodromy matrix, multipliers, resonant lattice and the Theorem-3 style
/// bound for a periodic linear system.
#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub monodromy: NumMat,
    pub multipliers: SpectrumReport,
    pub lattice: Lattice,
    pub bound: usize,
    pub stats: IntegratorStats,
    /// `|det M − exp(∫ trace A)|`
    pub liouville_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FloquetError {
    TooFewSteps { steps: usize },
    NotConstant,
    Lattice(ResonanceError),
}

impl fmt::Display for FloquetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FloquetError::TooFewSteps { steps } => {
                write!(f, "integrator needs at least 100 steps, got {steps}")
            }
            FloquetError::NotConstant => {
                write!(f, "floquet_check requires a constant coefficient matrix")
            }
            FloquetError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FloquetError {}

impl From<ResonanceError> for FloquetError {
    fn from(e: ResonanceError) -> Self {
        FloquetError::Lattice(e)
    }
}

/// Integrate `X' = A(t)X, X(0) = I` over one period with the classical
/// 4th-order scheme at fixed step `T/steps`; real arithmetic.
fn integrate_flow(sys: &PeriodicLinearSystem, steps: usize) -> Vec<f64> {
    let n = sys.n;
    let t_end = sys.period.value();
    let h = t_end / steps as f64;
    let mut x = vec![0.0f64; n * n];
    for i in 0..n {
        x[i * n + i] = 1.0;
    }
    let mat_mul = |a: &[f64], b: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        out
    };
    let axpy = |x: &[f64], s: f64, y: &[f64]| -> Vec<f64> {
        x.iter().zip(y).map(|(a, b)| a + s * b).collect()
    };
    for step in 0..steps {
        let t = step as f64 * h;
        let a1 = sys.eval_at(t);
        let a2 = sys.eval_at(t + 0.5 * h);
        let a4 = sys.eval_at(t + h);
        let k1 = mat_mul(&a1, &x);
        let k2 = mat_mul(&a2, &axpy(&x, 0.5 * h, &k1));
        let k3 = mat_mul(&a2, &axpy(&x, 0.5 * h, &k2));
        let k4 = mat_mul(&a4, &axpy(&x, h, &k3));
        for idx in 0..n * n {
            x[idx] += h / 6.0 * (k1[idx] + 2.0 * k2[idx] + 2.0 * k3[idx] + k4[idx]);
        }
    }
    x
}

fn to_num_mat(n: usize, data: &[f64]) -> NumMat {
    NumMat::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| Complex64::new(data[i * n + j], 0.0)).collect())
            .collect(),
    )
}

/// Monodromy of a periodic linear system: `M = X(T)`, multipliers, the
/// multiplicative resonant lattice at `(tol, kmax)`, and the bound (its
/// rank). `est_error` comes from comparing against a half-resolution run.
pub fn monodromy(
    sys: &PeriodicLinearSystem,
    steps: usize,
    tol: f64,
    kmax: i64,
) -> Result<MonodromyReport, FloquetError> {
    if steps < 100 {
        return Err(FloquetError::TooFewSteps { steps });
    }
    let fine = integrate_flow(sys, steps);
    let coarse = integrate_flow(sys, steps / 2);
    let n = sys.n;
    let diff = fine
        .iter()
        .zip(&coarse)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    // 4th order: err(h) ≈ ‖X_h − X_{2h}‖ / 15
    let est_error = diff / 15.0;
    let m = to_num_mat(n, &fine);
    let multipliers = eigenvalues(&Matrix::Numeric(m.clone()));
    let mu: Vec<ScalarValue> = multipliers
        .values_c64()
        .into_iter()
        .map(ScalarValue::Numeric)
        .collect();
    let lattice = multiplicative_lattice(&mu, tol, kmax)?;
    let det = m.det();
    let liouville_deviation = (det - Complex64::new(sys.trace_integral().exp(), 0.0)).norm();
    Ok(MonodromyReport {
        bound: lattice.rank,
        monodromy: m,
        multipliers,
        lattice,
        stats: IntegratorStats { steps, est_error },
        liouville_deviation,
    })
}

/// Verification record for constant systems: computed multipliers against
/// the closed forms `exp(T·λ_i)`.
#[derive(Clone, Debug)]
pub struct FloquetCheck {
    pub eigenvalues: SpectrumReport,
    pub expected: Vec<Complex64>,
    pub computed: Vec<Complex64>,
    pub max_rel_deviation: f64,
}

/// Compare monodromy multipliers of a constant system `ẋ = Λx` against
/// `exp(T·λ_i)`; returns the max relative deviation over a minimal greedy
/// matching.
pub fn floquet_check(
    sys: &PeriodicLinearSystem,
    steps: usize,
) -> Result<FloquetCheck, FloquetError> {
    if !sys.is_constant() {
        return Err(FloquetError::NotConstant);
    }
    let report = monodromy(sys, steps, crate::resonance::DEFAULT_TOL, crate::resonance::DEFAULT_KMAX)?;
    let lambda = eigenvalues(&Matrix::Exact(sys.constant_part()));
    let t = sys.period.value();
    let mut expected: Vec<Complex64> = lambda
        .values_c64()
        .into_iter()
        .map(|l| (l * t).exp())
        .collect();
    let computed = report.multipliers.values_c64();
    // greedy nearest matching
    let mut max_rel: f64 = 0.0;
    let mut remaining = computed.clone();
    expected.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for e in &expected {
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - e).norm().total_cmp(&(*b - e).norm()))
            .expect("dimensions match");
        let c = remaining.remove(idx);
        let rel = (c - e).norm() / e.norm().max(1e-300);
        max_rel = max_rel.max(rel);
    }
    Ok(FloquetCheck {
        eigenvalues: lambda,
        expected,
        computed,
        max_rel_deviation: max_rel,
    })
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

use crate::parse::{ParseError, ParseErrorKind};

/// Parse the periodic-system text format:
///
/// ```text
/// period 2*pi; n = 2;
/// A[1][1] = 1 - 2*cos(2*w*t);
/// A[1][2] = 1/2*sin(w*t);
/// ```
///
/// `w = 2π/T` is implied; unspecified entries are zero.
pub fn parse_periodic_system(text: &str) -> Result<PeriodicLinearSystem, ParseError> {
    let mut p = PSysParser { text, pos: 0, line: 1, col: 1 };
    p.skip_ws();
    p.keyword("period")?;
    let period = p.period()?;
    p.token(";")?;
    p.keyword("n")?;
    p.token("=")?;
    let n = p.integer()? as usize;
    if n == 0 {
        return Err(p.error(ParseErrorKind::Syntax, "dimension must be positive"));
    }
    p.token(";")?;
    let mut entries: Vec<Option<TrigEntry>> = vec![None; n * n];
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        p.keyword("A")?;
        p.token("[")?;
        let i = p.integer()? as usize;
        p.token("]")?;
        p.token("[")?;
        let j = p.integer()? as usize;
        p.token("]")?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(p.error(
                ParseErrorKind::Syntax,
                format!("entry index [{i}][{j}] out of range for n = {n}"),
            ));
        }
        p.token("=")?;
        let e = p.trig_entry()?;
        let slot = &mut entries[(i - 1) * n + (j - 1)];
        if slot.is_some() {
            return Err(p.error(ParseErrorKind::Syntax, format!("duplicate entry A[{i}][{j}]")));
        }
        *slot = Some(e);
        p.skip_ws();
        if !p.at_end() {
            p.token(";")?;
        }
    }
    Ok(PeriodicLinearSystem {
        n,
        period,
        entries: entries
            .into_iter()
            .map(|e| e.unwrap_or_default())
            .collect(),
    })
}

struct PSysParser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> PSysParser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn advance(&mut self, len: usize) {
        for c in self.text[self.pos..self.pos + len].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.pos += len;
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.advance(c.len_utf8());
            } else if c == '#' {
                let len = self.rest().find('\n').unwrap_or(self.rest().len());
                self.advance(len);
            } else {
                break;
            }
        }
    }

    fn error(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, kind, msg: msg.into() }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(kw) {
            self.advance(kw.len());
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax, format!("expected `{kw}`")))
        }
    }

    fn token(&mut self, t: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(t) {
            self.advance(t.len());
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax, format!("expected `{t}`")))
        }
    }

    fn try_token(&mut self, t: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(t) {
            self.advance(t.len());
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = self.try_token("-");
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error(ParseErrorKind::Syntax, "expected integer"));
        }
        self.advance(digits.len());
        let v: i64 = digits
            .parse()
            .map_err(|_| self.error(ParseErrorKind::Syntax, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `p` or `p/q`, no sign (signs belong to the term structure).
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let p = self.integer()?;
        if self.try_token("/") {
            let q = self.integer()?;
            if q == 0 {
                return Err(self.error(ParseErrorKind::Syntax, "zero denominator"));
            }
            Ok(BigRational::new(p.into(), q.into()))
        } else {
            Ok(BigRational::from_integer(p.into()))
        }
    }

    /// Decimal like `6.28` or `-0.5`, or rational.
    fn period(&mut self) -> Result<Period, ParseError> {
        self.skip_ws();
        if self.try_token("pi") {
            return Ok(Period::RationalPi(BigRational::from_integer(1.into())));
        }
        // scan a numeric prefix to see whether it is a decimal
        let start = self.pos;
        let _ = self.try_token("-");
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        self.advance(digits.len());
        if self.rest().starts_with('.') {
            self.advance(1);
            let frac: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
            self.advance(frac.len());
            let s = &self.text[start..self.pos];
            let v: f64 = s
                .parse()
                .map_err(|_| self.error(ParseErrorKind::Syntax, "bad decimal period"))?;
            if v <= 0.0 {
                return Err(self.error(ParseErrorKind::Syntax, "period must be positive"));
            }
            return Ok(Period::Decimal(v));
        }
        // rational (possibly followed by *pi)
        self.pos = start;
        let r = self.rational()?;
        if self.try_token("*") {
            self.keyword("pi")?;
            if !r.is_positive() {
                return Err(self.error(ParseErrorKind::Syntax, "period must be positive"));
            }
            return Ok(Period::RationalPi(r));
        }
        if !r.is_positive() {
            return Err(self.error(ParseErrorKind::Syntax, "period must be positive"));
        }
        Ok(Period::Decimal(r.to_f64().unwrap_or(f64::NAN)))
    }

    /// Sum of terms `c0`, `c*cos(k*w*t)`, `c*sin(k*w*t)`, with `cos(w*t)`
    /// meaning `k = 1` and a bare trig meaning coefficient 1.
    fn trig_entry(&mut self) -> Result<TrigEntry, ParseError> {
        let mut entry = TrigEntry::default();
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = if self.try_token("-") {
                true
            } else if self.try_token("+") {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            self.skip_ws();
            let coeff = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let r = self.rational()?;
                if self.rest().trim_start().starts_with('.') {
                    return Err(self.error(
                        ParseErrorKind::NonRationalLiteral,
                        "non-rational coefficient: use exact p/q form",
                    ));
                }
                let _ = self.try_token("*");
                r
            } else {
                BigRational::from_integer(1.into())
            };
            let coeff = if negative { -coeff } else { coeff };
            let is_cos = if self.rest().starts_with("cos") {
                self.advance(3);
                Some(true)
            } else if self.rest().starts_with("sin") {
                self.advance(3);
                Some(false)
            } else {
                None
            };
            match is_cos {
                None => entry.constant += coeff,
                Some(cos) => {
                    self.token("(")?;
                    self.skip_ws();
                    let k = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                        let k = self.integer()?;
                        self.token("*")?;
                        k as u32
                    } else {
                        1
                    };
                    self.keyword("w")?;
                    self.token("*")?;
                    self.keyword("t")?;
                    self.token(")")?;
                    match entry.harmonics.iter_mut().find(|(h, _, _)| *h == k) {
                        Some((_, c, s)) => {
                            if cos {
                                *c += coeff;
                            } else {
                                *s += coeff;
                            }
                        }
                        None => {
                            let (c, s) = if cos {
                                (coeff, BigRational::zero())
                            } else {
                                (BigRational::zero(), coeff)
                            };
                            entry.harmonics.push((k, c, s));
                        }
                    }
                }
            }
        }
        Ok(entry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_system(rows: &[&[i64]], period: Period) -> PeriodicLinearSystem {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                r.iter()
                    .map(|&v| TrigEntry::constant_only(BigRational::from_integer(v.into())))
            })
            .collect();
        PeriodicLinearSystem { n, period, entries }
    }

    #[test]
    fn rotation_monodromy_is_identity() {
        // A = [[0,1],[-1,0]], T = 2π: M = exp(2πA) = I
        let sys = constant_system(
            &[&[0, 1], &[-1, 0]],
            Period::RationalPi(BigRational::from_integer(2.into())),
        );
        let r = monodromy(&sys, 10_000, 1e-10, 50).unwrap();
        let eye = NumMat::identity(2);
        assert!(r.monodromy.sub(&eye).max_norm() <= 1e-8);
        assert_eq!(r.bound, 2);
        assert!(r.liouville_deviation <= 1e-8);
    }

    #[test]
    fn saddle_multipliers_product_one() {
        // A = diag(1,-1): multipliers (e^{2π}, e^{-2π}), lattice {(1,1)}
        let sys = constant_system(
            &[&[1, 0], &[0, -1]],
            Period::RationalPi(BigRational::from_integer(2.into())),
        );
        let r = monodromy(&sys, 10_000, 1e-8, 50).unwrap();
        assert_eq!(r.bound, 1);
        assert_eq!(r.lattice.basis_i64(), vec![vec![1, 1]]);
    }

    #[test]
    fn zero_matrix_full_bound() {
        let sys = constant_system(
            &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            Period::Decimal(1.0),
        );
        let r = monodromy(&sys, 200, 1e-10, 50).unwrap();
        assert_eq!(r.bound, 3);
        assert!(r.monodromy.sub(&NumMat::identity(3)).max_norm() == 0.0);
    }

    #[test]
    fn floquet_check_diag() {
        let sys = constant_system(
            &[&[1, 0], &[0, 2]],
            Period::RationalPi(BigRational::from_integer(2.into())),
        );
        let c = floquet_check(&sys, 10_000).unwrap();
        assert!(c.max_rel_deviation <= 1e-6, "deviation {}", c.max_rel_deviation);
    }

    #[test]
    fn floquet_check_nilpotent() {
        // Λ = [[0,1],[0,0]], T = 2π: M = [[1,2π],[0,1]], multipliers (1,1)
        let sys = constant_system(
            &[&[0, 1], &[0, 0]],
            Period::RationalPi(BigRational::from_integer(2.into())),
        );
        let r = monodromy(&sys, 10_000, 1e-8, 50).unwrap();
        assert!((r.monodromy[(0, 1)] - Complex64::new(2.0 * PI, 0.0)).norm() <= 1e-9);
        assert!((r.monodromy[(0, 0)] - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        let c = floquet_check(&sys, 10_000).unwrap();
        assert!(c.max_rel_deviation <= 1e-6);
    }

    #[test]
    fn step_doubling_fourth_order() {
        let sys = constant_system(
            &[&[0, 1], &[-1, 0]],
            Period::RationalPi(BigRational::from_integer(2.into())),
        );
        // Errors vs the exact answer (identity) shrink ~16x per doubling.
        let err = |steps: usize| {
            let x = integrate_flow(&sys, steps);
            let m = to_num_mat(2, &x);
            m.sub(&NumMat::identity(2)).max_norm()
        };
        let ratio = err(200) / err(400);
        assert!((12.0..=20.0).contains(&ratio), "convergence ratio {ratio}");
    }

    #[test]
    fn liouville_with_periodic_coefficients() {
        // A(t) = [[cos(w t), 1],[0, -cos(w t)]]: trace is 0 pointwise on
        // average; det M must equal exp(0) = 1.
        let one = BigRational::from_integer(1.into());
        let sys = PeriodicLinearSystem {
            n: 2,
            period: Period::RationalPi(BigRational::from_integer(2.into())),
            entries: vec![
                TrigEntry { constant: BigRational::zero(), harmonics: vec![(1, one.clone(), BigRational::zero())] },
                TrigEntry::constant_only(one.clone()),
                TrigEntry::constant_only(BigRational::zero()),
                TrigEntry { constant: BigRational::zero(), harmonics: vec![(1, -one, BigRational::zero())] },
            ],
        };
        let r = monodromy(&sys, 4_000, 1e-8, 20).unwrap();
        assert!(r.liouville_deviation <= 1e-7, "liouville {}", r.liouville_deviation);
    }

    #[test]
    fn parse_periodic_format() {
        let text = "period 2*pi; n = 2;\nA[1][1] = 1 - 2*cos(2*w*t);\nA[1][2] = 1/2*sin(w*t);\nA[2][1] = -1;\n";
        let sys = parse_periodic_system(text).unwrap();
        assert_eq!(sys.n, 2);
        assert_eq!(sys.period, Period::RationalPi(BigRational::from_integer(2.into())));
        let e = sys.entry(0, 0);
        assert_eq!(e.constant, BigRational::from_integer(1.into()));
        assert_eq!(e.harmonics, vec![(2, BigRational::from_integer((-2).into()), BigRational::zero())]);
        let e = sys.entry(0, 1);
        assert_eq!(e.harmonics, vec![(1, BigRational::zero(), BigRational::new(1.into(), 2.into()))]);
        assert_eq!(sys.entry(1, 0).constant, BigRational::from_integer((-1).into()));
        assert!(sys.entry(1, 1).is_constant());
        // decimal period
        let sys = parse_periodic_system("period 6.28; n = 1; A[1][1] = 1").unwrap();
        assert_eq!(sys.period, Period::Decimal(6.28));
        // parse errors carry position
        let err = parse_periodic_system("period 2*pi; n = 2; A[3][1] = 1").unwrap_err();
        assert!(err.msg.contains("out of range"));
    }
}
