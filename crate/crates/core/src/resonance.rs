//! Resonant-lattice computation, additive and multiplicative, exact and
//! numeric.
//!
//! The additive lattice of a spectrum `λ` is `{k ∈ Z^n : ⟨k,λ⟩ = 0, k ≠ 0}`;
//! its span's dimension bounds the number of functionally independent
//! generalized rational first integrals near a singularity. The
//! multiplicative lattice of multipliers `μ` is `{k : μ^k = 1}`, the bound
//! near a periodic orbit.
//!
//! Numeric lattices come from LLL-based integer relation detection and are
//! lower-confidence objects: an undetected relation makes the reported rank
//! an under-estimate of the true bound, so numeric results always carry
//! residuals, the search bound, and a caveat when rendered.

use crate::intlat::{hnf_row, integer_kernel, lll_reduce};
use crate::matrix::Matrix;
use crate::scalar::{GaussRat, ScalarValue};
use crate::spectral::{eigenvalues, SpectrumReport};
use crate::vfield::VectorField;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::fmt;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_KMAX: i64 = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    Exact,
    Numeric,
}

/// Integer basis of a resonant lattice, canonical in Hermite normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub nvars: usize,
    pub basis: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub mode: LatticeMode,
    /// Numeric mode: `|⟨k,λ⟩|` (or `|μ^k − 1|`) per basis vector.
    pub residuals: Vec<f64>,
    /// Numeric mode: the tolerance the residuals were accepted at.
    pub tolerance: Option<f64>,
    /// Numeric mode: max coefficient magnitude searched.
    pub search_bound: Option<i64>,
}

impl Lattice {
    fn exact(nvars: usize, basis: Vec<Vec<BigInt>>) -> Self {
        let rank = basis.len();
        Lattice {
            nvars,
            basis,
            rank,
            mode: LatticeMode::Exact,
            residuals: vec![],
            tolerance: None,
            search_bound: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == LatticeMode::Exact
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|v| v.to_i64().unwrap_or(i64::MAX)).collect())
            .collect()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            LatticeMode::Exact => "exact",
            LatticeMode::Numeric => "numeric",
        };
        write!(f, "rank {} [{}]", self.rank, mode)?;
        if !self.basis.is_empty() {
            let rows: Vec<String> = self
                .basis
                .iter()
                .map(|r| {
                    let entries: Vec<String> = r.iter().map(BigInt::to_string).collect();
                    format!("({})", entries.join(", "))
                })
                .collect();
            write!(f, " basis {{{}}}", rows.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResonanceError {
    NotASingularity { component: usize, value: String },
    /// Relation detection below the certified eigenvalue accuracy is
    /// meaningless; the caller must lower the eigenvalue error or raise tol.
    ToleranceInfeasible { tol: f64, error_radius: f64 },
    InvalidTolerance,
    ZeroMultiplier { index: usize },
}

impl fmt::Display for ResonanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResonanceError::NotASingularity { component, value } => {
                write!(f, "point is not a singularity: component {component} evaluates to {value}")
            }
            ResonanceError::ToleranceInfeasible { tol, error_radius } => write!(
                f,
                "tolerance {tol:e} is below the certified eigenvalue error radius {error_radius:e}"
            ),
            ResonanceError::InvalidTolerance => write!(f, "tolerance must be positive"),
            ResonanceError::ZeroMultiplier { index } => {
                write!(f, "multiplier {index} is zero")
            }
        }
    }
}

impl std::error::Error for ResonanceError {}

/// Exact additive resonant lattice of a Gaussian-rational spectrum: the
/// integer kernel of the real and imaginary rows of `λ`, denominators
/// cleared, canonicalized by HNF.
pub fn additive_lattice_exact(lambda: &[GaussRat]) -> Lattice {
    let n = lambda.len();
    let re_row: Vec<BigRational> = lambda.iter().map(|l| l.re.clone()).collect();
    let im_row: Vec<BigRational> = lambda.iter().map(|l| l.im.clone()).collect();
    let mut rows = Vec::new();
    for r in [re_row, im_row] {
        if r.iter().any(|v| !v.is_zero()) {
            rows.push(clear_row_denominators(&r));
        }
    }
    let basis = integer_kernel(&rows, n);
    debug_assert!(basis.iter().all(|k| {
        let mut acc = GaussRat::zero();
        for (ki, li) in k.iter().zip(lambda) {
            acc = &acc + &(&GaussRat::from_rational(BigRational::from_integer(ki.clone())) * li);
        }
        acc.is_zero()
    }));
    Lattice::exact(n, basis)
}

fn clear_row_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        lcm = lcm.lcm(v.denom());
    }
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Numeric additive lattice by LLL integer-relation detection on the
/// standard embedding (identity block plus real/imaginary value columns at
/// scale `1/tol`). Keeps relations with all `|k_i| ≤ kmax` and residual
/// `|⟨k,λ⟩| ≤ tol`, canonicalized by HNF. Lower-confidence by construction.
pub fn additive_lattice_numeric(
    lambda: &[num_complex::Complex64],
    tol: f64,
    kmax: i64,
) -> Result<Lattice, ResonanceError> {
    if !(tol > 0.0) {
        return Err(ResonanceError::InvalidTolerance);
    }
    let n = lambda.len();
    let scale = 1.0 / tol;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, l) in lambda.iter().enumerate() {
        let mut v = vec![BigInt::zero(); n + 2];
        v[i] = BigInt::one();
        v[n] = float_to_bigint(l.re * scale);
        v[n + 1] = float_to_bigint(l.im * scale);
        rows.push(v);
    }
    let reduced = lll_reduce(&rows);
    let residual = |k: &[BigInt]| -> f64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (ki, li) in k.iter().zip(lambda) {
            acc += ki.to_f64().unwrap_or(f64::NAN) * li;
        }
        acc.norm()
    };
    let accepted: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|v| v[..n].to_vec())
        .filter(|k| {
            !k.iter().all(BigInt::is_zero)
                && k.iter().all(|ki| ki.abs() <= BigInt::from(kmax))
                && residual(k) <= tol
        })
        .collect();
    let mut basis = hnf_row(&accepted);
    basis.retain(|k| residual(k) <= tol);
    let residuals: Vec<f64> = basis.iter().map(|k| residual(k)).collect();
    let rank = basis.len();
    Ok(Lattice {
        nvars: n,
        basis,
        rank,
        mode: LatticeMode::Numeric,
        residuals,
        tolerance: Some(tol),
        search_bound: Some(kmax),
    })
}

fn float_to_bigint(x: f64) -> BigInt {
    BigRational::from_float(x.round())
        .map(|r| r.to_integer())
        .unwrap_or_else(BigInt::zero)
}

/// Additive lattice of a spectrum, choosing exact or numeric by the
/// spectrum's mode. Refuses numeric detection when `tol` is below the
/// certified eigenvalue error radius.
pub fn additive_lattice_of_spectrum(
    spectrum: &SpectrumReport,
    tol: f64,
    kmax: i64,
) -> Result<Lattice, ResonanceError> {
    if let Some(exact) = spectrum.exact_values() {
        return Ok(additive_lattice_exact(&exact));
    }
    let radius = spectrum.max_error_radius();
    if tol < radius {
        return Err(ResonanceError::ToleranceInfeasible { tol, error_radius: radius });
    }
    additive_lattice_numeric(&spectrum.values_c64(), tol, kmax)
}

/// Multiplicative resonant lattice `{k : μ^k = 1}`.
///
/// Exact shortcut when every multiplier is a nonzero real rational: the
/// kernel of the prime-exponent matrix, intersected with the even sublattice
/// of the sign character. Otherwise solved additively in `(log|μ|, arg μ)`
/// with the argument row handled modulo 2π through one auxiliary integer
/// column that is projected away.
pub fn multiplicative_lattice(
    mu: &[ScalarValue],
    tol: f64,
    kmax: i64,
) -> Result<Lattice, ResonanceError> {
    for (i, m) in mu.iter().enumerate() {
        let zero = match m {
            ScalarValue::Exact(g) => g.is_zero(),
            ScalarValue::Numeric(z) => z.norm() == 0.0,
        };
        if zero {
            return Err(ResonanceError::ZeroMultiplier { index: i });
        }
    }
    let all_rational: Option<Vec<BigRational>> = mu
        .iter()
        .map(|m| m.as_exact().filter(|g| g.is_real()).map(|g| g.re.clone()))
        .collect();
    if let Some(rats) = all_rational {
        return Ok(multiplicative_lattice_rational(&rats));
    }
    multiplicative_lattice_numeric(&mu.iter().map(ScalarValue::to_c64).collect::<Vec<_>>(), tol, kmax)
}

fn multiplicative_lattice_rational(mu: &[BigRational]) -> Lattice {
    let n = mu.len();
    // Prime-exponent vectors: μ_i = sign_i * Π p^{e_{p,i}}.
    let mut primes: Vec<BigInt> = Vec::new();
    let mut exps: Vec<Vec<BigInt>> = Vec::new(); // per prime, per multiplier
    let mut signs: Vec<bool> = Vec::with_capacity(n); // true = negative
    for (i, m) in mu.iter().enumerate() {
        signs.push(m.is_negative());
        for (base, sgn) in [(m.numer().abs(), 1i64), (m.denom().abs(), -1i64)] {
            for (p, e) in factorize(&base) {
                let row = match primes.iter().position(|q| *q == p) {
                    Some(idx) => idx,
                    None => {
                        primes.push(p);
                        exps.push(vec![BigInt::zero(); n]);
                        primes.len() - 1
                    }
                };
                exps[row][i] += BigInt::from(sgn) * BigInt::from(e);
            }
        }
    }
    let kernel = integer_kernel(&exps, n);
    // Impose the sign character: Σ k_i over negative multipliers must be even.
    let parity = |k: &[BigInt]| -> bool {
        let mut acc = BigInt::zero();
        for (ki, &neg) in k.iter().zip(&signs) {
            if neg {
                acc += ki;
            }
        }
        acc.is_odd()
    };
    let mut even: Vec<Vec<BigInt>> = Vec::new();
    let mut odd: Vec<Vec<BigInt>> = Vec::new();
    for k in kernel {
        if parity(&k) {
            odd.push(k);
        } else {
            even.push(k);
        }
    }
    if let Some(first_odd) = odd.first().cloned() {
        for other in &odd[1..] {
            let diff: Vec<BigInt> = other.iter().zip(&first_odd).map(|(a, b)| a - b).collect();
            even.push(diff);
        }
        even.push(first_odd.iter().map(|v| v * BigInt::from(2)).collect());
    }
    Lattice::exact(n, hnf_row(&even))
}

/// Trial-division factorization; inputs here are desk-scale multiplier
/// numerators and denominators.
fn factorize(v: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut v = v.abs();
    if v <= BigInt::one() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= v {
        let mut e = 0u32;
        while (&v % &p).is_zero() {
            v /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if v > BigInt::one() {
        out.push((v, 1));
    }
    out
}

fn multiplicative_lattice_numeric(
    mu: &[num_complex::Complex64],
    tol: f64,
    kmax: i64,
) -> Result<Lattice, ResonanceError> {
    if !(tol > 0.0) {
        return Err(ResonanceError::InvalidTolerance);
    }
    let n = mu.len();
    let scale = 1.0 / tol;
    let logs: Vec<f64> = mu.iter().map(|z| z.norm().ln()).collect();
    let args: Vec<f64> = mu.iter().map(|z| z.arg() / (2.0 * PI)).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut v = vec![BigInt::zero(); n + 2];
        v[i] = BigInt::one();
        v[n] = float_to_bigint(logs[i] * scale);
        v[n + 1] = float_to_bigint(args[i] * scale);
        rows.push(v);
    }
    // Auxiliary vector for the 2π multiple of the argument row.
    let mut aux = vec![BigInt::zero(); n + 2];
    aux[n + 1] = float_to_bigint(scale);
    rows.push(aux);
    let reduced = lll_reduce(&rows);
    let residual = |k: &[BigInt]| -> f64 {
        let mut lres = 0.0;
        let mut ares = 0.0;
        for i in 0..n {
            let ki = k[i].to_f64().unwrap_or(f64::NAN);
            lres += ki * logs[i];
            ares += ki * mu[i].arg();
        }
        // wrap the argument residual to (-π, π]
        let ares = ares - (ares / (2.0 * PI)).round() * 2.0 * PI;
        (num_complex::Complex64::new(lres, ares).exp() - 1.0).norm()
    };
    let accepted: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|v| v[..n].to_vec())
        .filter(|k| {
            !k.iter().all(BigInt::is_zero)
                && k.iter().all(|ki| ki.abs() <= BigInt::from(kmax))
                && residual(k) <= tol
        })
        .collect();
    let mut basis = hnf_row(&accepted);
    basis.retain(|k| residual(k) <= tol);
    let residuals: Vec<f64> = basis.iter().map(|k| residual(k)).collect();
    let rank = basis.len();
    Ok(Lattice {
        nvars: n,
        basis,
        rank,
        mode: LatticeMode::Numeric,
        residuals,
        tolerance: Some(tol),
        search_bound: Some(kmax),
    })
}

/// Result of a resonance bound computation.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound: usize,
    pub lattice: Lattice,
    pub spectrum: SpectrumReport,
}

/// Upper bound on the number of functionally independent generalized
/// rational first integrals at a singularity: the rank of the additive
/// resonant lattice of the Jacobian spectrum. Exactness of the spectrum
/// propagates into the report.
pub fn theorem1_bound(
    f: &VectorField,
    x0: &[GaussRat],
    tol: f64,
    kmax: i64,
) -> Result<BoundReport, ResonanceError> {
    if let Err((component, value)) = f.check_singular_at(x0) {
        return Err(ResonanceError::NotASingularity {
            component,
            value: value.to_string(),
        });
    }
    let jac = f.jacobian_at(x0);
    theorem1_bound_of_matrix(&jac, tol, kmax)
}

/// The same bound from an explicit (Jacobian) matrix.
pub fn theorem1_bound_of_matrix(
    jac: &Matrix,
    tol: f64,
    kmax: i64,
) -> Result<BoundReport, ResonanceError> {
    let spectrum = eigenvalues(jac);
    let lattice = additive_lattice_of_spectrum(&spectrum, tol, kmax)?;
    Ok(BoundReport { bound: lattice.rank, lattice, spectrum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn gr(v: i64) -> GaussRat {
        GaussRat::from_int(v)
    }

    #[test]
    fn additive_exact_examples() {
        let l = additive_lattice_exact(&[gr(1), gr(-1)]);
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![1, 1]]);

        let l = additive_lattice_exact(&[gr(2), gr(3)]);
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![3, -2]]);

        let l = additive_lattice_exact(&[gr(0), gr(0)]);
        assert_eq!(l.rank, 2);
        assert_eq!(l.basis_i64(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn additive_exact_complex_pair() {
        // λ = (i, -i): kernel needs both real and imaginary rows; (1,1) resonates
        let l = additive_lattice_exact(&[GaussRat::i(), -GaussRat::i()]);
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![1, 1]]);
    }

    #[test]
    fn additive_numeric_matches_exact() {
        let l = additive_lattice_numeric(
            &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            1e-10,
            10,
        )
        .unwrap();
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![1, 1]]);

        let l = additive_lattice_numeric(
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(-2.0, 0.0),
            ],
            1e-10,
            10,
        )
        .unwrap();
        let exact = additive_lattice_exact(&[gr(1), GaussRat::from_ratio(1, 2), gr(-2)]);
        assert_eq!(l.rank, exact.rank);
        assert_eq!(l.basis, exact.basis);
        assert!(l.residuals.iter().all(|&r| r <= 1e-10));
    }

    #[test]
    fn additive_numeric_nonresonant() {
        let l = additive_lattice_numeric(
            &[Complex64::new(1.0, 0.0), Complex64::new(std::f64::consts::SQRT_2, 0.0)],
            1e-10,
            50,
        )
        .unwrap();
        assert_eq!(l.rank, 0);
    }

    #[test]
    fn tolerance_refusal() {
        assert_eq!(
            additive_lattice_numeric(&[Complex64::new(1.0, 0.0)], 0.0, 10),
            Err(ResonanceError::InvalidTolerance)
        );
    }

    #[test]
    fn multiplicative_examples() {
        let ex = |v: &[GaussRat]| -> Vec<ScalarValue> {
            v.iter().cloned().map(ScalarValue::Exact).collect()
        };
        // μ = (1,1): everything resonates
        let l = multiplicative_lattice(&ex(&[gr(1), gr(1)]), 1e-10, 50).unwrap();
        assert_eq!(l.rank, 2);
        assert!(l.is_exact());
        // μ = (2, 1/2): k1 = k2
        let l = multiplicative_lattice(
            &ex(&[gr(2), GaussRat::from_ratio(1, 2)]),
            1e-10,
            50,
        )
        .unwrap();
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![1, 1]]);
        // μ = (2, 3): unique factorization, no relation
        let l = multiplicative_lattice(&ex(&[gr(2), gr(3)]), 1e-10, 50).unwrap();
        assert_eq!(l.rank, 0);
        // zero multiplier refused
        assert_eq!(
            multiplicative_lattice(&ex(&[gr(0)]), 1e-10, 50),
            Err(ResonanceError::ZeroMultiplier { index: 0 })
        );
    }

    #[test]
    fn multiplicative_signs() {
        let ex = |v: &[GaussRat]| -> Vec<ScalarValue> {
            v.iter().cloned().map(ScalarValue::Exact).collect()
        };
        // μ = (-1, -1): (-1)^{k1}(-1)^{k2} = 1 iff k1+k2 even
        let l = multiplicative_lattice(&ex(&[gr(-1), gr(-1)]), 1e-10, 50).unwrap();
        assert_eq!(l.rank, 2);
        assert_eq!(l.basis_i64(), vec![vec![1, 1], vec![0, 2]]);
        // μ = (-2, 2): the 2-adic row forces k2 = -k1, the sign row forces k1 even
        let l = multiplicative_lattice(&ex(&[gr(-2), gr(2)]), 1e-10, 50).unwrap();
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![2, -2]]);
    }

    #[test]
    fn multiplicative_numeric_route() {
        // μ = (e^{2π}, e^{-2π}): relation (1,1) numerically
        let m = (2.0 * PI).exp();
        let l = multiplicative_lattice(
            &[
                ScalarValue::Numeric(Complex64::new(m, 0.0)),
                ScalarValue::Numeric(Complex64::new(1.0 / m, 0.0)),
            ],
            1e-9,
            50,
        )
        .unwrap();
        assert_eq!(l.rank, 1);
        assert_eq!(l.basis_i64(), vec![vec![1, 1]]);
        // complex pair on the unit circle: μ = (i, -i)
        let l = multiplicative_lattice(
            &[
                ScalarValue::Numeric(Complex64::new(0.0, 1.0)),
                ScalarValue::Numeric(Complex64::new(0.0, -1.0)),
            ],
            1e-9,
            50,
        )
        .unwrap();
        // k=(1,1) works: i * (-i) = 1; also (4,0): i^4 = 1
        assert_eq!(l.rank, 2);
    }

    #[test]
    fn theorem1_examples() {
        use crate::parse::parse_vector_field;
        let f = parse_vector_field("vars x,y; dx = x; dy = -y").unwrap();
        let origin = [gr(0), gr(0)];
        let r = theorem1_bound(&f, &origin, DEFAULT_TOL, DEFAULT_KMAX).unwrap();
        assert_eq!(r.bound, 1);

        let f = parse_vector_field("vars x,y; dx = 2*x; dy = 3*y").unwrap();
        let r = theorem1_bound(&f, &origin, DEFAULT_TOL, DEFAULT_KMAX).unwrap();
        assert_eq!(r.bound, 1);
        assert_eq!(r.lattice.basis_i64(), vec![vec![3, -2]]);

        let f = parse_vector_field("vars x,y; dx = x; dy = y").unwrap();
        let r = theorem1_bound(&f, &origin, DEFAULT_TOL, DEFAULT_KMAX).unwrap();
        assert_eq!(r.bound, 1);
        assert_eq!(r.lattice.basis_i64(), vec![vec![1, -1]]);

        // not a singularity
        let f = parse_vector_field("vars x,y; dx = x + 1; dy = y").unwrap();
        let e = theorem1_bound(&f, &origin, DEFAULT_TOL, DEFAULT_KMAX).unwrap_err();
        assert!(matches!(e, ResonanceError::NotASingularity { component: 0, .. }));
    }

    #[test]
    fn scale_invariance() {
        // lattice of λ equals lattice of c·λ for nonzero rational c
        let lams = [gr(2), gr(-3), GaussRat::from_ratio(5, 7)];
        let l1 = additive_lattice_exact(&lams);
        let c = GaussRat::from_ratio(-7, 3);
        let scaled: Vec<GaussRat> = lams.iter().map(|l| l * &c).collect();
        let l2 = additive_lattice_exact(&scaled);
        assert_eq!(l1.basis, l2.basis);
    }
}
