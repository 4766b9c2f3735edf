//! Eigenvalue computation — exact over the Gaussian rationals when the
//! characteristic polynomial splits there, numeric with certified error
//! radii otherwise — and explicit matrices of the two linear operators on
//! spaces of homogeneous polynomials whose spectra drive the resonance
//! arguments:
//!
//! * `h ↦ ⟨∂h, Ax⟩ − c·h` (Lie-derivative operator), spectrum `{⟨k,λ⟩ − c}`;
//! * `h ↦ h(Bx) − c·h` (composition operator), spectrum `{μ^k − c}`.

use crate::matrix::{ExactMat, Matrix, NumMat};
use crate::poly::{monomials_of_degree, Poly};
use crate::scalar::{rationalize_c64, GaussRat};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

/// Numeric roots closer than this merge into one value with summed
/// multiplicity (the default; see [`eigenvalues_with`]).
pub const DEFAULT_MERGE_TOL: f64 = 1e-10;

/// Durand-Kerner iteration cap and relative convergence threshold.
const DK_MAX_ITERS: usize = 200;
const DK_REL_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: crate::scalar::ScalarValue,
    pub error_radius: f64,
    pub multiplicity: usize,
}

/// Eigenvalues of a matrix, tagged exact-rational or
/// numeric-complex-with-error. Multiplicities sum to the dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub values: Vec<Eigenvalue>,
    pub mode: SpectrumMode,
}

impl SpectrumReport {
    pub fn dimension(&self) -> usize {
        self.values.iter().map(|v| v.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.mode == SpectrumMode::Exact
    }

    /// All eigenvalues expanded by multiplicity, as floats.
    pub fn values_c64(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.dimension());
        for v in &self.values {
            for _ in 0..v.multiplicity {
                out.push(v.value.to_c64());
            }
        }
        out
    }

    /// All eigenvalues expanded by multiplicity when every one is exact.
    pub fn exact_values(&self) -> Option<Vec<GaussRat>> {
        let mut out = Vec::with_capacity(self.dimension());
        for v in &self.values {
            let g = v.value.as_exact()?;
            for _ in 0..v.multiplicity {
                out.push(g.clone());
            }
        }
        Some(out)
    }

    pub fn max_error_radius(&self) -> f64 {
        self.values.iter().map(|v| v.error_radius).fold(0.0, f64::max)
    }

    /// Whether `target` appears among the eigenvalues: exactly in exact
    /// mode, within `tol + error_radius` in numeric mode.
    pub fn contains(&self, target: &GaussRat, tol: f64) -> bool {
        let t64 = target.to_c64();
        self.values.iter().any(|v| match &v.value {
            crate::scalar::ScalarValue::Exact(g) => g == target,
            crate::scalar::ScalarValue::Numeric(z) => (z - t64).norm() <= tol + v.error_radius,
        })
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            SpectrumMode::Exact => "exact",
            SpectrumMode::Numeric => "numeric",
        };
        write!(f, "[{mode}] ")?;
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|v| {
                let mult = if v.multiplicity > 1 {
                    format!(" (x{})", v.multiplicity)
                } else {
                    String::new()
                };
                match &v.value {
                    crate::scalar::ScalarValue::Exact(g) => format!("{g}{mult}"),
                    crate::scalar::ScalarValue::Numeric(z) => {
                        format!("{:.12}{:+.12}i ± {:.2e}{}", z.re, z.im, v.error_radius, mult)
                    }
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Eigenvalues with the default numeric merge tolerance.
pub fn eigenvalues(a: &Matrix) -> SpectrumReport {
    eigenvalues_with(a, DEFAULT_MERGE_TOL)
}

/// Eigenvalues of a square matrix.
///
/// Exact mode is attempted for exact matrices: triangular read-off, then
/// Gaussian-rational root extraction of the Faddeev-LeVerrier characteristic
/// polynomial (numerically guided candidates, each verified symbolically and
/// deflated exactly; quadratic formula with an exact square-root test at
/// degree 2). Any unextractable factor drops the whole spectrum to numeric
/// mode, where Durand-Kerner roots carry a-posteriori Weierstrass error
/// radii and near-coincident roots merge at `merge_tol`.
pub fn eigenvalues_with(a: &Matrix, merge_tol: f64) -> SpectrumReport {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    if let Matrix::Exact(m) = a {
        if m.is_lower_triangular() || m.is_upper_triangular() {
            return exact_report(m.diagonal());
        }
        let coeffs = m.charpoly();
        if let Some(roots) = exact_roots(&coeffs) {
            return exact_report(roots);
        }
    }
    let nm = a.to_c64();
    let coeffs = nm.charpoly();
    let roots = durand_kerner(&coeffs);
    numeric_report(roots, merge_tol, &coeffs)
}

fn exact_report(mut roots: Vec<GaussRat>) -> SpectrumReport {
    roots.sort_by(|a, b| a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)));
    let mut values: Vec<Eigenvalue> = Vec::new();
    for r in roots {
        match values.last_mut() {
            Some(last) if last.value.as_exact() == Some(&r) => last.multiplicity += 1,
            _ => values.push(Eigenvalue {
                value: crate::scalar::ScalarValue::Exact(r),
                error_radius: 0.0,
                multiplicity: 1,
            }),
        }
    }
    SpectrumReport { values, mode: SpectrumMode::Exact }
}

fn numeric_report(roots: Vec<(Complex64, f64)>, merge_tol: f64, coeffs: &[Complex64]) -> SpectrumReport {
    let mut roots = roots;
    roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    // Roots merge when within merge_tol or when their certified disks come
    // close (3x overlap margin) — a multiple root is only resolvable to
    // ~eps^(1/m) individually, but the cluster center recovers ~eps accuracy.
    let mut clusters: Vec<Vec<(Complex64, f64)>> = Vec::new();
    for (z, r) in roots {
        match clusters.iter_mut().find(|members| {
            members
                .iter()
                .any(|(m, mr)| (m - z).norm() <= merge_tol.max(3.0 * (mr + r)))
        }) {
            Some(members) => members.push((z, r)),
            None => clusters.push(vec![(z, r)]),
        }
    }
    let values = clusters
        .into_iter()
        .map(|members| {
            let k = members.len() as f64;
            let centroid = members.iter().map(|(m, _)| m).sum::<Complex64>() / k;
            let spread = |center: Complex64| {
                members
                    .iter()
                    .map(|(m, r)| (m - center).norm() + r)
                    .fold(0.0, f64::max)
            };
            // An m-fold root is only resolvable to ~eps^(1/m) individually,
            // but the cluster center is the well-conditioned simple root of
            // the (m-1)-th derivative; polish it there.
            let center = match polish_cluster_center(coeffs, members.len(), centroid) {
                Some(z) if (z - centroid).norm() <= spread(centroid) + merge_tol => z,
                _ => centroid,
            };
            Eigenvalue {
                value: crate::scalar::ScalarValue::Numeric(center),
                error_radius: spread(center),
                multiplicity: members.len(),
            }
        })
        .collect();
    SpectrumReport { values, mode: SpectrumMode::Numeric }
}

fn poly_derivative_c64(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

fn poly_eval_c64(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn polish_cluster_center(coeffs: &[Complex64], multiplicity: usize, start: Complex64) -> Option<Complex64> {
    let mut q = coeffs.to_vec();
    for _ in 1..multiplicity {
        q = poly_derivative_c64(&q);
    }
    if q.len() < 2 {
        return None;
    }
    let dq = poly_derivative_c64(&q);
    let mut z = start;
    for _ in 0..60 {
        let d = poly_eval_c64(&dq, z);
        if d.norm() < 1e-300 {
            return None;
        }
        let step = poly_eval_c64(&q, z) / d;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    Some(z)
}

/// All roots of a Gaussian-rational polynomial when it splits over the
/// Gaussian rationals; `None` otherwise. `coeffs[k]` multiplies `t^k`.
pub fn exact_roots(coeffs: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    let deg = c.len() - 1;
    let roots = exact_roots_partial(&c);
    (roots.len() == deg).then_some(roots)
}

/// The exactly extractable Gaussian-rational roots of a polynomial
/// (with multiplicity, each verified symbolically); extraction stops at the
/// first factor that does not split.
pub fn exact_roots_partial(coeffs: &[GaussRat]) -> Vec<GaussRat> {
    let mut c = coeffs.to_vec();
    // strip (exactly zero) leading coefficients, normalize monic
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    let lead = c.last().unwrap().clone();
    assert!(!lead.is_zero(), "zero polynomial has no roots to extract");
    if !lead.is_one() {
        let inv = lead.inv();
        for v in &mut c {
            *v = &*v * &inv;
        }
    }
    let mut roots = Vec::new();
    loop {
        match c.len() {
            0 | 1 => return roots,
            2 => {
                roots.push(-&c[0]);
                return roots;
            }
            3 => {
                // t^2 + bt + a: discriminant b^2 - 4a must be a square in Q(i)
                let b = c[1].clone();
                let a = c[0].clone();
                let disc = &(&b * &b) - &(&GaussRat::from_int(4) * &a);
                let Some(s) = disc.sqrt_exact() else { return roots };
                let half = GaussRat::from_ratio(1, 2);
                roots.push(&(&(-&b) + &s) * &half);
                roots.push(&(&(-&b) - &s) * &half);
                return roots;
            }
            _ => {
                // Numerically guided candidate extraction with symbolic
                // verification and exact deflation.
                let fc: Vec<Complex64> = c.iter().map(GaussRat::to_c64).collect();
                let numeric = durand_kerner(&fc);
                let mut found = None;
                for (z, _) in &numeric {
                    if let Some(cand) = rationalize_c64(*z, 1_000_000, 1e-6) {
                        if poly_eval_exact(&c, &cand).is_zero() {
                            found = Some(cand);
                            break;
                        }
                    }
                }
                let Some(root) = found else { return roots };
                c = deflate(&c, &root);
                roots.push(root);
            }
        }
    }
}

fn poly_eval_exact(coeffs: &[GaussRat], x: &GaussRat) -> GaussRat {
    let mut acc = GaussRat::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Synthetic division of a monic polynomial by `(t - r)`; the remainder is
/// known to vanish.
fn deflate(coeffs: &[GaussRat], r: &GaussRat) -> Vec<GaussRat> {
    let n = coeffs.len() - 1;
    let mut out = vec![GaussRat::zero(); n];
    let mut carry = coeffs[n].clone();
    for k in (0..n).rev() {
        out[k] = carry.clone();
        carry = &coeffs[k] + &(&carry * r);
    }
    debug_assert!(carry.is_zero(), "deflation by a non-root");
    out
}

/// Durand-Kerner (Weierstrass) simultaneous root iteration on a monic
/// polynomial. Returns `(root, error_radius)` pairs; the radius is the
/// a-posteriori Weierstrass bound `n * |w_i|` from the final correction.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<(Complex64, f64)> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() == 0.0 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = *c.last().unwrap();
    for v in &mut c {
        *v /= lead;
    }
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::zero();
        for k in (0..c.len()).rev() {
            acc = acc * z + c[k];
        }
        acc
    };
    // Running bound on the float evaluation error of p(z): |error| is
    // O(deg · eps · Σ|c_k||z|^k). Without it, catastrophic cancellation near
    // multiple roots makes |p(z)| = 0 look like a certified zero.
    let eval_noise = |z: Complex64| -> f64 {
        let zn = z.norm();
        let mut s = 0.0;
        let mut p = 1.0;
        for ck in &c {
            s += ck.norm() * p;
            p *= zn;
        }
        (2.0 * n as f64 + 1.0) * f64::EPSILON * s
    };
    // Standard deterministic starting points on a spiral.
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1))
        .collect();
    let mut w = vec![Complex64::zero(); n];
    for _ in 0..DK_MAX_ITERS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            w[i] = eval(z[i]) / denom;
            z[i] -= w[i];
            let rel = w[i].norm() / z[i].norm().max(1.0);
            max_step = max_step.max(rel);
        }
        if max_step <= DK_REL_TOL {
            break;
        }
    }
    (0..n)
        .map(|i| {
            let mut denom = 1.0f64;
            for j in 0..n {
                if j != i {
                    denom *= (z[i] - z[j]).norm();
                }
            }
            let w_eff = (eval(z[i]).norm() + eval_noise(z[i])) / denom.max(1e-300);
            (z[i], n as f64 * w_eff)
        })
        .collect()
}

fn lift_to_exact(m: &NumMat) -> ExactMat {
    let mut out = ExactMat::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let z = m[(i, j)];
            out[(i, j)] = GaussRat::new(
                BigRational::from_float(z.re).unwrap_or_else(BigRational::zero),
                BigRational::from_float(z.im).unwrap_or_else(BigRational::zero),
            );
        }
    }
    out
}

/// The basis of homogeneous degree-`m` polynomials used for operator
/// matrices: monomials in descending graded-lex order.
pub fn operator_basis(nvars: usize, m: u32) -> Vec<crate::poly::Mono> {
    monomials_of_degree(nvars, m)
}

fn operator_matrix_exact<F>(n: usize, m: u32, c: &GaussRat, image: F) -> ExactMat
where
    F: Fn(&Poly) -> Poly,
{
    let basis = operator_basis(n, m);
    let dim = basis.len();
    let index: std::collections::HashMap<&crate::poly::Mono, usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = ExactMat::zeros(dim, dim);
    for (col, mono) in basis.iter().enumerate() {
        let h = Poly::monomial(n, mono.0.clone(), GaussRat::one());
        let img = &image(&h) - &h.scale(c);
        for (mm, coeff) in img.terms() {
            let row = *index
                .get(mm)
                .expect("operator image stays in the homogeneous space");
            out[(row, col)] = coeff.clone();
        }
    }
    out
}

/// Matrix of `h ↦ ⟨∂h, Ax⟩ − c·h` on homogeneous degree-`m` polynomials,
/// in the descending graded-lex monomial basis.
pub fn lie_operator_matrix(a: &Matrix, m: u32, c: &GaussRat) -> Matrix {
    assert!(a.is_square());
    assert!(m >= 1, "operator degree must be at least 1");
    let build = |e: &ExactMat| {
        let n = e.rows;
        let ax: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p = &p + &Poly::var(n, j).scale(&e[(i, j)]);
                }
                p
            })
            .collect();
        operator_matrix_exact(n, m, c, |h| {
            let mut acc = Poly::zero(n);
            for (i, axi) in ax.iter().enumerate() {
                acc = &acc + &(&h.partial(i) * axi);
            }
            acc
        })
    };
    match a {
        Matrix::Exact(e) => Matrix::Exact(build(e)),
        Matrix::Numeric(nm) => Matrix::Numeric(build(&lift_to_exact(nm)).to_c64()),
    }
}

/// Matrix of `h ↦ h(Bx) − c·h` on homogeneous degree-`m` polynomials, in
/// the descending graded-lex monomial basis.
pub fn composition_operator_matrix(b: &Matrix, m: u32, c: &GaussRat) -> Matrix {
    assert!(b.is_square());
    assert!(m >= 1, "operator degree must be at least 1");
    let build = |e: &ExactMat| {
        let n = e.rows;
        let bx: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(n);
                for j in 0..n {
                    p = &p + &Poly::var(n, j).scale(&e[(i, j)]);
                }
                p
            })
            .collect();
        operator_matrix_exact(n, m, c, |h| h.substitute(&bx))
    };
    match b {
        Matrix::Exact(e) => Matrix::Exact(build(e)),
        Matrix::Numeric(nm) => Matrix::Numeric(build(&lift_to_exact(nm)).to_c64()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMat;

    fn diag(entries: &[i64]) -> Matrix {
        let n = entries.len();
        let mut m = ExactMat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = GaussRat::from_int(e);
        }
        Matrix::Exact(m)
    }

    #[test]
    fn exact_diagonal_spectrum() {
        let s = eigenvalues(&diag(&[1, -1]));
        assert!(s.is_exact());
        let vals = s.exact_values().unwrap();
        assert_eq!(vals, vec![GaussRat::from_int(-1), GaussRat::from_int(1)]);
    }

    #[test]
    fn shifted_jacobian_spectrum() {
        // [[2,1],[12,3]] has char poly t^2 - 5t - 6 = (t-6)(t+1)
        let m = Matrix::Exact(ExactMat::from_int_rows(&[&[2, 1], &[12, 3]]));
        let s = eigenvalues(&m);
        assert!(s.is_exact());
        assert_eq!(
            s.exact_values().unwrap(),
            vec![GaussRat::from_int(-1), GaussRat::from_int(6)]
        );
    }

    #[test]
    fn gaussian_rational_spectrum() {
        // [[0,1],[-1,0]] has eigenvalues ±i
        let m = Matrix::Exact(ExactMat::from_int_rows(&[&[0, 1], &[-1, 0]]));
        let s = eigenvalues(&m);
        assert!(s.is_exact());
        let vals = s.exact_values().unwrap();
        assert!(vals.contains(&GaussRat::i()));
        assert!(vals.contains(&(-GaussRat::i())));
    }

    #[test]
    fn irrational_spectrum_falls_numeric() {
        // t^2 - 2: eigenvalues ±sqrt(2)
        let m = Matrix::Exact(ExactMat::from_int_rows(&[&[0, 2], &[1, 0]]));
        let s = eigenvalues(&m);
        assert_eq!(s.mode, SpectrumMode::Numeric);
        let vals = s.values_c64();
        let mut res: Vec<f64> = vals.iter().map(|z| (z * z - 2.0).norm()).collect();
        res.sort_by(f64::total_cmp);
        assert!(res[1] < 1e-10, "numeric roots of t^2-2 inaccurate: {res:?}");
        assert!(s.max_error_radius() < 1e-8);
    }

    #[test]
    fn durand_kerner_residuals_match_radii() {
        // p(t) = (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
        let coeffs = vec![
            Complex64::new(-6.0, 0.0),
            Complex64::new(11.0, 0.0),
            Complex64::new(-6.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let roots = durand_kerner(&coeffs);
        for (z, rad) in &roots {
            let best = [1.0, 2.0, 3.0]
                .iter()
                .map(|t| (z - t).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= rad.max(1e-12), "root {z} off by {best}, radius {rad}");
        }
    }

    #[test]
    fn lie_operator_examples() {
        // A = diag(1,2), m=2, c=0 -> diag(2,3,4) on (x^2, xy, y^2)
        let a = diag(&[1, 2]);
        let op = lie_operator_matrix(&a, 2, &GaussRat::zero());
        let e = op.as_exact().unwrap();
        assert_eq!(e.diagonal(), vec![
            GaussRat::from_int(2),
            GaussRat::from_int(3),
            GaussRat::from_int(4)
        ]);
        assert!(e.is_lower_triangular() && e.is_upper_triangular());
        // shift by c=3 -> diag(-1,0,1)
        let op = lie_operator_matrix(&a, 2, &GaussRat::from_int(3));
        assert_eq!(op.as_exact().unwrap().diagonal(), vec![
            GaussRat::from_int(-1),
            GaussRat::zero(),
            GaussRat::from_int(1)
        ]);
        // A = [[1,0],[1,1]], m=2: triangular with three 2s on the diagonal
        let a = Matrix::Exact(ExactMat::from_int_rows(&[&[1, 0], &[1, 1]]));
        let op = lie_operator_matrix(&a, 2, &GaussRat::zero());
        let s = eigenvalues(&op);
        assert_eq!(
            s.exact_values().unwrap(),
            vec![GaussRat::from_int(2); 3]
        );
    }

    #[test]
    fn composition_operator_examples() {
        // B = diag(2,3), m=2, c=0 -> diag(4,6,9)
        let b = diag(&[2, 3]);
        let op = composition_operator_matrix(&b, 2, &GaussRat::zero());
        assert_eq!(op.as_exact().unwrap().diagonal(), vec![
            GaussRat::from_int(4),
            GaussRat::from_int(6),
            GaussRat::from_int(9)
        ]);
        // B = I, any m, c=1 -> zero matrix
        let op = composition_operator_matrix(&diag(&[1, 1]), 3, &GaussRat::from_int(1));
        let e = op.as_exact().unwrap();
        assert_eq!(e, &ExactMat::zeros(4, 4));
        // B = diag(2,1/2), m=2, c=1 -> diag(3,0,-3/4)
        let mut m = ExactMat::zeros(2, 2);
        m[(0, 0)] = GaussRat::from_int(2);
        m[(1, 1)] = GaussRat::from_ratio(1, 2);
        let op = composition_operator_matrix(&Matrix::Exact(m), 2, &GaussRat::from_int(1));
        assert_eq!(op.as_exact().unwrap().diagonal(), vec![
            GaussRat::from_int(3),
            GaussRat::zero(),
            GaussRat::from_ratio(-3, 4)
        ]);
    }
}
