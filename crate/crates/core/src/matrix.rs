//! Dense matrices with either exact Gaussian-rational or numeric complex
//! entries (tagged, uniform per matrix), plus the exact linear algebra the
//! rest of the crate leans on: Faddeev-LeVerrier characteristic polynomials,
//! fraction-free Bareiss rank, exact nullspace and solve, complex LU.

use crate::scalar::GaussRat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct ExactMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussRat>,
}

impl ExactMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMat { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        ExactMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        ExactMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussRat::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &ExactMat) -> ExactMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = ExactMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMat) -> ExactMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = &out.data[i] + &rhs.data[i];
        }
        out
    }

    pub fn sub(&self, rhs: &ExactMat) -> ExactMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = &out.data[i] - &rhs.data[i];
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> ExactMat {
        ExactMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> GaussRat {
        assert!(self.is_square());
        let mut t = GaussRat::zero();
        for i in 0..self.rows {
            t = &t + &self[(i, i)];
        }
        t
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<GaussRat> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Monic characteristic polynomial by the Faddeev-LeVerrier recurrence.
    /// Returned coefficients `c[0..=n]` satisfy
    /// `p(t) = c[n] t^n + ... + c[1] t + c[0]` with `c[n] = 1`.
    pub fn charpoly(&self) -> Vec<GaussRat> {
        assert!(self.is_square());
        let n = self.rows;
        // p(t) = t^n - s1 t^{n-1} - s2 t^{n-2} - ... - sn
        let mut coeffs = vec![GaussRat::zero(); n + 1];
        coeffs[n] = GaussRat::one();
        let mut m = self.clone();
        let mut s = Vec::with_capacity(n);
        for k in 1..=n {
            let sk = &m.trace() / &GaussRat::from_int(k as i64);
            s.push(sk.clone());
            if k < n {
                let mut shifted = m.clone();
                for i in 0..n {
                    shifted[(i, i)] = &shifted[(i, i)] - &sk;
                }
                m = self.mul(&shifted);
            }
        }
        for k in 1..=n {
            coeffs[n - k] = -&s[k - 1];
        }
        coeffs
    }

    pub fn to_c64(&self) -> NumMat {
        NumMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussRat::to_c64).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMat {
    type Output = GaussRat;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRat {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct NumMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl NumMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        NumMat { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = NumMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        NumMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &NumMat) -> NumMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = NumMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn charpoly(&self) -> Vec<Complex64> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Complex64::zero(); n + 1];
        coeffs[n] = Complex64::one();
        let mut m = self.clone();
        let mut s = Vec::with_capacity(n);
        for k in 1..=n {
            let sk = m.trace() / k as f64;
            s.push(sk);
            if k < n {
                let mut shifted = m.clone();
                for i in 0..n {
                    shifted[(i, i)] -= sk;
                }
                m = self.mul(&shifted);
            }
        }
        for k in 1..=n {
            coeffs[n - k] = -s[k - 1];
        }
        coeffs
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::one();
        for col in 0..n {
            let (piv, mag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if mag == 0.0 {
                return Complex64::zero();
            }
            if piv != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(piv, j)];
                    a[(piv, j)] = tmp;
                }
                det = -det;
            }
            det *= a[(col, col)];
            for r in col + 1..n {
                let factor = a[(r, col)] / a[(col, col)];
                for j in col..n {
                    let t = factor * a[(col, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        det
    }

    /// Solve `A x = b` by LU with partial pivoting. `None` when singular to
    /// working precision.
    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        assert!(self.is_square());
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.to_vec();
        for col in 0..n {
            let (piv, mag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .max_by(|p, q| p.1.total_cmp(&q.1))
                .unwrap();
            if mag < 1e-300 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(piv, j)];
                    a[(piv, j)] = tmp;
                }
                x.swap(piv, col);
            }
            for r in col + 1..n {
                let factor = a[(r, col)] / a[(col, col)];
                for j in col..n {
                    let t = factor * a[(col, j)];
                    a[(r, j)] -= t;
                }
                let t = factor * x[col];
                x[r] -= t;
            }
        }
        for col in (0..n).rev() {
            let mut s = x[col];
            for j in col + 1..n {
                s -= a[(col, j)] * x[j];
            }
            x[col] = s / a[(col, col)];
        }
        Some(x)
    }

    /// Max-absolute-entry norm.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, rhs: &NumMat) -> NumMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] -= rhs.data[i];
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for NumMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for NumMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A matrix whose entries are uniformly exact or uniformly numeric.
#[derive(Clone, PartialEq, Debug)]
pub enum Matrix {
    Exact(ExactMat),
    Numeric(NumMat),
}

impl Matrix {
    pub fn rows(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.rows,
            Matrix::Numeric(m) => m.rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.cols,
            Matrix::Numeric(m) => m.cols,
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn to_c64(&self) -> NumMat {
        match self {
            Matrix::Exact(m) => m.to_c64(),
            Matrix::Numeric(m) => m.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactMat> {
        match self {
            Matrix::Exact(m) => Some(m),
            Matrix::Numeric(_) => None,
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matrix::Exact(m) => {
                for i in 0..m.rows {
                    let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
                    writeln!(f, "[{}]", row.join(", "))?;
                }
                Ok(())
            }
            Matrix::Numeric(m) => {
                for i in 0..m.rows {
                    let row: Vec<String> = (0..m.cols)
                        .map(|j| format!("{:.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im))
                        .collect();
                    writeln!(f, "[{}]", row.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Exact elimination: Bareiss rank over the Gaussian integers, reduced
// echelon nullspace/solve over the Gaussian rationals.
// ---------------------------------------------------------------------------

/// Gaussian integer, the fraction-free working type for Bareiss.
#[derive(Clone, PartialEq, Eq, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Exact division in Z[i]; panics if not divisible (Bareiss guarantees it).
    fn exact_div(&self, o: &GaussInt) -> GaussInt {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = num_integer::Integer::div_rem(&re, &n);
        let (qi, ri) = num_integer::Integer::div_rem(&im, &n);
        debug_assert!(rr.is_zero() && ri.is_zero(), "non-exact Bareiss division");
        GaussInt { re: qr, im: qi }
    }
}

/// Clear denominators row-wise, mapping a Gaussian-rational matrix to a
/// Gaussian-integer one with the same rank and nullspace.
fn clear_denominators(m: &[Vec<GaussRat>]) -> Vec<Vec<GaussInt>> {
    m.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for v in row {
                lcm = num_integer::Integer::lcm(&lcm, v.re.denom());
                lcm = num_integer::Integer::lcm(&lcm, v.im.denom());
            }
            row.iter()
                .map(|v| {
                    let re = v.re.numer() * (&lcm / v.re.denom());
                    let im = v.im.numer() * (&lcm / v.im.denom());
                    GaussInt { re, im }
                })
                .collect()
        })
        .collect()
}

/// Rank over the Gaussian rationals via fraction-free Bareiss elimination on
/// the denominator-cleared Gaussian-integer matrix. No floating point.
pub fn rank_bareiss(m: &[Vec<GaussRat>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = clear_denominators(m);
    let mut prev = GaussInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = a[row][col].mul(&a[r][c]).sub(&a[r][col].mul(&a[row][c]));
                a[r][c] = t.exact_div(&prev);
            }
            a[r][col] = GaussInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over the Gaussian rationals; returns pivot
/// columns. Exact field arithmetic.
pub fn rref(a: &mut Vec<Vec<GaussRat>>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].inv();
        for c in col..cols {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let t = &factor * &a[row][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Canonical basis of the right nullspace `{x : A x = 0}`, one vector per
/// free column, each with a 1 in its free coordinate.
pub fn nullspace(m: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if cols == 0 {
        return vec![];
    }
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![GaussRat::zero(); cols];
        v[free] = GaussRat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Exact solution of `A x = b`; `None` when inconsistent. Free variables are
/// set to zero.
pub fn solve_exact(m: &[Vec<GaussRat>], b: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let rows = m.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<GaussRat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    // Inconsistent iff the augmented column is a pivot.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![GaussRat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        // diag(1,-1): t^2 - 1
        let m = ExactMat::from_int_rows(&[&[1, 0], &[0, -1]]);
        let p = m.charpoly();
        assert_eq!(p, vec![GaussRat::from_int(-1), GaussRat::zero(), GaussRat::one()]);
        // [[2,1],[12,3]]: t^2 - 5t - 6
        let k = ExactMat::from_int_rows(&[&[2, 1], &[12, 3]]);
        let p = k.charpoly();
        assert_eq!(
            p,
            vec![GaussRat::from_int(-6), GaussRat::from_int(-5), GaussRat::one()]
        );
    }

    #[test]
    fn bareiss_rank() {
        let rows = vec![
            vec![GaussRat::from_int(1), GaussRat::from_int(2), GaussRat::from_int(3)],
            vec![GaussRat::from_int(2), GaussRat::from_int(4), GaussRat::from_int(6)],
            vec![GaussRat::from_int(0), GaussRat::from_int(1), GaussRat::from_int(1)],
        ];
        assert_eq!(rank_bareiss(&rows), 2);
        let full = vec![
            vec![GaussRat::from_ratio(1, 2), GaussRat::zero()],
            vec![GaussRat::zero(), GaussRat::i()],
        ];
        assert_eq!(rank_bareiss(&full), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        // x + 2y + 3z = 0 has nullspace of dim 2
        let m = vec![vec![
            GaussRat::from_int(1),
            GaussRat::from_int(2),
            GaussRat::from_int(3),
        ]];
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = v
                .iter()
                .zip(&m[0])
                .fold(GaussRat::zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
        let a = vec![
            vec![GaussRat::from_int(2), GaussRat::from_int(1)],
            vec![GaussRat::from_int(1), GaussRat::from_int(-1)],
        ];
        let b = vec![GaussRat::from_int(5), GaussRat::from_int(1)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, vec![GaussRat::from_int(2), GaussRat::from_int(1)]);
        // inconsistent
        let a2 = vec![
            vec![GaussRat::from_int(1), GaussRat::from_int(1)],
            vec![GaussRat::from_int(1), GaussRat::from_int(1)],
        ];
        let b2 = vec![GaussRat::from_int(0), GaussRat::from_int(1)];
        assert!(solve_exact(&a2, &b2).is_none());
    }

    #[test]
    fn numeric_det_and_solve() {
        let m = NumMat::from_rows(vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
        ]);
        assert!((m.det() - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        let x = m
            .solve(&[Complex64::new(5.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!((x[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
