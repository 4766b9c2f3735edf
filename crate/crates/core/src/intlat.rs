//! Integer lattice tools: row-style Hermite normal form, integer kernels of
//! integer matrices, and LLL basis reduction with exact rational
//! Gram-Schmidt data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row Hermite normal form, canonical: pivots positive, entries above each
/// pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf_row(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, _) = hnf_row_with_transform(mat);
    h
}

/// Row HNF together with a unimodular transform `u` satisfying
/// `u * mat = [H; 0]` (`u` covers all rows, including the ones mapped to
/// zero; `h` contains only the nonzero rows).
pub fn hnf_row_with_transform(mat: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut a = mat.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut r = vec![BigInt::zero(); rows];
            r[i] = BigInt::one();
            r
        })
        .collect();
    let mut r = 0usize;
    for col in 0..cols {
        if r >= rows {
            break;
        }
        // Euclidean elimination below row r in this column.
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !a[i][col].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    let i = nonzero[0];
                    a.swap(r, i);
                    u.swap(r, i);
                    break;
                }
                _ => {
                    let &imin = nonzero
                        .iter()
                        .min_by_key(|&&i| a[i][col].abs())
                        .unwrap();
                    a.swap(r, imin);
                    u.swap(r, imin);
                    for i in (r + 1)..rows {
                        if !a[i][col].is_zero() {
                            let q = a[i][col].div_floor(&a[r][col]);
                            row_sub_mul(&mut a, i, r, &q);
                            row_sub_mul(&mut u, i, r, &q);
                        }
                    }
                }
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            negate_row(&mut a, r);
            negate_row(&mut u, r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            if !a[i][col].is_zero() {
                let q = a[i][col].div_floor(&a[r][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut a, i, r, &q);
                    row_sub_mul(&mut u, i, r, &q);
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    (a, u)
}

fn row_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        *d -= q * s;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for v in &mut m[i] {
        *v = -v.clone();
    }
}

/// Basis (in HNF) of the integer kernel `{k ∈ Z^ncols : mat · k = 0}`.
/// `ncols` must be passed explicitly so that an empty constraint list keeps
/// its dimension (kernel = all of `Z^ncols`).
pub fn integer_kernel(mat: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    assert!(mat.iter().all(|r| r.len() == ncols));
    let cols = ncols;
    if mat.is_empty() {
        return (0..cols)
            .map(|i| {
                let mut v = vec![BigInt::zero(); cols];
                v[i] = BigInt::one();
                v
            })
            .collect();
    }
    // Row-reduce the transpose, carrying the transform: rows of `u` whose
    // image row is zero form a kernel basis.
    let t: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| mat.iter().map(|row| row[j].clone()).collect())
        .collect();
    let (h, u) = hnf_row_with_transform(&t);
    let rank = h.len();
    let kernel: Vec<Vec<BigInt>> = u[rank..].to_vec();
    hnf_row(&kernel)
}

fn rat(i: &BigInt) -> BigRational {
    BigRational::from_integer(i.clone())
}

fn round_rational(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// LLL reduction (δ = 99/100) of an integer basis given as rows, with exact
/// rational Gram-Schmidt arithmetic. Deterministic. Panics if the rows are
/// linearly dependent.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis.to_vec();
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let mut b = basis.to_vec();
    let dim = b[0].len();
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigRational {
        let mut acc = BigInt::zero();
        for (a, c) in x.iter().zip(y) {
            acc += a * c;
        }
        rat(&acc)
    };
    // Full GSO recomputation; dimensions here are small.
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = b.len();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> = b[i].iter().map(rat).collect();
            for j in 0..i {
                let mut num = BigRational::zero();
                for (bi, sj) in b[i].iter().zip(&star[j]) {
                    num += rat(bi) * sj;
                }
                let m: BigRational = &num / &norms[j];
                mu[i][j] = m.clone();
                for (vk, sjk) in v.iter_mut().zip(&star[j]) {
                    *vk -= &m * sjk;
                }
            }
            mu[i][i] = BigRational::one();
            let norm: BigRational = v.iter().map(|x| x * x).sum();
            assert!(!norm.is_zero(), "LLL input rows must be independent");
            star.push(v);
            norms.push(norm);
        }
        (mu, norms)
    };
    let (mut mu, mut norms) = gso(&b);
    let mut k = 1usize;
    while k < n {
        for j in (0..k).rev() {
            let q = round_rational(&mu[k][j]);
            if !q.is_zero() {
                for c in 0..dim {
                    let t = &q * &b[j][c];
                    b[k][c] -= t;
                }
                for l in 0..=j {
                    let t = &rat(&q) * &mu[j][l];
                    mu[k][l] -= t;
                }
            }
        }
        let lhs = &norms[k];
        let mukk = &mu[k][k - 1];
        let rhs = (&delta - mukk * mukk) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (m2, n2) = gso(&b);
            mu = m2;
            norms = n2;
            k = k.max(2) - 1;
        }
    }
    let _ = dot;
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn hnf_canonical_form() {
        // span{(1,-2,0),(0,4,1)} has HNF {(1,2,1),(0,4,1)}
        let h = hnf_row(&bi(&[&[1, -2, 0], &[0, 4, 1]]));
        assert_eq!(h, bi(&[&[1, 2, 1], &[0, 4, 1]]));
        // already canonical single row with positive pivot
        let h = hnf_row(&bi(&[&[-3, 2]]));
        assert_eq!(h, bi(&[&[3, -2]]));
    }

    #[test]
    fn kernel_of_row_vectors() {
        // kernel of (2,3) in Z^2 is spanned by (3,-2)
        let k = integer_kernel(&bi(&[&[2, 3]]), 2);
        assert_eq!(k, bi(&[&[3, -2]]));
        // kernel of (1,-1): (1,1)
        let k = integer_kernel(&bi(&[&[1, -1]]), 2);
        assert_eq!(k, bi(&[&[1, 1]]));
        // zero map: full lattice
        let k = integer_kernel(&bi(&[&[0, 0]]), 2);
        assert_eq!(k, bi(&[&[1, 0], &[0, 1]]));
        // kernel of 2x1+x2-4x3=0 matches the rational kernel of (1,1/2,-2)
        let k = integer_kernel(&bi(&[&[2, 1, -4]]), 3);
        assert_eq!(k, bi(&[&[1, 2, 1], &[0, 4, 1]]));
    }

    #[test]
    fn kernel_saturation() {
        // rows (2,0),(0,3): only k = 0 solves; rank-0 kernel
        let k = integer_kernel(&bi(&[&[2, 0], &[0, 3]]), 2);
        assert!(k.is_empty());
    }

    #[test]
    fn lll_finds_short_relation() {
        // Embed lambda = (1, -1) at scale 10^6: relation (1,1).
        let basis = bi(&[&[1, 0, 1_000_000], &[0, 1, -1_000_000]]);
        let red = lll_reduce(&basis);
        assert!(
            red.iter().any(|v| {
                (v[0] == BigInt::one() && v[1] == BigInt::one() && v[2].is_zero())
                    || (v[0] == BigInt::from(-1) && v[1] == BigInt::from(-1) && v[2].is_zero())
            }),
            "short relation not found: {red:?}"
        );
    }

    #[test]
    fn lll_preserves_lattice_rank() {
        let basis = bi(&[&[7, 2, 0], &[3, 1, 0], &[0, 0, 5]]);
        let red = lll_reduce(&basis);
        assert_eq!(red.len(), 3);
        // determinant magnitude is invariant: |det| = 5 here
        let det = |m: &Vec<Vec<BigInt>>| -> BigInt {
            let a = &m[0];
            let b = &m[1];
            let c = &m[2];
            &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
                + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
        };
        assert_eq!(det(&red.to_vec()).abs(), BigInt::from(5));
    }
}
