//! Polynomial vector fields: the right-hand side of an autonomous system,
//! with Lie derivatives and exact Jacobians.

use crate::matrix::{ExactMat, Matrix};
use crate::poly::Poly;
use crate::ratfn::RationalFn;
use crate::scalar::GaussRat;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    vars: Vec<String>,
    components: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected} variables, got {got}")
            }
        }
    }
}

impl std::error::Error for FieldError {}

impl VectorField {
    pub fn new(vars: Vec<String>, components: Vec<Poly>) -> Self {
        assert_eq!(vars.len(), components.len(), "one component per variable");
        assert!(components.iter().all(|p| p.nvars() == vars.len()));
        VectorField { vars, components }
    }

    /// Components with default variable names `x1..xn`.
    pub fn from_polys(components: Vec<Poly>) -> Self {
        let n = components.len();
        VectorField::new((1..=n).map(|i| format!("x{i}")).collect(), components)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Lie derivative of a polynomial along the field: `⟨∂P, f⟩`.
    pub fn lie_poly(&self, p: &Poly) -> Result<Poly, FieldError> {
        if p.nvars() != self.nvars() {
            return Err(FieldError::DimensionMismatch { expected: self.nvars(), got: p.nvars() });
        }
        let mut acc = Poly::zero(self.nvars());
        for (i, fi) in self.components.iter().enumerate() {
            acc = &acc + &(fi * &p.partial(i));
        }
        Ok(acc)
    }

    /// Lie derivative of a rational function along the field, normalized.
    /// Exactly zero iff the function is a first integral.
    pub fn lie_derivative(&self, func: &RationalFn) -> Result<RationalFn, FieldError> {
        if func.nvars() != self.nvars() {
            return Err(FieldError::DimensionMismatch {
                expected: self.nvars(),
                got: func.nvars(),
            });
        }
        // d(G/H) = (H dG - G dH)/H^2 summed against components.
        let g = func.num();
        let h = func.den();
        let mut num = Poly::zero(self.nvars());
        for (i, fi) in self.components.iter().enumerate() {
            let t = &(h * &g.partial(i)) - &(g * &h.partial(i));
            num = &num + &(fi * &t);
        }
        Ok(RationalFn::new(num, h * h))
    }

    /// Exact Jacobian matrix `Df(x0)`.
    pub fn jacobian_at(&self, x0: &[GaussRat]) -> Matrix {
        assert_eq!(x0.len(), self.nvars());
        let n = self.nvars();
        let mut m = ExactMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.components[i].partial(j).eval(x0);
            }
        }
        Matrix::Exact(m)
    }

    pub fn eval(&self, point: &[GaussRat]) -> Vec<GaussRat> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|p| p.eval_c64(point)).collect()
    }

    /// `Ok(())` at a singularity; otherwise the first nonzero component's
    /// index and value.
    pub fn check_singular_at(&self, point: &[GaussRat]) -> Result<(), (usize, GaussRat)> {
        for (i, p) in self.components.iter().enumerate() {
            let v = p.eval(point);
            if !v.is_zero() {
                return Err((i, v));
            }
        }
        Ok(())
    }
}

impl fmt::Display for VectorField {
    /// The input text format; `parse ∘ print` is the identity on canonical
    /// forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {};", self.vars.join(","))?;
        for (name, p) in self.vars.iter().zip(&self.components) {
            writeln!(f, "d{} = {};", name, p.to_string_with(&self.vars))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The saddle: f = (x, -y).
    fn saddle() -> VectorField {
        VectorField::new(
            vec!["x".into(), "y".into()],
            vec![
                Poly::from_int_terms(2, &[(1, &[1, 0])]),
                Poly::from_int_terms(2, &[(-1, &[0, 1])]),
            ],
        )
    }

    #[test]
    fn lie_derivative_first_integral() {
        let f = saddle();
        let xy = RationalFn::from_poly(Poly::from_int_terms(2, &[(1, &[1, 1])]));
        assert!(f.lie_derivative(&xy).unwrap().is_zero());
        // F = x gives lie = x
        let x = RationalFn::from_poly(Poly::from_int_terms(2, &[(1, &[1, 0])]));
        let lx = f.lie_derivative(&x).unwrap();
        assert!(lx.equivalent(&x));
    }

    #[test]
    fn hamiltonian_identity() {
        // f = (y, x^2), F = y^2/2 - x^3/3
        let f = VectorField::new(
            vec!["x".into(), "y".into()],
            vec![
                Poly::from_int_terms(2, &[(1, &[0, 1])]),
                Poly::from_int_terms(2, &[(1, &[2, 0])]),
            ],
        );
        let h = RationalFn::new(
            Poly::from_terms(
                2,
                vec![
                    (vec![0, 2], GaussRat::from_ratio(1, 2)),
                    (vec![3, 0], GaussRat::from_ratio(-1, 3)),
                ],
            ),
            Poly::one(2),
        );
        assert!(f.lie_derivative(&h).unwrap().is_zero());
    }

    #[test]
    fn jacobians() {
        let f = VectorField::new(
            vec!["x".into(), "y".into()],
            vec![
                Poly::from_int_terms(2, &[(1, &[0, 1])]),
                Poly::from_int_terms(2, &[(1, &[2, 0])]),
            ],
        );
        let j0 = f.jacobian_at(&[GaussRat::zero(), GaussRat::zero()]);
        let expect0 = ExactMat::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(j0, Matrix::Exact(expect0));
        let j = f.jacobian_at(&[GaussRat::from_int(6), GaussRat::from_int(-12)]);
        let expect = ExactMat::from_int_rows(&[&[0, 1], &[12, 0]]);
        assert_eq!(j, Matrix::Exact(expect));
    }

    #[test]
    fn singularity_check() {
        let f = saddle();
        assert!(f.check_singular_at(&[GaussRat::zero(), GaussRat::zero()]).is_ok());
        let err = f.check_singular_at(&[GaussRat::from_int(1), GaussRat::zero()]);
        assert_eq!(err, Err((0, GaussRat::from_int(1))));
    }

    #[test]
    fn derivation_product_rule() {
        let f = saddle();
        let p = Poly::from_int_terms(2, &[(1, &[2, 1]), (3, &[0, 1])]);
        let q = Poly::from_int_terms(2, &[(1, &[1, 0]), (-2, &[1, 1])]);
        let lhs = f.lie_poly(&(&p * &q)).unwrap();
        let rhs = &(&f.lie_poly(&p).unwrap() * &q) + &(&p * &f.lie_poly(&q).unwrap());
        assert_eq!(lhs, rhs);
    }
}
