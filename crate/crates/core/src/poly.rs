//! Polynomials in the lattice variable `X = x(s)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coefficient `k` multiplies `X^k`.
    MonomialX,
    /// Coefficient `k` multiplies the q-falling factorial `[s]_q^{(k)}`.
    FallingFactorial,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::MonomialX => f.write_str("monomial"),
            Basis::FallingFactorial => f.write_str("falling"),
        }
    }
}

/// Coefficient list indexed by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoly<S> {
    basis: Basis,
    coeffs: Vec<S>,
}

impl<S: Scalar> LatticePoly<S> {
    pub fn new(basis: Basis, coeffs: Vec<S>) -> Self {
        let mut p = LatticePoly { basis, coeffs };
        p.trim();
        p
    }

    pub fn monomial(coeffs: Vec<S>) -> Self {
        Self::new(Basis::MonomialX, coeffs)
    }

    pub fn zero(basis: Basis) -> Self {
        LatticePoly {
            basis,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(basis: Basis, c: S) -> Self {
        Self::new(basis, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Basis::MonomialX, S::one())
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(vec![S::zero(), S::one()])
    }

    /// `X - a`.
    pub fn linear_root(a: S) -> Self {
        Self::monomial(vec![-a, S::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of index `k`; zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn require(&self, basis: Basis) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::Basis(match basis {
                Basis::MonomialX => "monomial_x",
                Basis::FallingFactorial => "falling_factorial",
            }))
        }
    }

    fn assert_same_basis(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "mixing polynomial bases");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_basis(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(self.basis, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_basis(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::new(self.basis, coeffs)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        Self::new(
            self.basis,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &S, other: &Self) -> Self {
        self.add(&other.scale(c))
    }

    /// Product of two monomial-basis polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        self.assert_same_basis(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.basis);
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.basis, out)
    }

    /// Multiplication by `X` (monomial basis).
    pub fn mul_x(&self) -> Self {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.basis, coeffs)
    }

    /// Horner evaluation at `X = x` (monomial basis).
    pub fn eval(&self, x: &S) -> S {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Substitution `X -> a + b X` (monomial basis).
    pub fn compose_affine(&self, a: &S, b: &S) -> Self {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        let lin = Self::monomial(vec![a.clone(), b.clone()]);
        let mut acc = Self::zero(Basis::MonomialX);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(&lin)
                .add(&Self::constant(Basis::MonomialX, c.clone()));
        }
        acc
    }

    /// Formal derivative in `X` (monomial basis).
    pub fn derivative(&self) -> Self {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * S::from_i64(k as i64))
            .collect();
        Self::new(self.basis, coeffs)
    }

    /// Divide by `X - root`; returns quotient and remainder.
    pub fn div_linear(&self, root: &S) -> (Self, S) {
        debug_assert_eq!(self.basis, Basis::MonomialX);
        if self.coeffs.is_empty() {
            return (self.clone(), S::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for k in (0..n).rev() {
            let v = self.coeffs[k].clone() + carry.clone() * root.clone();
            if k == 0 {
                return (Self::new(self.basis, quot), v);
            }
            quot[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LatticePoly<T> {
        LatticePoly::new(self.basis, self.coeffs.iter().map(f).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec![S::zero().to_canonical()];
        }
        self.coeffs.iter().map(Scalar::to_canonical).collect()
    }

    /// Max-norm of the coefficient vector.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }
}

impl<S: Scalar> fmt::Display for LatticePoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}
