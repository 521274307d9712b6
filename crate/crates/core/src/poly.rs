//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::qkernel::Scalar;

/// The indeterminate a polynomial is written in.
///
/// `U` stands for `u = q^x`; the q-factorial family is polynomial in `u`
/// but not in `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::U => "u",
        })
    }
}

/// Coefficients are stored in ascending powers with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
    var: Var,
}

impl Poly {
    pub fn from_coeffs(var: Var, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Poly { coeffs: Vec::new(), var }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Scalar::one())
    }

    pub fn constant(var: Var, c: Scalar) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    /// `c · var^k`.
    pub fn monomial(var: Var, k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(var, coeffs)
    }

    /// The linear polynomial `var − root`.
    pub fn linear_root(var: Var, root: &Scalar) -> Self {
        Self::from_coeffs(var, vec![-root.clone(), Scalar::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `var^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_coeffs(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies coefficient `k` by `f(k)`.
    pub fn map_indexed(&self, mut f: impl FnMut(usize, &Scalar) -> Scalar) -> Self {
        Self::from_coeffs(
            self.var,
            self.coeffs.iter().enumerate().map(|(k, c)| f(k, c)).collect(),
        )
    }

    /// `p(a·var + b)`, expanded with Horner's scheme.
    pub fn compose_affine(&self, a: &Scalar, b: &Scalar) -> Self {
        let inner = Self::from_coeffs(self.var, vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(self.var), |acc, c| {
            &(&acc * &inner) + &Self::constant(self.var, c.clone())
        })
    }

    /// Synthetic division by `var − root`; returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: &Scalar) -> (Self, Scalar) {
        if self.coeffs.is_empty() {
            return (Self::zero(self.var), Scalar::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (0..n).rev() {
            let value = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return (Self::from_coeffs(self.var, quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Drops the constant term and lowers every power by one. Callers must
    /// ensure the constant term is zero.
    pub(crate) fn shift_down(&self) -> Self {
        debug_assert!(self.coeff(0).is_zero());
        Self::from_coeffs(self.var, self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Multiplies by `var`.
    pub fn mul_var(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Scalar::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs, var: self.var }
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "polynomials in different variables");
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(self.var, (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(self.var, (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.var);
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(self.var, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.var, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·{}", self.var)?,
                _ => write!(f, "({c})·{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkernel::{int, rat};

    fn px(c: &[i64]) -> Poly {
        Poly::from_coeffs(Var::X, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert!(px(&[0, 0]).is_zero());
        assert_eq!(px(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = px(&[1, 1]);
        let b = px(&[-1, 1]);
        assert_eq!(&a * &b, px(&[-1, 0, 1]));
        assert_eq!(&a + &b, px(&[0, 2]));
        assert_eq!(&a - &a, Poly::zero(Var::X));
    }

    #[test]
    fn affine_composition() {
        // (x+1)² at x ↦ 2x − 1 gives 4x²
        let p = px(&[1, 2, 1]);
        assert_eq!(p.compose_affine(&int(2), &int(-1)), px(&[0, 0, 4]));
        assert_eq!(p.eval(&rat(1, 2)), rat(9, 4));
    }

    #[test]
    fn synthetic_division() {
        let p = px(&[-6, 11, -6, 1]); // (x−1)(x−2)(x−3)
        let (q, r) = p.div_linear(&int(2));
        assert!(r.is_zero());
        assert_eq!(q, px(&[3, -4, 1]));
        let (_, r) = p.div_linear(&int(0));
        assert_eq!(r, int(-6));
    }
}
