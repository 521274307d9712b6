//! The three polynomial families, their alternative constructions, basis
//! conversions and the position-operator coefficients.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::operators::jackson_derivative;
use crate::poly::{Poly, Var};
use crate::qkernel::{binom2, pow_i, HalfInt, QContext, Scalar};

/// How to build a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    /// The defining product of linear factors.
    Product,
    /// The three-term recursion in `n`.
    Recursion,
    /// The q-binomial sum.
    ExplicitSum,
}

impl Construction {
    pub const ALL: [Construction; 3] =
        [Construction::Product, Construction::Recursion, Construction::ExplicitSum];
}

/// q-Gaussian polynomial `φ_n(x) = ∏_{k<n}(x − q^k)`.
///
/// The recursion is `φ_{n+1} = x φ_n − q^n φ_n`; the explicit sum is
/// `Σ_k [n k]_q q^{k(k−1)/2} (−1)^k x^{n−k}`.
pub fn qgaussian(ctx: &QContext, n: usize, method: Construction) -> Poly {
    match method {
        Construction::Product => (0..n as i64).fold(Poly::one(Var::X), |acc, k| {
            &acc * &Poly::linear_root(Var::X, &ctx.q_pow(k))
        }),
        Construction::Recursion => (0..n as i64).fold(Poly::one(Var::X), |acc, k| {
            &acc.mul_var() - &acc.scale(&ctx.q_pow(k))
        }),
        Construction::ExplicitSum => {
            let n = n as i64;
            let coeffs = (0..=n)
                .map(|power| {
                    let k = n - power;
                    let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    sign * ctx.q_binomial(n, k) * ctx.q_pow(binom2(k))
                })
                .collect();
            Poly::from_coeffs(Var::X, coeffs)
        }
    }
}

/// q-factorial polynomial `φ̂_n = ∏_{k<n} [x − k]_q` as a polynomial in
/// `u = q^x`, using `[x − k]_q = (1 − q^{−k} u)/(1 − q)`.
pub fn qfactorial_u(ctx: &QContext, n: usize) -> Poly {
    let inv = (Scalar::one() - ctx.q()).recip();
    (0..n as i64).fold(Poly::one(Var::U), |acc, k| {
        let factor = Poly::from_coeffs(Var::U, vec![inv.clone(), -ctx.q_pow(-k) * &inv]);
        &acc * &factor
    })
}

/// `∏_{k<n}[m − k]_q` at the integer point `x = m` through the identity
/// `(−1)^n q^{n m − n(n−1)/2} (q^{−m}; q)_n / (1 − q)^n`.
pub fn qfactorial_via_pochhammer(ctx: &QContext, m: i64, n: usize) -> Scalar {
    let ni = n as i64;
    let sign = if ni % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    sign * ctx.q_pow(ni * m - binom2(ni)) * ctx.q_pochhammer(&ctx.q_pow(-m), n)
        / pow_i(&(Scalar::one() - ctx.q()), ni)
}

/// Hahn factorial polynomial `φ̇_n(x) = ∏_{k<n}(x − [k]_q ω)`.
///
/// The recursion is `x φ̇_n = φ̇_{n+1} + ω [n]_q φ̇_n`; the explicit sum is
/// `Σ_k [n k]_q q^{k(k−1)/2} ω₀^k (x − ω₀)^{n−k}`, stored in powers of
/// `x − ω₀` and expanded to monomials.
pub fn hahn_factorial(ctx: &QContext, n: usize, method: Construction) -> Poly {
    match method {
        Construction::Product => (0..n as i64).fold(Poly::one(Var::X), |acc, k| {
            &acc * &Poly::linear_root(Var::X, &(ctx.q_int(k) * ctx.omega()))
        }),
        Construction::Recursion => (0..n as i64).fold(Poly::one(Var::X), |acc, k| {
            &acc.mul_var() - &acc.scale(&(ctx.omega() * ctx.q_int(k)))
        }),
        Construction::ExplicitSum => {
            let n = n as i64;
            let w0 = ctx.omega0();
            let shifted = (0..=n)
                .map(|power| {
                    let k = n - power;
                    ctx.q_binomial(n, k) * ctx.q_pow(binom2(k)) * pow_i(w0, k)
                })
                .collect();
            from_shifted(&Poly::from_coeffs(Var::X, shifted), w0)
        }
    }
}

/// `φ̇_n` through the shifted recursion `φ̇_{n+1} = (x − ω₀) φ̇_n + ω₀ q^n φ̇_n`.
pub fn hahn_factorial_shifted_recursion(ctx: &QContext, n: usize) -> Poly {
    let w0 = ctx.omega0();
    (0..n as i64).fold(Poly::one(Var::X), |acc, k| {
        let shifted = &acc * &Poly::linear_root(Var::X, w0);
        &shifted + &acc.scale(&(w0 * ctx.q_pow(k)))
    })
}

/// Coefficients in powers of `x − c` to ordinary monomials.
fn from_shifted(p: &Poly, c: &Scalar) -> Poly {
    p.compose_affine(&Scalar::one(), &-c.clone())
}

/// Ordinary monomials to coefficients in powers of `x − c`.
fn to_shifted(p: &Poly, c: &Scalar) -> Poly {
    p.compose_affine(&Scalar::one(), c)
}

/// A polynomial basis that a [`FamilyVector`] is expressed in.
///
/// `ShiftedMonomial` is centred at the context's `ω₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Monomial,
    ShiftedMonomial,
    QGaussian,
    QFactorial,
    HahnFactorial,
}

impl Basis {
    pub fn var(self) -> Var {
        match self {
            Basis::QFactorial => Var::U,
            _ => Var::X,
        }
    }

    /// The `k`-th basis polynomial.
    pub fn element(self, ctx: &QContext, k: usize) -> Poly {
        match self {
            Basis::Monomial => Poly::monomial(Var::X, k, Scalar::one()),
            Basis::ShiftedMonomial => {
                from_shifted(&Poly::monomial(Var::X, k, Scalar::one()), ctx.omega0())
            }
            Basis::QGaussian => qgaussian(ctx, k, Construction::Product),
            Basis::QFactorial => qfactorial_u(ctx, k),
            Basis::HahnFactorial => hahn_factorial(ctx, k, Construction::Product),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Monomial => "monomial",
            Basis::ShiftedMonomial => "shifted-monomial",
            Basis::QGaussian => "qgaussian",
            Basis::QFactorial => "qfactorial",
            Basis::HahnFactorial => "hahn",
        })
    }
}

/// Finite coefficient vector relative to a family basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVector {
    pub basis: Basis,
    pub coeffs: Vec<Scalar>,
}

impl FamilyVector {
    pub fn new(basis: Basis, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        FamilyVector { basis, coeffs }
    }

    pub fn zero(basis: Basis) -> Self {
        FamilyVector { basis, coeffs: Vec::new() }
    }

    /// `c · e_k`.
    pub fn unit(basis: Basis, k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::new(basis, coeffs)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<Self> {
        if self.basis != other.basis {
            return Err(domain(format!("basis mismatch: {} vs {}", self.basis, other.basis)));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(self.basis, (0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect()))
    }

    /// `Σ_k c_k e_k` as a polynomial.
    pub fn to_poly(&self, ctx: &QContext) -> Poly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(self.basis.var()), |acc, (k, c)| {
                &acc + &self.basis.element(ctx, k).scale(c)
            })
    }
}

/// Expands a polynomial in `x` in one of the `x`-bases.
///
/// Monomials go to q-Gaussians through `x^n = Σ_k [n k]_q φ_k`, and powers
/// of `x − ω₀` go to Hahn factorials through
/// `(x − ω₀)^n = Σ_k [n k]_q (−ω₀)^{n−k} φ̇_k`.
pub fn expand_in_basis(ctx: &QContext, p: &Poly, basis: Basis) -> Result<FamilyVector> {
    if p.var() != Var::X {
        return Err(domain("expand_in_basis expects a polynomial in x"));
    }
    let degree = p.degree().map_or(0, |d| d + 1);
    let coeffs: Vec<Scalar> = match basis {
        Basis::Monomial => p.coeffs().to_vec(),
        Basis::ShiftedMonomial => to_shifted(p, ctx.omega0()).into_coeffs(),
        Basis::QGaussian => (0..degree as i64)
            .map(|k| {
                (k..degree as i64).fold(Scalar::zero(), |acc, n| {
                    acc + p.coeff(n as usize) * ctx.q_binomial(n, k)
                })
            })
            .collect(),
        Basis::HahnFactorial => {
            let shifted = to_shifted(p, ctx.omega0());
            let neg_w0 = -ctx.omega0().clone();
            (0..degree as i64)
                .map(|k| {
                    (k..degree as i64).fold(Scalar::zero(), |acc, n| {
                        acc + shifted.coeff(n as usize) * ctx.q_binomial(n, k) * pow_i(&neg_w0, n - k)
                    })
                })
                .collect()
        }
        Basis::QFactorial => {
            return Err(domain("q-factorial polynomials are not polynomials in x"));
        }
    };
    Ok(FamilyVector::new(basis, coeffs))
}

/// `(−1)^n ω₀^n φ_n(1 − x/ω₀)`, which equals `φ̇_n(x)`.
pub fn connect_hahn_gaussian(ctx: &QContext, n: usize) -> Result<Poly> {
    let w0 = ctx.omega0();
    if w0.is_zero() {
        return Err(domain("connection formula needs ω₀ ≠ 0"));
    }
    let phi = qgaussian(ctx, n, Construction::Product);
    let substituted = phi.compose_affine(&-w0.recip(), &Scalar::one());
    Ok(substituted.scale(&pow_i(&-w0.clone(), n as i64)))
}

/// `φ_n = E_q^{(1/2)}(−q^{−1/2} D_x^q) x^n`; the operator series stops at
/// `k = n` because `(D_x^q)^{n+1} x^n = 0`.
pub fn qgaussian_via_qexp_operator(ctx: &QContext, n: usize) -> Result<Poly> {
    let c = -ctx.q_pow_half(HalfInt::HALF, -1)?;
    let mut term = Poly::monomial(Var::X, n, Scalar::one());
    let mut sum = Poly::zero(Var::X);
    let mut fact = Scalar::one();
    for k in 0..=n {
        if k > 0 {
            term = jackson_derivative(ctx, &term);
            fact *= ctx.q_int(k as i64);
        }
        let ki = k as i64;
        let weight = ctx.q_pow_half(HalfInt::HALF, ki * ki)? * pow_i(&c, ki) / &fact;
        sum = &sum + &term.scale(&weight);
    }
    Ok(sum)
}

/// Coefficients `c_0..c_nmax` of the position-operator eigenvector, from
/// `x c_n = [n+1]_q c_{n+1} + q^{1−n} c_{n−1}` with `c_0 = 1`, `c_{−1} = 0`.
pub fn position_coefficients(ctx: &QContext, nmax: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one(Var::X)];
    let mut prev = Poly::zero(Var::X);
    for n in 0..nmax {
        let cur = &out[n];
        let numerator = &cur.mul_var() - &prev.scale(&ctx.q_pow(1 - n as i64));
        // [n+1]_q > 0 for 0 < q < 1
        let next = numerator.scale(&ctx.q_int(n as i64 + 1).recip());
        prev = cur.clone();
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkernel::{int, rat};

    fn ctx(q: Scalar, w: Scalar) -> QContext {
        QContext::from_q(q, w).unwrap()
    }

    fn px(c: Vec<Scalar>) -> Poly {
        Poly::from_coeffs(Var::X, c)
    }

    #[test]
    fn qgaussian_small() {
        let c = ctx(rat(1, 2), Scalar::zero());
        for m in Construction::ALL {
            assert_eq!(qgaussian(&c, 0, m), Poly::one(Var::X));
            assert_eq!(qgaussian(&c, 1, m), px(vec![int(-1), int(1)]));
            assert_eq!(qgaussian(&c, 2, m), px(vec![rat(1, 2), rat(-3, 2), int(1)]));
        }
    }

    #[test]
    fn qfactorial_small() {
        let c = ctx(rat(1, 2), Scalar::zero());
        assert_eq!(qfactorial_u(&c, 0), Poly::one(Var::U));
        let u3 = c.q_pow(3);
        assert_eq!(qfactorial_u(&c, 1).eval(&u3), rat(7, 4));
        assert_eq!(qfactorial_u(&c, 2).eval(c.q()), Scalar::zero());
        assert_eq!(qfactorial_via_pochhammer(&c, 3, 1), rat(7, 4));
    }

    #[test]
    fn hahn_small() {
        let c = ctx(rat(1, 2), rat(1, 4));
        for m in Construction::ALL {
            assert_eq!(hahn_factorial(&c, 0, m), Poly::one(Var::X));
            assert_eq!(hahn_factorial(&c, 2, m), px(vec![int(0), rat(-1, 4), int(1)]));
            assert_eq!(
                hahn_factorial(&c.with_omega(Scalar::zero()), 2, m),
                Poly::monomial(Var::X, 2, int(1))
            );
        }
        assert_eq!(hahn_factorial_shifted_recursion(&c, 2), px(vec![int(0), rat(-1, 4), int(1)]));
    }

    #[test]
    fn expansions() {
        let c = ctx(rat(1, 3), Scalar::zero());
        let x1 = expand_in_basis(&c, &Poly::monomial(Var::X, 1, int(1)), Basis::QGaussian).unwrap();
        assert_eq!(x1.coeffs, vec![int(1), int(1)]);
        let x2 = expand_in_basis(&c, &Poly::monomial(Var::X, 2, int(1)), Basis::QGaussian).unwrap();
        assert_eq!(x2.coeffs, vec![int(1), int(1) + c.q(), int(1)]);
        for b in [Basis::Monomial, Basis::ShiftedMonomial, Basis::QGaussian, Basis::HahnFactorial] {
            let one = expand_in_basis(&c.with_omega(rat(1, 5)), &Poly::one(Var::X), b).unwrap();
            assert_eq!(one.coeffs, vec![int(1)]);
        }
        assert!(expand_in_basis(&c, &Poly::one(Var::X), Basis::QFactorial).is_err());
        assert!(expand_in_basis(&c, &Poly::one(Var::U), Basis::QGaussian).is_err());
    }

    #[test]
    fn connection_small() {
        let c = ctx(rat(1, 2), rat(1, 4));
        assert_eq!(connect_hahn_gaussian(&c, 0).unwrap(), Poly::one(Var::X));
        assert_eq!(connect_hahn_gaussian(&c, 1).unwrap(), Poly::monomial(Var::X, 1, int(1)));
        assert_eq!(
            connect_hahn_gaussian(&c, 2).unwrap(),
            hahn_factorial(&c, 2, Construction::Product)
        );
        assert!(connect_hahn_gaussian(&c.with_omega(Scalar::zero()), 2).is_err());
    }

    #[test]
    fn operator_form() {
        let c = QContext::from_root(rat(1, 2), Scalar::zero()).unwrap();
        assert_eq!(qgaussian_via_qexp_operator(&c, 0).unwrap(), Poly::one(Var::X));
        assert_eq!(qgaussian_via_qexp_operator(&c, 1).unwrap(), px(vec![int(-1), int(1)]));
        assert_eq!(
            qgaussian_via_qexp_operator(&c, 3).unwrap(),
            qgaussian(&c, 3, Construction::Product)
        );
        let no_root = ctx(rat(1, 2), Scalar::zero());
        assert!(qgaussian_via_qexp_operator(&no_root, 2).is_err());
    }

    #[test]
    fn position_low_orders() {
        let c = ctx(rat(1, 2), Scalar::zero());
        let cs = position_coefficients(&c, 4);
        assert_eq!(cs[1], Poly::monomial(Var::X, 1, int(1)));
        assert_eq!(cs[2], px(vec![int(-1), int(0), int(1)]).scale(&c.q_int(2).recip()));
        let expected = c.q_pow(-2) * c.q_int(3) / c.q_factorial(4);
        assert_eq!(cs[4].eval(&Scalar::zero()), expected);
        assert_eq!(expected, c.q_pow(-2) / c.q_double_factorial_even(2));
    }
}
