//! Hahn difference calculus.
//!
//! `D_{q,ω} f(x) = (f(qx + ω) − f(x)) / ((q − 1)x + ω)` away from the fixed
//! point `ω₀ = ω/(1 − q)`, and `f'(ω₀)` at it. The Hahn integral from `ω₀`
//! samples `f` on the nodes `x q^k + ω [k]_q`, which collapse to
//! `ω₀ + (x − ω₀) q^k`; that form drives the closed-form integral below.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::poly::{Poly, Var};
use crate::polyfamilies::{expand_in_basis, Basis, FamilyVector};
use crate::qkernel::{pow_i, QContext, Scalar};

/// Hahn derivative of a polynomial in `x`, computed as an exact division of
/// `p(qx + ω) − p(x)` by `(q − 1)(x − ω₀)`.
pub fn hahn_derivative_poly(ctx: &QContext, p: &Poly) -> Result<Poly> {
    if p.var() != Var::X {
        return Err(domain("Hahn derivative expects a polynomial in x"));
    }
    let numerator = &p.compose_affine(ctx.q(), ctx.omega()) - p;
    let (quotient, remainder) = numerator.div_linear(ctx.omega0());
    if !remainder.is_zero() {
        return Err(Error::InexactDivision(format!("Hahn difference quotient left remainder {remainder}")));
    }
    Ok(quotient.scale(&(ctx.q() - Scalar::one()).recip()))
}

/// Residuals of the deformed product and quotient rules.
///
/// Product: `D(fg) − D(f)·g − f(qx + ω)·D(g)`.
/// Quotient, with denominators cleared: `D(f)·g − f·D(g) − H` where
/// `H = (f(qx+ω) g(x) − f(x) g(qx+ω)) / ((q − 1)x + ω)` is `D(f/g)·g(x)·g(qx+ω)`.
/// Both are the zero polynomial.
pub fn leibniz_residuals(ctx: &QContext, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    if g.is_zero() {
        return Err(domain("quotient rule needs g ≢ 0"));
    }
    let d = |p: &Poly| hahn_derivative_poly(ctx, p);
    let step = |p: &Poly| p.compose_affine(ctx.q(), ctx.omega());
    let (df, dg) = (d(f)?, d(g)?);

    let product = &(&d(&(f * g))? - &(&df * g)) - &(&step(f) * &dg);

    let cross = &(&step(f) * g) - &(f * &step(g));
    let (h, remainder) = cross.div_linear(ctx.omega0());
    if !remainder.is_zero() {
        return Err(Error::InexactDivision("quotient-rule numerator".into()));
    }
    let h = h.scale(&(ctx.q() - Scalar::one()).recip());
    let quotient = &(&(&df * g) - &(f * &dg)) - &h;
    Ok((product, quotient))
}

/// `F` with `D_{q,ω} F = p` and `F(ω₀) = 0`, built from
/// `D_{q,ω} φ̇_{n+1} = [n+1]_q φ̇_n`.
pub fn hahn_antiderivative(ctx: &QContext, p: &Poly) -> Result<Poly> {
    let v = expand_in_basis(ctx, p, Basis::HahnFactorial)?;
    let mut coeffs = vec![Scalar::zero()];
    coeffs.extend(v.coeffs.iter().enumerate().map(|(n, c)| c / ctx.q_int(n as i64 + 1)));
    let raw = FamilyVector::new(Basis::HahnFactorial, coeffs).to_poly(ctx);
    let at_fixed_point = raw.eval(ctx.omega0());
    Ok(&raw - &Poly::constant(Var::X, at_fixed_point))
}

/// `∫_{ω₀}^x p d_{q,ω}` in closed form.
///
/// With `p(y) = Σ_j b_j (y − ω₀)^j` and nodes `ω₀ + (x − ω₀)q^k`, the series
/// `((1−q)x − ω) Σ_k q^k p(node_k)` sums to `Σ_j b_j (x − ω₀)^{j+1} / [j+1]_q`.
pub fn hahn_integral_closed(ctx: &QContext, p: &Poly, x: &Scalar) -> Result<Scalar> {
    let shifted = expand_in_basis(ctx, p, Basis::ShiftedMonomial)?;
    let h = x - ctx.omega0();
    Ok(shifted
        .coeffs
        .iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (j, b)| {
            let j = j as i64;
            acc + b * pow_i(&h, j + 1) / ctx.q_int(j + 1)
        }))
}

type EvalFn = dyn Fn(&Scalar) -> Scalar + Send + Sync;
type BoundFn = dyn Fn(&Scalar, &Scalar) -> Scalar + Send + Sync;

/// A function known only through point evaluations, with a caller-supplied
/// bound on `|f|` over closed intervals.
#[derive(Clone)]
pub struct SampledFn {
    eval: Arc<EvalFn>,
    bound: Arc<BoundFn>,
    /// `None` unless `f` is a polynomial, in which case the Hahn derivative at `ω₀` is defined.
    poly: Option<Poly>,
    pub description: String,
}

impl SampledFn {
    /// `bound(lo, hi)` must dominate `|f|` on `[lo, hi]`.
    pub fn new(
        description: impl Into<String>,
        eval: impl Fn(&Scalar) -> Scalar + Send + Sync + 'static,
        bound: impl Fn(&Scalar, &Scalar) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        SampledFn { eval: Arc::new(eval), bound: Arc::new(bound), poly: None, description: description.into() }
    }

    pub fn constant(c: Scalar) -> Self {
        let b = c.abs();
        let desc = format!("constant {c}");
        let mut f = Self::new(desc, move |_| c.clone(), move |_, _| b.clone());
        f.poly = Some(Poly::constant(Var::X, f.eval(&Scalar::zero())));
        f
    }

    /// Polynomial with the bound `Σ |c_k| max(|lo|, |hi|)^k`.
    pub fn from_poly(p: Poly) -> Self {
        let pe = p.clone();
        let pb = p.clone();
        let mut f = Self::new(
            format!("polynomial {p}"),
            move |x| pe.eval(x),
            move |lo, hi| {
                let r = lo.abs().max(hi.abs());
                pb.coeffs().iter().rev().fold(Scalar::zero(), |acc, c| acc * &r + c.abs())
            },
        );
        f.poly = Some(p);
        f
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        (self.eval)(x)
    }

    pub fn bound(&self, lo: &Scalar, hi: &Scalar) -> Scalar {
        (self.bound)(lo, hi)
    }
}

impl fmt::Debug for SampledFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFn").field("description", &self.description).finish()
    }
}

/// A truncated sum or product and the rigorous bound on its truncation error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated {
    pub value: Scalar,
    pub terms: usize,
    pub error_bound: Scalar,
}

/// Hahn derivative of a sampled function at `x ≠ ω₀`. At `ω₀` the value is
/// `f'(ω₀)`, which is only available for polynomial inputs.
pub fn hahn_derivative_numeric(ctx: &QContext, f: &SampledFn, x: &Scalar) -> Result<Scalar> {
    let denom = (ctx.q() - Scalar::one()) * x + ctx.omega();
    if denom.is_zero() {
        return match &f.poly {
            Some(p) => {
                let derivative = Poly::from_coeffs(
                    Var::X,
                    p.coeffs().iter().enumerate().skip(1).map(|(k, c)| c * Scalar::from_integer((k as i64).into())).collect(),
                );
                Ok(derivative.eval(x))
            }
            None => Err(domain("Hahn derivative at ω₀ needs f', unavailable for a sampled function")),
        };
    }
    Ok((f.eval(&(ctx.q() * x + ctx.omega())) - f.eval(x)) / denom)
}

/// Partial sum of the Hahn integral series with `K` the least index such
/// that `M q^K/(1 − q) · |(1 − q)x − ω| < tol`, where `M` bounds `|f|`
/// between `ω₀` and `x` (every node lies there).
pub fn hahn_integral_numeric(ctx: &QContext, f: &SampledFn, x: &Scalar, tol: &Scalar) -> Result<Truncated> {
    if !tol.is_positive() {
        return Err(domain(format!("tolerance {tol} must be positive")));
    }
    let prefactor = (Scalar::one() - ctx.q()) * x - ctx.omega();
    if prefactor.is_zero() {
        return Ok(Truncated { value: Scalar::zero(), terms: 0, error_bound: Scalar::zero() });
    }
    let w0 = ctx.omega0();
    let (lo, hi) = if x < w0 { (x, w0) } else { (w0, x) };
    let scale = f.bound(lo, hi) * prefactor.abs() / (Scalar::one() - ctx.q());
    let h = x - w0;
    let mut sum = Scalar::zero();
    let mut qk = Scalar::one();
    let mut k = 0usize;
    while &scale * &qk >= *tol {
        sum += &qk * f.eval(&(w0 + &h * &qk));
        qk *= ctx.q();
        k += 1;
    }
    Ok(Truncated { value: prefactor * sum, terms: k, error_bound: scale * qk })
}

/// `e_{q,ω}(x)/e_{q,ω}(ω₀) ≈ 1/∏_{k<K}(1 + q^k((q − 1)x + ω))`.
pub fn hahn_exp_normalized(ctx: &QContext, x: &Scalar, factors: usize) -> Result<Scalar> {
    let c = (ctx.q() - Scalar::one()) * x + ctx.omega();
    let mut prod = Scalar::one();
    let mut qk = Scalar::one();
    for k in 0..factors {
        let factor = Scalar::one() + &qk * &c;
        if factor.is_zero() {
            return Err(Error::VanishingFactor { k, what: "Hahn exponential product".into() });
        }
        prod *= factor;
        qk *= ctx.q();
    }
    Ok(prod.recip())
}

/// `|(e(qx + ω) − e(x))/((q − 1)x + ω) − e(x)|` for the `K`-factor
/// truncation `e`. Refuses `x = ω₀`, where the quotient is undefined.
pub fn hahn_exp_residual(ctx: &QContext, x: &Scalar, factors: usize) -> Result<Scalar> {
    let denom = (ctx.q() - Scalar::one()) * x + ctx.omega();
    if denom.is_zero() {
        return Err(domain("functional-equation residual is undefined at x = ω₀"));
    }
    let e = hahn_exp_normalized(ctx, x, factors)?;
    let e_next = hahn_exp_normalized(ctx, &(ctx.q() * x + ctx.omega()), factors)?;
    Ok(((e_next - &e) / denom - e).abs())
}

/// Bound on `|e_K(x)/e_∞(x) − 1|` for the `K`-factor truncation: with
/// `t = |c| q^K/(1 − q)` and `c = (q − 1)x + ω`, returns `6t` when `t ≤ 1/2`
/// and `None` otherwise.
pub fn hahn_exp_tail_bound(ctx: &QContext, x: &Scalar, factors: usize) -> Option<Scalar> {
    let c = (ctx.q() - Scalar::one()) * x + ctx.omega();
    let t = c.abs() * ctx.q_pow(factors as i64) / (Scalar::one() - ctx.q());
    (t <= Scalar::new(1.into(), 2.into())).then(|| t * Scalar::from_integer(6.into()))
}
