//! Truncated formal power series and the deformed exponential functions.
//!
//! Infinite q-Pochhammer products in generating functions are expanded with
//! the two Euler identities
//! `(z; q)_∞ = Σ (−1)^n q^{n(n−1)/2} z^n / (q; q)_n` and
//! `1/(z; q)_∞ = Σ z^n / (q; q)_n`,
//! so every coefficient up to the truncation order is exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::qkernel::{binom2, pow_i, HalfInt, QContext, Scalar};

/// Power series in `t` known exactly through `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Scalar>,
}

impl TruncSeries {
    /// Series with the given coefficients; order is `coeffs.len() − 1`.
    /// An empty vector is treated as the zero series of order 0.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        TruncSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Scalar) -> Self {
        TruncSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Scalar::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 0 { Scalar::one() } else { Scalar::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Scalar {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(domain("series reciprocal needs a nonzero constant term"));
        }
        let inv0 = a0.recip();
        let mut out: Vec<Scalar> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let s = (1..=n).fold(Scalar::zero(), |acc, k| acc + &self.coeffs[k] * &out[n - k]);
            out.push(-s * &inv0);
        }
        Ok(Self::new(out))
    }

    /// The series `f(c·t)`.
    pub fn scale_var(&self, c: &Scalar) -> Self {
        let mut ck = Scalar::one();
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &ck;
                    ck *= c;
                    v
                })
                .collect(),
        )
    }

    /// Partial sum at a rational point.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |m| {
            (0..=m).fold(Scalar::zero(), |acc, k| acc + &self.coeffs[k] * &rhs.coeffs[m - k])
        })
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Cauchy product; same as `a * b`.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
    a * b
}

pub fn series_recip(a: &TruncSeries) -> Result<TruncSeries> {
    a.recip()
}

/// `E_q^{(μ)}(c·t) = Σ q^{μ n²} c^n t^n / [n]_q!` through `t^order`.
pub fn emu_series(ctx: &QContext, mu: HalfInt, c: &Scalar, order: usize) -> Result<TruncSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = Scalar::one();
    let mut cn = Scalar::one();
    for n in 0..=order {
        if n > 0 {
            fact *= ctx.q_int(n as i64);
            cn *= c;
        }
        let n = n as i64;
        coeffs.push(ctx.q_pow_half(mu, n * n)? * &cn / &fact);
    }
    Ok(TruncSeries::new(coeffs))
}

/// Partial sum through `n = terms` of
/// `E_{q,ω}^{(μ)}(x) = Σ q^{μ n²} ((1−q)x − ω)^n / (q; q)_n`.
pub fn eqw_eval(ctx: &QContext, mu: HalfInt, x: &Scalar, terms: usize) -> Result<Scalar> {
    let arg = (Scalar::one() - ctx.q()) * x - ctx.omega();
    let mut sum = Scalar::zero();
    let mut poch = Scalar::one();
    let mut pow = Scalar::one();
    for n in 0..=terms {
        if n > 0 {
            poch *= Scalar::one() - ctx.q_pow(n as i64);
            pow *= &arg;
        }
        let n = n as i64;
        sum += ctx.q_pow_half(mu, n * n)? * &pow / &poch;
    }
    Ok(sum)
}

/// Series in `t` of `(c·t; q)_∞`.
pub fn pochhammer_inf_series(ctx: &QContext, c: &Scalar, order: usize) -> TruncSeries {
    let mut poch = Scalar::one();
    let mut cn = Scalar::one();
    TruncSeries::from_fn(order, |n| {
        if n > 0 {
            poch *= Scalar::one() - ctx.q_pow(n as i64);
            cn *= c;
        }
        let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        sign * ctx.q_pow(binom2(n as i64)) * &cn / &poch
    })
}

/// Series in `t` of `1/(c·t; q)_∞`.
pub fn pochhammer_inf_recip_series(ctx: &QContext, c: &Scalar, order: usize) -> TruncSeries {
    let mut poch = Scalar::one();
    let mut cn = Scalar::one();
    TruncSeries::from_fn(order, |n| {
        if n > 0 {
            poch *= Scalar::one() - ctx.q_pow(n as i64);
            cn *= c;
        }
        &cn / &poch
    })
}

/// `(t(1−q); q)_∞ / (t x (1−q); q)_∞` as an exact series in `t`; its
/// coefficients are `φ_n(x)/[n]_q!`.
pub fn gaussian_genfun_lhs(ctx: &QContext, x: &Scalar, order: usize) -> TruncSeries {
    let one_minus_q = Scalar::one() - ctx.q();
    let numerator = pochhammer_inf_series(ctx, &one_minus_q, order);
    let denominator = pochhammer_inf_recip_series(ctx, &(x * &one_minus_q), order);
    &numerator * &denominator
}

/// `(−tω; q)_∞ / (−t((q−1)x + ω); q)_∞` as an exact series in `t`; its
/// coefficients are `φ̇_n(x)/[n]_q!`.
pub fn hahn_genfun_lhs(ctx: &QContext, x: &Scalar, order: usize) -> TruncSeries {
    let numerator = pochhammer_inf_series(ctx, &-ctx.omega().clone(), order);
    let c = -((ctx.q() - Scalar::one()) * x + ctx.omega());
    let denominator = pochhammer_inf_recip_series(ctx, &c, order);
    &numerator * &denominator
}

/// Which of the two terminating q-factorial generating functions to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QFactorialGenfun {
    /// `₂φ₀(q^{−x}, 0; -; q; t q^x) = Σ φ̂_n(x)/[n]_q! t^n`.
    TwoPhiZero,
    /// `₁φ₀(q^{−x}; -; q; −t q^x) = Σ q^{n(n−1)/2} φ̂_n(x)/[n]_q! t^n`.
    OnePhiZero,
}

/// The basic hypergeometric side of the q-factorial generating function at
/// a nonnegative integer point `x = m`, as a series in `t`. Terminates at
/// `t^m`.
pub fn qfactorial_genfun_lhs(
    ctx: &QContext,
    m: u32,
    order: usize,
    form: QFactorialGenfun,
) -> Result<TruncSeries> {
    let m = m as i64;
    let top = ctx.q_pow(-m);
    let qm = ctx.q_pow(m);
    let (upper, z) = match form {
        QFactorialGenfun::TwoPhiZero => (vec![top, Scalar::zero()], qm),
        QFactorialGenfun::OnePhiZero => (vec![top], -qm),
    };
    let coeffs = (0..=order)
        .map(|k| Ok(ctx.hyp_term_coefficient(&upper, &[], k)? * pow_i(&z, k as i64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries::new(coeffs))
}

/// `E_q^{(0)}(t)·E_q^{(1/2)}(−q^{−1/2} t) − 1`; identically zero.
pub fn exp_pair_identity_residual(ctx: &QContext, order: usize) -> Result<TruncSeries> {
    let s = ctx.q_pow_half(HalfInt::HALF, -1)?;
    let a = emu_series(ctx, HalfInt::ZERO, &Scalar::one(), order)?;
    let b = emu_series(ctx, HalfInt::HALF, &-s, order)?;
    Ok(&(&a * &b) - &TruncSeries::one(order))
}

/// `E_{q,0}^{(0)}(t)·E_{q,0}^{(1/2)}(−q^{1/2} t) − 1` with both factors
/// taken from the `(q,ω,μ)` definition at `ω = 0`. This pairing is not an
/// identity: the `t¹` coefficient is `1 − q`.
pub fn exp_pair_restated_residual(ctx: &QContext, order: usize) -> Result<TruncSeries> {
    // at ω = 0, E_{q,0}^{(μ)}(x) has t^n coefficient q^{μn²}(1−q)^n/(q;q)_n = q^{μn²}/[n]_q!
    let s = ctx.q_pow_half(HalfInt::HALF, 1)?;
    let a = emu_series(ctx, HalfInt::ZERO, &Scalar::one(), order)?;
    let b = emu_series(ctx, HalfInt::HALF, &-s, order)?;
    Ok(&(&a * &b) - &TruncSeries::one(order))
}

/// `Σ_{n ≤ N} z^n/(q; q)_n`, the partial sum of `e_q(z) = 1/(z; q)_∞`.
pub fn euler_e_partial(ctx: &QContext, z: &Scalar, terms: usize) -> Scalar {
    pochhammer_inf_recip_series(ctx, z, terms).eval(&Scalar::one())
}

/// `Σ_{n ≤ N} q^{n(n−1)/2} w^n/(q; q)_n`, the partial sum of `(−w; q)_∞`.
pub fn euler_big_e_partial(ctx: &QContext, w: &Scalar, terms: usize) -> Scalar {
    pochhammer_inf_series(ctx, &-w.clone(), terms).eval(&Scalar::one())
}

/// Rigorous lower bound for `(q; q)_∞`: `(q; q)_K (1 − q^K/(1−q))` with the
/// least `K` that makes the second factor at least 1/2.
pub fn q_pochhammer_q_inf_lower_bound(ctx: &QContext) -> Scalar {
    let one_minus_q = Scalar::one() - ctx.q();
    let half = Scalar::new(1.into(), 2.into());
    let mut k = 0usize;
    while ctx.q_pow(k as i64) / &one_minus_q > half {
        k += 1;
    }
    ctx.q_pochhammer_q(k) * (Scalar::one() - ctx.q_pow(k as i64) / one_minus_q)
}

/// Tail bound `|z|^{N+1} / ((1 − |z|)(q; q)_∞)` for both Euler partial sums
/// through `n = N`, valid for `|z| < 1`.
pub fn euler_tail_bound(ctx: &QContext, z: &Scalar, terms: usize) -> Result<Scalar> {
    let a = z.abs();
    if a >= Scalar::one() {
        return Err(domain(format!("tail bound needs |z| < 1, got {z}")));
    }
    Ok(pow_i(&a, terms as i64 + 1) / ((Scalar::one() - a) * q_pochhammer_q_inf_lower_bound(ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkernel::{int, rat};

    fn ctx_root(n: i64, d: i64) -> QContext {
        QContext::from_root(rat(n, d), Scalar::zero()).unwrap()
    }

    #[test]
    fn mul_and_recip() {
        let a = TruncSeries::new(vec![int(1), int(1), int(0)]);
        let b = TruncSeries::new(vec![int(1), int(-1), int(0)]);
        assert_eq!(&a * &b, TruncSeries::new(vec![int(1), int(0), int(-1)]));
        assert_eq!(&TruncSeries::one(2) * &a, a);

        let g = TruncSeries::new(vec![int(1), int(-1), int(0), int(0)]).recip().unwrap();
        assert_eq!(g, TruncSeries::new(vec![int(1); 4]));
        assert_eq!(TruncSeries::one(3).recip().unwrap(), TruncSeries::one(3));
        assert!(TruncSeries::new(vec![int(0), int(1)]).recip().is_err());
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = TruncSeries::one(5);
        let b = TruncSeries::one(2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn recip_of_pochhammer_series() {
        let c = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let p = pochhammer_inf_series(&c, &Scalar::one(), 8);
        let r = p.recip().unwrap();
        for n in 0..=8 {
            assert_eq!(r.coeff(n), &c.q_pochhammer_q(n).recip());
        }
    }

    #[test]
    fn emu_series_values() {
        let c = ctx_root(1, 2);
        assert_eq!(emu_series(&c, HalfInt::ZERO, &Scalar::zero(), 4).unwrap(), TruncSeries::one(4));
        let e = emu_series(&c, HalfInt::HALF, &Scalar::one(), 2).unwrap();
        // 1 + s t + s⁴ t²/[2]_q! with s = 1/2, q = 1/4
        assert_eq!(e.coeffs(), &[int(1), rat(1, 2), rat(1, 16) / rat(5, 4)]);
        let e0 = emu_series(&c, HalfInt::ZERO, &Scalar::one(), 6).unwrap();
        for n in 0..=6 {
            let expected = pow_i(&(Scalar::one() - c.q()), n as i64) / c.q_pochhammer_q(n);
            assert_eq!(e0.coeff(n), &expected);
        }
    }

    #[test]
    fn eqw_values() {
        let c = QContext::from_q(rat(1, 2), rat(1, 4)).unwrap();
        assert_eq!(eqw_eval(&c, HalfInt::ZERO, &rat(1, 2), 7).unwrap(), Scalar::one());
        assert_eq!(eqw_eval(&c, HalfInt::ZERO, &Scalar::one(), 1).unwrap(), rat(3, 2));

        let c0 = ctx_root(1, 2);
        let x = rat(2, 3);
        let via_emu = emu_series(&c0, HalfInt::HALF, &((Scalar::one() - c0.q()) * &x), 6)
            .unwrap()
            .eval(&Scalar::one());
        // E_{q,0}^{(μ)}(x) = E_q^{(μ)}((1−q)x) termwise after [n]! = (q;q)_n/(1−q)^n
        let direct = eqw_eval(&c0, HalfInt::HALF, &x, 6).unwrap();
        let expected = emu_series(&c0, HalfInt::HALF, &x, 6).unwrap().eval(&Scalar::one());
        assert_eq!(direct, expected);
        assert_ne!(via_emu, direct);
    }

    #[test]
    fn genfun_low_coefficients() {
        let c = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let g = gaussian_genfun_lhs(&c, &int(2), 3);
        assert_eq!(g.coeff(0), &int(1));
        assert_eq!(g.coeff(1), &int(1));
        assert_eq!(g.coeff(2), &int(1));

        let h = hahn_genfun_lhs(&c.with_omega(rat(1, 3)), &rat(5, 7), 2);
        assert_eq!(h.coeff(0), &int(1));
        assert_eq!(h.coeff(1), &rat(5, 7));
        let h0 = hahn_genfun_lhs(&c, &int(3), 4);
        for n in 0..=4 {
            assert_eq!(h0.coeff(n), &(pow_i(&int(3), n as i64) / c.q_factorial(n)));
        }
    }

    #[test]
    fn exp_pair_residuals() {
        for (n, d, order) in [(1, 2, 5), (3, 4, 12)] {
            let c = ctx_root(n, d);
            assert!(exp_pair_identity_residual(&c, order).unwrap().is_zero());
            let restated = exp_pair_restated_residual(&c, order).unwrap();
            assert_eq!(restated.coeff(1), &(Scalar::one() - c.q()));
        }
        assert!(exp_pair_identity_residual(&ctx_root(1, 2), 0).unwrap().is_zero());
    }
}
