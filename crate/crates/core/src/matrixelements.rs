//! Matrix elements of `E^{(μ)}(α a†) E^{(ν)}(β a)` in each family basis.
//!
//! [`matel_closed`] evaluates the printed closed forms through the `U`
//! polynomials. [`matel_oracle`] applies the two exponential series to the
//! basis vector with the ladder coefficients alone, and reads off the
//! coefficient of `e_r`; it shares no code path with the closed forms.
//!
//! The Hahn operator uses the `(q,ω,μ)`-exponential with shift `αω ȧ†`,
//! whose argument is `(1 − q)αȧ† − αωȧ† = α(1 − q)(1 − ω₀) ȧ†`. Its series is
//! therefore the q-Gaussian one with `α ↦ α(1 − ω₀)` and `β ↦ β(1 − ω₀)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{ladder_apply, Direction, LadderFamily};
use crate::polyfamilies::FamilyVector;
use crate::qkernel::{pow_i, HalfInt, QContext, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatElParams {
    pub mu: HalfInt,
    pub nu: HalfInt,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub n: usize,
    pub r: usize,
}

/// `U_n^{(μ,ν)}(x; Q | q) = Σ_k q^{k²(μ+ν)} (q^{−n}; q)_k x^k / ((Q; q)_k (q; q)_k)`,
/// where `Q` is the value of `q^{1+θ}`.
pub fn u_polynomial(ctx: &QContext, mu: HalfInt, nu: HalfInt, n: usize, q_theta: &Scalar, x: &Scalar) -> Result<Scalar> {
    let munu = HalfInt::from_twice(mu.twice + nu.twice);
    let top = ctx.q_pow(-(n as i64));
    let mut sum = Scalar::one();
    let (mut top_poch, mut theta_poch, mut q_poch) = (Scalar::one(), Scalar::one(), Scalar::one());
    let mut xk = Scalar::one();
    for k in 1..=n {
        let qk1 = ctx.q_pow(k as i64 - 1);
        top_poch *= Scalar::one() - &top * &qk1;
        theta_poch *= Scalar::one() - q_theta * &qk1;
        q_poch *= Scalar::one() - ctx.q_pow(k as i64);
        xk *= x;
        if theta_poch.is_zero() {
            return Err(Error::VanishingFactor { k, what: format!("(q^(1+θ); q)_k with q^(1+θ) = {q_theta}") });
        }
        let ki = k as i64;
        sum += ctx.q_pow_half(munu, ki * ki)? * &top_poch * &xk / (&theta_poch * &q_poch);
    }
    Ok(sum)
}

/// Sum of a terminating `_rφ_s(upper; lower; q; z)`; some upper parameter
/// must equal `q^{−n}` for an integer `n ≥ 0`.
pub fn basic_hyp_terminating(ctx: &QContext, upper: &[Scalar], lower: &[Scalar], z: &Scalar) -> Result<Scalar> {
    let n = upper
        .iter()
        .filter_map(|a| termination_index(ctx, a))
        .min()
        .ok_or(Error::NonTerminating)?;
    let mut sum = Scalar::zero();
    let mut zk = Scalar::one();
    for k in 0..=n {
        sum += ctx.hyp_term_coefficient(upper, lower, k)? * &zk;
        zk *= z;
    }
    Ok(sum)
}

/// `Some(n)` when `a = q^{−n}`.
fn termination_index(ctx: &QContext, a: &Scalar) -> Option<usize> {
    let mut power = Scalar::one();
    let mut n = 0usize;
    while power <= *a {
        if power == *a {
            return Some(n);
        }
        power /= ctx.q();
        n += 1;
    }
    None
}

/// Which closed-form branch to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    /// `r ≤ n`.
    Descending,
    /// `n ≤ r`.
    Ascending,
}

/// The printed closed form on one branch.
pub fn matel_closed_branch(ctx: &QContext, family: LadderFamily, p: &MatElParams, branch: Branch) -> Result<Scalar> {
    let (n, r) = (p.n as i64, p.r as i64);
    let q = ctx.q();
    let q_minus_1 = q - Scalar::one();
    let ab = &p.alpha * &p.beta;
    let w0 = ctx.omega0();
    let (damp, widen) = match family {
        LadderFamily::Hahn => {
            let plus = Scalar::one() + w0;
            (Scalar::one() - w0, &plus * &plus)
        }
        _ => (Scalar::one(), Scalar::one()),
    };
    match branch {
        Branch::Descending => {
            if r > n {
                return Ok(Scalar::zero());
            }
            let d = n - r;
            let (extra_q, arg_shift) = match family {
                LadderFamily::QFactorial => ((r - n) * (n + r + 1), 0),
                _ => (0, 1),
            };
            let prefactor = pow_i(&(&p.beta * &damp), d)
                * ctx.q_pow_half(p.nu, d * d)?
                * half_q_pow(ctx, extra_q)?
                * ctx.q_binomial(n, r);
            let arg = ab * q_minus_1 * widen * ctx.q_pow(arg_shift) * ctx.q_pow_half(p.nu, 2 * d)?;
            Ok(prefactor * u_polynomial(ctx, p.mu, p.nu, p.r, &ctx.q_pow(1 + d), &arg)?)
        }
        Branch::Ascending => {
            if n > r {
                return Ok(Scalar::zero());
            }
            let d = r - n;
            let (extra_q, arg_shift) = match family {
                LadderFamily::QFactorial => (0, 0),
                _ => ((n - r) * (n + r - 1), 1),
            };
            let prefactor = pow_i(&(&p.alpha * &damp), d)
                * ctx.q_pow_half(p.mu, d * d)?
                * half_q_pow(ctx, extra_q)?
                / ctx.q_factorial(d as usize);
            let arg = ab * q_minus_1 * widen * ctx.q_pow(arg_shift) * ctx.q_pow_half(p.mu, 2 * d)?;
            Ok(prefactor * u_polynomial(ctx, p.nu, p.mu, p.n, &ctx.q_pow(1 + d), &arg)?)
        }
    }
}

/// `q^{e/2}`.
fn half_q_pow(ctx: &QContext, e: i64) -> Result<Scalar> {
    ctx.q_pow_half(HalfInt::HALF, e)
}

/// The printed closed form; on the diagonal both branches are evaluated
/// and must agree.
pub fn matel_closed(ctx: &QContext, family: LadderFamily, p: &MatElParams) -> Result<Scalar> {
    use std::cmp::Ordering::*;
    match p.r.cmp(&p.n) {
        Less => matel_closed_branch(ctx, family, p, Branch::Descending),
        Greater => matel_closed_branch(ctx, family, p, Branch::Ascending),
        Equal => {
            let a = matel_closed_branch(ctx, family, p, Branch::Descending)?;
            let b = matel_closed_branch(ctx, family, p, Branch::Ascending)?;
            if a != b {
                return Err(Error::BranchMismatch { n: p.n });
            }
            Ok(a)
        }
    }
}

/// Brute-force matrix element: `Σ_i q^{νi²} β^i/[i]! a^i` then
/// `Σ_j q^{μj²} α^j/[j]! (a†)^j` on `e_n`, keeping only `j = r − n + i`.
pub fn matel_oracle(ctx: &QContext, family: LadderFamily, p: &MatElParams) -> Result<Scalar> {
    let (alpha, beta) = match family {
        LadderFamily::Hahn => {
            // (1 − q − ω) = (1 − q)(1 − ω₀); the (1 − q) is absorbed by (q;q)_n = (1−q)^n [n]_q!
            let damp = Scalar::one() - ctx.omega0();
            (&p.alpha * &damp, &p.beta * &damp)
        }
        _ => (p.alpha.clone(), p.beta.clone()),
    };
    let basis = family.basis();
    let mut total = Scalar::zero();
    let mut lowered = FamilyVector::unit(basis, p.n, Scalar::one());
    for i in 0..=p.n {
        if i > 0 {
            lowered = ladder_apply(ctx, family, Direction::Lower, &lowered)?;
        }
        let Some(j) = (p.r + i).checked_sub(p.n) else { continue };
        let ii = i as i64;
        let ji = j as i64;
        let lower_weight = ctx.q_pow_half(p.nu, ii * ii)? * pow_i(&beta, ii) / ctx.q_factorial(i);
        let raise_weight = ctx.q_pow_half(p.mu, ji * ji)? * pow_i(&alpha, ji) / ctx.q_factorial(j);
        let mut raised = lowered.clone();
        for _ in 0..j {
            raised = ladder_apply(ctx, family, Direction::Raise, &raised)?;
        }
        total += lower_weight * raise_weight * raised.coeff(p.r);
    }
    Ok(total)
}

/// One comparison of a `U` polynomial against its basic hypergeometric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFormCheck {
    pub form: &'static str,
    pub n: usize,
    pub q_theta: Scalar,
    pub x: Scalar,
    pub u_value: Scalar,
    pub series_value: Scalar,
}

impl SpecialFormCheck {
    pub fn holds(&self) -> bool {
        self.u_value == self.series_value
    }
}

/// `U^{(0,0)} = ₂φ₁(q^{−n}, 0; Q; q; x)`, `U^{(0,1/2)} = ₁φ₁(q^{−n}; Q; q; −x q^{1/2})`,
/// `U^{(1/2,1/2)} = ₁φ₂(q^{−n}; Q, 0; q; q x)` over a rational grid.
pub fn special_form_checks(ctx: &QContext, nmax: usize) -> Result<Vec<SpecialFormCheck>> {
    let xs = [Scalar::from_integer((-1).into()), Scalar::new(1.into(), 5.into()), Scalar::new(1.into(), 3.into()), Scalar::from_integer(2.into())];
    let half = ctx.q_pow_half(HalfInt::HALF, 1)?;
    let mut out = Vec::new();
    for n in 0..=nmax {
        let top = ctx.q_pow(-(n as i64));
        for j in 1..=3 {
            let q_theta = ctx.q_pow(j);
            for x in &xs {
                let cases: [(&'static str, HalfInt, HalfInt, Vec<Scalar>, Vec<Scalar>, Scalar); 3] = [
                    ("U(0,0) = 2phi1", HalfInt::ZERO, HalfInt::ZERO, vec![top.clone(), Scalar::zero()], vec![q_theta.clone()], x.clone()),
                    ("U(0,1/2) = 1phi1", HalfInt::ZERO, HalfInt::HALF, vec![top.clone()], vec![q_theta.clone()], -x * &half),
                    ("U(1/2,1/2) = 1phi2", HalfInt::HALF, HalfInt::HALF, vec![top.clone()], vec![q_theta.clone(), Scalar::zero()], ctx.q() * x),
                ];
                for (form, mu, nu, upper, lower, z) in cases {
                    out.push(SpecialFormCheck {
                        form,
                        n,
                        q_theta: q_theta.clone(),
                        x: x.clone(),
                        u_value: u_polynomial(ctx, mu, nu, n, &q_theta, x)?,
                        series_value: basic_hyp_terminating(ctx, &upper, &lower, &z)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkernel::{int, rat};

    fn ctx_root(n: i64, d: i64) -> QContext {
        QContext::from_root(rat(n, d), Scalar::zero()).unwrap()
    }

    fn params(mu: HalfInt, nu: HalfInt, alpha: Scalar, beta: Scalar, n: usize, r: usize) -> MatElParams {
        MatElParams { mu, nu, alpha, beta, n, r }
    }

    #[test]
    fn u_polynomial_examples() {
        let c = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let z = HalfInt::ZERO;
        assert_eq!(u_polynomial(&c, z, z, 4, c.q(), &Scalar::zero()).unwrap(), int(1));
        assert_eq!(u_polynomial(&c, z, z, 0, c.q(), &int(5)).unwrap(), int(1));
        // 1 + (1 − q^{-1}) / ((1 − q)(1 − q)) at q = 1/2: 1 + (−1)/(1/4) = −3
        assert_eq!(u_polynomial(&c, z, z, 1, c.q(), &int(1)).unwrap(), int(-3));
        // q^{1+θ} = q^{-1} kills the k = 2 denominator
        assert!(matches!(
            u_polynomial(&c, z, z, 3, &int(2), &int(1)),
            Err(Error::VanishingFactor { k: 2, .. })
        ));
    }

    #[test]
    fn basic_hyp_examples() {
        let c = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let x = int(3);
        let upper = [c.q_pow(-2), x.recip()];
        assert_eq!(basic_hyp_terminating(&c, &upper, &[], &(&x * c.q_pow(2))).unwrap(), int(9));
        assert_eq!(basic_hyp_terminating(&c, &upper, &[rat(1, 7)], &Scalar::zero()).unwrap(), int(1));
        assert_eq!(basic_hyp_terminating(&c, &[rat(1, 3)], &[], &int(1)), Err(Error::NonTerminating));
        for n in 0..=6 {
            let up = [c.q_pow(-(n as i64)), Scalar::zero()];
            let lo = [c.q_pow(2)];
            let x = rat(2, 5);
            assert_eq!(
                basic_hyp_terminating(&c, &up, &lo, &x).unwrap(),
                u_polynomial(&c, HalfInt::ZERO, HalfInt::ZERO, n, &c.q_pow(2), &x).unwrap()
            );
        }
    }

    #[test]
    fn oracle_examples() {
        let c = ctx_root(1, 2);
        let z = HalfInt::ZERO;
        for family in LadderFamily::ALL {
            for n in 0..4 {
                for r in 0..4 {
                    let v = matel_oracle(&c, family, &params(z, z, int(0), int(0), n, r)).unwrap();
                    assert_eq!(v, if n == r { int(1) } else { int(0) });
                }
            }
        }
        // q = 1/4, μ = ν = 0, α = β = 1, n = 1, r = 0: only i = 1, j = 0 contributes, giving [1] = 1
        let v = matel_oracle(&c, LadderFamily::QGaussian, &params(z, z, int(1), int(1), 1, 0)).unwrap();
        assert_eq!(v, int(1));
        // q-factorial raising from 1: q^{μ·4} α² / [2]! with (â†)² 1 = φ̂_2
        let alpha = rat(2, 3);
        let v = matel_oracle(&c, LadderFamily::QFactorial, &params(HalfInt::HALF, z, alpha.clone(), int(0), 0, 2)).unwrap();
        assert_eq!(v, c.q_pow(2) * &alpha * &alpha / c.q_factorial(2));
    }

    #[test]
    fn closed_form_examples() {
        let c = ctx_root(1, 2);
        let h = HalfInt::HALF;
        for family in LadderFamily::ALL {
            assert_eq!(matel_closed(&c, family, &params(h, h, rat(1, 3), rat(-1, 2), 0, 0)).unwrap(), int(1));
            // β = 0 below the diagonal
            assert!(matel_closed(&c, family, &params(h, h, int(1), int(0), 3, 1)).unwrap().is_zero());
        }
        let cw = c.with_omega(Scalar::zero());
        let p = params(h, HalfInt::ZERO, rat(1, 3), int(1), 4, 2);
        assert_eq!(
            matel_closed(&cw, LadderFamily::Hahn, &p).unwrap(),
            matel_closed(&cw, LadderFamily::QGaussian, &p).unwrap()
        );
    }

    #[test]
    fn closed_matches_oracle_gaussian_and_factorial() {
        let c = ctx_root(3, 4);
        let halves = [HalfInt::ZERO, HalfInt::HALF];
        for family in [LadderFamily::QGaussian, LadderFamily::QFactorial] {
            for mu in halves {
                for nu in halves {
                    for n in 0..5 {
                        for r in 0..5 {
                            let p = params(mu, nu, rat(1, 3), rat(-1, 2), n, r);
                            assert_eq!(
                                matel_closed(&c, family, &p).unwrap(),
                                matel_oracle(&c, family, &p).unwrap(),
                                "{family} {p:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn special_forms_hold() {
        let c = ctx_root(1, 2);
        let checks = special_form_checks(&c, 4).unwrap();
        assert!(checks.iter().all(SpecialFormCheck::holds));
        assert!(checks.iter().filter(|ch| ch.n == 0).all(|ch| ch.u_value == int(1)));
    }
}
