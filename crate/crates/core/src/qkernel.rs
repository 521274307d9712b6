//! q-integers, q-factorials, q-binomials and q-Pochhammer symbols over exact
//! rationals.
//!
//! The context is normally built from a root `s` with `q = s²` so that every
//! half-integer power `q^{μ e}` is the rational `s^{2μ e}`. A context built
//! directly from `q` keeps `s` only when `q` is a perfect rational square.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Scalar = BigRational;

/// Integer as a [`Scalar`].
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n / d` as a [`Scalar`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// `base^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow_i(base: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

/// `(1 − base^n)/(1 − base)` for `base ≠ 1`; the q-integer in an arbitrary base.
pub fn q_int_base(base: &Scalar, n: i64) -> Scalar {
    (Scalar::one() - pow_i(base, n)) / (Scalar::one() - base)
}

/// `n(n−1)/2`, the exponent of the ubiquitous `q^{binom(n,2)}`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Decimal scientific rendering `d.ddde±N` of an exact rational, truncated
/// (not rounded) to `digits` significant digits. For display of bounds only.
pub fn to_sci(x: &Scalar, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let a = x.abs();
    let ten = Scalar::from_integer(BigInt::from(10));
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while a < pow_i(&ten, e) {
        e -= 1;
    }
    while a >= pow_i(&ten, e + 1) {
        e += 1;
    }
    let digits = digits.max(1);
    let mantissa = (a * pow_i(&ten, digits as i64 - 1 - e)).floor().to_integer().to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

fn exact_sqrt(v: &Scalar) -> Option<Scalar> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    (&n * &n == *v.numer() && &d * &d == *v.denom()).then(|| Scalar::new(n, d))
}

/// A half-integer `twice / 2`, used for the exponent parameters μ and ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn as_scalar(self) -> Scalar {
        rat(self.twice, 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Deformation parameters: `q` (with optional exact root `s`), the Hahn shift
/// `ω`, and the Hahn fixed point `ω₀ = ω/(1−q)`.
///
/// Invariant: `0 < q < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    q: Scalar,
    root: Option<Scalar>,
    omega: Scalar,
    omega0: Scalar,
}

impl QContext {
    /// Context with `q = s²`; requires `0 < s < 1`.
    pub fn from_root(s: Scalar, omega: Scalar) -> Result<Self> {
        if !(s.is_positive() && s < Scalar::one()) {
            return Err(domain(format!("root s = {s} must satisfy 0 < s < 1")));
        }
        let q = &s * &s;
        Ok(Self::assemble(q, Some(s), omega))
    }

    /// Context from `q` directly; `s` is kept when `q` is a rational square.
    pub fn from_q(q: Scalar, omega: Scalar) -> Result<Self> {
        if !(q.is_positive() && q < Scalar::one()) {
            return Err(domain(format!("q = {q} must satisfy 0 < q < 1")));
        }
        let root = exact_sqrt(&q);
        Ok(Self::assemble(q, root, omega))
    }

    fn assemble(q: Scalar, root: Option<Scalar>, omega: Scalar) -> Self {
        let omega0 = &omega / (Scalar::one() - &q);
        QContext { q, root, omega, omega0 }
    }

    /// Same `q`, different shift.
    pub fn with_omega(&self, omega: Scalar) -> Self {
        Self::assemble(self.q.clone(), self.root.clone(), omega)
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn root(&self) -> Option<&Scalar> {
        self.root.as_ref()
    }

    pub fn omega(&self) -> &Scalar {
        &self.omega
    }

    pub fn omega0(&self) -> &Scalar {
        &self.omega0
    }

    /// `q^e` for integer `e`.
    pub fn q_pow(&self, e: i64) -> Scalar {
        pow_i(&self.q, e)
    }

    /// `[n]_q = (1 − q^n)/(1 − q)`, defined for every integer `n`.
    pub fn q_int(&self, n: i64) -> Scalar {
        q_int_base(&self.q, n)
    }

    /// `[n]_q! = ∏_{k=1}^n [k]_q`.
    pub fn q_factorial(&self, n: usize) -> Scalar {
        (1..=n as i64).fold(Scalar::one(), |acc, k| acc * self.q_int(k))
    }

    /// Gaussian binomial `[n k]_q`; exactly zero unless `0 ≤ k ≤ n`.
    pub fn q_binomial(&self, n: i64, k: i64) -> Scalar {
        if k < 0 || k > n {
            return Scalar::zero();
        }
        let k = k.min(n - k);
        let mut acc = Scalar::one();
        for i in 1..=k {
            acc *= self.q_int(n - k + i) / self.q_int(i);
        }
        acc
    }

    /// `(z; q)_n = ∏_{k=0}^{n−1} (1 − z q^k)`.
    pub fn q_pochhammer(&self, z: &Scalar, n: usize) -> Scalar {
        let mut acc = Scalar::one();
        let mut zk = z.clone();
        for _ in 0..n {
            acc *= Scalar::one() - &zk;
            zk *= &self.q;
        }
        acc
    }

    /// `(q; q)_n`.
    pub fn q_pochhammer_q(&self, n: usize) -> Scalar {
        self.q_pochhammer(&self.q, n)
    }

    /// Truncation of `(z; q)_∞` after `K` factors, with `K` the least index
    /// for which `|z| q^K / (1 − q) < tol`. Returns the product and `K`.
    /// A vanishing factor ends the product early at value zero.
    pub fn q_pochhammer_inf(&self, z: &Scalar, tol: &Scalar) -> Result<(Scalar, usize)> {
        if !tol.is_positive() {
            return Err(domain(format!("tolerance {tol} must be positive")));
        }
        let one_minus_q = Scalar::one() - &self.q;
        let mut acc = Scalar::one();
        let mut zk = z.clone();
        let mut k = 0usize;
        while zk.abs() / &one_minus_q >= *tol {
            let factor = Scalar::one() - &zk;
            if factor.is_zero() {
                return Ok((Scalar::zero(), k + 1));
            }
            acc *= factor;
            zk *= &self.q;
            k += 1;
        }
        Ok((acc, k))
    }

    /// `q^{μ e} = s^{2μ e}`, exact for every half-integer μ when the root is known.
    pub fn q_pow_half(&self, mu: HalfInt, e: i64) -> Result<Scalar> {
        let exponent = mu.twice * e;
        if exponent % 2 == 0 {
            return Ok(self.q_pow(exponent / 2));
        }
        match &self.root {
            Some(s) => Ok(pow_i(s, exponent)),
            None => Err(Error::HalfPowerUnavailable { q: self.q.to_string() }),
        }
    }

    /// `[2n]_q!! = [2n]_q [2n−2]_q ⋯ [2]_q`.
    pub fn q_double_factorial_even(&self, n: usize) -> Scalar {
        (1..=n as i64).fold(Scalar::one(), |acc, j| acc * self.q_int(2 * j))
    }

    /// Coefficient of `z^k` in the basic hypergeometric series
    /// `_rφ_s(upper; lower; q; z)`:
    /// `(a_1..a_r; q)_k / ((b_1..b_s; q)_k (q; q)_k) · [(−1)^k q^{k(k−1)/2}]^{1+s−r}`.
    pub fn hyp_term_coefficient(&self, upper: &[Scalar], lower: &[Scalar], k: usize) -> Result<Scalar> {
        let mut num = Scalar::one();
        for a in upper {
            num *= self.q_pochhammer(a, k);
        }
        if num.is_zero() {
            return Ok(num);
        }
        let mut den = self.q_pochhammer_q(k);
        for b in lower {
            den *= self.q_pochhammer(b, k);
        }
        if den.is_zero() {
            return Err(Error::VanishingFactor {
                k,
                what: "lower-parameter q-Pochhammer symbol".into(),
            });
        }
        let excess = 1 + lower.len() as i64 - upper.len() as i64;
        let ki = k as i64;
        let sign = if (ki * excess) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        Ok(num / den * sign * self.q_pow(binom2(ki) * excess))
    }
}
