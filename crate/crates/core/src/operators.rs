//! Difference, scaling and shift operators, and the ladder triple
//! `(a, a†, N)` of each family.
//!
//! Each ladder operator has two realizations: a banded action on
//! coefficient vectors in the family's own basis ([`ladder_apply`]) and an
//! analytic action on polynomials ([`ladder_apply_analytic`]). The q-factorial
//! operators act in `u = q^x`, where `e^{±∂x}` becomes `u ↦ q^{±1} u` and
//! `[x]_q` becomes `(1 − u)/(1 − q)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hahncalc::hahn_derivative_poly;
use crate::poly::{Poly, Var};
use crate::polyfamilies::{Basis, FamilyVector};
use crate::qkernel::{q_int_base, QContext, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderFamily {
    QGaussian,
    QFactorial,
    Hahn,
}

impl LadderFamily {
    pub const ALL: [LadderFamily; 3] = [LadderFamily::QGaussian, LadderFamily::QFactorial, LadderFamily::Hahn];

    pub fn basis(self) -> Basis {
        match self {
            LadderFamily::QGaussian => Basis::QGaussian,
            LadderFamily::QFactorial => Basis::QFactorial,
            LadderFamily::Hahn => Basis::HahnFactorial,
        }
    }

    /// `c` with `a e_n = c e_{n−1}`.
    pub fn lower_coeff(self, ctx: &QContext, n: usize) -> Scalar {
        let n = n as i64;
        match self {
            LadderFamily::QGaussian | LadderFamily::Hahn => ctx.q_int(n),
            LadderFamily::QFactorial => ctx.q_pow(-n) * ctx.q_int(n),
        }
    }

    /// `c` with `a† e_n = c e_{n+1}`.
    pub fn raise_coeff(self, ctx: &QContext, n: usize) -> Scalar {
        match self {
            LadderFamily::QGaussian | LadderFamily::Hahn => ctx.q_pow(-(n as i64)),
            LadderFamily::QFactorial => Scalar::one(),
        }
    }
}

impl fmt::Display for LadderFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderFamily::QGaussian => "qgaussian",
            LadderFamily::QFactorial => "qfactorial",
            LadderFamily::Hahn => "hahn",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Lower,
    Raise,
}

/// Jackson derivative `(f(x) − f(qx))/((1 − q)x)`: `x^n ↦ [n]_q x^{n−1}`.
pub fn jackson_derivative(ctx: &QContext, p: &Poly) -> Poly {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c * ctx.q_int(n as i64))
        .collect();
    Poly::from_coeffs(p.var(), coeffs)
}

/// `f(x) ↦ f(q^e x)`.
pub fn scale_x(ctx: &QContext, p: &Poly, e: i64) -> Poly {
    p.map_indexed(|n, c| c * ctx.q_pow(e * n as i64))
}

/// `f(x) ↦ f(x + h)`.
pub fn shift_x(p: &Poly, h: &Scalar) -> Poly {
    p.compose_affine(&Scalar::one(), h)
}

/// Banded action of a ladder operator on a vector in the family's basis.
pub fn ladder_apply(
    ctx: &QContext,
    family: LadderFamily,
    direction: Direction,
    v: &FamilyVector,
) -> Result<FamilyVector> {
    if v.basis != family.basis() {
        return Err(domain(format!(
            "{family} ladder operators act on the {} basis, got {}",
            family.basis(),
            v.basis
        )));
    }
    let coeffs = match direction {
        Direction::Lower => (1..v.coeffs.len())
            .map(|n| &v.coeffs[n] * family.lower_coeff(ctx, n))
            .collect(),
        Direction::Raise => std::iter::once(Scalar::zero())
            .chain(v.coeffs.iter().enumerate().map(|(n, c)| c * family.raise_coeff(ctx, n)))
            .collect(),
    };
    Ok(FamilyVector::new(v.basis, coeffs))
}

/// Number operator `N e_n = n e_n`.
pub fn number_apply(v: &FamilyVector) -> FamilyVector {
    FamilyVector::new(
        v.basis,
        v.coeffs.iter().enumerate().map(|(n, c)| c * Scalar::from_integer((n as i64).into())).collect(),
    )
}

/// The ladder operators as analytic maps on polynomials.
///
/// - q-Gaussian: `a = D_x^q`, `a† p = (x − 1) p(x/q)`.
/// - q-factorial (in `u`): `â p = (p(qu) − p(u))/(qu)`, `â† p = (1 − u)/(1 − q) · p(u/q)`.
/// - Hahn: `ȧ = D_{q,ω}`, `ȧ† p = x · p((x − ω)/q)`.
pub fn ladder_apply_analytic(
    ctx: &QContext,
    family: LadderFamily,
    direction: Direction,
    p: &Poly,
) -> Result<Poly> {
    let expected = family.basis().var();
    if p.var() != expected {
        return Err(domain(format!("{family} operators act on polynomials in {expected}")));
    }
    let q_inv = ctx.q().recip();
    Ok(match (family, direction) {
        (LadderFamily::QGaussian, Direction::Lower) => jackson_derivative(ctx, p),
        (LadderFamily::QGaussian, Direction::Raise) => {
            &scale_x(ctx, p, -1) * &Poly::linear_root(Var::X, &Scalar::one())
        }
        (LadderFamily::QFactorial, Direction::Lower) => {
            let diff = &scale_x(ctx, p, 1) - p;
            if !diff.coeff(0).is_zero() {
                return Err(Error::InexactDivision("p(qu) − p(u) not divisible by u".into()));
            }
            diff.shift_down().scale(&q_inv)
        }
        (LadderFamily::QFactorial, Direction::Raise) => {
            let bracket = Poly::from_coeffs(Var::U, vec![Scalar::one(), -Scalar::one()])
                .scale(&(Scalar::one() - ctx.q()).recip());
            &bracket * &scale_x(ctx, p, -1)
        }
        (LadderFamily::Hahn, Direction::Lower) => hahn_derivative_poly(ctx, p)?,
        (LadderFamily::Hahn, Direction::Raise) => {
            p.compose_affine(&q_inv, &-(ctx.omega() * &q_inv)).mul_var()
        }
    })
}

/// Finite `size × size` matrix of a ladder operator in the family basis;
/// entry `[r][n]` is the coefficient of `e_r` in `op e_n`.
pub fn band_matrix(ctx: &QContext, family: LadderFamily, direction: Direction, size: usize) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for n in 0..size {
        match direction {
            Direction::Lower if n > 0 => m[n - 1][n] = family.lower_coeff(ctx, n),
            Direction::Raise if n + 1 < size => m[n + 1][n] = family.raise_coeff(ctx, n),
            _ => {}
        }
    }
    m
}

/// Outcome of one algebra relation on one basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub family: LadderFamily,
    pub relation: &'static str,
    pub n: usize,
    pub lhs: FamilyVector,
    pub rhs: FamilyVector,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks the oscillator relations on `e_0..e_nmax` with the basis action.
///
/// q-Gaussian and Hahn: `aa† e_n = q^{−n}[n+1] e_n`, `a†a e_n = q^{1−n}[n] e_n`,
/// `[a, a†] = q^{−N}`, `aa† − q^{−1} a†a = 1`.
/// q-factorial: `aa† e_n = q^{−n−1}[n+1] e_n`, `a†a e_n = q^{−n}[n] e_n`,
/// `[a, a†] = q^{−N−1}`, `aa† − q^{−1} a†a = q^{−1}`.
/// All: `[N, a] = −a`, `[N, a†] = a†`.
pub fn algebra_relations_check(ctx: &QContext, family: LadderFamily, nmax: usize) -> Result<Vec<RelationCheck>> {
    let basis = family.basis();
    let shift: i64 = match family {
        LadderFamily::QFactorial => 1,
        _ => 0,
    };
    let q_inv = ctx.q().recip();
    let mut out = Vec::new();
    for n in 0..=nmax {
        let ni = n as i64;
        let e = FamilyVector::unit(basis, n, Scalar::one());
        let lower = |v: &FamilyVector| ladder_apply(ctx, family, Direction::Lower, v);
        let raise = |v: &FamilyVector| ladder_apply(ctx, family, Direction::Raise, v);
        let a_adag = lower(&raise(&e)?)?;
        let adag_a = raise(&lower(&e)?)?;
        let a_e = lower(&e)?;
        let adag_e = raise(&e)?;

        let mut push = |relation, lhs: FamilyVector, rhs: FamilyVector| {
            out.push(RelationCheck { family, relation, n, lhs, rhs });
        };
        push("a a† e_n", a_adag.clone(), e.scale(&(ctx.q_pow(-ni - shift) * ctx.q_int(ni + 1))));
        push("a† a e_n", adag_a.clone(), e.scale(&(ctx.q_pow(1 - ni - shift) * ctx.q_int(ni))));
        push("[a, a†] e_n", a_adag.sub(&adag_a)?, e.scale(&ctx.q_pow(-ni - shift)));
        push(
            "[a, a†]_q e_n",
            a_adag.sub(&adag_a.scale(&q_inv))?,
            e.scale(&ctx.q_pow(-shift)),
        );
        push("[N, a] e_n", number_apply(&a_e).sub(&lower(&number_apply(&e))?)?, a_e.scale(&-Scalar::one()));
        push("[N, a†] e_n", number_apply(&adag_e).sub(&raise(&number_apply(&e))?)?, adag_e);
    }
    Ok(out)
}

/// `((x − 1) q^{−x∂x} D_x^q − [n]_{1/q}) φ_n`, which is the zero polynomial.
pub fn difference_equation_residual(ctx: &QContext, n: usize) -> Poly {
    let phi = crate::polyfamilies::qgaussian(ctx, n, crate::polyfamilies::Construction::Product);
    let d = jackson_derivative(ctx, &phi);
    let lhs = &Poly::linear_root(Var::X, &Scalar::one()) * &scale_x(ctx, &d, -1);
    let eigen = q_int_base(&ctx.q().recip(), n as i64);
    &lhs - &phi.scale(&eigen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfamilies::{qgaussian, Construction};
    use crate::qkernel::{int, rat};

    fn ctx() -> QContext {
        QContext::from_q(rat(1, 2), rat(1, 3)).unwrap()
    }

    fn px(c: Vec<Scalar>) -> Poly {
        Poly::from_coeffs(Var::X, c)
    }

    #[test]
    fn jackson_examples() {
        let c = ctx();
        assert!(jackson_derivative(&c, &Poly::one(Var::X)).is_zero());
        assert_eq!(
            jackson_derivative(&c, &Poly::monomial(Var::X, 3, int(1))),
            Poly::monomial(Var::X, 2, rat(7, 4))
        );
        let phi3 = qgaussian(&c, 3, Construction::Product);
        let phi2 = qgaussian(&c, 2, Construction::Product);
        assert_eq!(jackson_derivative(&c, &phi3), phi2.scale(&c.q_int(3)));
    }

    #[test]
    fn scale_and_shift() {
        let c = ctx();
        let x2 = Poly::monomial(Var::X, 2, int(1));
        assert_eq!(scale_x(&c, &x2, 0), x2);
        assert_eq!(scale_x(&c, &x2, -1), Poly::monomial(Var::X, 2, int(4)));
        assert_eq!(scale_x(&c, &px(vec![int(1), int(1)]), 1), px(vec![int(1), rat(1, 2)]));
        assert_eq!(shift_x(&x2, &Scalar::zero()), x2);
        assert_eq!(shift_x(&x2, &int(1)), px(vec![int(1), int(2), int(1)]));
        let w = c.omega().clone();
        assert_eq!(shift_x(&Poly::monomial(Var::X, 1, int(1)), &-w.clone()), px(vec![-w, int(1)]));
    }

    #[test]
    fn basis_action_examples() {
        let c = ctx();
        let e0 = FamilyVector::unit(Basis::QGaussian, 0, int(1));
        assert!(ladder_apply(&c, LadderFamily::QGaussian, Direction::Lower, &e0).unwrap().is_zero());
        let f2 = FamilyVector::unit(Basis::QFactorial, 2, int(1));
        assert_eq!(
            ladder_apply(&c, LadderFamily::QFactorial, Direction::Raise, &f2).unwrap(),
            FamilyVector::unit(Basis::QFactorial, 3, int(1))
        );
        let h3 = FamilyVector::unit(Basis::HahnFactorial, 3, int(1));
        assert_eq!(
            ladder_apply(&c, LadderFamily::Hahn, Direction::Lower, &h3).unwrap(),
            FamilyVector::unit(Basis::HahnFactorial, 2, rat(7, 4))
        );
        assert!(ladder_apply(&c, LadderFamily::Hahn, Direction::Lower, &f2).is_err());
    }

    #[test]
    fn analytic_examples() {
        let c = ctx();
        let phi2 = qgaussian(&c, 2, Construction::Product);
        let phi3 = qgaussian(&c, 3, Construction::Product);
        assert_eq!(
            ladder_apply_analytic(&c, LadderFamily::QGaussian, Direction::Raise, &phi2).unwrap(),
            phi3.scale(&int(4))
        );
        assert!(ladder_apply_analytic(&c, LadderFamily::QFactorial, Direction::Lower, &Poly::one(Var::U))
            .unwrap()
            .is_zero());
        assert_eq!(
            ladder_apply_analytic(&c, LadderFamily::Hahn, Direction::Raise, &Poly::one(Var::X)).unwrap(),
            Poly::monomial(Var::X, 1, int(1))
        );
        assert!(ladder_apply_analytic(&c, LadderFamily::QFactorial, Direction::Raise, &phi2).is_err());
    }

    #[test]
    fn relation_examples() {
        let c = ctx();
        for family in LadderFamily::ALL {
            let checks = algebra_relations_check(&c, family, 4).unwrap();
            assert_eq!(checks.len(), 5 * 6);
            assert!(checks.iter().all(RelationCheck::holds), "{family}");
        }
        // q-factorial: a a† e_1 = q^{-2}[2] e_1 = 6 e_1 at q = 1/2
        let checks = algebra_relations_check(&c, LadderFamily::QFactorial, 1).unwrap();
        let r = checks.iter().find(|r| r.n == 1 && r.relation == "a a† e_n").unwrap();
        assert_eq!(r.lhs, FamilyVector::unit(Basis::QFactorial, 1, int(6)));
    }

    #[test]
    fn band_matrix_shape() {
        let c = ctx();
        let m = band_matrix(&c, LadderFamily::QGaussian, Direction::Raise, 3);
        assert_eq!(m[1][0], int(1));
        assert_eq!(m[2][1], int(2));
        assert!(m[0].iter().all(Zero::is_zero));
    }

    #[test]
    fn difference_equation_small() {
        let c = ctx();
        for n in [0, 1, 5] {
            assert!(difference_equation_residual(&c, n).is_zero());
        }
        assert_eq!(q_int_base(&c.q().recip(), 4), c.q_pow(-3) * c.q_int(4));
    }
}
