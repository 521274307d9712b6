use num_traits::{One, Zero};
use proptest::prelude::*;
use qpoly_core::hahncalc::{hahn_antiderivative, hahn_derivative_poly, hahn_integral_closed, leibniz_residuals};
use qpoly_core::matrixelements::{matel_closed, matel_oracle, MatElParams};
use qpoly_core::operators::{
    jackson_derivative, ladder_apply, ladder_apply_analytic, Direction, LadderFamily,
};
use qpoly_core::polyfamilies::{expand_in_basis, hahn_factorial, qgaussian, Basis, Construction, FamilyVector};
use qpoly_core::qkernel::{pow_i, rat};
use qpoly_core::qseries::{gaussian_genfun_lhs, hahn_genfun_lhs, TruncSeries};
use qpoly_core::{HalfInt, Poly, QContext, Scalar, Var};

fn unit_interval() -> impl Strategy<Value = Scalar> {
    (2i64..24).prop_flat_map(|d| (1..d).prop_map(move |n| rat(n, d)))
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn root_context() -> impl Strategy<Value = QContext> {
    (unit_interval(), small_rational()).prop_map(|(s, w)| QContext::from_root(s, w / rat(4, 1)).unwrap())
}

/// `ω` kept below `1 − q` so `ω₀` stays in a moderate range.
fn context() -> impl Strategy<Value = QContext> {
    (unit_interval(), 0i64..4).prop_map(|(q, k)| {
        let w = (Scalar::one() - &q) * rat(k, 5);
        QContext::from_q(q, w).unwrap()
    })
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(|c| Poly::from_coeffs(Var::X, c))
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

const HALVES: [HalfInt; 2] = [HalfInt::ZERO, HalfInt::HALF];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pascal_rules(c in context(), n in 0i64..18, k in -1i64..20) {
        let lhs = c.q_binomial(n + 1, k);
        prop_assert_eq!(&lhs, &(c.q_binomial(n, k) + c.q_pow(n + 1 - k) * c.q_binomial(n, k - 1)));
        prop_assert_eq!(&lhs, &(c.q_pow(k) * c.q_binomial(n, k) + c.q_binomial(n, k - 1)));
    }

    #[test]
    fn binomial_symmetry(c in context(), n in 0i64..16, k in 0i64..16) {
        prop_assert_eq!(c.q_binomial(n, k), c.q_binomial(n, n - k));
    }

    #[test]
    fn factorial_is_scaled_pochhammer(c in context(), n in 0usize..16) {
        let scaled = c.q_pochhammer_q(n) / pow_i(&(Scalar::one() - c.q()), n as i64);
        prop_assert_eq!(c.q_factorial(n), scaled);
    }

    #[test]
    fn pochhammer_splits(c in context(), z in small_rational(), m in 0usize..8, n in 0usize..8) {
        let tail = c.q_pochhammer(&(&z * c.q_pow(m as i64)), n);
        prop_assert_eq!(c.q_pochhammer(&z, m + n), c.q_pochhammer(&z, m) * tail);
    }

    #[test]
    fn half_powers_add(c in root_context(), a in -8i64..8, b in -8i64..8, twice in 0i64..4) {
        let mu = HalfInt::from_twice(twice);
        let product = c.q_pow_half(mu, a).unwrap() * c.q_pow_half(mu, b).unwrap();
        prop_assert_eq!(product, c.q_pow_half(mu, a + b).unwrap());
    }

    #[test]
    fn basis_round_trip(c in context(), p in poly(9)) {
        for basis in [Basis::Monomial, Basis::ShiftedMonomial, Basis::QGaussian, Basis::HahnFactorial] {
            let v = expand_in_basis(&c, &p, basis).unwrap();
            prop_assert_eq!(v.to_poly(&c), p.clone());
        }
    }

    #[test]
    fn three_constructions_agree(c in context(), n in 0usize..10) {
        let phi = qgaussian(&c, n, Construction::Product);
        let dot = hahn_factorial(&c, n, Construction::Product);
        for m in [Construction::Recursion, Construction::ExplicitSum] {
            prop_assert_eq!(&qgaussian(&c, n, m), &phi);
            prop_assert_eq!(&hahn_factorial(&c, n, m), &dot);
        }
    }

    #[test]
    fn fundamental_theorem(c in context(), p in poly(8)) {
        let f = hahn_antiderivative(&c, &p).unwrap();
        prop_assert_eq!(hahn_derivative_poly(&c, &f).unwrap(), p.clone());
        prop_assert!(f.eval(c.omega0()).is_zero());
        let back = hahn_antiderivative(&c, &hahn_derivative_poly(&c, &p).unwrap()).unwrap();
        prop_assert_eq!(back, &p - &Poly::constant(Var::X, p.eval(c.omega0())));
    }

    #[test]
    fn integral_methods_agree(c in context(), p in poly(6), x in small_rational()) {
        let closed = hahn_integral_closed(&c, &p, &x).unwrap();
        prop_assert_eq!(closed, hahn_antiderivative(&c, &p).unwrap().eval(&x));
    }

    #[test]
    fn leibniz(c in context(), f in poly(5), g in nonzero_poly(5)) {
        let (product, quotient) = leibniz_residuals(&c, &f, &g).unwrap();
        prop_assert!(product.is_zero());
        prop_assert!(quotient.is_zero());
    }

    #[test]
    fn jackson_reduction(q in unit_interval(), p in poly(8)) {
        let c = QContext::from_q(q, Scalar::zero()).unwrap();
        prop_assert_eq!(hahn_derivative_poly(&c, &p).unwrap(), jackson_derivative(&c, &p));
    }

    #[test]
    fn ladder_actions_agree(c in context(), n in 0usize..9) {
        for family in LadderFamily::ALL {
            let basis = family.basis();
            for direction in [Direction::Lower, Direction::Raise] {
                let analytic = ladder_apply_analytic(&c, family, direction, &basis.element(&c, n)).unwrap();
                let banded = ladder_apply(&c, family, direction, &FamilyVector::unit(basis, n, Scalar::one())).unwrap();
                prop_assert_eq!(analytic, banded.to_poly(&c));
            }
        }
    }

    #[test]
    fn generating_functions(c in context(), x in small_rational()) {
        let order = 7;
        let g = gaussian_genfun_lhs(&c, &x, order);
        let h = hahn_genfun_lhs(&c, &x, order);
        for n in 0..=order {
            let fact = c.q_factorial(n);
            prop_assert_eq!(g.coeff(n), &(qgaussian(&c, n, Construction::Product).eval(&x) / &fact));
            prop_assert_eq!(h.coeff(n), &(hahn_factorial(&c, n, Construction::Product).eval(&x) / &fact));
        }
    }

    #[test]
    fn series_reciprocal(tail in prop::collection::vec(small_rational(), 0..8)) {
        let mut coeffs = vec![Scalar::one()];
        coeffs.extend(tail);
        let a = TruncSeries::new(coeffs);
        let order = a.order();
        prop_assert_eq!(&a * &a.recip().unwrap(), TruncSeries::one(order));
    }

    #[test]
    fn closed_matrix_elements_match_oracle(
        c in root_context(),
        mu in 0usize..2,
        nu in 0usize..2,
        alpha in small_rational(),
        beta in small_rational(),
        n in 0usize..5,
        r in 0usize..5,
    ) {
        let p = MatElParams { mu: HALVES[mu], nu: HALVES[nu], alpha, beta, n, r };
        for family in [LadderFamily::QGaussian, LadderFamily::QFactorial] {
            prop_assert_eq!(matel_closed(&c, family, &p).unwrap(), matel_oracle(&c, family, &p).unwrap());
        }
        prop_assert_eq!(
            matel_oracle(&c, LadderFamily::Hahn, &p).unwrap(),
            analytic_hahn_matrix_element(&c, &p)
        );
    }
}

/// The Hahn matrix element through the analytic operators `D_{q,ω}` and
/// `x·p((x − ω)/q)` acting on `φ̇_n`, read off by expanding in the Hahn basis.
/// The exponential scalars carry the factor `1 − ω₀`.
fn analytic_hahn_matrix_element(c: &QContext, p: &MatElParams) -> Scalar {
    let damp = Scalar::one() - c.omega0();
    let (alpha, beta) = (&p.alpha * &damp, &p.beta * &damp);
    let apply = |d, q: &Poly| ladder_apply_analytic(c, LadderFamily::Hahn, d, q).unwrap();
    let mut total = Poly::zero(Var::X);
    let mut lowered = hahn_factorial(c, p.n, Construction::Product);
    for i in 0..=p.n {
        if i > 0 {
            lowered = apply(Direction::Lower, &lowered);
        }
        let Some(j) = (p.r + i).checked_sub(p.n) else { continue };
        let (ii, ji) = (i as i64, j as i64);
        let weight = c.q_pow_half(p.nu, ii * ii).unwrap() * pow_i(&beta, ii) / c.q_factorial(i)
            * c.q_pow_half(p.mu, ji * ji).unwrap()
            * pow_i(&alpha, ji)
            / c.q_factorial(j);
        let raised = (0..j).fold(lowered.clone(), |acc, _| apply(Direction::Raise, &acc));
        total = &total + &raised.scale(&weight);
    }
    expand_in_basis(c, &total, Basis::HahnFactorial).unwrap().coeff(p.r)
}
