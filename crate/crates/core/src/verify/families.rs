use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use super::{ctx, label, pad, random_poly, with_config, with_config_q, Case, Sink, Status, VerifyConfig};
use crate::error::Result;
use crate::operators::{
    algebra_relations_check, difference_equation_residual, jackson_derivative, ladder_apply, ladder_apply_analytic,
    Direction, LadderFamily,
};
use crate::poly::{Poly, Var};
use crate::polyfamilies::{
    connect_hahn_gaussian, expand_in_basis, hahn_factorial, hahn_factorial_shifted_recursion, position_coefficients,
    qfactorial_u, qfactorial_via_pochhammer, qgaussian, qgaussian_via_qexp_operator, Basis, Construction, FamilyVector,
};
use crate::qkernel::{binom2, int, pow_i, QContext, Scalar};

fn gaussian_grid(config: &VerifyConfig) -> Vec<QContext> {
    with_config_q(vec![ctx((1, 4), (0, 1)), ctx((1, 2), (0, 1))], config)
}

fn hahn_grid(config: &VerifyConfig) -> Vec<QContext> {
    let mut grid = Vec::new();
    for q in [(1, 4), (1, 2)] {
        for w in [(0, 1), (1, 8), (1, 3)] {
            grid.push(ctx(q, w));
        }
    }
    with_config(grid, config)
}

pub(super) fn polyfamilies_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng, sink: &mut Sink) {
    let deg = config.bounds.construction_degree;
    let hahn = hahn_grid(config);
    // one random polynomial per degree per context, drawn before any work
    let randoms: Vec<Vec<Poly>> = hahn.iter().map(|_| (0..=deg).map(|d| random_poly(rng, d)).collect()).collect();

    for c in &gaussian_grid(config) {
        let l = label(c);
        for method in [Construction::Recursion, Construction::ExplicitSum] {
            let cases = (0..=deg)
                .map(|n| {
                    Case::eq(format!("n={}", pad(n)), &qgaussian(c, n, method), &qgaussian(c, n, Construction::Product))
                })
                .collect();
            sink.group(
                format!("gaussian-{method:?}.{l}").to_lowercase(),
                format!("{l};nmax={deg}"),
                cases,
                Status::Fail,
                "phi_n by recursion or explicit sum = prod_{k<n} (x - q^k)",
            );
        }

        let mut cases = Vec::new();
        for m in 0..=10i64 {
            let u = c.q_pow(m);
            for n in 0..=deg {
                let direct = (0..n as i64).fold(Scalar::one(), |acc, k| acc * c.q_int(m - k));
                let label = format!("x={},n={}", pad(m as usize), pad(n));
                cases.push(Case::eq(label.clone(), &qfactorial_u(c, n).eval(&u), &direct));
                cases.push(Case::eq(label + ",pochhammer", &qfactorial_via_pochhammer(c, m, n), &direct));
            }
        }
        sink.group(
            format!("qfactorial-integer-points.{l}"),
            format!("{l};x<=10;nmax={deg}"),
            cases,
            Status::Fail,
            "phihat_n(x) = prod_{k<n} [x - k]_q = (q^{-x};q)_n (-1)^n q^{nx - n(n-1)/2} / (1-q)^n at integer x",
        );

        let cases = (0..=deg)
            .map(|n| {
                let binomials = (0..=n as i64).map(|k| c.q_binomial(n as i64, k)).collect();
                let v = FamilyVector::new(Basis::QGaussian, binomials);
                Case::eq(format!("n={}", pad(n)), &v.to_poly(c), &Poly::monomial(Var::X, n, int(1)))
            })
            .collect();
        sink.group(
            format!("gaussian-inversion.{l}"),
            format!("{l};nmax={deg}"),
            cases,
            Status::Fail,
            "x^n = sum_k [n, k]_q phi_k(x)",
        );

        if c.root().is_some() {
            let cases = (0..=config.bounds.ladder_n)
                .map(|n| {
                    Case::from_result(
                        format!("n={}", pad(n)),
                        qgaussian_via_qexp_operator(c, n).map(|p| (p, qgaussian(c, n, Construction::Product))),
                    )
                })
                .collect();
            sink.group(
                format!("gaussian-qexp-operator.{l}"),
                format!("{l};nmax={}", config.bounds.ladder_n),
                cases,
                Status::Fail,
                "phi_n(x) = E_q^{(1/2)}(-q^{-1/2} D_x^q) x^n",
            );
        }

        position(c, &l, config.bounds.position_n, sink);
    }

    for (c, polys) in hahn.iter().zip(&randoms) {
        let l = label(c);
        let mut cases = Vec::new();
        for n in 0..=deg {
            let product = hahn_factorial(c, n, Construction::Product);
            for method in [Construction::Recursion, Construction::ExplicitSum] {
                cases.push(Case::eq(format!("n={},{method:?}", pad(n)), &hahn_factorial(c, n, method), &product));
            }
            cases.push(Case::eq(format!("n={},shifted", pad(n)), &hahn_factorial_shifted_recursion(c, n), &product));
        }
        sink.group(
            format!("hahn-constructions.{l}"),
            format!("{l};nmax={deg}"),
            cases,
            Status::Fail,
            "phidot_n by recursion, explicit sum and shifted recursion = prod_{k<n} (x - [k]_q w)",
        );

        let w0 = c.omega0().clone();
        let cases = (0..=deg)
            .map(|n| {
                let coeffs = (0..=n as i64).map(|k| c.q_binomial(n as i64, k) * pow_i(&-w0.clone(), n as i64 - k)).collect();
                let v = FamilyVector::new(Basis::HahnFactorial, coeffs);
                let power = (0..n).fold(Poly::one(Var::X), |acc, _| &acc * &Poly::linear_root(Var::X, &w0));
                Case::eq(format!("n={}", pad(n)), &v.to_poly(c), &power)
            })
            .collect();
        sink.group(
            format!("hahn-inversion.{l}"),
            format!("{l};nmax={deg}"),
            cases,
            Status::Fail,
            "(x - w0)^n = sum_k [n, k]_q (-w0)^{n-k} phidot_k(x)",
        );

        let mut cases = Vec::new();
        for p in polys {
            for basis in [Basis::Monomial, Basis::ShiftedMonomial, Basis::QGaussian, Basis::HahnFactorial] {
                let d = p.degree().unwrap_or(0);
                cases.push(Case::from_result(
                    format!("deg={},{basis}", pad(d)),
                    expand_in_basis(c, p, basis).map(|v| (v.to_poly(c), p.clone())),
                ));
            }
        }
        sink.group(
            format!("basis-round-trip.{l}"),
            format!("{l};seeded;degree<={deg}"),
            cases,
            Status::Fail,
            "expanding a polynomial in a family basis and summing back returns it",
        );

        if !c.omega0().is_zero() {
            let cases = (0..=deg)
                .map(|n| {
                    Case::from_result(
                        format!("n={}", pad(n)),
                        connect_hahn_gaussian(c, n).map(|p| (p, hahn_factorial(c, n, Construction::Product))),
                    )
                })
                .collect();
            sink.group(
                format!("hahn-gaussian-connection.{l}"),
                format!("{l};nmax={deg}"),
                cases,
                Status::Fail,
                "phidot_n(x) = (-w0)^n phi_n(1 - x/w0)",
            );
        }
    }
}

/// The five coefficients as printed, built from q-integers.
fn printed_position(c: &QContext) -> Vec<Poly> {
    let b = |n: i64| c.q_int(n);
    let qp = |e: i64| c.q_pow(e);
    let x = |coeffs: Vec<Scalar>, denom: Scalar| Poly::from_coeffs(Var::X, coeffs).scale(&denom.recip());
    let s3 = int(1) + qp(-1) * b(2);
    let s4 = &s3 + qp(-2) * b(3);
    let s5 = &s4 + qp(-3) * b(4);
    let t5 = qp(-2) * b(3) + qp(-3) * b(4) + qp(-4) * b(2) * b(4);
    vec![
        x(vec![int(0), int(1)], int(1)),
        x(vec![int(-1), int(0), int(1)], b(2)),
        x(vec![int(0), -s3, int(0), int(1)], c.q_factorial(3)),
        x(vec![qp(-2) * b(3), int(0), -s4, int(0), int(1)], c.q_factorial(4)),
        x(vec![int(0), t5, int(0), -s5, int(0), int(1)], c.q_factorial(5)),
    ]
}

fn position(c: &QContext, l: &str, n_half: usize, sink: &mut Sink) {
    let coeffs = position_coefficients(c, (2 * n_half + 1).max(5));
    for (i, printed) in printed_position(c).iter().enumerate() {
        let n = i + 1;
        sink.case(
            format!("position-printed.{l}.n={}", pad(n)),
            format!("{l};n={n}"),
            Case::eq("", &coeffs[n], printed),
            Status::Fail,
            "c_n(x) from x c_n = [n+1]_q c_{n+1} + q^{1-n} c_{n-1} matches the printed c_1..c_5",
        );
    }
    let zero = Scalar::zero();
    let mut cases = Vec::new();
    for n in 0..=n_half {
        let closed = (if n % 2 == 0 { int(1) } else { int(-1) }) * c.q_pow(n as i64 * (1 - n as i64))
            / c.q_double_factorial_even(n);
        cases.push(Case::eq(format!("c{}", pad(2 * n)), &coeffs[2 * n].eval(&zero), &closed));
        cases.push(Case::eq(format!("c{}", pad(2 * n + 1)), &coeffs[2 * n + 1].eval(&zero), &zero));
    }
    sink.group(
        format!("position-at-zero.{l}"),
        format!("{l};n<={n_half}"),
        cases,
        Status::Fail,
        "c_{2n}(0) = (-1)^n q^{n(1-n)} / [2n]_q!!, c_{2n+1}(0) = 0",
    );
}

pub(super) fn operators_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng, sink: &mut Sink) {
    let nmax = config.bounds.ladder_n;
    let gaussian = gaussian_grid(config);
    let hahn: Vec<QContext> = hahn_grid(config);
    let randoms: Vec<Poly> = (0..=config.bounds.hahn_degree).map(|d| random_poly(rng, d)).collect();

    let runs: Vec<(LadderFamily, &QContext)> = LadderFamily::ALL
        .into_iter()
        .flat_map(|f| {
            let grid = if f == LadderFamily::Hahn { &hahn } else { &gaussian };
            grid.iter().map(move |c| (f, c))
        })
        .collect();

    for (family, c) in runs {
        let l = format!("{family}.{}", label(c));
        let basis = family.basis();
        for direction in [Direction::Lower, Direction::Raise] {
            let cases = (0..=nmax)
                .map(|n| {
                    Case::from_result(format!("n={}", pad(n)), (|| {
                        let analytic = ladder_apply_analytic(c, family, direction, &basis.element(c, n))?;
                        let banded = ladder_apply(c, family, direction, &FamilyVector::unit(basis, n, int(1)))?;
                        Ok((analytic, banded.to_poly(c)))
                    })())
                })
                .collect();
            sink.group(
                format!("analytic-vs-basis-{direction:?}.{l}").to_lowercase(),
                format!("{l};nmax={nmax}"),
                cases,
                Status::Fail,
                "analytic ladder operator on e_n equals its action on the basis coefficients",
            );
        }

        match algebra_relations_check(c, family, nmax) {
            Ok(checks) => {
                let relations: Vec<&'static str> = checks.iter().filter(|r| r.n == 0).map(|r| r.relation).collect();
                for relation in relations {
                    let cases = checks
                        .iter()
                        .filter(|r| r.relation == relation)
                        .map(|r| {
                            Case::eq(format!("n={}", pad(r.n)), &r.lhs.to_poly(c), &r.rhs.to_poly(c))
                        })
                        .collect();
                    let (slug, citation) = relation_names(family, relation);
                    sink.group(
                        format!("relation-{slug}.{l}"),
                        format!("{l};nmax={nmax}"),
                        cases,
                        Status::Fail,
                        citation,
                    );
                }
            }
            Err(e) => sink.case(format!("relations.{l}"), l.clone(), Case::error("", &e), Status::Fail, "ladder relations"),
        }

        let pmax = config.bounds.raising_power_n;
        let mut current = Poly::one(basis.var());
        let mut cases = Vec::new();
        for n in 0..=pmax {
            let expected = basis.element(c, n);
            let weight = match family {
                LadderFamily::QFactorial => Scalar::one(),
                _ => c.q_pow(binom2(n as i64)),
            };
            cases.push(Case::eq(format!("n={}", pad(n)), &current.scale(&weight), &expected));
            match ladder_apply_analytic(c, family, Direction::Raise, &current) {
                Ok(next) => current = next,
                Err(e) => {
                    cases.push(Case::error(format!("n={}", pad(n + 1)), &e));
                    break;
                }
            }
        }
        let citation = match family {
            LadderFamily::QGaussian => "q^{n(n-1)/2} (a+)^n 1 = phi_n",
            LadderFamily::QFactorial => "(ahat+)^n 1 = phihat_n",
            LadderFamily::Hahn => "q^{n(n-1)/2} (adot+)^n 1 = phidot_n",
        };
        sink.group(format!("raising-powers.{l}"), format!("{l};nmax={pmax}"), cases, Status::Fail, citation);
    }

    for c in &gaussian {
        let l = label(c);
        let cases = (0..=nmax)
            .map(|n| Case::eq(format!("n={}", pad(n)), &difference_equation_residual(c, n), &Poly::zero(Var::X)))
            .collect();
        sink.group(
            format!("difference-equation.{l}"),
            format!("{l};nmax={nmax}"),
            cases,
            Status::Fail,
            "((x - 1) q^{-x d/dx} D_x^q - [n]_{1/q}) phi_n = 0",
        );

        let cases = randoms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Case::from_result(format!("p{}", pad(i)), (|| -> Result<(Poly, Poly)> {
                    let v = expand_in_basis(c, p, Basis::QGaussian)?;
                    let lowered = ladder_apply(c, LadderFamily::QGaussian, Direction::Lower, &v)?;
                    Ok((jackson_derivative(c, p), lowered.to_poly(c)))
                })())
            })
            .collect();
        sink.group(
            format!("jackson-is-gaussian-lowering.{l}"),
            format!("{l};seeded;degree<={}", config.bounds.hahn_degree),
            cases,
            Status::Fail,
            "D_x^q acts on the q-Gaussian coefficients as the lowering operator",
        );
    }
}

fn relation_names(family: LadderFamily, relation: &str) -> (&'static str, &'static str) {
    let qf = family == LadderFamily::QFactorial;
    match relation {
        "a a† e_n" if qf => ("lower-raise", "a a+ e_n = q^{-n-1} [n+1]_q e_n"),
        "a a† e_n" => ("lower-raise", "a a+ e_n = q^{-n} [n+1]_q e_n"),
        "a† a e_n" if qf => ("raise-lower", "a+ a e_n = q^{-n} [n]_q e_n"),
        "a† a e_n" => ("raise-lower", "a+ a e_n = q^{1-n} [n]_q e_n"),
        "[a, a†] e_n" if qf => ("commutator", "[a, a+] = q^{-N-1}"),
        "[a, a†] e_n" => ("commutator", "[a, a+] = q^{-N}"),
        "[a, a†]_q e_n" if qf => ("q-commutator", "a a+ - q^{-1} a+ a = q^{-1}"),
        "[a, a†]_q e_n" => ("q-commutator", "a a+ - q^{-1} a+ a = 1"),
        "[N, a] e_n" => ("number-lower", "[N, a] = -a"),
        "[N, a†] e_n" => ("number-raise", "[N, a+] = a+"),
        _ => ("other", "ladder relation"),
    }
}
