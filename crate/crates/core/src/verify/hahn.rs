use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;

use super::{ctx, label, pad, random_poly, with_config, Case, Sink, Status, VerifyConfig};
use crate::error::{domain, Result};
use crate::hahncalc::{
    hahn_antiderivative, hahn_derivative_numeric, hahn_derivative_poly, hahn_exp_normalized, hahn_exp_residual,
    hahn_exp_tail_bound, hahn_integral_closed, hahn_integral_numeric, leibniz_residuals, SampledFn,
};
use crate::operators::jackson_derivative;
use crate::poly::{Poly, Var};
use crate::qkernel::{int, rat, HalfInt, QContext, Scalar};
use crate::qseries::{eqw_eval, euler_tail_bound};

const EXP_FACTORS: usize = 40;
const EXP_TERMS: usize = 60;

pub(super) fn hahncalc_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng, sink: &mut Sink) {
    let mut grid = Vec::new();
    for q in [(1, 4), (1, 2)] {
        for w in [(0, 1), (1, 8), (1, 3)] {
            grid.push(ctx(q, w));
        }
    }
    let grid = with_config(grid, config);
    let deg = config.bounds.hahn_degree;
    let polys: Vec<Vec<Poly>> = grid.iter().map(|_| (0..=deg).map(|d| random_poly(rng, d)).collect()).collect();
    let pairs: Vec<Vec<(Poly, Poly)>> = grid
        .iter()
        .map(|_| {
            (0..config.bounds.random_pairs)
                .map(|i| (random_poly(rng, i % 7), random_poly(rng, (i * 3 + 1) % 7)))
                .collect()
        })
        .collect();
    let xs = [int(-1), rat(1, 3), int(2)];

    for ((c, polys), pairs) in grid.iter().zip(&polys).zip(&pairs) {
        let l = label(c);
        let w0 = c.omega0().clone();

        let mut cases = Vec::new();
        for p in polys {
            let d = pad(p.degree().unwrap_or(0));
            cases.push(Case::from_result(
                format!("deg={d},derivative-of-integral"),
                hahn_antiderivative(c, p).and_then(|f| hahn_derivative_poly(c, &f)).map(|g| (g, p.clone())),
            ));
            let at_w0 = Poly::constant(Var::X, p.eval(&w0));
            cases.push(Case::from_result(
                format!("deg={d},integral-of-derivative"),
                hahn_derivative_poly(c, p).and_then(|g| hahn_antiderivative(c, &g)).map(|f| (f, p - &at_w0)),
            ));
        }
        sink.group(
            format!("fundamental-theorem.{l}"),
            format!("{l};seeded;degree<={deg}"),
            cases,
            Status::Fail,
            "D_{q,w} int_{w0}^x f = f and int_{w0}^x D_{q,w} f = f(x) - f(w0)",
        );

        let mut cases = Vec::new();
        for p in polys {
            for x in &xs {
                cases.push(Case::from_result(
                    format!("deg={},x={x}", pad(p.degree().unwrap_or(0))),
                    (|| Ok((hahn_integral_closed(c, p, x)?, hahn_antiderivative(c, p)?.eval(x))))(),
                ));
            }
        }
        sink.group(
            format!("integral-methods.{l}"),
            format!("{l};seeded;degree<={deg}"),
            cases,
            Status::Fail,
            "geometric-node series in closed form = antiderivative through the Hahn basis",
        );

        let zero = Poly::zero(Var::X);
        let mut product = Vec::new();
        let mut quotient = Vec::new();
        for (i, (f, g)) in pairs.iter().enumerate() {
            match leibniz_residuals(c, f, g) {
                Ok((rp, rq)) => {
                    product.push(Case::eq(format!("pair={}", pad(i)), &rp, &zero));
                    quotient.push(Case::eq(format!("pair={}", pad(i)), &rq, &zero));
                }
                Err(e) => product.push(Case::error(format!("pair={}", pad(i)), &e)),
            }
        }
        sink.group(
            format!("leibniz-product.{l}"),
            format!("{l};seeded;pairs={}", pairs.len()),
            product,
            Status::Fail,
            "D(fg) = D(f) g + f(qx + w) D(g)",
        );
        sink.group(
            format!("leibniz-quotient.{l}"),
            format!("{l};seeded;pairs={}", pairs.len()),
            quotient,
            Status::Fail,
            "D(f/g) g(x) g(qx + w) = D(f) g - f D(g)",
        );

        if c.omega().is_zero() {
            let cases = polys
                .iter()
                .map(|p| {
                    Case::from_result(
                        format!("deg={}", pad(p.degree().unwrap_or(0))),
                        hahn_derivative_poly(c, p).map(|d| (d, jackson_derivative(c, p))),
                    )
                })
                .collect();
            sink.group(
                format!("jackson-reduction.{l}"),
                format!("{l};seeded;degree<={deg}"),
                cases,
                Status::Fail,
                "D_{q,0} = D_x^q",
            );
        }

        let mut cases = Vec::new();
        for p in polys.iter().take(6) {
            let f = SampledFn::from_poly(p.clone());
            for x in xs.iter().chain(std::iter::once(&w0)) {
                cases.push(Case::from_result(
                    format!("deg={},x={x}", pad(p.degree().unwrap_or(0))),
                    (|| Ok((hahn_derivative_numeric(c, &f, x)?, hahn_derivative_poly(c, p)?.eval(x))))(),
                ));
            }
        }
        sink.group(
            format!("derivative-sampled.{l}"),
            format!("{l};seeded;degree<=5"),
            cases,
            Status::Fail,
            "(f(qx + w) - f(x)) / ((q - 1)x + w), and f'(w0) at the fixed point",
        );

        let tol = rat(1, 1_000_000_000);
        for p in polys.iter().take(4) {
            let f = SampledFn::from_poly(p.clone());
            for x in &xs {
                let d = pad(p.degree().unwrap_or(0));
                let result = (|| {
                    let t = hahn_integral_numeric(c, &f, x, &tol)?;
                    Ok((t.value - hahn_integral_closed(c, p, x)?, t.error_bound))
                })();
                sink.bounded(
                    format!("integral-sampled.{l}.deg={d}.x={x}"),
                    format!("{l};deg={d};x={x};tol=1e-9"),
                    result,
                    "truncated node sum for int_{w0}^x f within its tail bound of the closed form",
                );
            }
        }
    }

    hahn_exponential(config, sink);
}

/// The `K = 40` truncated Hahn exponential: functional-equation residual
/// below `1e-9`, and agreement with the `(q, ω, 0)` exponential series within
/// both truncation bounds.
///
/// The configured context joins the grid. For `q` much above `9/16`, forty
/// factors are not enough for the `1e-9` limit and the residual check fails.
fn hahn_exponential(config: &VerifyConfig, sink: &mut Sink) {
    let limit = rat(1, 1_000_000_000);
    let mut grid = Vec::new();
    for q in [(1, 4), (1, 2), (9, 16)] {
        for w in [(0, 1), (1, 8), (1, 3)] {
            grid.push(ctx(q, w));
        }
    }
    for c in with_config(grid, config) {
        let l = label(&c);
        for x in [int(-1), int(0), rat(1, 4), rat(1, 3), int(1)] {
            if &x == c.omega0() {
                continue;
            }
            let params = format!("{l};x={x};K={EXP_FACTORS}");
            let residual = hahn_exp_residual(&c, &x, EXP_FACTORS).map(|r| (r, limit.clone()));
            sink.bounded(
                format!("hahn-exp-residual.{l}.x={x}"),
                params.clone(),
                residual,
                "D_{q,w} e_{q,w}(x) = e_{q,w}(x)",
            );
            // the series side converges only for |(1 - q)x - w| < 1
            let z = (Scalar::one() - c.q()) * &x - c.omega();
            if z.abs() >= Scalar::one() {
                continue;
            }
            sink.bounded(
                format!("hahn-exp-series.{l}.x={x}"),
                format!("{params};N={EXP_TERMS}"),
                exp_against_series(&c, &x),
                "e_{q,w}(x) / e_{q,w}(w0) = E_{q,w}^{(0)}(x)",
            );
        }
    }
}

fn exp_against_series(c: &QContext, x: &Scalar) -> Result<(Scalar, Scalar)> {
    let product = hahn_exp_normalized(c, x, EXP_FACTORS)?;
    let series = eqw_eval(c, HalfInt::ZERO, x, EXP_TERMS)?;
    let six_t = hahn_exp_tail_bound(c, x, EXP_FACTORS)
        .filter(|b| *b <= rat(1, 2))
        .ok_or_else(|| domain("product tail bound unavailable"))?;
    // e_K / e_inf is within 6t of 1, so e_inf is within 12t·|e_K| of e_K
    let product_bound = int(2) * six_t * product.abs();
    let z = (Scalar::one() - c.q()) * x - c.omega();
    let series_bound = if z.is_zero() { Scalar::zero() } else { euler_tail_bound(c, &z, EXP_TERMS)? };
    Ok((product - series, product_bound + series_bound))
}
