//! Exact tables. Every rational is a `p/q` string; truncated quantities
//! carry their tolerance and error bound next to the value.

use num_traits::{One, Zero};
use qpoly_core::hahncalc::{hahn_derivative_poly, hahn_integral_closed, hahn_integral_numeric, SampledFn};
use qpoly_core::matrixelements::{matel_closed, matel_oracle, MatElParams};
use qpoly_core::operators::LadderFamily;
use qpoly_core::polyfamilies::{hahn_factorial, position_coefficients, qfactorial_u, qgaussian, Construction};
use qpoly_core::qkernel::to_sci;
use qpoly_core::qseries::{gaussian_genfun_lhs, hahn_genfun_lhs};
use qpoly_core::verify::ContextSummary;
use qpoly_core::{Poly, QContext, Scalar, Var};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{parse_half, parse_rational, TableArgs, TableKind};

#[derive(Debug, Serialize)]
pub struct Table {
    pub context: ContextSummary,
    pub kind: &'static str,
    pub rows: Vec<Map<String, Value>>,
}

/// Tolerance for numeric Hahn integrals in the `hahn` table.
const HAHN_TOL: (i64, i64) = (1, 1_000_000_000);

pub fn build(args: &TableArgs, ctx: &QContext) -> Result<Table, String> {
    let nmax = args.nmax;
    let rows = match args.kind {
        TableKind::Poly => poly_rows(ctx, nmax),
        TableKind::Matel => {
            let (mu, nu) = (parse_half(&args.mu)?, parse_half(&args.nu)?);
            let (alpha, beta) = (parse_rational(&args.alpha)?, parse_rational(&args.beta)?);
            matel_rows(ctx, nmax, |n, r| MatElParams { mu, nu, alpha: alpha.clone(), beta: beta.clone(), n, r })
        }
        TableKind::Genfun => genfun_rows(ctx, &parse_rational(&args.x)?, args.context.order),
        TableKind::Position => position_rows(ctx, nmax),
        TableKind::Hahn => hahn_rows(ctx, &parse_rational(&args.x)?, nmax),
    };
    Ok(Table { context: ContextSummary::of(ctx), kind: args.kind.name(), rows })
}

fn s(v: &Scalar) -> Value {
    Value::String(v.to_string())
}

fn coeffs(p: &Poly) -> Value {
    let mut c: Vec<Value> = p.coeffs().iter().map(s).collect();
    if c.is_empty() {
        c.push(Value::String("0".into()));
    }
    Value::Array(c)
}

fn row<const N: usize>(fields: [(&str, Value); N]) -> Map<String, Value> {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn or_error(r: qpoly_core::Result<Scalar>) -> Value {
    match r {
        Ok(v) => s(&v),
        Err(e) => Value::String(format!("error: {e}")),
    }
}

fn poly_rows(ctx: &QContext, nmax: usize) -> Vec<Map<String, Value>> {
    let mut rows = Vec::new();
    for n in 0..=nmax {
        rows.push(row([
            ("family", "qgaussian".into()),
            ("n", n.into()),
            ("var", "x".into()),
            ("coeffs", coeffs(&qgaussian(ctx, n, Construction::Product))),
        ]));
    }
    for n in 0..=nmax {
        rows.push(row([
            ("family", "qfactorial".into()),
            ("n", n.into()),
            ("var", "u".into()),
            ("coeffs", coeffs(&qfactorial_u(ctx, n))),
        ]));
    }
    for n in 0..=nmax {
        rows.push(row([
            ("family", "hahn".into()),
            ("n", n.into()),
            ("var", "x".into()),
            ("coeffs", coeffs(&hahn_factorial(ctx, n, Construction::Product))),
        ]));
    }
    rows
}

fn matel_rows(ctx: &QContext, nmax: usize, p: impl Fn(usize, usize) -> MatElParams) -> Vec<Map<String, Value>> {
    let mut rows = Vec::new();
    for family in LadderFamily::ALL {
        for n in 0..=nmax {
            for r in 0..=nmax {
                let params = p(n, r);
                let closed = matel_closed(ctx, family, &params);
                let oracle = matel_oracle(ctx, family, &params);
                let equal = matches!((&closed, &oracle), (Ok(a), Ok(b)) if a == b);
                rows.push(row([
                    ("family", family.to_string().into()),
                    ("n", n.into()),
                    ("r", r.into()),
                    ("mu", params.mu.to_string().into()),
                    ("nu", params.nu.to_string().into()),
                    ("alpha", s(&params.alpha)),
                    ("beta", s(&params.beta)),
                    ("closed", or_error(closed)),
                    ("oracle", or_error(oracle)),
                    ("equal", equal.into()),
                ]));
            }
        }
    }
    rows
}

fn genfun_rows(ctx: &QContext, x: &Scalar, order: usize) -> Vec<Map<String, Value>> {
    let mut rows = Vec::new();
    let gaussian = gaussian_genfun_lhs(ctx, x, order);
    for n in 0..=order {
        let expected = qgaussian(ctx, n, Construction::Product).eval(x) / ctx.q_factorial(n);
        rows.push(row([
            ("family", "qgaussian".into()),
            ("n", n.into()),
            ("x", s(x)),
            ("coefficient", s(gaussian.coeff(n))),
            ("polynomial_over_factorial", s(&expected)),
        ]));
    }
    if !ctx.omega().is_zero() {
        let hahn = hahn_genfun_lhs(ctx, x, order);
        for n in 0..=order {
            let expected = hahn_factorial(ctx, n, Construction::Product).eval(x) / ctx.q_factorial(n);
            rows.push(row([
                ("family", "hahn".into()),
                ("n", n.into()),
                ("x", s(x)),
                ("coefficient", s(hahn.coeff(n))),
                ("polynomial_over_factorial", s(&expected)),
            ]));
        }
    }
    rows
}

fn position_rows(ctx: &QContext, nmax: usize) -> Vec<Map<String, Value>> {
    position_coefficients(ctx, nmax)
        .iter()
        .enumerate()
        .map(|(n, c)| row([("n", n.into()), ("var", "x".into()), ("coeffs", coeffs(c))]))
        .collect()
}

/// Hahn derivative and integral of `x^n` at `x`.
fn hahn_rows(ctx: &QContext, x: &Scalar, nmax: usize) -> Vec<Map<String, Value>> {
    let tol = Scalar::new(HAHN_TOL.0.into(), HAHN_TOL.1.into());
    (0..=nmax)
        .map(|n| {
            let p = Poly::monomial(Var::X, n, Scalar::one());
            let derivative = hahn_derivative_poly(ctx, &p).map(|d| d.eval(x));
            let closed = hahn_integral_closed(ctx, &p, x);
            let numeric = hahn_integral_numeric(ctx, &SampledFn::from_poly(p), x, &tol);
            let (value, terms, bound) = match numeric {
                Ok(t) => (s(&t.value), t.terms.into(), Value::String(to_sci(&t.error_bound, 4))),
                Err(e) => (Value::String(format!("error: {e}")), Value::Null, Value::Null),
            };
            row([
                ("n", n.into()),
                ("x", s(x)),
                ("function", format!("x^{n}").into()),
                ("derivative", or_error(derivative)),
                ("integral_closed", or_error(closed)),
                ("integral_numeric", value),
                ("terms", terms),
                ("error_bound", bound),
                ("tol", "1e-9".into()),
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpoly_core::qkernel::rat;

    fn strings(v: &Value) -> Vec<String> {
        v.as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
    }

    #[test]
    fn poly_example() {
        let ctx = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let rows = poly_rows(&ctx, 2);
        assert_eq!(rows.len(), 9);
        assert_eq!(strings(&rows[2]["coeffs"]), ["1/2", "-3/2", "1"]);
        assert_eq!(rows[2]["family"], "qgaussian");
    }

    #[test]
    fn position_example() {
        let ctx = QContext::from_q(rat(1, 2), Scalar::zero()).unwrap();
        let rows = position_rows(&ctx, 2);
        assert_eq!(rows.len(), 3);
        // (x^2 - 1)/[2]_q with [2]_q = 3/2
        assert_eq!(strings(&rows[2]["coeffs"]), ["-2/3", "0", "2/3"]);
    }

    #[test]
    fn genfun_order_zero() {
        let ctx = QContext::from_root(rat(1, 2), Scalar::zero()).unwrap();
        let rows = genfun_rows(&ctx, &rat(2, 1), 0);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["coefficient"], "1");
    }

    #[test]
    fn hahn_rows_carry_tolerance() {
        let ctx = QContext::from_q(rat(1, 2), rat(1, 8)).unwrap();
        let rows = hahn_rows(&ctx, &rat(1, 3), 2);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0]["tol"], "1e-9");
        // D x = 1
        assert_eq!(rows[1]["derivative"], "1");
    }
}
