use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use qpoly_core::qkernel::HalfInt;
use qpoly_core::verify::{Suite, SuiteBounds, VerifyConfig};
use qpoly_core::{QContext, Scalar};

#[derive(Parser, Debug)]
#[command(name = "qpoly", version, about = "Exact verification and tables for q-Gaussian, q-factorial and Hahn factorial polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run identity suites and print a report; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Emit an exact table.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct ContextArgs {
    /// Square root s of the deformation parameter, q = s^2 (0 < s < 1).
    #[arg(long, value_name = "RATIONAL", conflicts_with = "q")]
    pub s: Option<String>,
    /// The deformation parameter itself (0 < q < 1). Half-integer powers of
    /// q are available only if q is a rational square.
    #[arg(long, value_name = "RATIONAL")]
    pub q: Option<String>,
    /// Hahn shift ω.
    #[arg(long, value_name = "RATIONAL", default_value = "0")]
    pub omega: String,
    /// Truncation order of series.
    #[arg(long, value_name = "N", default_value_t = 12)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output if absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Replace every degree and index bound of the suites.
    #[arg(long, value_name = "N")]
    pub nmax: Option<usize>,
    /// Suites to run (repeatable); all if absent.
    #[arg(long, value_name = "NAME", value_parser = parse_suite)]
    pub suite: Vec<Suite>,
    /// Seed for the random-polynomial cases.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[command(flatten)]
    pub context: ContextArgs,
    /// Largest index n in the table.
    #[arg(long, value_name = "N", default_value_t = 6)]
    pub nmax: usize,
    /// Evaluation point for the genfun and hahn tables.
    #[arg(long, value_name = "RATIONAL", default_value = "2")]
    pub x: String,
    /// Matrix-element exponent μ, 0 or 1/2 (any half-integer).
    #[arg(long, value_name = "HALF", default_value = "0")]
    pub mu: String,
    /// Matrix-element exponent ν.
    #[arg(long, value_name = "HALF", default_value = "0")]
    pub nu: String,
    #[arg(long, value_name = "RATIONAL", default_value = "1")]
    pub alpha: String,
    #[arg(long, value_name = "RATIONAL", default_value = "1")]
    pub beta: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Poly,
    Matel,
    Genfun,
    Position,
    Hahn,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Poly => "poly",
            TableKind::Matel => "matel",
            TableKind::Genfun => "genfun",
            TableKind::Position => "position",
            TableKind::Hahn => "hahn",
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: qpoly_core::Error| e.to_string())
}

/// `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Scalar, String> {
    let t = s.trim();
    if let Some((int_part, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid rational {s:?}"));
        }
        let negative = int_part.starts_with('-');
        let whole = match int_part.trim_start_matches(['-', '+']) {
            "" => Scalar::zero(),
            digits => Scalar::from_str(digits).map_err(|_| format!("invalid rational {s:?}"))?,
        };
        let numer = Scalar::from_str(frac).map_err(|_| format!("invalid rational {s:?}"))?;
        let denom = Scalar::from_str(&format!("1{}", "0".repeat(frac.len()))).expect("power of ten");
        let v = whole + numer / denom;
        return Ok(if negative { -v } else { v });
    }
    Scalar::from_str(t).map_err(|_| format!("invalid rational {s:?}"))
}

pub fn parse_half(s: &str) -> Result<HalfInt, String> {
    let v = parse_rational(s)? * Scalar::from_integer(2.into());
    if !v.is_integer() {
        return Err(format!("{s:?} is not a half-integer"));
    }
    let twice = v.to_integer().try_into().map_err(|_| format!("{s:?} is out of range"))?;
    Ok(HalfInt::from_twice(twice))
}

impl ContextArgs {
    pub fn context(&self) -> Result<QContext, String> {
        let omega = parse_rational(&self.omega)?;
        let ctx = match (&self.s, &self.q) {
            (_, Some(q)) => QContext::from_q(parse_rational(q)?, omega),
            (Some(s), None) => QContext::from_root(parse_rational(s)?, omega),
            (None, None) => QContext::from_root(Scalar::new(1.into(), 2.into()), omega),
        };
        ctx.map_err(|e| e.to_string())
    }
}

impl VerifyArgs {
    pub fn config(&self) -> Result<VerifyConfig, String> {
        let mut bounds = SuiteBounds::default().with_order(self.context.order);
        if let Some(n) = self.nmax {
            bounds = bounds.with_nmax(n);
        }
        let suites = if self.suite.is_empty() { Suite::ALL.to_vec() } else { self.suite.clone() };
        Ok(VerifyConfig { ctx: self.context.context()?, suites, bounds, seed: self.seed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpoly_core::qkernel::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        for bad in ["", "a", "1/0", "1.", "1.2.3", "1/2/3", "0.x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn halves() {
        assert_eq!(parse_half("1/2").unwrap(), HalfInt::HALF);
        assert_eq!(parse_half("0").unwrap(), HalfInt::ZERO);
        assert_eq!(parse_half("1").unwrap(), HalfInt::ONE);
        assert!(parse_half("1/3").is_err());
    }

    #[test]
    fn contexts() {
        let args = |s: Option<&str>, q: Option<&str>, omega: &str| ContextArgs {
            s: s.map(String::from),
            q: q.map(String::from),
            omega: omega.into(),
            order: 12,
            format: Format::Json,
            out: None,
        };
        let c = args(None, None, "0").context().unwrap();
        assert_eq!(c.q(), &rat(1, 4));
        let c = args(None, Some("1/2"), "1/8").context().unwrap();
        assert!(c.root().is_none());
        assert_eq!(c.omega(), &rat(1, 8));
        assert!(args(Some("2"), None, "0").context().is_err());
        assert!(args(Some("1"), None, "0").context().is_err());
        assert!(args(None, Some("0"), "0").context().is_err());
    }
}
