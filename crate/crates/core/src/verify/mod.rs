//! Identity suites over grids of deformation parameters.
//!
//! Every check becomes a [`CheckRecord`]. Exact identities compare rationals
//! (or polynomials, or series) for equality; truncated ones compare an error
//! against an explicit bound. Identities whose printed form disagrees with the
//! definitions are reported as [`Status::DocumentedDiscrepancy`] with both
//! sides, so they stay visible without failing the run.
//!
//! Suites run in parallel. Random inputs are drawn from a per-suite ChaCha
//! stream seeded from [`VerifyConfig::seed`] before any parallel work starts,
//! and records are sorted by id, so a report depends only on its config.

mod families;
mod hahn;
mod kernel;
mod matrix;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poly::{Poly, Var};
use crate::qkernel::{rat, to_sci, QContext, Scalar};
use crate::qseries::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    QKernel,
    QSeries,
    PolyFamilies,
    Operators,
    MatrixElements,
    HahnCalc,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::QKernel,
        Suite::QSeries,
        Suite::PolyFamilies,
        Suite::Operators,
        Suite::MatrixElements,
        Suite::HahnCalc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QKernel => "qkernel",
            Suite::QSeries => "qseries",
            Suite::PolyFamilies => "polyfamilies",
            Suite::Operators => "operators",
            Suite::MatrixElements => "matrixelements",
            Suite::HahnCalc => "hahncalc",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    DocumentedDiscrepancy,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::DocumentedDiscrepancy => "documented-discrepancy",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    pub params: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub citation: String,
    /// Extra detail for mismatches, e.g. the ratio of the two sides.
    pub note: String,
}

/// Largest index or degree each suite sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    pub construction_degree: usize,
    pub ladder_n: usize,
    pub raising_power_n: usize,
    pub series_order: usize,
    pub matrix_n: usize,
    pub corollary_n: usize,
    pub position_n: usize,
    pub hahn_degree: usize,
    pub random_pairs: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            construction_degree: 15,
            ladder_n: 12,
            raising_power_n: 10,
            series_order: 12,
            matrix_n: 6,
            corollary_n: 8,
            position_n: 6,
            hahn_degree: 10,
            random_pairs: 20,
        }
    }
}

impl SuiteBounds {
    /// Replaces every degree and index bound with `nmax`; the series order
    /// and the number of random pairs are kept.
    pub fn with_nmax(self, nmax: usize) -> Self {
        SuiteBounds {
            construction_degree: nmax,
            ladder_n: nmax,
            raising_power_n: nmax,
            matrix_n: nmax,
            corollary_n: nmax,
            position_n: nmax,
            hahn_degree: nmax,
            ..self
        }
    }

    pub fn with_order(self, order: usize) -> Self {
        SuiteBounds { series_order: order, ..self }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Joins the fixed parameter grids of every suite.
    pub ctx: QContext,
    pub suites: Vec<Suite>,
    pub bounds: SuiteBounds,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(ctx: QContext) -> Self {
        VerifyConfig { ctx, suites: Suite::ALL.to_vec(), bounds: SuiteBounds::default(), seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContextSummary {
    pub s: Option<String>,
    pub q: String,
    pub omega: String,
    pub omega0: String,
}

impl ContextSummary {
    pub fn of(ctx: &QContext) -> Self {
        ContextSummary {
            s: ctx.root().map(ToString::to_string),
            q: ctx.q().to_string(),
            omega: ctx.omega().to_string(),
            omega0: ctx.omega0().to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    #[serde(rename = "documented-discrepancy")]
    pub documented_discrepancy: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub context: ContextSummary,
    pub suites: Vec<Suite>,
    pub bounds: SuiteBounds,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    /// No record failed; documented discrepancies do not count.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn with_status(&self, status: Status) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(move |r| r.status == status)
    }
}

pub fn run(config: &VerifyConfig) -> VerificationReport {
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let mut records: Vec<CheckRecord> = suites
        .par_iter()
        .flat_map(|&suite| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(suite.stream());
            let mut sink = Sink::new(suite);
            match suite {
                Suite::QKernel => kernel::qkernel_suite(config, &mut rng, &mut sink),
                Suite::QSeries => kernel::qseries_suite(config, &mut sink),
                Suite::PolyFamilies => families::polyfamilies_suite(config, &mut rng, &mut sink),
                Suite::Operators => families::operators_suite(config, &mut rng, &mut sink),
                Suite::MatrixElements => matrix::matrixelements_suite(config, &mut sink),
                Suite::HahnCalc => hahn::hahncalc_suite(config, &mut rng, &mut sink),
            }
            sink.records
        })
        .collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));

    let mut summary = Summary { total: records.len(), ..Summary::default() };
    for r in &records {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::DocumentedDiscrepancy => summary.documented_discrepancy += 1,
            Status::Fail => summary.fail += 1,
        }
    }
    VerificationReport {
        seed: config.seed,
        context: ContextSummary::of(&config.ctx),
        suites,
        bounds: config.bounds.clone(),
        summary,
        records,
    }
}

/// One comparison inside a grouped check.
pub(crate) struct Case {
    label: String,
    lhs: String,
    rhs: String,
    ok: bool,
    note: String,
}

impl Case {
    pub(crate) fn eq<T: PartialEq + fmt::Display>(label: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Case { label: label.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), ok: lhs == rhs, note: String::new() }
    }

    pub(crate) fn from_result<T: PartialEq + fmt::Display>(label: impl Into<String>, r: Result<(T, T)>) -> Self {
        match r {
            Ok((lhs, rhs)) => Case::eq(label, &lhs, &rhs),
            Err(e) => Case::error(label, &e),
        }
    }

    pub(crate) fn error(label: impl Into<String>, e: &Error) -> Self {
        Case { label: label.into(), lhs: format!("error: {e}"), rhs: String::new(), ok: false, note: String::new() }
    }

    pub(crate) fn with_note(mut self, note: String) -> Self {
        self.note = note;
        self
    }
}

pub(crate) struct Sink {
    suite: Suite,
    records: Vec<CheckRecord>,
}

impl Sink {
    fn new(suite: Suite) -> Self {
        Sink { suite, records: Vec::new() }
    }

    pub(crate) fn record(&mut self, id: String, params: String, status: Status, lhs: String, rhs: String, citation: &str) {
        self.records.push(CheckRecord {
            id: format!("{}.{}", self.suite, id),
            suite: self.suite,
            params,
            status,
            lhs,
            rhs,
            citation: citation.into(),
            note: String::new(),
        });
    }

    pub(crate) fn case(&mut self, id: String, params: String, case: Case, mismatch: Status, citation: &str) {
        let status = if case.ok { Status::Pass } else { mismatch };
        self.record(id, params, status, case.lhs, case.rhs, citation);
        if let Some(last) = self.records.last_mut() {
            last.note = case.note;
        }
    }

    /// A family of comparisons sharing one citation. All-equal groups become a
    /// single pass record; each mismatch also gets its own row with both
    /// sides.
    pub(crate) fn group(&mut self, id: String, params: String, cases: Vec<Case>, mismatch: Status, citation: &str) {
        let total = cases.len();
        let equal = cases.iter().filter(|c| c.ok).count();
        let status = if equal == total { Status::Pass } else { mismatch };
        self.record(
            id.clone(),
            params.clone(),
            status,
            format!("{equal}/{total} cases equal"),
            format!("{total}/{total} cases equal"),
            citation,
        );
        for c in cases.into_iter().filter(|c| !c.ok) {
            let label = c.label.clone();
            self.case(format!("{id}.{label}"), format!("{params};{label}"), c, mismatch, citation);
        }
    }

    /// `|err| ≤ bound` for a truncated quantity.
    pub(crate) fn bounded(&mut self, id: String, params: String, err: Result<(Scalar, Scalar)>, citation: &str) {
        match err {
            Ok((err, bound)) => {
                let status = if err.abs() <= bound { Status::Pass } else { Status::Fail };
                self.record(id, params, status, format!("|err| = {}", to_sci(&err.abs(), 4)), format!("bound {}", to_sci(&bound, 4)), citation);
            }
            Err(e) => self.record(id, params, Status::Fail, format!("error: {e}"), String::new(), citation),
        }
    }
}

/// Parameter label of a context, e.g. `q=1/4,w=1/8`.
pub(crate) fn label(ctx: &QContext) -> String {
    format!("q={},w={}", ctx.q(), ctx.omega())
}

pub(crate) fn ctx(q: (i64, i64), w: (i64, i64)) -> QContext {
    QContext::from_q(rat(q.0, q.1), rat(w.0, w.1)).expect("grid parameters lie in (0, 1)")
}

/// Fixed grid plus the configured context, without duplicates.
pub(crate) fn with_config(mut grid: Vec<QContext>, config: &VerifyConfig) -> Vec<QContext> {
    if !grid.iter().any(|c| c.q() == config.ctx.q() && c.omega() == config.ctx.omega()) {
        grid.push(config.ctx.clone());
    }
    grid
}

/// Same as [`with_config`], but the configured context joins with `ω = 0`.
pub(crate) fn with_config_q(mut grid: Vec<QContext>, config: &VerifyConfig) -> Vec<QContext> {
    let c = config.ctx.with_omega(Scalar::zero());
    if !grid.iter().any(|g| g.q() == c.q() && g.omega() == c.omega()) {
        grid.push(c);
    }
    grid
}

pub(crate) fn pad(n: usize) -> String {
    format!("{n:02}")
}

pub(crate) fn series_str(s: &TruncSeries) -> String {
    let parts: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Polynomial of exact degree `degree` in `x` with small random rational
/// coefficients.
pub(crate) fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut coeffs: Vec<Scalar> = (0..=degree).map(|_| random_rational(rng)).collect();
    while coeffs[degree].is_zero() {
        coeffs[degree] = random_rational(rng);
    }
    Poly::from_coeffs(Var::X, coeffs)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

pub(crate) fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}
