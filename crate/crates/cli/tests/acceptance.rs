//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};

use num_traits::Zero;
use qpoly_core::qkernel::rat;
use qpoly_core::verify::{self, CheckRecord, Status, VerificationReport, VerifyConfig};
use qpoly_core::QContext;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check_name(rec: &CheckRecord) -> &str {
    rec.id.split('.').nth(1).unwrap_or("")
}

fn selected<'a>(r: &'a VerificationReport, names: &[&str]) -> Vec<&'a CheckRecord> {
    r.records
        .iter()
        .filter(|rec| names.iter().any(|n| n.strip_suffix('*').map_or(check_name(rec) == *n, |p| check_name(rec).starts_with(p))))
        .collect()
}

/// Every named check is present and every record passes.
fn all_pass(r: &VerificationReport, names: &[&str]) -> Outcome {
    let recs = selected(r, names);
    let missing: Vec<&str> = names.iter().copied().filter(|n| selected(r, &[n]).is_empty()).collect();
    let bad: Vec<&str> = recs.iter().filter(|x| x.status != Status::Pass).map(|x| x.id.as_str()).collect();
    Outcome {
        ok: missing.is_empty() && bad.is_empty(),
        detail: if !missing.is_empty() {
            format!("missing checks {missing:?}")
        } else if !bad.is_empty() {
            format!("{} non-pass records, first {}", bad.len(), bad[0])
        } else {
            format!("{} records pass", recs.len())
        },
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome { ok: a.ok && b.ok, detail: format!("{}; {}", a.detail, b.detail) }
}

fn families(r: &VerificationReport) -> Outcome {
    all_pass(r, &["gaussian-recursion", "gaussian-explicitsum", "hahn-constructions", "qfactorial-integer-points"])
}

fn ladder(r: &VerificationReport) -> Outcome {
    all_pass(r, &["analytic-vs-basis-*", "relation-*", "raising-powers"])
}

fn difference_equation(r: &VerificationReport) -> Outcome {
    all_pass(r, &["difference-equation"])
}

fn generating_functions(r: &VerificationReport) -> Outcome {
    all_pass(r, &["genfun-gaussian", "genfun-qfactorial-*", "genfun-hahn", "appendix-factorization"])
}

fn inversion(r: &VerificationReport) -> Outcome {
    all_pass(
        r,
        &["gaussian-inversion", "hahn-inversion", "basis-round-trip", "hahn-gaussian-connection", "corollary-first", "corollary-second"],
    )
}

/// Mismatches are allowed only as documented Hahn rows that carry both values.
fn matrix_elements(r: &VerificationReport) -> Outcome {
    let oracle = selected(r, &["oracle"]);
    let undocumented: Vec<&str> = oracle
        .iter()
        .filter(|x| match x.status {
            Status::Pass => false,
            Status::DocumentedDiscrepancy => {
                !x.id.starts_with("matrixelements.oracle.hahn.") || x.lhs.is_empty() || x.rhs.is_empty()
            }
            Status::Fail => true,
        })
        .map(|x| x.id.as_str())
        .collect();
    let covers_grid = ["q=1/4", "q=9/16"]
        .iter()
        .all(|q| ["gaussian", "factorial", "hahn"].iter().all(|f| oracle.iter().any(|x| x.id.contains(f) && x.id.contains(q))));
    let documented = oracle.iter().filter(|x| x.status == Status::DocumentedDiscrepancy).count();
    let grid = Outcome {
        ok: !oracle.is_empty() && undocumented.is_empty() && covers_grid,
        detail: if undocumented.is_empty() {
            format!("{} oracle rows, {documented} documented Hahn discrepancies", oracle.len())
        } else {
            format!("{} undocumented mismatches, first {}", undocumented.len(), undocumented[0])
        },
    };
    both(grid, all_pass(r, &["hahn-omega-zero", "branch-diagonal", "special-form-*"]))
}

fn position(r: &VerificationReport) -> Outcome {
    all_pass(r, &["position-printed", "position-at-zero"])
}

fn hahn_calculus(r: &VerificationReport) -> Outcome {
    all_pass(
        r,
        &[
            "fundamental-theorem",
            "integral-methods",
            "leibniz-product",
            "leibniz-quotient",
            "hahn-exp-residual",
            "jackson-reduction",
        ],
    )
}

fn exponential_pair(r: &VerificationReport) -> Outcome {
    let restated = selected(r, &["exp-pair-restated"]);
    let documented = Outcome {
        ok: !restated.is_empty() && restated.iter().all(|x| x.status == Status::DocumentedDiscrepancy),
        detail: format!("{} restated rows documented", restated.len()),
    };
    both(all_pass(r, &["exp-pair"]), documented)
}

fn qpoly(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_qpoly")).args(args).output().ok()?.status.code()
}

fn cli_contract(dir: &Path) -> Outcome {
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let mut problems = Vec::new();
    for out in [&a, &b] {
        let code = qpoly(&["verify", "--format", "json", "--out", out.to_str().unwrap()]);
        if code != Some(0) {
            problems.push(format!("default verify exited {code:?}"));
        }
    }
    match (std::fs::read(&a), std::fs::read(&b)) {
        (Ok(x), Ok(y)) if !x.is_empty() && x == y => {}
        _ => problems.push("reports differ between runs".into()),
    }
    let unwritable = dir.join("missing").join("r.json");
    let scenarios: [(&[&str], i32); 4] = [
        (&["verify", "--suite", "qkernel"], 0),
        (&["verify", "--suite", "hahncalc", "--s", "9/10"], 1),
        (&["verify", "--s", "2"], 2),
        (&["verify", "--suite", "qkernel", "--out", unwritable.to_str().unwrap()], 3),
    ];
    for (args, want) in scenarios {
        let got = qpoly(args);
        if got != Some(want) {
            problems.push(format!("{args:?} exited {got:?}, expected {want}"));
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() { "byte-identical reports, exit codes 0/1/2/3".into() } else { problems.join("; ") },
    }
}

fn main() -> ExitCode {
    let config = VerifyConfig::new(QContext::from_root(rat(1, 2), rat(0, 1)).unwrap());
    assert!(config.ctx.omega().is_zero());
    let report = verify::run(&config);
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: [(&str, Box<dyn Fn() -> Outcome + '_>); 10] = [
        ("family constructions", Box::new(|| families(&report))),
        ("ladder algebra", Box::new(|| ladder(&report))),
        ("difference equation", Box::new(|| difference_equation(&report))),
        ("generating functions", Box::new(|| generating_functions(&report))),
        ("inversion and connection", Box::new(|| inversion(&report))),
        ("matrix-element oracle", Box::new(|| matrix_elements(&report))),
        ("position coefficients", Box::new(|| position(&report))),
        ("hahn calculus", Box::new(|| hahn_calculus(&report))),
        ("q-exponential pair", Box::new(|| exponential_pair(&report))),
        ("cli determinism and exit codes", Box::new(|| cli_contract(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.ok);
        println!("criterion {:>2}: {}  {name} ({})", i + 1, if o.ok { "pass" } else { "fail" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
