//! Acceptance checks for the worked examples and theorem suites. Prints one
//! PASS/FAIL line per criterion and exits nonzero on any unexpected outcome.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rankmetric::genweights::{d_weights, delta_weights};
use rankmetric::macwilliams::mrd_weight_distribution;
use rankmetric::{enumerate_subspaces, v_equivalent, Budget, Field, FieldBasis, Result, VectorCode};
use rankmetric_cli::fixtures;
use rankmetric_cli::verify::{self, Config, SuiteResult};

const B: Budget = Budget::DEFAULT;

enum Outcome {
    Pass,
    Fail(String),
    /// Fails exactly as documented in the README.
    Known(String),
}

fn suites(grid: &str, names: &[&str]) -> Result<Vec<SuiteResult>> {
    let cfg = Config {
        grid: grid.parse().expect("valid grid"),
        budget: B,
        mutant: None,
    };
    let only: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    verify::run(&cfg, &only)
}

fn all_pass(results: &[SuiteResult]) -> Outcome {
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{}: {} failed, first {:?}", r.name, r.failed, r.failures.first()))
        .collect();
    if bad.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(bad.join("; "))
    }
}

fn expect(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what.into())
    }
}

fn c1() -> Result<Outcome> {
    let v = fixtures::vector("expansion_vector");
    let g = v.expand(&FieldBasis::power(v.field()))?;
    Ok(expect(g == fixtures::matrix("expansion_matrices"), "Gamma(C) differs from the reference span"))
}

fn c2() -> Result<Outcome> {
    let v = fixtures::vector("expansion_vector");
    let gamma = FieldBasis::power(v.field());
    let gamma_p = gamma.orthogonal();
    // 1, α², α
    if gamma_p.elements() != [1, 4, 2] {
        return Ok(Outcome::Fail(format!("orthogonal basis is {:?}", gamma_p)));
    }
    let lhs = v.expand(&gamma)?.dual();
    let rhs = v.dual().expand(&gamma_p)?;
    Ok(expect(
        lhs == fixtures::matrix("expansion_dual_matrices") && rhs == fixtures::matrix("dual_expansion_matrices") && lhs == rhs,
        "Gamma(C)^perp, Gamma'(C^perp) and the reference spans disagree",
    ))
}

const SHAPE_GRID: &str = "q=2,3;n=3;m=3;dim=9;samples=200";

fn c3() -> Result<Outcome> {
    // Cells of Mat_2x2(F_2) with dim <= 2 hold at most 35 codes, so they are
    // enumerated exhaustively; larger cells are sampled 200 times.
    let r = suites(SHAPE_GRID, &["macwilliams"])?;
    Ok(all_pass(&r))
}

fn c4() -> Result<Outcome> {
    let f = mrd_weight_distribution(2, 3, 2, 3, 2)?;
    if f != vec![1, 0, 7] {
        return Ok(Outcome::Fail(format!("example distribution {f:?}")));
    }
    Ok(all_pass(&suites("", &["mrd-distribution"])?))
}

fn c5() -> Result<Outcome> {
    let aa = fixtures::matrix("equal_columns_2x2");
    let eq3 = fixtures::matrix("equal_columns_3x2");
    let top = fixtures::matrix("top_row_3x2");
    let got = [
        d_weights(&aa, B)?.get(2)?,
        delta_weights(&aa, None, B)?.get(2)?,
        delta_weights(&aa.transpose(), None, B)?.get(2)?,
        d_weights(&eq3, B)?.get(3)?,
        delta_weights(&eq3, None, B)?.get(3)?,
        d_weights(&top, B)?.get(1)?,
        d_weights(&top, B)?.get(2)?,
        delta_weights(&top, None, B)?.get(2)?,
    ];
    Ok(expect(got == [1, 2, 1, 1, 3, 1, 2, 1], format!("got {got:?}, want [1, 2, 1, 1, 3, 1, 2, 1]")))
}

fn c6() -> Result<Outcome> {
    Ok(all_pass(&suites("q=2;n=1;m=1;samples=200", &["definitions"])?))
}

fn c7() -> Result<Outcome> {
    Ok(all_pass(&suites("", &["bounds"])?))
}

fn c8() -> Result<Outcome> {
    Ok(all_pass(&suites("", &["polymatroid", "pm-characterize"])?))
}

/// Optimal vector anticodes of GF(4)^3 with dim <= 2 that are not equivalent
/// to <e_1..e_k>, and how many of them are Frobenius-fixed or have k < m.
fn vector_anticode_misses() -> Result<(usize, usize)> {
    let gf4 = Field::default_extension(2, 2)?;
    let (mut missed, mut unexplained) = (0, 0);
    for s in enumerate_subspaces(&gf4, 3, None, B)?.filter(|s| s.dim() <= 2) {
        let c = VectorCode::from_space(s)?;
        if !c.classify(B)?.is_optimal_vector_anticode {
            continue;
        }
        if v_equivalent(&c, &VectorCode::standard(&gf4, 3, c.dim()), B)?.is_none() {
            missed += 1;
            if c.dim() != c.m() || c.is_frobenius_fixed() {
                unexplained += 1;
            }
        }
    }
    Ok((missed, unexplained))
}

fn c9() -> Result<Outcome> {
    let r = suites("q=2;n=1;m=1", &["classification"])?;
    let (missed, unexplained) = vector_anticode_misses()?;
    let s = &r[0];
    // Every failure must be a vector miss; the Mat_2x2(F_2) half must be clean.
    let matrix_clean = s.failed as usize == missed
        && s
            .failures
            .iter()
            .all(|f| f["check"] == "optimal vector anticode is equivalent to <e_1..e_k>");
    if s.passed {
        return Ok(Outcome::Pass);
    }
    if matrix_clean && unexplained == 0 {
        return Ok(Outcome::Known(format!(
            "Mat_2x2(F_2) anticode classification holds; {missed} optimal vector anticodes of GF(4)^3 with k = m = 2 < n \
             are not Frobenius-fixed and so not equivalent to <e_1, e_2>, e.g. <(1,0,0), (0,1,a)>"
        )));
    }
    Ok(Outcome::Fail(format!("{} failures, first {:?}", s.failed, s.failures.first())))
}

fn c10() -> Result<Outcome> {
    Ok(all_pass(&suites("q=2;n=1;m=1", &["extension"])?))
}

fn c11() -> Result<Outcome> {
    let r = suites(SHAPE_GRID, &["readings"])?;
    let reported = r[0].notes.iter().any(|n| n.starts_with("discrepancy: "));
    match all_pass(&r) {
        Outcome::Pass if !reported => Ok(Outcome::Fail("no discrepancy report".into())),
        o => Ok(o),
    }
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Result<Outcome>);

const CRITERIA: &[Criterion] = &[
    (1, "expansion of <(1, a)> in GF(8)^2", Some(1), c1),
    (2, "dual of the expansion and the orthogonal basis", Some(1), c2),
    (3, "MacWilliams transform on the shape grid", Some(60), c3),
    (4, "MRD and quasi-MRD weight formula", None, c4),
    (5, "generalized weight examples", Some(5), c5),
    (6, "equivalence of the w_i definitions", Some(120), c6),
    (7, "bound trichotomy on the grid", None, c7),
    (8, "q-polymatroid suite", Some(120), c8),
    (9, "anticode classification", Some(60), c9),
    (10, "no extension of (A 0) -> (A^T 0)", Some(5), c10),
    (11, "reading regressions and the rho_2 discrepancy", None, c11),
];

fn main() -> ExitCode {
    let mut unexpected = 0;
    for &(n, what, limit, f) in CRITERIA {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let slow = limit.is_some_and(|s| took > Duration::from_secs(s));
        let (tag, detail) = match outcome {
            Ok(Outcome::Pass) if slow => ("FAIL", format!("over the {}s limit", limit.unwrap())),
            Ok(Outcome::Pass) => ("PASS", String::new()),
            Ok(Outcome::Known(why)) => ("FAIL", format!("known: {why}")),
            Ok(Outcome::Fail(why)) => ("FAIL", why),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        let known = detail.starts_with("known: ");
        if tag == "FAIL" && !known {
            unexpected += 1;
        }
        let sep = if detail.is_empty() { "" } else { " - " };
        println!("criterion {n:>2}: {tag} ({:.2}s) {what}{sep}{detail}", took.as_secs_f64());
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
