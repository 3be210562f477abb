//! Acceptance criteria 1-9, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dcl_core::identities::{self, VariantLabel, VariantSelection};
use dcl_core::sequences::{self, oracle_table, stirling1, stirling2};
use dcl_core::{build_e, build_l, BiPoly, Rational, SequenceId, Series};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const N_MAX: usize = 16;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(s: &str) -> BiPoly {
    s.parse().unwrap()
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let entries = ["thm1", "thm2", "thm4", "thm6", "thm7", "eq3", "eq10", "eq9"];
    for id in entries {
        let reports = identities::verify_identity(id, N_MAX, VariantSelection::Corrected)
            .map_err(|e| e.to_string())?;
        let r = &reports[0];
        ensure(r.variant == VariantLabel::Corrected || id != "eq9", || {
            format!("{id}: wrong variant")
        })?;
        ensure(r.results.last().map(|x| x.n) == Some(N_MAX), || {
            format!("{id}: range stops early")
        })?;
        if let Some(f) = &r.first_failure {
            return Err(format!("{id} {} fails at n={}: {}", r.variant, f.n, f.diff));
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} entries, n<={N_MAX}, {:.2?}",
        entries.len(),
        elapsed
    ))
}

fn typo_resolution() -> Outcome {
    for (id, diff) in [("thm3", None), ("thm5", Some("l"))] {
        let r = &identities::verify_identity(id, N_MAX, VariantSelection::Printed)
            .map_err(|e| e.to_string())?[0];
        let f = r
            .first_failure
            .as_ref()
            .ok_or(format!("{id} printed unexpectedly passes"))?;
        ensure(f.n == 1 && !f.diff.is_zero(), || {
            format!("{id} printed first fails at n={}", f.n)
        })?;
        if let Some(d) = diff {
            ensure(f.diff == p(d), || format!("{id} diff at n=1 is {}", f.diff))?;
        }
    }
    for id in ["thm3", "thm5", "thm8"] {
        let reports = identities::verify_identity(id, N_MAX, VariantSelection::Both)
            .map_err(|e| e.to_string())?;
        ensure(reports.len() == 2, || {
            format!("{id}: report lacks both variants")
        })?;
        let c = reports
            .iter()
            .find(|r| r.variant == VariantLabel::Corrected)
            .unwrap();
        ensure(c.passed(), || {
            format!("{id} corrected fails: {:?}", c.first_failure)
        })?;
    }
    Ok("thm5 printed diff at n=1 = l; corrected thm3/thm5/thm8 pass".into())
}

fn cross_oracles() -> Outcome {
    let cauchy = oracle_table(SequenceId::CauchyPoly, 20).map_err(|e| e.to_string())?;
    for (n, v) in cauchy.iter().enumerate() {
        ensure(&sequences::cauchy_poly(n) == v, || {
            format!("cauchy_poly({n})")
        })?;
    }
    for id in [SequenceId::DegenCauchyStar, SequenceId::DegenCauchy2] {
        let oracle = oracle_table(id, N_MAX).map_err(|e| e.to_string())?;
        let gf = sequences::table(id, N_MAX);
        for n in 0..=N_MAX {
            ensure(gf[n] == oracle[n], || format!("{id}({n})"))?;
        }
    }
    Ok("cauchy n<=20, star and c2 n<=16".into())
}

fn daehee() -> Outcome {
    let mut fact = Rational::one();
    for n in 0..=30usize {
        if n > 0 {
            fact = &fact * &Rational::from(n as i64);
        }
        let sign = Rational::from(if n % 2 == 0 { 1 } else { -1 });
        let closed = &(&sign * &fact) * &Rational::new(1, n as i64 + 1).unwrap();
        ensure(sequences::daehee(n) == closed, || format!("D_{n}"))?;
        if n <= 20 {
            ensure(sequences::daehee_higher(n, 1) == closed, || {
                format!("D^(1)_{n}")
            })?;
        }
    }
    Ok("closed form n<=30, D^(1) n<=20".into())
}

fn stirling_orthogonality() -> Outcome {
    for n in 0..=20 {
        for m in 0..=20 {
            let s: BigInt = (0..=n).map(|k| stirling1(n, k) * stirling2(k, m)).sum();
            ensure(s == BigInt::from((n == m) as i32), || {
                format!("n={n} m={m}: {s}")
            })?;
        }
    }
    Ok("n,m<=20".into())
}

fn degeneration() -> Outcome {
    let zero = Rational::zero();
    for n in 0..=N_MAX {
        let c = sequences::cauchy_poly(n);
        let at0 = |b: BiPoly| b.partial_eval(Some(&zero), None);
        ensure(at0(sequences::degen_cauchy2(n)) == c, || {
            format!("degen_cauchy2({n})")
        })?;
        ensure(at0(sequences::degen_cauchy_star(n)) == c, || {
            format!("degen_cauchy_star({n})")
        })?;
        ensure(
            at0(sequences::degen_bernoulli(n)) == sequences::bernoulli_higher(n, 1),
            || format!("degen_bernoulli({n})"),
        )?;
    }
    Ok(format!("n<={N_MAX}"))
}

fn spot_values() -> Outcome {
    let zero = Rational::zero();
    let num = |n| sequences::degen_cauchy2(n).partial_eval(None, Some(&zero));
    let checks = [
        ("C_0", num(0), p("1")),
        ("C_1", num(1), p("1/2 + 1/2*l")),
        ("C_2", num(2), p("-1/6 - 1/6*l^2")),
        (
            "beta_1(x)",
            sequences::degen_bernoulli(1),
            p("x - 1/2 + 1/2*l"),
        ),
        ("C*_1(x)", sequences::degen_cauchy_star(1), p("x + 1/2")),
    ];
    for (name, got, want) in checks {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    Ok("C_0, C_1, C_2, beta_1(x), C*_1(x)".into())
}

fn vanishing_series() -> impl Strategy<Value = Series<BiPoly>> {
    let rat = (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d).unwrap());
    let poly =
        prop::collection::vec(((0u32..=2, 0u32..=2), rat), 0..3).prop_map(BiPoly::from_terms);
    (1usize..=12).prop_flat_map(move |order| {
        prop::collection::vec(poly.clone(), order).prop_map(|tail| {
            let mut c = vec![BiPoly::zero()];
            c.extend(tail);
            Series::from_coeffs(c)
        })
    })
}

fn engine_properties() -> Outcome {
    let (l, e) = (build_l(32), build_e(32));
    let t = Series::t(32);
    ensure(l.compose(&e).ok() == Some(t.clone()), || {
        "L(E(t)) != t".into()
    })?;
    ensure(e.compose(&l).ok() == Some(t), || "E(L(t)) != t".into())?;

    let cases = 24;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&vanishing_series(), |g| {
            let one = Series::one(g.order());
            prop_assert_eq!(g.log1p().unwrap().exp().unwrap(), &g + &one);
            prop_assert_eq!((&g.exp().unwrap() - &one).log1p().unwrap(), g.clone());
            let (a, b) = (BiPoly::x(), &BiPoly::lambda() + &BiPoly::one());
            let lhs = &g.pow_lin(&a).unwrap() * &g.pow_lin(&b).unwrap();
            prop_assert_eq!(lhs, g.pow_lin(&(&a + &b)).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "L∘E = E∘L = t at order 32; {cases} random series of order <= 12"
    ))
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_dcl");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("DCL_MAX_ORDER")
            .output()
            .map_err(|e| e.to_string())
    };
    let expect = [
        (
            vec![
                "verify",
                "--identity",
                "thm7",
                "--n-max",
                "8",
                "--format",
                "json",
            ],
            0,
        ),
        (vec!["verify", "--n-max", "1", "--variants", "printed"], 1),
        (vec!["verify", "--n-max", "1", "--variants", "both"], 0),
    ];
    for (args, code) in &expect {
        let out = run(args)?;
        ensure(out.status.code() == Some(*code), || {
            format!("{args:?} exited {:?}", out.status.code())
        })?;
    }
    let json = run(&expect[0].0)?.stdout;
    let v: serde_json::Value = serde_json::from_slice(&json).map_err(|e| e.to_string())?;
    ensure(v.as_array().map(Vec::len) == Some(1), || {
        "thm7 report is not a single entry".into()
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (fmt, seq) in [
        ("csv", SequenceId::DegenCauchy2),
        ("json", SequenceId::DegenBernoulli),
    ] {
        let path = dir.path().join(format!("t.{fmt}"));
        let path_s = path.to_str().unwrap();
        let seq_s = seq.to_string();
        let out = run(&[
            "table", "--seq", &seq_s, "--n-max", "8", "--format", fmt, "--out", path_s,
        ])?;
        ensure(out.status.success(), || format!("table {fmt} failed"))?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let format = if fmt == "csv" {
            dcl_cli::output::TableFormat::Csv
        } else {
            dcl_cli::output::TableFormat::Json
        };
        let records = dcl_cli::output::parse(&text, format, seq).map_err(|e| e.to_string())?;
        let again = dcl_cli::output::render(&records, format).map_err(|e| e.to_string())?;
        ensure(again == text, || format!("{fmt} round-trip differs"))?;
    }
    Ok("exit codes 0/1/0; csv and json round-trip byte-exactly".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("identity suite", identity_suite),
        ("typo resolution", typo_resolution),
        ("cross-oracle equality", cross_oracles),
        ("daehee closed form", daehee),
        ("stirling orthogonality", stirling_orthogonality),
        ("lambda = 0 degeneration", degeneration),
        ("spot values", spot_values),
        ("engine properties", engine_properties),
        ("cli contract", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("acceptance {} {name:<24} PASS  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {} {name:<24} FAIL  {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
