//! Acceptance harness: one PASS/FAIL line per criterion, with the assertion
//! reports underneath. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use regcycle_core::bounds::{Check, MtTable};
use regcycle_core::lang::RunConfig;
use regcycle_core::suites::{self, Assertion, AFFINE_CASES};
use regcycle_core::Result;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn(&RunConfig, &MtTable) -> Result<Vec<Assertion>>,
}

fn c1(_: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![suites::intro_example()?])
}

fn c2(_: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    let thresholds = [5, 10, 17];
    let mut out = Vec::new();
    for (k, t) in (1..=3).zip(thresholds) {
        assert_eq!(regcycle_core::nk_threshold(k as u64), t);
        out.push(suites::kset_threshold_scan(k, 2, 20)?);
    }
    Ok(out)
}

fn c3(_: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![suites::kset_decide_agrees(2, 13)?])
}

fn c4(cfg: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    let mut out = vec![suites::partition_exception()?];
    for (a, b) in [(2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (2, 5), (5, 2)] {
        out.push(suites::partition_exhaustive(a, b)?);
    }
    for (a, b) in [(2, 6), (6, 2), (3, 4), (4, 3)] {
        out.push(suites::partition_by_layout(a, b, 10_000, cfg.seed)?);
    }
    Ok(out)
}

fn c5(_: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    [(3, 2), (3, 3), (4, 2)]
        .into_iter()
        .map(|(n, ell)| suites::product_exhaustive(n, ell))
        .collect()
}

fn c6(cfg: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    let mut out = Vec::new();
    for (d, q) in AFFINE_CASES {
        out.push(suites::gl_spanning(d, q, cfg.domain_cap)?);
        out.push(suites::affine_all(d, q, cfg.domain_cap)?);
    }
    Ok(out)
}

fn c7(cfg: &RunConfig, table: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![
        suites::diagonal_exhaustive(table)?,
        suites::diagonal_sampled(10_000, cfg.seed, table)?,
    ])
}

fn c8(cfg: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![suites::s6_exception(cfg)?, suites::degree6_family(cfg)?])
}

fn c9(cfg: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    suites::remark_a6(cfg)
}

fn c10(_: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![suites::wreath_fpr(&[(3, 2), (4, 2), (3, 3)])?])
}

fn c11(_: &RunConfig, table: &MtTable) -> Result<Vec<Assertion>> {
    Ok(vec![
        suites::robin_assertion(26, 1_000_000)?,
        suites::massias_assertion(4, 200)?,
        suites::stirling_assertion(1000)?,
        suites::technical_assertion(200, 13, 30)?,
        suites::alpha_beta_assertion(47, 10_000)?.0,
        suites::crude_assertion(table, 3)?.0,
        suites::e8_assertion(1024)?,
    ])
}

fn c12(cfg: &RunConfig, _: &MtTable) -> Result<Vec<Assertion>> {
    let a = suites::oracle_corpus(8, cfg)?;
    let b = suites::oracle_sampled(9, 10, 1000, cfg.seed)?;
    let mut size = suites::Assertion::clone(&a);
    size.name = "corpus has at least 100000 pairs".into();
    size.provenance = "count";
    size.counterexample = None;
    let total = a.checked + b.checked;
    size.checked = total;
    size.outcome = if total >= 100_000 { Check::Pass } else { Check::Fail };
    size.detail = format!("{total} pairs");
    Ok(vec![a, b, size])
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, title: "type [5,3,2] on 2-sets", limit: Duration::from_secs(1), run: c1 },
    Criterion { id: 2, title: "k-set thresholds 5, 10, 17", limit: Duration::from_secs(60), run: c2 },
    Criterion { id: 3, title: "k-set rule equals brute force, m <= 13", limit: Duration::from_secs(300), run: c3 },
    Criterion { id: 4, title: "uniform partitions, ab in {6,8,9,10,12}", limit: Duration::from_secs(600), run: c4 },
    Criterion { id: 5, title: "product action witnesses", limit: Duration::from_secs(300), run: c5 },
    Criterion { id: 6, title: "linear spanning and affine witnesses", limit: Duration::from_secs(600), run: c6 },
    Criterion { id: 7, title: "diagonal type, Alt(5)", limit: Duration::from_secs(600), run: c7 },
    Criterion { id: 8, title: "Sym(6) on PGL2(5) cosets", limit: Duration::from_secs(60), run: c8 },
    Criterion { id: 9, title: "PGL2(9), M10, PGammaL2(9) in degrees 10, 36, 45", limit: Duration::from_secs(300), run: c9 },
    Criterion { id: 10, title: "wreath fpr maximum", limit: Duration::from_secs(60), run: c10 },
    Criterion { id: 11, title: "bounds suite", limit: Duration::from_secs(300), run: c11 },
    Criterion { id: 12, title: "fix-union equals brute force", limit: Duration::from_secs(600), run: c12 },
];

fn print_assertion(a: &Assertion) {
    println!("    [{}] {} ({}; {} checked) {}", a.outcome, a.name, a.provenance, a.checked, a.detail);
    if let Some(c) = &a.counterexample {
        println!("        first counterexample: {c}");
    }
}

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cfg = RunConfig::default();
    let table = MtTable::builtin();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let result = (c.run)(&cfg, &table);
        let took = start.elapsed();
        let (ok, assertions, err) = match result {
            Ok(a) => (a.iter().all(Assertion::passed) && took <= c.limit, a, None),
            Err(e) => (false, Vec::new(), Some(e)),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2}: {} {} [{:.2}s, limit {}s]",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
        for a in &assertions {
            print_assertion(a);
        }
        if let Some(e) = err {
            println!("    error: {e}");
        }
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
