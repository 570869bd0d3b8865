//! JSON and TSV rendering. Field order is fixed so output can be diffed
//! against golden files.

use regcycle_core::bounds::AlphaBetaRow;
use regcycle_core::lang::ActionSpec;
use regcycle_core::suites::{Assertion, SuiteReport};
use regcycle_core::{CycleType, Verdict};
use serde::Serialize;

use crate::Output;

const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct VerdictJson<'a> {
    schema: u32,
    element: &'a str,
    order: u64,
    induced_order: u64,
    action: &'a str,
    verdict: bool,
    witness: Option<&'a str>,
    method: &'a str,
    certified: bool,
    flags: &'a [String],
    induced_cycle_type: Option<Vec<u64>>,
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub fn verdict(v: &Verdict, out: Output) -> String {
    match out {
        Output::Json => json(&VerdictJson {
            schema: SCHEMA,
            element: &v.element,
            order: v.order,
            induced_order: v.induced_order,
            action: &v.action,
            verdict: v.has_regular_cycle,
            witness: v.witness.as_deref(),
            method: v.method.as_str(),
            certified: v.certified,
            flags: &v.flags,
            induced_cycle_type: v.induced_cycle_type.as_ref().map(|c| c.parts().to_vec()),
        }),
        Output::Tsv => {
            let row = [
                v.element.clone(),
                v.order.to_string(),
                v.induced_order.to_string(),
                v.action.clone(),
                v.has_regular_cycle.to_string(),
                v.witness.clone().unwrap_or_default(),
                v.method.as_str().to_string(),
                v.certified.to_string(),
                v.flags.join(","),
                v.induced_cycle_type.as_ref().map(CycleType::to_string).unwrap_or_default(),
            ];
            let row: Vec<String> = row.iter().map(|s| tsv_field(s)).collect();
            format!(
                "element\torder\tinduced_order\taction\tverdict\twitness\tmethod\tcertified\tflags\tinduced_cycle_type\n{}\n",
                row.join("\t")
            )
        }
    }
}

#[derive(Serialize)]
struct AssertionJson<'a> {
    name: &'a str,
    provenance: &'a str,
    outcome: &'a str,
    checked: u64,
    detail: &'a str,
    counterexample: Option<&'a str>,
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    schema: u32,
    suite: &'a str,
    seed: u64,
    passed: bool,
    assertions: Vec<AssertionJson<'a>>,
    findings: &'a [String],
}

fn assertion_json(a: &Assertion) -> AssertionJson<'_> {
    AssertionJson {
        name: &a.name,
        provenance: a.provenance,
        outcome: a.outcome.as_str(),
        checked: a.checked,
        detail: &a.detail,
        counterexample: a.counterexample.as_deref(),
    }
}

pub fn suite(r: &SuiteReport, seed: u64, out: Output) -> String {
    match out {
        Output::Json => json(&SuiteJson {
            schema: SCHEMA,
            suite: r.suite.as_str(),
            seed,
            passed: r.passed(),
            assertions: r.assertions.iter().map(assertion_json).collect(),
            findings: &r.findings,
        }),
        Output::Tsv => {
            let mut s = String::from("outcome\tname\tprovenance\tchecked\tdetail\tcounterexample\n");
            for a in &r.assertions {
                s += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    a.outcome,
                    tsv_field(&a.name),
                    a.provenance,
                    a.checked,
                    tsv_field(&a.detail),
                    tsv_field(a.counterexample.as_deref().unwrap_or(""))
                );
            }
            for f in &r.findings {
                s += &format!("finding\t{}\t\t\t\t\n", tsv_field(f));
            }
            s
        }
    }
}

#[derive(Serialize)]
struct ScanRowJson {
    m: u64,
    cycle_type: Vec<u64>,
}

#[derive(Serialize)]
struct ScanJson {
    schema: u32,
    action: String,
    rows: Vec<ScanRowJson>,
}

pub fn scan(action: &ActionSpec, rows: &[(u64, Vec<CycleType>)], out: Output) -> String {
    match out {
        Output::Json => json(&ScanJson {
            schema: SCHEMA,
            action: action.to_string(),
            rows: rows
                .iter()
                .flat_map(|(m, types)| {
                    types.iter().map(move |t| ScanRowJson {
                        m: *m,
                        cycle_type: t.parts().to_vec(),
                    })
                })
                .collect(),
        }),
        Output::Tsv => {
            let mut s = String::from("m\taction\tcycle_type\n");
            for (m, types) in rows {
                for t in types {
                    s += &format!("{m}\t{action}\t{t}\n");
                }
            }
            s
        }
    }
}

#[derive(Serialize)]
struct BoundsRowJson {
    m: u64,
    n_m: String,
    alpha_m: f64,
    beta_m: f64,
    product: f64,
    verdict: &'static str,
    beta_m_rounded: f64,
    verdict_rounded: &'static str,
}

#[derive(Serialize)]
struct BoundsJson {
    schema: u32,
    rows: Vec<BoundsRowJson>,
}

fn bounds_row(r: &AlphaBetaRow) -> BoundsRowJson {
    // upper endpoints: the unfavourable side of every quantity here
    BoundsRowJson {
        m: r.m,
        n_m: r.n_m.to_string(),
        alpha_m: r.alpha.hi(),
        beta_m: r.log_beta_exact.hi().exp(),
        product: r.log_product_exact.hi().exp(),
        verdict: r.exact.as_str(),
        beta_m_rounded: r.log_beta_rounded.hi().exp(),
        verdict_rounded: r.rounded.as_str(),
    }
}

pub fn bounds(rows: &[AlphaBetaRow], out: Output) -> String {
    match out {
        Output::Json => json(&BoundsJson {
            schema: SCHEMA,
            rows: rows.iter().map(bounds_row).collect(),
        }),
        Output::Tsv => {
            let mut s = String::from("m\tN_m\talpha_m\tbeta_m\tproduct\tverdict\tbeta_m_rounded\tverdict_rounded\n");
            for r in rows.iter().map(bounds_row) {
                s += &format!(
                    "{}\t{}\t{:.9e}\t{:.9e}\t{:.9e}\t{}\t{:.9e}\t{}\n",
                    r.m, r.n_m, r.alpha_m, r.beta_m, r.product, r.verdict, r.beta_m_rounded, r.verdict_rounded
                );
            }
            s
        }
    }
}
