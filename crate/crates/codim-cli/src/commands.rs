//! The four subcommands, each producing one [`OutputRecord`].

use num::BigUint;
use serde_json::{json, Value};

use codim::catalog::{complexity, VarietySpec};
use codim::growth::{psi_log, sher_diagnostic, tower_growth_ratio, upper_bound_ratio, ScaleQuery};
use codim::rational::{factorial, Rational};
use codim::series::{coeff_le, CodimSequence, Dominance, EgfSeries};
use codim::words::{
    count_cbm_second_derived, count_free_poisson_multilinear, count_kuzmin, count_qm, count_rm,
    count_tilde, TildeKind, WordCountReport,
};

use crate::output::{fmt_f64, OutputRecord, Status, Table};
use crate::{AsymCommand, OracleCheck};

pub fn run_series(variety: &str, order: usize) -> OutputRecord {
    let params = json!({ "variety": variety, "order": order });
    let series = match parse_and_expand(variety, order) {
        Ok(series) => series,
        Err(message) => return OutputRecord::error("series", params, message),
    };
    let codims = match series.codimensions() {
        Ok(c) => c,
        Err(e) => return OutputRecord::error("series", params, e.to_string()),
    };
    let taylor: Vec<String> = series.taylor().iter().map(Rational::to_string).collect();
    let codim_strings: Vec<String> = codims.values().iter().map(BigUint::to_string).collect();
    let mut table = Table::new(vec!["n", "taylor", "codim"]);
    for n in 0..=order {
        table.push(vec![n.to_string(), taylor[n].clone(), codim_strings[n].clone()]);
    }
    OutputRecord {
        command: "series",
        params,
        status: Status::Ok,
        payload: json!({ "taylor": taylor, "codims": codim_strings }),
        violation: None,
        table,
    }
}

pub fn run_bound(lhs: &str, rhs: &str, order: usize) -> OutputRecord {
    let params = json!({ "lhs": lhs, "rhs": rhs, "order": order });
    let lhs_series = match parse_and_expand(lhs, order) {
        Ok(s) => s,
        Err(message) => return OutputRecord::error("bound", params, message),
    };
    let rhs_series = match parse_and_expand(rhs, order) {
        Ok(s) => s,
        Err(message) => return OutputRecord::error("bound", params, message),
    };
    let verdict = coeff_le(&lhs_series, &rhs_series);
    let mut table = Table::new(vec!["holds", "violation_index", "violation_lhs", "violation_rhs"]);
    match verdict {
        Dominance::Holds => {
            table.push(vec!["true".into(), String::new(), String::new(), String::new()]);
            OutputRecord {
                command: "bound",
                params,
                status: Status::Ok,
                payload: json!({ "holds": true }),
                violation: None,
                table,
            }
        }
        Dominance::ViolatedAt { index, lhs, rhs } => {
            let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
            table.push(vec!["false".into(), index.to_string(), lhs.clone(), rhs.clone()]);
            OutputRecord {
                command: "bound",
                params,
                status: Status::Violation,
                payload: json!({ "holds": false }),
                violation: Some(json!({ "index": index, "lhs": lhs, "rhs": rhs })),
                table,
            }
        }
    }
}

/// Per-check caps keeping default runs under a minute; `--force` lifts them.
fn oracle_cap(check: OracleCheck) -> usize {
    match check {
        // Full permutation scans with the decomposition search.
        OracleCheck::Qm | OracleCheck::Rm => 8,
        // Subset recursion.
        OracleCheck::TildeQ | OracleCheck::TildeR => 9,
        // Permutation scans with a cheap predicate.
        OracleCheck::Kuzmin | OracleCheck::Cbm => 10,
        // Set-partition sums.
        OracleCheck::PoissonBasis => 12,
    }
}

pub fn run_oracle(check: OracleCheck, m: Option<u32>, n_max: usize, force: bool) -> OutputRecord {
    let check_name = check.name();
    let params = match m {
        Some(m) => json!({ "check": check_name, "m": m, "n_max": n_max, "force": force }),
        None => json!({ "check": check_name, "n_max": n_max, "force": force }),
    };
    let cap = oracle_cap(check);
    if n_max > cap && !force {
        return OutputRecord::error(
            "oracle",
            params,
            format!("n_max {n_max} exceeds the brute-force cap {cap} for {check_name} (pass --force to override)"),
        );
    }
    let result = match check {
        OracleCheck::Qm | OracleCheck::Rm | OracleCheck::TildeQ | OracleCheck::TildeR => {
            word_count_rows(check, m, n_max)
        }
        OracleCheck::Kuzmin => kuzmin_rows(n_max),
        OracleCheck::PoissonBasis => Ok(poisson_basis_rows(n_max)),
        OracleCheck::Cbm => cbm_rows(n_max),
    };
    match result {
        Ok((table, payload_rows, first_violation)) => {
            let status = if first_violation.is_none() {
                Status::Ok
            } else {
                Status::Violation
            };
            OutputRecord {
                command: "oracle",
                params,
                status,
                payload: json!({ "rows": payload_rows }),
                violation: first_violation,
                table,
            }
        }
        Err(message) => OutputRecord::error("oracle", params, message),
    }
}

type OracleRows = (Table, Vec<Value>, Option<Value>);

fn word_count_rows(
    check: OracleCheck,
    m: Option<u32>,
    n_max: usize,
) -> Result<OracleRows, String> {
    let m = m.ok_or_else(|| format!("--m is required for {}", check.name()))?;
    if m < 1 {
        return Err("m must be >= 1".to_string());
    }
    let spec = match check {
        OracleCheck::Qm => VarietySpec::IndecompQ(m),
        OracleCheck::Rm => VarietySpec::IndecompR(m),
        OracleCheck::TildeQ => VarietySpec::TowerQ(m),
        OracleCheck::TildeR => VarietySpec::TowerR(m),
        _ => unreachable!("only word-count checks reach here"),
    };
    let series = complexity(&spec, n_max).map_err(|e| e.to_string())?;
    let codims = series.codimensions().map_err(|e| e.to_string())?;
    let mut table = Table::new(vec![
        "n",
        "m",
        "count_recursive",
        "count_naive",
        "count_series",
        "agree",
    ]);
    let mut payload_rows = Vec::new();
    let mut first_violation = None;
    for n in 0..=n_max {
        let series_count = codims.get(n).clone();
        let report = match check {
            OracleCheck::Qm => count_qm(n, m),
            OracleCheck::Rm => count_rm(n, m),
            OracleCheck::TildeQ => count_tilde(n, m, TildeKind::Q),
            OracleCheck::TildeR => count_tilde(n, m, TildeKind::R),
            _ => unreachable!(),
        };
        let agree =
            report.counts_agree() && BigUint::from(report.count_recursive) == series_count;
        record_count_row(
            &mut table,
            &mut payload_rows,
            &mut first_violation,
            &report,
            &series_count,
            agree,
        );
    }
    Ok((table, payload_rows, first_violation))
}

fn record_count_row(
    table: &mut Table,
    payload_rows: &mut Vec<Value>,
    first_violation: &mut Option<Value>,
    report: &WordCountReport,
    series_count: &BigUint,
    agree: bool,
) {
    let naive = report
        .count_naive
        .map(|c| c.to_string())
        .unwrap_or_default();
    table.push(vec![
        report.n.to_string(),
        report.m.to_string(),
        report.count_recursive.to_string(),
        naive.clone(),
        series_count.to_string(),
        agree.to_string(),
    ]);
    payload_rows.push(json!({
        "n": report.n,
        "m": report.m,
        "count_recursive": report.count_recursive.to_string(),
        "count_naive": report.count_naive.map(|c| c.to_string()),
        "count_series": series_count.to_string(),
        "agree": agree,
    }));
    if !agree && first_violation.is_none() {
        *first_violation = Some(json!({
            "index": report.n,
            "lhs": report.count_recursive.to_string(),
            "rhs": series_count.to_string(),
        }));
    }
}

fn kuzmin_rows(n_max: usize) -> Result<OracleRows, String> {
    if n_max < 4 {
        return Err(format!("kuzmin needs n_max >= 4, got {n_max}"));
    }
    let mut table = Table::new(vec!["n", "count", "closed_form", "agree"]);
    let mut payload_rows = Vec::new();
    let mut first_violation = None;
    for n in 4..=n_max {
        let count = count_kuzmin(n).map_err(|e| e.to_string())?;
        let closed = (n * (n - 3) / 2) as u64;
        let agree = count == closed;
        table.push(vec![
            n.to_string(),
            count.to_string(),
            closed.to_string(),
            agree.to_string(),
        ]);
        payload_rows.push(json!({
            "n": n,
            "count": count.to_string(),
            "closed_form": closed.to_string(),
            "agree": agree,
        }));
        if !agree && first_violation.is_none() {
            first_violation = Some(json!({
                "index": n,
                "lhs": count.to_string(),
                "rhs": closed.to_string(),
            }));
        }
    }
    Ok((table, payload_rows, first_violation))
}

fn poisson_basis_rows(n_max: usize) -> OracleRows {
    let mut table = Table::new(vec!["n", "count", "factorial", "agree"]);
    let mut payload_rows = Vec::new();
    let mut first_violation = None;
    for n in 0..=n_max {
        let count = count_free_poisson_multilinear(n);
        let fact = factorial(n);
        let agree = BigUint::from(count) == fact;
        table.push(vec![
            n.to_string(),
            count.to_string(),
            fact.to_string(),
            agree.to_string(),
        ]);
        payload_rows.push(json!({
            "n": n,
            "count": count.to_string(),
            "factorial": fact.to_string(),
            "agree": agree,
        }));
        if !agree && first_violation.is_none() {
            first_violation = Some(json!({
                "index": n,
                "lhs": count.to_string(),
                "rhs": fact.to_string(),
            }));
        }
    }
    (table, payload_rows, first_violation)
}

fn cbm_rows(n_max: usize) -> Result<OracleRows, String> {
    if n_max < 4 {
        return Err(format!("cbm needs n_max >= 4, got {n_max}"));
    }
    let catalog = |char_two: bool| -> Result<CodimSequence, String> {
        complexity(&VarietySpec::CentreByMetabelian { char_two }, n_max)
            .map_err(|e| e.to_string())?
            .codimensions()
            .map_err(|e| e.to_string())
    };
    let char0 = catalog(false)?;
    let char2 = catalog(true)?;
    let mut table = Table::new(vec![
        "n",
        "oracle_char0",
        "catalog_char0",
        "oracle_char2",
        "catalog_char2",
        "agree",
    ]);
    let mut payload_rows = Vec::new();
    let mut first_violation = None;
    for n in 4..=n_max {
        // Metabelian part n−1 plus the parity-branched second-derived part.
        let metabelian_part = (n - 1) as u64;
        let oracle0 =
            metabelian_part + count_cbm_second_derived(n, false).map_err(|e| e.to_string())?;
        let oracle2 =
            metabelian_part + count_cbm_second_derived(n, true).map_err(|e| e.to_string())?;
        let cat0 = char0.get(n).clone();
        let cat2 = char2.get(n).clone();
        let agree = BigUint::from(oracle0) == cat0 && BigUint::from(oracle2) == cat2;
        table.push(vec![
            n.to_string(),
            oracle0.to_string(),
            cat0.to_string(),
            oracle2.to_string(),
            cat2.to_string(),
            agree.to_string(),
        ]);
        payload_rows.push(json!({
            "n": n,
            "oracle_char0": oracle0.to_string(),
            "catalog_char0": cat0.to_string(),
            "oracle_char2": oracle2.to_string(),
            "catalog_char2": cat2.to_string(),
            "agree": agree,
        }));
        if !agree && first_violation.is_none() {
            let (lhs, rhs) = if BigUint::from(oracle0) == cat0 {
                (oracle2.to_string(), cat2.to_string())
            } else {
                (oracle0.to_string(), cat0.to_string())
            };
            first_violation = Some(json!({ "index": n, "lhs": lhs, "rhs": rhs }));
        }
    }
    Ok((table, payload_rows, first_violation))
}

pub fn run_asym(cmd: &AsymCommand) -> OutputRecord {
    match cmd {
        AsymCommand::Psi { q, alpha, n } => {
            let params = json!({ "diagnostic": "psi", "q": q, "alpha": fmt_f64(*alpha), "n": n });
            match psi_log(&ScaleQuery { q: *q, alpha: *alpha, n: *n }) {
                Ok(value) => {
                    let mut table = Table::new(vec!["q", "alpha", "n", "ln_psi"]);
                    table.push(vec![
                        q.to_string(),
                        fmt_f64(*alpha),
                        n.to_string(),
                        fmt_f64(value),
                    ]);
                    OutputRecord {
                        command: "asym",
                        params,
                        status: Status::Ok,
                        payload: json!({ "ln_psi": fmt_f64(value) }),
                        violation: None,
                        table,
                    }
                }
                Err(e) => OutputRecord::error("asym", params, e.to_string()),
            }
        }
        AsymCommand::Tower { m, r } => {
            let params = json!({ "diagnostic": "tower", "m": m, "r": fmt_f64(*r) });
            match tower_growth_ratio(*m, *r) {
                Ok(ratio) => {
                    let mut table = Table::new(vec!["m", "r", "ratio"]);
                    table.push(vec![m.to_string(), fmt_f64(*r), fmt_f64(ratio)]);
                    OutputRecord {
                        command: "asym",
                        params,
                        status: Status::Ok,
                        payload: json!({ "ratio": fmt_f64(ratio) }),
                        violation: None,
                        table,
                    }
                }
                Err(e) => OutputRecord::error("asym", params, e.to_string()),
            }
        }
        AsymCommand::Sher { variety, lambda, q, n_min, n_max } => {
            let params = json!({
                "diagnostic": "sher",
                "variety": variety,
                "lambda": fmt_f64(*lambda),
                "q": q,
                "n_min": n_min,
                "n_max": n_max,
            });
            let series = match parse_and_expand(variety, *n_max) {
                Ok(s) => s,
                Err(message) => return OutputRecord::error("asym", params, message),
            };
            match sher_diagnostic(&series, *lambda, *q, *n_min, *n_max) {
                Ok(diag) => {
                    let mut table = Table::new(vec!["n", "s_n", "running_sup"]);
                    let mut rows = Vec::new();
                    let mut sup = f64::NEG_INFINITY;
                    for (n, s) in &diag.samples {
                        sup = sup.max(*s);
                        table.push(vec![n.to_string(), fmt_f64(*s), fmt_f64(sup)]);
                        rows.push(json!([n, fmt_f64(*s), fmt_f64(sup)]));
                    }
                    OutputRecord {
                        command: "asym",
                        params,
                        status: Status::Ok,
                        payload: json!({
                            "samples": rows,
                            "running_sup": fmt_f64(diag.running_sup),
                        }),
                        violation: None,
                        table,
                    }
                }
                Err(e) => OutputRecord::error("asym", params, e.to_string()),
            }
        }
        AsymCommand::UpperRatio { variety, m, n_min, n_max } => {
            let params = json!({
                "diagnostic": "upper-ratio",
                "variety": variety,
                "m": m,
                "n_min": n_min,
                "n_max": n_max,
            });
            let series = match parse_and_expand(variety, *n_max) {
                Ok(s) => s,
                Err(message) => return OutputRecord::error("asym", params, message),
            };
            let codims = match series.codimensions() {
                Ok(c) => c,
                Err(e) => return OutputRecord::error("asym", params, e.to_string()),
            };
            match upper_bound_ratio(&codims, *m, *n_min, *n_max) {
                Ok(margins) => {
                    let mut table = Table::new(vec!["n", "log_margin"]);
                    let mut rows = Vec::new();
                    for (n, margin) in margins {
                        table.push(vec![n.to_string(), fmt_f64(margin)]);
                        rows.push(json!([n, fmt_f64(margin)]));
                    }
                    OutputRecord {
                        command: "asym",
                        params,
                        status: Status::Ok,
                        payload: json!({ "margins": rows }),
                        violation: None,
                        table,
                    }
                }
                Err(e) => OutputRecord::error("asym", params, e.to_string()),
            }
        }
    }
}

fn parse_and_expand(variety: &str, order: usize) -> Result<EgfSeries, String> {
    let spec = VarietySpec::parse(variety).map_err(|e| e.to_string())?;
    complexity(&spec, order).map_err(|e| e.to_string())
}
