use std::fmt::Write as _;

use serde_json::{json, Value};

use super::report::{Record, RunReport};
use super::{CliError, Outcome, OutputFormat};
use crate::exactnum::{sign, Int, Rat};
use crate::moments::{a_deriv_closed, moment_closed, moment_value_at, tcoef};
use crate::numquad::{a_deriv_numeric, QuadConfig};
use crate::symconst::{eval_numeric_at, fraction_string, reduce_zeta_even};

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn csv_text(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Triangle of `T(l, j)` for `2 <= j <= l <= max_l`. Markdown leaves the
/// cells with `j > l` empty; csv and json are rectangular.
pub fn tnj(max_l: usize, format: OutputFormat) -> String {
    let cols: Vec<usize> = (2..=max_l).collect();
    let cell = |l: usize, j: usize| tcoef(l, j).expect("j >= 2");
    match format {
        OutputFormat::Markdown => {
            let mut header = vec!["ℓ \\ j".to_string()];
            header.extend(cols.iter().map(usize::to_string));
            let rows: Vec<Vec<String>> = cols
                .iter()
                .map(|&l| {
                    let mut r = vec![l.to_string()];
                    r.extend(cols.iter().map(|&j| if j > l { String::new() } else { cell(l, j).to_string() }));
                    r
                })
                .collect();
            markdown_table(&header, &rows)
        }
        OutputFormat::Csv => {
            let mut rows = vec![std::iter::once("l".to_string()).chain(cols.iter().map(usize::to_string)).collect()];
            rows.extend(cols.iter().map(|&l| {
                std::iter::once(l.to_string()).chain(cols.iter().map(|&j| cell(l, j).to_string())).collect()
            }));
            csv_text(&rows)
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = cols
                .iter()
                .map(|&l| json!({ "l": l, "values": cols.iter().map(|&j| cell(l, j).to_string()).collect::<Vec<_>>() }))
                .collect();
            pretty(&json!({ "max_l": max_l, "columns": cols, "rows": rows }))
        }
    }
}

/// `r pi` written compactly, e.g. `-π/2`, `2π`, `π/8`.
fn pi_multiple(r: &Rat) -> String {
    let num = r.numer();
    let den = r.denom();
    let sign = if *num < Int::from(0) { "-" } else { "" };
    let mag = num.magnitude();
    let head = if mag == &num_bigint::BigUint::from(1u8) { "π".to_string() } else { format!("{mag}π") };
    if den == &Int::from(1) {
        format!("{sign}{head}")
    } else {
        format!("{sign}{head}/{den}")
    }
}

/// Rows `k = 2N`: the factor `2 pi (-1)^N 4^{-N}`, the normalized moment in
/// zeta and pi form, and the decimal value of `M_k`.
pub fn moments(max_n: usize, digits: u32, precision: u32, format: OutputFormat) -> Result<String, CliError> {
    struct Row {
        k: usize,
        factor: Rat,
        zeta: crate::symconst::SymVal,
        pi: crate::symconst::SymVal,
        value: String,
    }
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let zeta = moment_closed(n).value;
        let pi = reduce_zeta_even(&zeta).map_err(usage)?;
        let value = moment_value_at(n, digits, precision).map_err(usage)?.to_string();
        let factor = Rat::new(sign(n) * Int::from(2), Int::from(1) << (2 * n));
        rows.push(Row { k: 2 * n, factor, zeta, pi, value });
    }
    let header = ["k", "factor", "m (zeta form)", "m (pi form)", "M_k"].map(String::from);
    let text_rows = |rows: &[Row]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| vec![r.k.to_string(), pi_multiple(&r.factor), r.zeta.to_string(), r.pi.to_string(), r.value.clone()])
            .collect()
    };
    Ok(match format {
        OutputFormat::Markdown => markdown_table(&header, &text_rows(&rows)),
        OutputFormat::Csv => {
            let mut all = vec![header.to_vec()];
            all.extend(text_rows(&rows));
            csv_text(&all)
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "pi_factor": fraction_string(&r.factor),
                        "zeta_form": r.zeta,
                        "pi_form": r.pi,
                        "zeta_text": r.zeta.to_string(),
                        "pi_text": r.pi.to_string(),
                        "decimal": r.value,
                    })
                })
                .collect();
            pretty(&json!({ "max_n": max_n, "digits": digits, "rows": rows }))
        }
    })
}

pub fn aderiv(
    k: usize,
    cfg: Option<&QuadConfig>,
    digits: u32,
    precision: u32,
    format: OutputFormat,
) -> Result<(String, Outcome), CliError> {
    let closed = a_deriv_closed(k).value;
    let decimal = eval_numeric_at(&closed, digits, precision).map_err(usage)?;
    let check = match cfg {
        Some(cfg) => {
            let numeric = a_deriv_numeric(k, cfg).map_err(usage)?;
            let exact = eval_numeric_at(&closed, 20, precision).map_err(usage)?.to_f64();
            let diff = (numeric - exact).abs();
            Some((numeric, diff, cfg.tol, diff <= cfg.tol))
        }
        None => None,
    };
    let outcome = match check {
        Some((_, _, _, false)) => Outcome::ToleranceFail,
        _ => Outcome::Pass,
    };
    let text_c = closed.display_in_c();
    let mut header = ["k", "A^(k)(1)", "value"].map(String::from).to_vec();
    let mut row = vec![k.to_string(), text_c.clone(), decimal.to_string()];
    if let Some((numeric, diff, tol, pass)) = check {
        header.extend(["quadrature", "difference", "tol", "pass"].map(String::from));
        row.extend([format!("{numeric:.15e}"), format!("{diff:.3e}"), format!("{tol:e}"), pass.to_string()]);
    }
    let text = match format {
        OutputFormat::Markdown => markdown_table(&header, &[row]),
        OutputFormat::Csv => csv_text(&[header, row]),
        OutputFormat::Json => {
            let mut v = json!({ "k": k, "closed_form": closed, "closed_text": text_c, "decimal": decimal });
            if let Some((numeric, diff, tol, pass)) = check {
                v["quadrature"] = json!(numeric);
                v["difference"] = json!(diff);
                v["tol"] = json!(tol);
                v["pass"] = json!(pass);
            }
            pretty(&v)
        }
    };
    Ok((text, outcome))
}

pub fn run_report(report: &RunReport, format: OutputFormat) -> String {
    let header = ["record", "value", "error", "tol", "pass"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = report
        .records
        .iter()
        .map(|r| match r {
            Record::Moment(m) => vec![
                format!("M_{}", 2 * m.n),
                m.closed_decimal.to_string(),
                format!("{:.3e}", m.rel_err),
                format!("{:e}", m.tol),
                m.pass.to_string(),
            ],
            Record::Check(c) => {
                vec![c.name.clone(), String::new(), format!("{:.3e}", c.residual), format!("{:e}", c.tol), c.pass.to_string()]
            }
        })
        .collect();
    match format {
        OutputFormat::Json => pretty(&serde_json::to_value(report).expect("serializable")),
        OutputFormat::Csv => {
            let mut all = vec![header];
            all.extend(rows);
            csv_text(&all)
        }
        OutputFormat::Markdown => {
            let mut s = format!("## verify {}\n\n", report.command);
            s.push_str(&markdown_table(&header, &rows));
            let _ = writeln!(
                s,
                "\noverall: {} ({:.3} s)",
                if report.pass { "PASS" } else { "FAIL" },
                report.wall_time_s
            );
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_factors() {
        let r = |n: i64, d: i64| Rat::new(Int::from(n), Int::from(d));
        assert_eq!(pi_multiple(&r(2, 1)), "2π");
        assert_eq!(pi_multiple(&r(-1, 2)), "-π/2");
        assert_eq!(pi_multiple(&r(1, 8)), "π/8");
        assert_eq!(pi_multiple(&r(-3, 4)), "-3π/4");
    }

    #[test]
    fn tnj_small() {
        let md = tnj(3, OutputFormat::Markdown);
        assert!(md.contains("| 2 | 16 |  |"));
        assert!(md.contains("| 3 | 0 | -144 |"));
        let csv = tnj(3, OutputFormat::Csv);
        assert_eq!(csv, "l,2,3\n2,16,0\n3,0,-144\n");
    }
}
