//! Rendering of run outputs as aligned text, CSV, or JSON.
//!
//! All three formats are produced by pure string building from the report
//! data, so identical runs give byte-identical output. JSON object keys are
//! emitted sorted and numbers carry 12 significant digits.

use crate::report::{ConfigEcho, RunOutput, SweepRow};
use aerts_machines_core::bell::{ChshReport, ExpectationEstimate, LhvStrategy};

/// Formats a float with 12 significant digits: positional notation in a
/// sane exponent range (trailing zeros trimmed, at least one fractional
/// digit kept), scientific notation outside it.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    if !v.is_finite() {
        // Does not occur in practice; keep the output well-formed.
        return if v.is_nan() {
            "null".to_string()
        } else if v > 0.0 {
            "1e999".to_string()
        } else {
            "-1e999".to_string()
        };
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-5..=11).contains(&magnitude) {
        let decimals = (11 - magnitude).max(1) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{v:.11e}")
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    s
}

// ---------------------------------------------------------------------------
// JSON

/// Minimal JSON document model; objects sort their keys when rendered.
pub enum Json {
    Null,
    UInt(u64),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    fn render_into(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::UInt(v) => out.push_str(&v.to_string()),
            Json::Int(v) => out.push_str(&v.to_string()),
            Json::Float(v) => out.push_str(&fmt_float(*v)),
            Json::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\r' => out.push_str("\\r"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => {
                            out.push_str(&format!("\\u{:04x}", c as u32))
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    pad(out, indent + 1);
                    item.render_into(out, indent + 1);
                    if i + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push(']');
            }
            Json::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                let mut sorted: Vec<&(String, Json)> = fields.iter().collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                out.push_str("{\n");
                for (i, (key, value)) in sorted.iter().enumerate() {
                    pad(out, indent + 1);
                    Json::Str(key.clone()).render_into(out, indent + 1);
                    out.push_str(": ");
                    value.render_into(out, indent + 1);
                    if i + 1 < sorted.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                pad(out, indent);
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out.push('\n');
        out
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn opt_str(v: &Option<String>) -> Json {
    match v {
        Some(s) => Json::Str(s.clone()),
        None => Json::Null,
    }
}

fn config_json(config: &ConfigEcho) -> Json {
    Json::Object(vec![
        ("gamma".into(), opt_str(&config.gamma)),
        (
            "epsilon".into(),
            config.epsilon.map_or(Json::Null, Json::Float),
        ),
        ("scenario".into(), opt_str(&config.scenario)),
        ("trials".into(), Json::UInt(config.trials)),
        ("seed".into(), Json::UInt(config.seed)),
        ("format".into(), Json::Str(config.format.clone())),
        ("out".into(), opt_str(&config.out)),
    ])
}

fn sweep_row_json(row: &SweepRow) -> Json {
    let mut fields = vec![
        ("gamma".into(), Json::Float(row.gamma)),
        ("p_plus_analytic".into(), Json::Float(row.p_plus_analytic)),
    ];
    if let Some(e) = row.epsilon {
        fields.push(("epsilon".into(), Json::Float(e)));
    }
    if let Some(p) = row.p_plus_empirical {
        fields.push(("p_plus_empirical".into(), Json::Float(p)));
    }
    if let Some(s) = row.std_err {
        fields.push(("std_err".into(), Json::Float(s)));
    }
    Json::Object(fields)
}

fn expectation_json(analytic: f64, empirical: Option<&ExpectationEstimate>) -> Json {
    let mut fields = vec![("analytic".into(), Json::Float(analytic))];
    if let Some(e) = empirical {
        fields.push(("empirical".into(), Json::Float(e.value)));
        fields.push(("std_err".into(), Json::Float(e.standard_error)));
        fields.push(("trials".into(), Json::UInt(e.trials)));
    }
    Json::Object(fields)
}

fn chsh_json(analytic: &ChshReport, empirical: Option<&ChshReport>) -> Json {
    let emp = |f: fn(&ChshReport) -> ExpectationEstimate| empirical.map(f);
    let mut fields = vec![
        (
            "e_ab".into(),
            expectation_json(analytic.e_ab.value, emp(|r| r.e_ab).as_ref()),
        ),
        (
            "e_ab_prime".into(),
            expectation_json(analytic.e_ab_prime.value, emp(|r| r.e_ab_prime).as_ref()),
        ),
        (
            "e_a_prime_b_prime".into(),
            expectation_json(
                analytic.e_a_prime_b_prime.value,
                emp(|r| r.e_a_prime_b_prime).as_ref(),
            ),
        ),
        (
            "e_a_prime_b".into(),
            expectation_json(analytic.e_a_prime_b.value, emp(|r| r.e_a_prime_b).as_ref()),
        ),
        ("s_value_analytic".into(), Json::Float(analytic.s_value)),
    ];
    match empirical {
        Some(e) => {
            fields.push(("s_value".into(), Json::Float(e.s_value)));
            fields.push((
                "s_value_std_err".into(),
                Json::Float(e.combined_standard_error()),
            ));
        }
        None => fields.push(("s_value".into(), Json::Float(analytic.s_value))),
    }
    Json::Object(fields)
}

fn lhv_json(strategies: &[LhvStrategy], max_s: f64) -> Json {
    let list = strategies
        .iter()
        .map(|s| {
            Json::Object(vec![
                ("o_a".into(), Json::Int(i64::from(s.o_a))),
                ("o_a_prime".into(), Json::Int(i64::from(s.o_a_prime))),
                ("o_b".into(), Json::Int(i64::from(s.o_b))),
                ("o_b_prime".into(), Json::Int(i64::from(s.o_b_prime))),
                ("s".into(), Json::Float(s.s_value())),
            ])
        })
        .collect();
    Json::Object(vec![
        ("max_s".into(), Json::Float(max_s)),
        ("strategies".into(), Json::Array(list)),
    ])
}

pub fn render_json(config: &ConfigEcho, output: &RunOutput) -> String {
    let results = match output {
        RunOutput::Sweep(rows) => Json::Array(rows.iter().map(sweep_row_json).collect()),
        RunOutput::Chsh {
            analytic,
            empirical,
            ..
        } => Json::Array(vec![chsh_json(analytic, empirical.as_ref())]),
        RunOutput::Lhv { strategies, max_s } => Json::Array(vec![lhv_json(strategies, *max_s)]),
    };
    Json::Object(vec![
        ("command".into(), Json::Str(config.command.to_string())),
        ("config".into(), config_json(config)),
        ("results".into(), results),
    ])
    .render()
}

// ---------------------------------------------------------------------------
// CSV

pub fn render_csv(config: &ConfigEcho, output: &RunOutput) -> String {
    let mut out = String::new();
    match output {
        RunOutput::Sweep(rows) => {
            let with_epsilon = rows.iter().any(|r| r.epsilon.is_some());
            let empirical = config.trials > 0;
            out.push_str("gamma");
            if with_epsilon {
                out.push_str(",epsilon");
            }
            out.push_str(",p_plus_analytic");
            if empirical {
                out.push_str(",p_plus_empirical,std_err");
            }
            out.push_str(",trials,seed\n");
            for row in rows {
                out.push_str(&fmt_float(row.gamma));
                if let Some(e) = row.epsilon {
                    out.push(',');
                    out.push_str(&fmt_float(e));
                }
                out.push(',');
                out.push_str(&fmt_float(row.p_plus_analytic));
                if empirical {
                    out.push(',');
                    out.push_str(&fmt_float(row.p_plus_empirical.unwrap_or(f64::NAN)));
                    out.push(',');
                    out.push_str(&fmt_float(row.std_err.unwrap_or(f64::NAN)));
                }
                out.push_str(&format!(",{},{}\n", config.trials, config.seed));
            }
        }
        RunOutput::Chsh {
            analytic,
            empirical,
            ..
        } => {
            let labels = ["e_ab", "e_ab_prime", "e_a_prime_b_prime", "e_a_prime_b"];
            out.push_str("setting,analytic");
            if empirical.is_some() {
                out.push_str(",empirical,std_err");
            }
            out.push_str(",trials,seed\n");
            let analytic_values = analytic.expectations();
            for (k, label) in labels.iter().enumerate() {
                out.push_str(label);
                out.push(',');
                out.push_str(&fmt_float(analytic_values[k].value));
                if let Some(e) = empirical {
                    let est = e.expectations()[k];
                    out.push(',');
                    out.push_str(&fmt_float(est.value));
                    out.push(',');
                    out.push_str(&fmt_float(est.standard_error));
                }
                out.push_str(&format!(",{},{}\n", config.trials, config.seed));
            }
            out.push_str("s_value,");
            out.push_str(&fmt_float(analytic.s_value));
            if let Some(e) = empirical {
                out.push(',');
                out.push_str(&fmt_float(e.s_value));
                out.push(',');
                out.push_str(&fmt_float(e.combined_standard_error()));
            }
            out.push_str(&format!(",{},{}\n", config.trials, config.seed));
        }
        RunOutput::Lhv { strategies, .. } => {
            out.push_str("o_a,o_a_prime,o_b,o_b_prime,s\n");
            for s in strategies {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.o_a,
                    s.o_a_prime,
                    s.o_b,
                    s.o_b_prime,
                    fmt_float(s.s_value())
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Table

fn push_row(out: &mut String, cells: &[String], widths: &[usize]) {
    for (i, cell) in cells.iter().enumerate() {
        if i > 0 {
            out.push_str("  ");
        }
        out.push_str(&format!("{cell:<width$}", width = widths[i]));
    }
    while out.ends_with(' ') {
        out.pop();
    }
    out.push('\n');
}

fn render_aligned(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    push_row(&mut out, &header, &widths);
    for row in &rows {
        push_row(&mut out, row, &widths);
    }
    out
}

pub fn render_table(config: &ConfigEcho, output: &RunOutput) -> String {
    match output {
        RunOutput::Sweep(rows) => {
            let with_epsilon = rows.iter().any(|r| r.epsilon.is_some());
            let empirical = config.trials > 0;
            let mut header = vec!["gamma".to_string()];
            if with_epsilon {
                header.push("epsilon".into());
            }
            header.push("p_plus_analytic".into());
            if empirical {
                header.push("p_plus_empirical".into());
                header.push("std_err".into());
            }
            header.push("trials".into());
            header.push("seed".into());
            let body = rows
                .iter()
                .map(|row| {
                    let mut cells = vec![fmt_float(row.gamma)];
                    if let Some(e) = row.epsilon {
                        cells.push(fmt_float(e));
                    }
                    cells.push(fmt_float(row.p_plus_analytic));
                    if empirical {
                        cells.push(fmt_float(row.p_plus_empirical.unwrap_or(f64::NAN)));
                        cells.push(fmt_float(row.std_err.unwrap_or(f64::NAN)));
                    }
                    cells.push(config.trials.to_string());
                    cells.push(config.seed.to_string());
                    cells
                })
                .collect();
            render_aligned(header, body)
        }
        RunOutput::Chsh {
            scenario,
            analytic,
            empirical,
        } => {
            let labels = ["e_ab", "e_ab_prime", "e_a_prime_b_prime", "e_a_prime_b"];
            let mut header = vec!["setting".to_string(), "analytic".into()];
            if empirical.is_some() {
                header.push("empirical".into());
                header.push("std_err".into());
            }
            let mut body: Vec<Vec<String>> = Vec::new();
            let analytic_values = analytic.expectations();
            for (k, label) in labels.iter().enumerate() {
                let mut cells = vec![label.to_string(), fmt_float(analytic_values[k].value)];
                if let Some(e) = empirical {
                    let est = e.expectations()[k];
                    cells.push(fmt_float(est.value));
                    cells.push(fmt_float(est.standard_error));
                }
                body.push(cells);
            }
            let mut cells = vec!["s_value".to_string(), fmt_float(analytic.s_value)];
            if let Some(e) = empirical {
                cells.push(fmt_float(e.s_value));
                cells.push(fmt_float(e.combined_standard_error()));
            }
            body.push(cells);
            let mut out = format!(
                "scenario: {scenario} (trials = {}, seed = {})\n",
                config.trials, config.seed
            );
            out.push_str(&render_aligned(header, body));
            out
        }
        RunOutput::Lhv { strategies, max_s } => {
            let header = vec![
                "o_a".to_string(),
                "o_a_prime".into(),
                "o_b".into(),
                "o_b_prime".into(),
                "s".into(),
            ];
            let body = strategies
                .iter()
                .map(|s| {
                    vec![
                        s.o_a.to_string(),
                        s.o_a_prime.to_string(),
                        s.o_b.to_string(),
                        s.o_b_prime.to_string(),
                        fmt_float(s.s_value()),
                    ]
                })
                .collect();
            let mut out = render_aligned(header, body);
            out.push_str(&format!(
                "max_s over {} deterministic strategies: {}\n",
                strategies.len(),
                fmt_float(*max_s)
            ));
            out
        }
    }
}
