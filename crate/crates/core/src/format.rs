//! Deterministic text output for verdicts.

use serde::Serialize;
use serde_json::value::RawValue;

use crate::classify::Verdict;

/// C-style `%.{sig}g`.
pub fn format_g(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_eigen(x: f64) -> String {
    // avoid printing "-0.0000"
    let s = format!("{x:.4}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn raw(s: String) -> Box<RawValue> {
    RawValue::from_string(s).expect("formatted number is valid JSON")
}

#[derive(Serialize)]
struct VerdictDoc {
    algebra: String,
    p: usize,
    dim: usize,
    mu: String,
    m1_top4: Vec<Box<RawValue>>,
    m2_bound: Option<Box<RawValue>>,
    method: String,
    status: &'static str,
}

fn doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        algebra: v.algebra.to_string(),
        p: v.p,
        dim: v.dim,
        mu: v.mu.to_string(),
        m1_top4: v.m1_top.iter().map(|&x| raw(format_eigen(x))).collect(),
        m2_bound: v.m2_bound.map(|b| raw(format_g(b, 10))),
        method: v.method(),
        status: v.status.as_str(),
    }
}

pub fn verdict_json(v: &Verdict) -> String {
    serde_json::to_string(&doc(v)).expect("verdict serializes")
}

pub fn verdicts_json(vs: &[Verdict]) -> String {
    let docs: Vec<VerdictDoc> = vs.iter().map(doc).collect();
    serde_json::to_string_pretty(&docs).expect("verdicts serialize")
}

pub const CSV_HEADER: &str = "algebra,p,dim,mu,m1_top4,m2_bound,method,status";

pub fn verdict_csv_row(v: &Verdict) -> String {
    let top: Vec<String> = v.m1_top.iter().map(|&x| format_eigen(x)).collect();
    format!(
        "{},{},{},{},{},{},{},{}",
        v.algebra,
        v.p,
        v.dim,
        v.mu,
        top.join(" "),
        v.m2_bound.map(|b| format_g(b, 10)).unwrap_or_default(),
        v.method(),
        v.status
    )
}

pub fn verdict_markdown(v: &Verdict) -> String {
    let top: Vec<String> = v.m1_top.iter().map(|&x| format_eigen(x)).collect();
    let mut out = format!("## ({}, α{})\n\n", v.algebra, v.p);
    out.push_str(&format!("- dim = {}, Ric = {} g\n", v.dim, v.mu));
    out.push_str(&format!(
        "- 4 largest eigenvalues of M1: {}\n",
        top.join(", ")
    ));
    match (v.m2_bound, v.m2_method) {
        (Some(b), Some(m)) => out.push_str(&format!("- M2 bound: {} ({m})\n", format_g(b, 10))),
        _ => out.push_str("- M2 bound: not needed\n"),
    }
    out.push_str(&format!(
        "- verdict: {} ({})\n",
        v.status.describe(),
        v.status
    ));
    for note in &v.method_notes {
        out.push_str(&format!("- note: {note}\n"));
    }
    out
}
