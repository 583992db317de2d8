//! Rendering of command results in the three output formats.

use kcspace::format::{
    format_eigen, format_g, verdict_csv_row, verdict_json, verdict_markdown, CSV_HEADER,
};
use kcspace::{
    ClosedFormResult, CurvMatrix, GradedSpace, PairBoundMatrix, RootSystem, Status, Verdict,
};
use serde::Serialize;

use crate::args::Format;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn coords(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn roots(system: &RootSystem, format: Format) -> String {
    let n = system.positive_roots().len();
    match format {
        Format::Json => json(&system.to_json()),
        Format::Csv => {
            let mut out = String::from("index,label,coords2,simple_coords\n");
            for i in 0..n {
                let c2: Vec<String> = system
                    .root(i)
                    .coords2()
                    .iter()
                    .map(i32::to_string)
                    .collect();
                out += &format!(
                    "{i},{},{},{}\n",
                    system.label(i),
                    c2.join(" "),
                    coords(system.simple_coords(i))
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = format!(
                "## {} ({n} positive roots)\n\n| # | root | simple coordinates |\n|---|---|---|\n",
                system.algebra()
            );
            for i in 0..n {
                out += &format!(
                    "| {i} | {} | {} |\n",
                    system.label(i),
                    coords(system.simple_coords(i))
                );
            }
            out
        }
    }
}

pub fn grading(space: &GradedSpace, format: Format) -> String {
    let algebra = space.system().algebra();
    match format {
        Format::Json => json(&space.to_json()),
        Format::Csv => {
            let mut out = String::from("index,label,grade,root_index\n");
            for e in space.frame() {
                out += &format!(
                    "{},{},{},{}\n",
                    e.index,
                    space.label(e.index),
                    e.grade,
                    e.root_index
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = format!("## ({algebra}, α{}), dim = {}\n\n", space.p(), space.dim());
            for k in 1..=space.k_max() {
                let labels: Vec<&str> = space.level(k).iter().map(|&i| space.label(i)).collect();
                out += &format!("- grade {k} ({}): {}\n", labels.len(), labels.join(", "));
            }
            out
        }
    }
}

pub fn m1(space: &GradedSpace, m: &CurvMatrix, format: Format) -> String {
    let labels: Vec<&str> = (0..space.dim()).map(|i| space.label(i)).collect();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                algebra: String,
                p: usize,
                mu: String,
                labels: &'a [&'a str],
                rows: Vec<Vec<String>>,
            }
            json(&Doc {
                algebra: space.system().algebra().to_string(),
                p: space.p(),
                mu: m.mu().to_string(),
                labels: &labels,
                rows: (0..m.dim())
                    .map(|a| m.row(a).iter().map(ToString::to_string).collect())
                    .collect(),
            })
        }
        Format::Csv => {
            format!(",{}\n", labels.join(","))
                + &m.to_csv()
                    .lines()
                    .zip(&labels)
                    .map(|(row, l)| format!("{l},{row}\n"))
                    .collect::<String>()
        }
        Format::Markdown => {
            let mut out = format!(
                "## M1 of ({}, α{}), row sum {}\n\n|   | {} |\n|---|{}\n",
                space.system().algebra(),
                space.p(),
                m.mu(),
                labels.join(" | "),
                "---|".repeat(labels.len())
            );
            for (a, l) in labels.iter().enumerate() {
                let cells: Vec<String> = m.row(a).iter().map(ToString::to_string).collect();
                out += &format!("| {l} | {} |\n", cells.join(" | "));
            }
            out
        }
    }
}

pub fn z(space: &GradedSpace, z: &PairBoundMatrix, format: Format) -> String {
    let label = |i: usize| space.label(i);
    let triples = z.triples();
    let max_row = z.row_sums().into_iter().fold(0.0, f64::max);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry<'a> {
                row: [&'a str; 2],
                col: [&'a str; 2],
                value: f64,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                algebra: String,
                p: usize,
                pairs: usize,
                max_row_sum: f64,
                entries: Vec<Entry<'a>>,
            }
            json(&Doc {
                algebra: space.system().algebra().to_string(),
                p: space.p(),
                pairs: z.pairs().len(),
                max_row_sum: max_row,
                entries: triples
                    .iter()
                    .map(|&((a, b), (c, d), value)| Entry {
                        row: [label(a), label(b)],
                        col: [label(c), label(d)],
                        value,
                    })
                    .collect(),
            })
        }
        Format::Csv => {
            let mut out = String::from("a,b,c,d,value\n");
            for ((a, b), (c, d), v) in triples {
                out += &format!(
                    "{},{},{},{},{}\n",
                    label(a),
                    label(b),
                    label(c),
                    label(d),
                    format_g(v, 10)
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = format!(
                "## Z of ({}, α{})\n\n- {} ordered pairs, {} nonzero entries\n- largest row sum: {}\n\n| (A, B) | (C, D) | value |\n|---|---|---|\n",
                space.system().algebra(),
                space.p(),
                z.pairs().len(),
                triples.len(),
                format_g(max_row, 10)
            );
            for ((a, b), (c, d), v) in triples {
                out += &format!(
                    "| ({}, {}) | ({}, {}) | {} |\n",
                    label(a),
                    label(b),
                    label(c),
                    label(d),
                    format_g(v, 10)
                );
            }
            out
        }
    }
}

pub fn verdict(v: &Verdict, format: Format) -> String {
    match format {
        Format::Json => verdict_json(v) + "\n",
        Format::Csv => format!("{CSV_HEADER}\n{}\n", verdict_csv_row(v)),
        Format::Markdown => verdict_markdown(v),
    }
}

/// One `(n, p)` case of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub verdict: Verdict,
    pub closed: ClosedFormResult,
    pub consistent: bool,
}

impl SweepRow {
    fn closed_status(&self) -> Status {
        match (self.closed.qb_nonneg, self.closed.qb_positive) {
            (_, true) => Status::QbPositive,
            (true, false) => Status::QbNonnegBoundary,
            (false, _) => Status::QbFails,
        }
    }
}

pub fn sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                algebra: String,
                n: usize,
                p: usize,
                dim: usize,
                mu: String,
                m1_top: String,
                m2_bound: Option<String>,
                closed_form: Status,
                numeric: Status,
                consistent: bool,
            }
            let docs: Vec<Doc> = rows
                .iter()
                .map(|r| Doc {
                    algebra: r.verdict.algebra.to_string(),
                    n: r.verdict.algebra.rank(),
                    p: r.verdict.p,
                    dim: r.verdict.dim,
                    mu: r.verdict.mu.to_string(),
                    m1_top: r
                        .verdict
                        .m1_top
                        .first()
                        .map(|&x| format_eigen(x))
                        .unwrap_or_default(),
                    m2_bound: r.verdict.m2_bound.map(|b| format_g(b, 10)),
                    closed_form: r.closed_status(),
                    numeric: r.verdict.status,
                    consistent: r.consistent,
                })
                .collect();
            json(&docs)
        }
        Format::Csv => {
            let mut out =
                String::from("algebra,n,p,dim,mu,m1_top,m2_bound,closed_form,numeric,consistent\n");
            for r in rows {
                let v = &r.verdict;
                out += &format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    v.algebra,
                    v.algebra.rank(),
                    v.p,
                    v.dim,
                    v.mu,
                    v.m1_top
                        .first()
                        .map(|&x| format_eigen(x))
                        .unwrap_or_default(),
                    v.m2_bound.map(|b| format_g(b, 10)).unwrap_or_default(),
                    r.closed_status(),
                    v.status,
                    r.consistent
                );
            }
            out
        }
        Format::Markdown => {
            let mut out = String::from(
                "| algebra | p | dim | μ | top M1 | M2 bound | closed form | numeric | consistent |\n|---|---|---|---|---|---|---|---|---|\n",
            );
            for r in rows {
                let v = &r.verdict;
                out += &format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    v.algebra,
                    v.p,
                    v.dim,
                    v.mu,
                    v.m1_top
                        .first()
                        .map(|&x| format_eigen(x))
                        .unwrap_or_default(),
                    v.m2_bound
                        .map(|b| format_g(b, 10))
                        .unwrap_or_else(|| "-".to_string()),
                    r.closed,
                    v.status.describe(),
                    if r.consistent { "yes" } else { "NO" }
                );
            }
            out
        }
    }
}
