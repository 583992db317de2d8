//! Command-line arguments and the optional `key = value` settings file.

use std::fs;
use std::io::IsTerminal;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kcspace::{AlgebraId, ClassifyOptions, Family};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "kcspace",
    version,
    about = "Quadratic bisectional curvature of Kähler C-spaces with b2 = 1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// Output format; markdown on a terminal, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Eigenvalues within this distance of μ count as equal to μ.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Comma-separated weighting steps tried for the M2 bound, e.g. 0,1,4,10.
    #[arg(long, global = true, value_parser = parse_schedule_arg)]
    pub s_schedule: Option<Schedule>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines setting format, tol, s_schedule or out.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct SpaceArgs {
    /// Algebra such as G2, E8, B5, or a bare classical family with --n.
    pub algebra: String,
    /// Simple root index (1-based).
    pub p: Option<usize>,
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long = "p", id = "p_flag")]
    pub p_flag: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct AlgebraArgs {
    /// Algebra such as G2, E8, B5, or a bare classical family with --n.
    pub algebra: String,
    #[arg(long = "n")]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots with their simple-root coordinates.
    Roots(AlgebraArgs),
    /// Show the grading of the positive roots by the α_p coefficient.
    Grade(SpaceArgs),
    /// Print the exact bisectional curvature matrix M1.
    M1(SpaceArgs),
    /// Print the nonzero entries of the pair bound matrix Z.
    Z(SpaceArgs),
    /// Decide quadratic orthogonal bisectional curvature for one space.
    Analyze(SpaceArgs),
    /// Compare numeric and closed-form verdicts over a range of ranks.
    Sweep {
        /// B, C or D.
        family: String,
        /// Ranks, e.g. 3..6 (inclusive) or 5.
        #[arg(long = "n", value_parser = parse_rank_range)]
        n: RangeInclusive<usize>,
    },
    /// Regenerate a golden artifact and diff it against the shipped copy.
    Reproduce {
        /// g2-B, g2-Z, g2-tables, f4-tables, e6-tables, e7-tables, e8-tables or all.
        target: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Settings after merging flags over the settings file over defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub format: Format,
    pub options: ClassifyOptions,
    pub out: Option<PathBuf>,
}

/// The `--s-schedule` list, wrapped so clap sees a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule(pub Vec<usize>);

fn parse_schedule_arg(s: &str) -> Result<Schedule, String> {
    parse_schedule(s).map(Schedule)
}

fn parse_schedule(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad s value {t:?}: {e}"))
        })
        .collect()
}

pub fn parse_rank_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad rank {t:?}: {e}"))
    };
    let range = match s.split_once("..") {
        Some((lo, hi)) => num(lo)?..=num(hi.trim_start_matches('='))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(format!("empty rank range {s:?}"));
    }
    Ok(range)
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::from_str(s, true)
}

fn read_settings_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                k + 1
            ))
        })?;
        let value = value.trim().trim_matches('"');
        out.push((key.trim().replace('-', "_"), value.to_string()));
    }
    Ok(out)
}

impl CommonArgs {
    pub fn settings(&self) -> Result<Settings, CliError> {
        let mut format = None;
        let mut options = ClassifyOptions::default();
        let mut out = None;
        if let Some(path) = &self.config {
            for (key, value) in read_settings_file(path)? {
                let bad = |e: String| CliError::Usage(format!("{}: {key}: {e}", path.display()));
                match key.as_str() {
                    "format" => format = Some(parse_format(&value).map_err(bad)?),
                    "tol" => options.tol = value.parse().map_err(|e| bad(format!("{e}")))?,
                    "s_schedule" => options.s_schedule = parse_schedule(&value).map_err(bad)?,
                    "out" => out = Some(PathBuf::from(value)),
                    _ => return Err(bad("unknown setting".to_string())),
                }
            }
        }
        if let Some(f) = self.format {
            format = Some(f);
        }
        if let Some(t) = self.tol {
            options.tol = t;
        }
        if let Some(Schedule(s)) = &self.s_schedule {
            options.s_schedule = s.clone();
        }
        if options.tol.is_nan() || options.tol < 0.0 {
            return Err(CliError::Usage(format!(
                "tolerance must be nonnegative, got {}",
                options.tol
            )));
        }
        if self.out.is_some() {
            out = self.out.clone();
        }
        let format = format.unwrap_or_else(|| {
            if out.is_none() && std::io::stdout().is_terminal() {
                Format::Markdown
            } else {
                Format::Json
            }
        });
        Ok(Settings {
            format,
            options,
            out,
        })
    }
}

pub fn resolve_algebra(name: &str, n: Option<usize>) -> Result<AlgebraId, CliError> {
    if let Ok(algebra) = name.parse::<AlgebraId>() {
        return match n {
            Some(n) if n != algebra.rank() => Err(CliError::Usage(format!(
                "{name} has rank {}, but --n {n} was given",
                algebra.rank()
            ))),
            _ => Ok(algebra),
        };
    }
    let family: Family = name.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let n = n.ok_or_else(|| CliError::Usage(format!("{family} needs a rank, e.g. --n 5")))?;
    AlgebraId::new(family, n).map_err(|e| CliError::Usage(e.to_string()))
}

impl SpaceArgs {
    pub fn resolve(&self) -> Result<(AlgebraId, usize), CliError> {
        let algebra = resolve_algebra(&self.algebra, self.n)?;
        let p = match (self.p, self.p_flag) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::Usage(format!(
                    "p given twice with different values ({a}, {b})"
                )))
            }
            (Some(p), _) | (None, Some(p)) => p,
            (None, None) => return Err(CliError::Usage("missing simple root index p".to_string())),
        };
        if p == 0 || p > algebra.rank() {
            return Err(CliError::Usage(format!(
                "p = {p} outside 1..={} for {algebra}",
                algebra.rank()
            )));
        }
        Ok((algebra, p))
    }
}
