//! Golden data shipped with the crate and the comparisons that regenerate
//! it.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::classify::{classify_numeric, ClassifyError, ClassifyOptions, Status};
use crate::cspace::{grade_space, CspaceError, GradedSpace};
use crate::curvature::{build_m1, build_z, CurvatureError};
use crate::rootsys::{build_root_system, AlgebraId, Family, RootSystemError};
use crate::spectral::{row_sum_bound, weighted_row_sum_bound, SpectralError};
use crate::Rational;

const G2_M1: &str = include_str!("../fixtures/g2_m1.csv");
const G2_Z: &str = include_str!("../fixtures/g2_z.csv");
const TABLES: &str = include_str!("../fixtures/exceptional_tables.csv");
const WEIGHTED: &str = include_str!("../fixtures/weighted_bounds.csv");
const LEVELS: &str = include_str!("../fixtures/level_sizes.csv");

/// Tolerance for printed eigenvalues and bounds.
pub const TABLE_TOL: f64 = 1e-3;
/// Tolerance for individual `Z` entries.
pub const ENTRY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("malformed fixture: {0}")]
    Malformed(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Cspace(#[from] CspaceError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("unknown reproduce target {0:?}")]
    UnknownTarget(String),
}

/// One `(g, α_p)` row of the exceptional tables.
#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub algebra: String,
    pub p: usize,
    pub dim: usize,
    pub mu: String,
    pub ev1: f64,
    pub ev2: f64,
    pub ev3: f64,
    pub ev4: f64,
    pub bound_method: Option<String>,
    pub s: Option<usize>,
    pub bound: Option<f64>,
    pub qb_positive: bool,
}

impl TableRow {
    pub fn algebra_id(&self) -> Result<AlgebraId, FixtureError> {
        Ok(self.algebra.parse()?)
    }

    pub fn mu(&self) -> Result<Rational, FixtureError> {
        Rational::from_str(&self.mu).map_err(|_| FixtureError::Malformed(self.mu.clone()))
    }

    pub fn top4(&self) -> [f64; 4] {
        [self.ev1, self.ev2, self.ev3, self.ev4]
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct WeightedRow {
    pub algebra: String,
    pub p: usize,
    pub mu: f64,
    pub s: usize,
    pub bound: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct LevelRow {
    algebra: String,
    p: usize,
    sizes: String,
}

fn read_rows<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, FixtureError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    Ok(reader.deserialize().collect::<Result<Vec<T>, _>>()?)
}

pub fn exceptional_tables() -> Result<Vec<TableRow>, FixtureError> {
    read_rows(TABLES)
}

pub fn weighted_bounds() -> Result<Vec<WeightedRow>, FixtureError> {
    read_rows(WEIGHTED)
}

/// `(algebra, p, level sizes)` for every exceptional case.
pub fn level_sizes() -> Result<Vec<(AlgebraId, usize, Vec<usize>)>, FixtureError> {
    read_rows::<LevelRow>(LEVELS)?
        .into_iter()
        .map(|r| {
            let sizes = r
                .sizes
                .split_whitespace()
                .map(|s| {
                    s.parse()
                        .map_err(|_| FixtureError::Malformed(r.sizes.clone()))
                })
                .collect::<Result<_, _>>()?;
            Ok((r.algebra.parse()?, r.p, sizes))
        })
        .collect()
}

/// The exact `M1` of `(G2, α2)`.
pub fn g2_m1() -> Result<Vec<Vec<Rational>>, FixtureError> {
    G2_M1
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split(',')
                .map(|c| {
                    Rational::from_str(c.trim()).map_err(|_| FixtureError::Malformed(c.to_string()))
                })
                .collect()
        })
        .collect()
}

/// Evaluates cells such as `5/2`, `3` or `sqrt(2)*sqrt(6)`.
pub fn eval_cell(cell: &str) -> Result<f64, FixtureError> {
    let bad = || FixtureError::Malformed(cell.to_string());
    cell.split('*').try_fold(1.0, |acc, factor| {
        let factor = factor.trim();
        let v = if let Some(inner) = factor
            .strip_prefix("sqrt(")
            .and_then(|f| f.strip_suffix(')'))
        {
            inner.parse::<f64>().map_err(|_| bad())?.sqrt()
        } else {
            let r = Rational::from_str(factor).map_err(|_| bad())?;
            *r.numer() as f64 / *r.denom() as f64
        };
        Ok(acc * v)
    })
}

/// Nonzero entries of the printed `Z` for `(G2, α2)`, as 1-based indices
/// into the column-major list of all 25 frame pairs.
pub fn g2_z() -> Result<Vec<(usize, usize, f64)>, FixtureError> {
    #[derive(Deserialize)]
    struct Cell {
        row: usize,
        col: usize,
        value: String,
    }
    read_rows::<Cell>(G2_Z)?
        .into_iter()
        .map(|c| Ok((c.row, c.col, eval_cell(&c.value)?)))
        .collect()
}

/// Frame pair `(A, B)` at 1-based position `k` of the column-major list of
/// all `dim²` pairs.
pub fn column_major_pair(dim: usize, k: usize) -> (usize, usize) {
    ((k - 1) % dim, (k - 1) / dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproduceTarget {
    G2M1,
    G2Z,
    Tables(Family),
}

impl FromStr for ReproduceTarget {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g2-b" => Ok(ReproduceTarget::G2M1),
            "g2-z" => Ok(ReproduceTarget::G2Z),
            "g2-tables" => Ok(ReproduceTarget::Tables(Family::G2)),
            "f4-tables" => Ok(ReproduceTarget::Tables(Family::F4)),
            "e6-tables" => Ok(ReproduceTarget::Tables(Family::E6)),
            "e7-tables" => Ok(ReproduceTarget::Tables(Family::E7)),
            "e8-tables" => Ok(ReproduceTarget::Tables(Family::E8)),
            _ => Err(FixtureError::UnknownTarget(s.to_string())),
        }
    }
}

impl fmt::Display for ReproduceTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReproduceTarget::G2M1 => f.write_str("g2-B"),
            ReproduceTarget::G2Z => f.write_str("g2-Z"),
            ReproduceTarget::Tables(fam) => write!(f, "{}-tables", fam.to_string().to_lowercase()),
        }
    }
}

/// Regenerated artifact plus every difference from the golden copy.
#[derive(Debug, Clone, Default)]
pub struct ReproduceReport {
    pub lines: Vec<String>,
    pub mismatches: Vec<String>,
}

impl ReproduceReport {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn space_for(algebra: AlgebraId, p: usize) -> Result<GradedSpace, FixtureError> {
    Ok(grade_space(build_root_system(algebra)?, p)?)
}

pub fn reproduce(target: ReproduceTarget) -> Result<ReproduceReport, FixtureError> {
    match target {
        ReproduceTarget::G2M1 => reproduce_g2_m1(),
        ReproduceTarget::G2Z => reproduce_g2_z(),
        ReproduceTarget::Tables(family) => reproduce_tables(family),
    }
}

fn g2_space() -> Result<GradedSpace, FixtureError> {
    space_for(AlgebraId::exceptional(Family::G2)?, 2)
}

fn reproduce_g2_m1() -> Result<ReproduceReport, FixtureError> {
    let space = g2_space()?;
    let m1 = build_m1(&space)?;
    let golden = g2_m1()?;
    let mut report = ReproduceReport {
        lines: m1.to_csv().lines().map(str::to_string).collect(),
        ..Default::default()
    };
    if golden.len() != m1.dim() {
        report
            .mismatches
            .push(format!("dimension {} vs golden {}", m1.dim(), golden.len()));
        return Ok(report);
    }
    for (a, row) in golden.iter().enumerate() {
        for (b, &want) in row.iter().enumerate() {
            let got = m1.get(a, b);
            if got != want {
                report
                    .mismatches
                    .push(format!("B[{}][{}] = {got}, golden {want}", a + 1, b + 1));
            }
        }
    }
    Ok(report)
}

fn reproduce_g2_z() -> Result<ReproduceReport, FixtureError> {
    let space = g2_space()?;
    let dim = space.dim();
    let z = build_z(&space)?;
    let golden = g2_z()?;
    let mut expected = vec![0.0; dim * dim * dim * dim];
    let n = dim * dim;
    for &(r, c, v) in &golden {
        expected[(r - 1) * n + (c - 1)] = v;
    }
    let mut report = ReproduceReport::default();
    for r in 1..=n {
        for c in 1..=n {
            let got = z.get(column_major_pair(dim, r), column_major_pair(dim, c));
            let want = expected[(r - 1) * n + (c - 1)];
            if got != 0.0 {
                report.lines.push(format!("{r},{c},{got:.12}"));
            }
            if (got - want).abs() > ENTRY_TOL {
                report
                    .mismatches
                    .push(format!("Z[{r}][{c}] = {got:.12}, golden {want:.12}"));
            }
        }
    }
    Ok(report)
}

/// Recomputes every golden table row of `family`: dimension, μ, the top
/// four eigenvalues, the `M2` bound with the printed method, and the verdict.
pub fn reproduce_tables(family: Family) -> Result<ReproduceReport, FixtureError> {
    let mut report = ReproduceReport::default();
    let opts = ClassifyOptions::default();
    for row in exceptional_tables()?
        .into_iter()
        .filter(|r| r.algebra == family.to_string())
    {
        let algebra = row.algebra_id()?;
        let space = space_for(algebra, row.p)?;
        let verdict = classify_numeric(&space, &opts)?;
        let tag = format!("({algebra}, α{})", row.p);
        let mut bad = Vec::new();
        if verdict.dim != row.dim {
            bad.push(format!("dim {} vs {}", verdict.dim, row.dim));
        }
        if verdict.mu != row.mu()? {
            bad.push(format!("μ {} vs {}", verdict.mu, row.mu));
        }
        for (k, (got, want)) in verdict.m1_top.iter().zip(row.top4()).enumerate() {
            if (got - want).abs() > TABLE_TOL {
                bad.push(format!("eigenvalue {} = {got:.4} vs {want}", k + 1));
            }
        }
        let bound = match (row.bound_method.as_deref(), row.s, row.bound) {
            (Some(_), Some(s), Some(want)) => {
                let got = printed_bound(&space, s, &verdict.mu)?;
                if (got - want).abs() > TABLE_TOL {
                    bad.push(format!("M2 bound (s={s}) {got:.4} vs {want}"));
                }
                format!("{got:.4}")
            }
            _ => "-".to_string(),
        };
        let want_status = if row.qb_positive {
            Status::QbPositive
        } else {
            Status::QbFails
        };
        if verdict.status != want_status {
            bad.push(format!("status {} vs {}", verdict.status, want_status));
        }
        let top: Vec<String> = verdict.m1_top.iter().map(|x| format!("{x:.4}")).collect();
        report.lines.push(format!(
            "{tag} dim={} mu={} top4=[{}] m2={} {}",
            verdict.dim,
            verdict.mu,
            top.join(", "),
            bound,
            verdict.status
        ));
        report
            .mismatches
            .extend(bad.into_iter().map(|b| format!("{tag}: {b}")));
    }
    Ok(report)
}

/// The bound printed for a table row: `s = 0` is the plain row sum.
pub fn printed_bound(space: &GradedSpace, s: usize, mu: &Rational) -> Result<f64, FixtureError> {
    let z = build_z(space)?;
    let mu = *mu.numer() as f64 / *mu.denom() as f64;
    Ok(if s == 0 {
        row_sum_bound(&z.row_sums())?
    } else {
        weighted_row_sum_bound(z.matrix(), mu, s)?
    })
}
