//! Curvature of the Weyl frame.
//!
//! `M1` holds the bisectional curvatures `R(e_A, ē_A, e_B, ē_B)` exactly.
//! Off-diagonal components `R(e_A, ē_B, e_C, ē_D)` are only known up to the
//! signs of Chevalley constants, so they are replaced by a nonnegative upper
//! estimate and collected into the pair matrix `Z`.

use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use crate::chevalley::{ntilde_abs, ChevalleyError};
use crate::cspace::{FrameEntry, GradedSpace};
use crate::rootsys::{inner_unchecked, Sign};
use crate::spectral::{DenseMatrix, SparseMatrix};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("row sums of M1 differ: row 0 sums to {first}, row {row} to {other}")]
    NotEinstein {
        first: Rational,
        row: usize,
        other: Rational,
    },
    #[error("quadruple ({0}, {1}, {2}, {3}) has a repeated pair")]
    BadQuadruple(usize, usize, usize, usize),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
}

/// `R(e_α, ē_α, e_β, ē_β) = (1/j)[(α,β) + ½·i/(i+j)·Ñ²_{α,β}]` with `i <= j`
/// the grades of the two roots.
pub fn bisectional(space: &GradedSpace, a: &FrameEntry, b: &FrameEntry) -> Rational {
    let system = space.system();
    let (lo, hi) = if a.grade <= b.grade { (a, b) } else { (b, a) };
    let i = Rational::from_integer(i64::from(lo.grade));
    let j = Rational::from_integer(i64::from(hi.grade));
    let nt2 = ntilde_abs(system, &lo.root, &hi.root, Sign::Plus)
        .map(|m| m.square())
        .unwrap_or_default();
    let half = Rational::new(1, 2);
    (inner_unchecked(&a.root, &b.root) + half * i / (i + j) * nt2) / j
}

/// Exact symmetric matrix of bisectional curvatures with constant row sum.
#[derive(Debug, Clone)]
pub struct CurvMatrix {
    dim: usize,
    entries: Vec<Rational>,
    mu: Rational,
}

impl CurvMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> Rational {
        self.entries[a * self.dim + b]
    }

    pub fn row(&self, a: usize) -> &[Rational] {
        &self.entries[a * self.dim..(a + 1) * self.dim]
    }

    /// The common row sum.
    pub fn mu(&self) -> Rational {
        self.mu
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim, |a, b| rational_to_f64(self.get(a, b)))
    }

    /// Rows of `p/q` cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for a in 0..self.dim {
            let cells: Vec<String> = self.row(a).iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn rational_to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn build_m1(space: &GradedSpace) -> Result<CurvMatrix, CurvatureError> {
    let dim = space.dim();
    let frame = space.frame();
    let mut entries = vec![Rational::default(); dim * dim];
    for a in 0..dim {
        for b in a..dim {
            let v = bisectional(space, &frame[a], &frame[b]);
            entries[a * dim + b] = v;
            entries[b * dim + a] = v;
        }
    }
    let row_sum = |a: usize| -> Rational { entries[a * dim..(a + 1) * dim].iter().sum() };
    let first = if dim > 0 {
        row_sum(0)
    } else {
        Rational::default()
    };
    if let Some(row) = (1..dim).find(|&a| row_sum(a) != first) {
        return Err(CurvatureError::NotEinstein {
            first,
            row,
            other: row_sum(row),
        });
    }
    space.cache_mu(first);
    Ok(CurvMatrix {
        dim,
        entries,
        mu: first,
    })
}

/// Per-frame data needed by the estimate, in floating point, over a
/// selection of frame indices.
struct FrameTables {
    dim: usize,
    grade: Vec<u32>,
    plus: Vec<f64>,
    minus: Vec<f64>,
    bisect: Vec<f64>,
}

impl FrameTables {
    fn new(space: &GradedSpace) -> Result<Self, CurvatureError> {
        let all: Vec<usize> = (0..space.dim()).collect();
        Self::select(space, &all)
    }

    fn select(space: &GradedSpace, idx: &[usize]) -> Result<Self, CurvatureError> {
        let dim = idx.len();
        let frame = space.frame();
        let system = space.system();
        let mut plus = vec![0.0; dim * dim];
        let mut minus = vec![0.0; dim * dim];
        let mut bisect = vec![0.0; dim * dim];
        for (x, &a) in idx.iter().enumerate() {
            for (y, &b) in idx.iter().enumerate() {
                let (ra, rb) = (&frame[a].root, &frame[b].root);
                plus[x * dim + y] = ntilde_abs(system, ra, rb, Sign::Plus)?.to_f64();
                if a != b {
                    minus[x * dim + y] = ntilde_abs(system, ra, rb, Sign::Minus)?.to_f64();
                }
                if x <= y {
                    let v = rational_to_f64(bisectional(space, &frame[a], &frame[b]).abs());
                    bisect[x * dim + y] = v;
                    bisect[y * dim + x] = v;
                }
            }
        }
        let grade = idx.iter().map(|&a| frame[a].grade).collect();
        Ok(FrameTables {
            dim,
            grade,
            plus,
            minus,
            bisect,
        })
    }

    fn plus(&self, a: usize, b: usize) -> f64 {
        self.plus[a * self.dim + b]
    }

    fn minus(&self, a: usize, b: usize) -> f64 {
        self.minus[a * self.dim + b]
    }

    /// `|R1| + |R2|` bound for the ordering `(α, β, γ, δ)`, assuming
    /// `α - β = δ - γ`, `α ≠ β` and `γ ≠ δ`.
    fn ordered_estimate(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let [i, j, k, l] = [a, b, c, d].map(|x| i64::from(self.grade[x]));
        let step = |m: i64| i64::from(m > 0);
        let kron = |x: i64, y: i64| i64::from(x == y);
        let c1 = ((k - j) * step(k - j)) as f64 - (k * l) as f64 / (i + k) as f64;
        let c2 = -(k - j) * step(k - j)
            + k * step(i - j)
            + l * step(j - i)
            + l * kron(i, j) * kron(k, l);
        let scale = 0.5 / ((i * j * k * l) as f64).sqrt();
        scale
            * (c1.abs() * self.plus(a, c) * self.plus(b, d)
                + c2.abs() as f64 * self.minus(a, b) * self.minus(c, d))
    }

    /// `same_bc` is passed separately because selected tables may hold a
    /// frame entry twice.
    fn estimate(&self, a: usize, b: usize, c: usize, d: usize, same_bc: bool) -> f64 {
        if same_bc {
            self.bisect[a * self.dim + b]
        } else {
            self.ordered_estimate(a, b, c, d)
                .min(self.ordered_estimate(c, b, a, d))
        }
    }
}

/// Upper estimate of `|R(e_A, ē_B, e_C, ē_D)|` for frame indices `A ≠ B`,
/// `C ≠ D`. Exactly zero unless `α - β = δ - γ`.
pub fn general_estimate(
    space: &GradedSpace,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<f64, CurvatureError> {
    if a == b || c == d {
        return Err(CurvatureError::BadQuadruple(a, b, c, d));
    }
    let f = space.frame();
    if &f[a].root - &f[b].root != &f[d].root - &f[c].root {
        return Ok(0.0);
    }
    let tables = FrameTables::select(space, &[a, b, c, d])?;
    Ok(if (c, d) < (a, b) {
        tables.estimate(2, 3, 0, 1, d == a)
    } else {
        tables.estimate(0, 1, 2, 3, b == c)
    })
}

/// Ordered pairs `(A, B)` of distinct frame indices, indexed row-major
/// with the diagonal skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    dim: usize,
}

impl PairIndex {
    pub fn new(dim: usize) -> Self {
        PairIndex { dim }
    }

    pub fn len(&self) -> usize {
        self.dim * self.dim.saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b || a >= self.dim || b >= self.dim {
            return None;
        }
        Some(a * (self.dim - 1) + if b < a { b } else { b - 1 })
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        let a = i / (self.dim - 1);
        let r = i % (self.dim - 1);
        (a, if r < a { r } else { r + 1 })
    }
}

/// An ordered pair `(A, B)` of frame indices.
pub type FramePair = (usize, usize);

/// Sparse nonnegative matrix over ordered frame pairs dominating `|M2|`.
#[derive(Debug, Clone)]
pub struct PairBoundMatrix {
    pairs: PairIndex,
    matrix: SparseMatrix,
}

impl PairBoundMatrix {
    pub fn pairs(&self) -> PairIndex {
        self.pairs
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// Entry for `((A, B), (C, D))`; zero when either pair is diagonal.
    pub fn get(&self, ab: (usize, usize), cd: (usize, usize)) -> f64 {
        match (self.pairs.index(ab.0, ab.1), self.pairs.index(cd.0, cd.1)) {
            (Some(r), Some(c)) => self.matrix.get(r, c),
            _ => 0.0,
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.matrix.abs_row_sums()
    }

    /// Nonzero entries as `((A, B), (C, D), value)`.
    pub fn triples(&self) -> Vec<(FramePair, FramePair, f64)> {
        (0..self.pairs.len())
            .flat_map(|r| {
                self.matrix
                    .row(r)
                    .map(move |(c, v)| (self.pairs.pair(r), self.pairs.pair(c), v))
            })
            .collect()
    }
}

/// Entries of row `(A, B)`: for each `C`, the only candidate column is
/// `(C, D)` with `δ = α - β + γ`.
fn z_row(
    space: &GradedSpace,
    tables: &FrameTables,
    pairs: PairIndex,
    a: usize,
    b: usize,
) -> Vec<(u32, f64)> {
    let f = space.frame();
    let shift = &f[a].root - &f[b].root;
    let mut row: Vec<(u32, f64)> = (0..f.len())
        .filter_map(|c| {
            let d = space.frame_index_of(&(&shift + &f[c].root))?;
            let col = pairs.index(c, d)?;
            // evaluate both halves of a mirrored pair the same way so Z is
            // exactly symmetric
            let v = if (c, d) < (a, b) {
                tables.estimate(c, d, a, b, d == a)
            } else {
                tables.estimate(a, b, c, d, b == c)
            };
            (v != 0.0).then_some((col as u32, v))
        })
        .collect();
    row.sort_unstable_by_key(|&(c, _)| c);
    row
}

pub fn build_z(space: &GradedSpace) -> Result<PairBoundMatrix, CurvatureError> {
    let tables = FrameTables::new(space)?;
    let pairs = PairIndex::new(space.dim());
    let rows: Vec<Vec<(u32, f64)>> = (0..pairs.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = pairs.pair(i);
            z_row(space, &tables, pairs, a, b)
        })
        .collect();
    Ok(PairBoundMatrix {
        pairs,
        matrix: SparseMatrix::from_rows(pairs.len(), rows),
    })
}

/// Row sums of `Z` without storing the matrix.
pub fn z_row_sums(space: &GradedSpace) -> Result<Vec<f64>, CurvatureError> {
    let tables = FrameTables::new(space)?;
    let pairs = PairIndex::new(space.dim());
    Ok((0..pairs.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = pairs.pair(i);
            z_row(space, &tables, pairs, a, b)
                .iter()
                .map(|&(_, v)| v)
                .sum()
        })
        .collect())
}
