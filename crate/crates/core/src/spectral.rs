//! Symmetric eigensolver and row-sum eigenvalue bounds.

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("matrix is not symmetric: |a[{0}][{1}] - a[{1}][{0}]| = {2}")]
    NotSymmetric(usize, usize, f64),
    #[error("empty input")]
    EmptyInput,
    #[error("threshold must be positive, got {0}")]
    NonpositiveMu(f64),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Square row-major matrix of doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if data.len() != n * n {
            return Err(SpectralError::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn check_symmetric(&self) -> Result<(), SpectralError> {
        let scale = self.data.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for i in 0..self.n {
            for j in i + 1..self.n {
                let gap = (self.get(i, j) - self.get(j, i)).abs();
                if gap > SYMMETRY_TOL * scale {
                    return Err(SpectralError::NotSymmetric(i, j, gap));
                }
            }
        }
        Ok(())
    }
}

/// Compressed sparse rows with sorted column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseMatrix {
    /// `rows[i]` lists `(column, value)` for row `i`, sorted by column.
    pub fn from_rows(n: usize, rows: Vec<Vec<(u32, f64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        row_ptr.resize(n + 1, cols.len());
        SparseMatrix {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let rows = (0..m.n())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0.0)
                    .map(|(j, &v)| (j as u32, v))
                    .collect()
            })
            .collect();
        Self::from_rows(m.n(), rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()]
            .iter()
            .zip(&self.vals[span])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[span.clone()].binary_search(&(j as u32)) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn abs_row_sums(&self) -> Vec<f64> {
        let ones = vec![1.0; self.n];
        (0..self.n)
            .into_par_iter()
            .map(|i| self.abs_row_dot(i, &ones))
            .collect()
    }
}

/// Row access needed by the row-sum bounds.
pub trait AbsRowMatrix: Sync {
    fn size(&self) -> usize;

    /// `Σ_j |a_ij| w_j`
    fn abs_row_dot(&self, i: usize, w: &[f64]) -> f64;
}

impl AbsRowMatrix for DenseMatrix {
    fn size(&self) -> usize {
        self.n
    }

    fn abs_row_dot(&self, i: usize, w: &[f64]) -> f64 {
        self.row(i).iter().zip(w).map(|(a, b)| a.abs() * b).sum()
    }
}

impl AbsRowMatrix for SparseMatrix {
    fn size(&self) -> usize {
        self.n
    }

    fn abs_row_dot(&self, i: usize, w: &[f64]) -> f64 {
        self.row(i).map(|(j, v)| v.abs() * w[j]).sum()
    }
}

/// Eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    eigenvalues: Vec<f64>,
    count: usize,
}

impl SpectralSummary {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, count: usize) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        SpectralSummary { eigenvalues, count }
    }

    /// The leading `count` eigenvalues requested at construction.
    pub fn top_eigenvalues(&self) -> &[f64] {
        &self.eigenvalues[..self.count.min(self.eigenvalues.len())]
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Cyclic Jacobi. Returns eigenvalues (unsorted, matching the columns of
/// the eigenvector matrix) and eigenvectors as columns.
pub fn jacobi_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix), SpectralError> {
    let n = m.n();
    if n == 0 {
        return Err(SpectralError::EmptyInput);
    }
    m.check_symmetric()?;
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n);
    let total: f64 = a.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * total.max(f64::MIN_POSITIVE);

    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j) * a.get(i, j);
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&a);
    for _ in 0..MAX_SWEEPS {
        if off <= target {
            let eig = (0..n).map(|i| a.get(i, i)).collect();
            return Ok((eig, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        off = off_norm(&a);
    }
    if off <= target {
        let eig = (0..n).map(|i| a.get(i, i)).collect();
        return Ok((eig, v));
    }
    Err(SpectralError::NoConvergence {
        sweeps: MAX_SWEEPS,
        off,
    })
}

/// Applies `A <- Jᵀ A J`, `V <- V J` for the rotation in the `(p, q)` plane.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n();
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, c * apk - s * aqk);
        a.set(q, k, s * apk + c * aqk);
    }
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

pub fn eigen_top(m: &DenseMatrix, count: usize) -> Result<SpectralSummary, SpectralError> {
    let (eig, _) = jacobi_eigen(m)?;
    Ok(SpectralSummary::from_eigenvalues(eig, count))
}

/// Number of eigenvalues within `tol` of `mu`.
pub fn mu_multiplicity(summary: &SpectralSummary, mu: f64, tol: f64) -> usize {
    summary
        .eigenvalues()
        .iter()
        .filter(|x| (*x - mu).abs() <= tol)
        .count()
}

/// `max_i Σ_j |a_ij|`, given the absolute row sums.
pub fn row_sum_bound(row_sums: &[f64]) -> Result<f64, SpectralError> {
    row_sums
        .iter()
        .copied()
        .reduce(f64::max)
        .ok_or(SpectralError::EmptyInput)
}

/// The weights `b^(s)`: `b^(0) = 1`, `b^(t+1)_j = min(1, Σ_l |a_jl| b^(t)_l / μ)`.
pub fn row_weights<M: AbsRowMatrix>(m: &M, mu: f64, s: usize) -> Result<Vec<f64>, SpectralError> {
    if mu <= 0.0 || mu.is_nan() {
        return Err(SpectralError::NonpositiveMu(mu));
    }
    let n = m.size();
    let mut b = vec![1.0; n];
    for _ in 0..s {
        b = (0..n)
            .into_par_iter()
            .map(|j| (m.abs_row_dot(j, &b) / mu).min(1.0))
            .collect();
    }
    Ok(b)
}

/// `max_i Σ_j |a_ij| b^(s)_j`. When the result is below `mu`, every
/// eigenvalue of the matrix is below `mu`.
pub fn weighted_row_sum_bound<M: AbsRowMatrix>(
    m: &M,
    mu: f64,
    s: usize,
) -> Result<f64, SpectralError> {
    let b = row_weights(m, mu, s)?;
    let sums: Vec<f64> = (0..m.size())
        .into_par_iter()
        .map(|i| m.abs_row_dot(i, &b))
        .collect();
    row_sum_bound(&sums)
}
