//! The graded space `(g, α_p)`: positive roots split by their `α_p`
//! coefficient, and the Weyl frame they index.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::curvature::{build_m1, CurvatureError};
use crate::rootsys::{Family, RootSystem, RootVector, Sign};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CspaceError {
    #[error("simple root index {p} outside 1..={rank}")]
    IndexOutOfRange { p: usize, rank: usize },
    #[error("{0} has no closed-form formula")]
    NotClassical(Family),
    #[error("p = {p} outside the admissible range for {family}{n}")]
    OutOfRange { family: Family, n: usize, p: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameEntry {
    /// Position in the frame.
    pub index: usize,
    /// Position in the root system's positive-root list.
    pub root_index: usize,
    pub root: RootVector,
    pub grade: u32,
}

#[derive(Debug)]
pub struct GradedSpace {
    system: RootSystem,
    p: usize,
    frame: Vec<FrameEntry>,
    levels: Vec<Vec<usize>>,
    frame_of_root: Vec<Option<usize>>,
    mu: OnceLock<Rational>,
}

/// Grades the positive roots of `system` by their coefficient on `α_p`
/// (1-based). The frame is ordered by grade, then by root order.
pub fn grade_space(system: RootSystem, p: usize) -> Result<GradedSpace, CspaceError> {
    let rank = system.rank();
    if p == 0 || p > rank {
        return Err(CspaceError::IndexOutOfRange { p, rank });
    }
    let n_roots = system.positive_roots().len();
    let grade_of = |i: usize| system.simple_coords(i)[p - 1];
    let k_max = (0..n_roots).map(grade_of).max().unwrap_or(0) as usize;

    let mut frame = Vec::new();
    let mut levels = vec![Vec::new(); k_max];
    let mut frame_of_root = vec![None; n_roots];
    for k in 1..=k_max as u32 {
        for root_index in (0..n_roots).filter(|&i| grade_of(i) == k) {
            let index = frame.len();
            levels[k as usize - 1].push(index);
            frame_of_root[root_index] = Some(index);
            frame.push(FrameEntry {
                index,
                root_index,
                root: system.root(root_index).clone(),
                grade: k,
            });
        }
    }
    Ok(GradedSpace {
        system,
        p,
        frame,
        levels,
        frame_of_root,
        mu: OnceLock::new(),
    })
}

impl GradedSpace {
    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[FrameEntry] {
        &self.frame
    }

    pub fn entry(&self, index: usize) -> &FrameEntry {
        &self.frame[index]
    }

    pub fn k_max(&self) -> usize {
        self.levels.len()
    }

    /// Frame indices of grade `k`, for `1 <= k <= k_max`.
    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k - 1]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// The frame entry whose root is `v`, if `v` is a positive root of
    /// positive grade.
    pub fn frame_index_of(&self, v: &RootVector) -> Option<usize> {
        match self.system.lookup(v)? {
            s if s.sign == Sign::Plus => self.frame_of_root[s.index],
            _ => None,
        }
    }

    pub fn label(&self, index: usize) -> &str {
        self.system.label(self.frame[index].root_index)
    }

    /// The Einstein constant, read off the row sums of `M1`.
    pub fn mu(&self) -> Result<Rational, CurvatureError> {
        if let Some(mu) = self.mu.get() {
            return Ok(*mu);
        }
        let m1 = build_m1(self)?;
        Ok(*self.mu.get_or_init(|| m1.mu()))
    }

    pub(crate) fn cache_mu(&self, mu: Rational) {
        let _ = self.mu.set(mu);
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            algebra: String,
            p: usize,
            dim: usize,
            levels: BTreeMap<usize, Vec<String>>,
            root_indices: BTreeMap<usize, Vec<usize>>,
        }
        let doc = Doc {
            algebra: self.system.algebra().to_string(),
            p: self.p,
            dim: self.dim(),
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, idx)| {
                    (
                        k + 1,
                        idx.iter().map(|&i| self.label(i).to_string()).collect(),
                    )
                })
                .collect(),
            root_indices: self
                .levels
                .iter()
                .enumerate()
                .map(|(k, idx)| {
                    (
                        k + 1,
                        idx.iter().map(|&i| self.frame[i].root_index).collect(),
                    )
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("grading document serializes")
    }
}

/// The `p` range in which `(family_n, α_p)` is a non-Hermitian-symmetric
/// space covered by the classical formulas.
pub fn classical_p_range(family: Family, n: usize) -> Result<std::ops::Range<usize>, CspaceError> {
    match family {
        Family::B | Family::C => Ok(2..n),
        Family::D => Ok(2..n.saturating_sub(1)),
        _ => Err(CspaceError::NotClassical(family)),
    }
}

fn check_classical(family: Family, n: usize, p: usize) -> Result<(), CspaceError> {
    if n < family.min_rank() || !classical_p_range(family, n)?.contains(&p) {
        return Err(CspaceError::OutOfRange { family, n, p });
    }
    Ok(())
}

/// Complex dimension of `(family_n, α_p)` in closed form.
pub fn dimension_formula(family: Family, n: usize, p: usize) -> Result<usize, CspaceError> {
    check_classical(family, n, p)?;
    let twice = match family {
        Family::B | Family::C => p * (4 * n + 1 - 3 * p),
        _ => p * (4 * n - 1 - 3 * p),
    };
    Ok(twice / 2)
}

/// Einstein constant of `(family_n, α_p)` in closed form.
pub fn ricci_formula(family: Family, n: usize, p: usize) -> Result<Rational, CspaceError> {
    check_classical(family, n, p)?;
    let base = (2 * n - p) as i64;
    let mu = match family {
        Family::B => base,
        Family::C => base + 1,
        _ => base - 1,
    };
    Ok(Rational::from_integer(mu))
}
