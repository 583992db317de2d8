//! Verdicts on quadratic orthogonal bisectional curvature.
//!
//! The numeric path compares the spectrum of `M1` with the Einstein constant
//! and bounds `M2` through row sums of `Z`. The closed-form path encodes the
//! known classification and serves as an oracle.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cspace::{classical_p_range, GradedSpace};
use crate::curvature::{build_m1, build_z, rational_to_f64, CurvatureError};
use crate::rootsys::{AlgebraId, Family};
use crate::spectral::{
    eigen_top, mu_multiplicity, row_sum_bound, weighted_row_sum_bound, SpectralError,
};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("({algebra}, α{p}) is outside the classified range")]
    OutOfTheoremScope { algebra: AlgebraId, p: usize },
    #[error("({algebra}, α{p}): closed form says {closed}, numeric pipeline says {numeric}")]
    Discrepancy {
        algebra: AlgebraId,
        p: usize,
        closed: ClosedFormResult,
        numeric: Status,
    },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    QbPositive,
    QbFails,
    QbNonnegBoundary,
    Inconclusive,
    OutOfTheoremScope,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::QbPositive => "QB_POSITIVE",
            Status::QbFails => "QB_FAILS",
            Status::QbNonnegBoundary => "QB_NONNEG_BOUNDARY",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::OutOfTheoremScope => "OUT_OF_THEOREM_SCOPE",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Status::QbPositive => "QB>0",
            Status::QbFails => "does not satisfy QB≥0",
            Status::QbNonnegBoundary => "QB≥0 but not QB>0",
            Status::Inconclusive => "inconclusive",
            Status::OutOfTheoremScope => "out of scope",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClosedFormResult {
    pub qb_nonneg: bool,
    pub qb_positive: bool,
}

impl ClosedFormResult {
    pub fn is_boundary(&self) -> bool {
        self.qb_nonneg && !self.qb_positive
    }
}

impl fmt::Display for ClosedFormResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.qb_nonneg, self.qb_positive) {
            (_, true) => f.write_str("QB>0"),
            (true, false) => f.write_str("QB≥0 but not QB>0"),
            (false, _) => f.write_str("not QB≥0"),
        }
    }
}

/// How the bound on `M2` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundMethod {
    RowSum,
    Weighted { s: usize },
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMethod::RowSum => f.write_str("row-sum"),
            BoundMethod::Weighted { s } => write!(f, "weighted-row-sum s={s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    /// Eigenvalues within `tol` of μ count as equal to μ.
    pub tol: f64,
    /// Values of `s` tried in order; `0` is the plain row-sum bound.
    pub s_schedule: Vec<usize>,
    pub top_count: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            tol: 1e-6,
            s_schedule: vec![0, 1, 4, 10],
            top_count: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub algebra: AlgebraId,
    pub p: usize,
    pub dim: usize,
    pub status: Status,
    pub mu: Rational,
    pub m1_top: Vec<f64>,
    pub mu_multiplicity: usize,
    pub m2_bound: Option<f64>,
    pub m2_method: Option<BoundMethod>,
    pub method_notes: Vec<String>,
}

impl Verdict {
    /// Short description of what settled the verdict.
    pub fn method(&self) -> String {
        match self.status {
            Status::QbFails => "m1-eigenvalue".to_string(),
            Status::QbNonnegBoundary => "closed-form".to_string(),
            _ => self
                .m2_method
                .map_or_else(|| "none".to_string(), |m| m.to_string()),
        }
    }
}

/// Whether `(algebra, α_p)` lies in the classified, non-Hermitian-symmetric
/// range.
pub fn in_theorem_scope(algebra: AlgebraId, p: usize) -> bool {
    let family = algebra.family();
    match family {
        Family::B | Family::C | Family::D => classical_p_range(family, algebra.rank())
            .map(|r| r.contains(&p))
            .unwrap_or(false),
        Family::G2 => p == 2,
        Family::F4 => (1..=4).contains(&p),
        Family::E6 => (2..=5).contains(&p),
        Family::E7 => (1..=6).contains(&p),
        Family::E8 => (1..=8).contains(&p),
    }
}

fn scope_check(algebra: AlgebraId, p: usize) -> Result<(), ClassifyError> {
    if in_theorem_scope(algebra, p) {
        Ok(())
    } else {
        Err(ClassifyError::OutOfTheoremScope { algebra, p })
    }
}

/// The classification in closed form.
pub fn classify_closed_form(
    algebra: AlgebraId,
    p: usize,
) -> Result<ClosedFormResult, ClassifyError> {
    scope_check(algebra, p)?;
    let n = algebra.rank() as i64;
    let q = p as i64;
    let classical = |lhs: i64, rhs: i64| ClosedFormResult {
        qb_nonneg: lhs <= rhs,
        qb_positive: lhs < rhs,
    };
    let exceptional = |set: &[usize]| {
        let yes = set.contains(&p);
        ClosedFormResult {
            qb_nonneg: yes,
            qb_positive: yes,
        }
    };
    Ok(match algebra.family() {
        Family::B => classical(5 * q + 1, 4 * n),
        Family::C => classical(5 * q, 4 * n + 3),
        Family::D => classical(5 * q + 3, 4 * n),
        Family::G2 => exceptional(&[2]),
        Family::F4 => exceptional(&[1, 2, 4]),
        Family::E6 => exceptional(&[2, 3, 5]),
        Family::E7 => exceptional(&[1, 2, 5]),
        Family::E8 => exceptional(&[1, 2, 8]),
    })
}

/// Runs the spectral pipeline on `space`.
pub fn classify_numeric(
    space: &GradedSpace,
    opts: &ClassifyOptions,
) -> Result<Verdict, ClassifyError> {
    let algebra = space.system().algebra();
    let p = space.p();
    scope_check(algebra, p)?;

    let m1 = build_m1(space)?;
    let mu = m1.mu();
    let mu_f = rational_to_f64(mu);
    let summary = eigen_top(&m1.to_dense(), opts.top_count)?;
    let multiplicity = mu_multiplicity(&summary, mu_f, opts.tol);
    let mut verdict = Verdict {
        algebra,
        p,
        dim: space.dim(),
        status: Status::Inconclusive,
        mu,
        m1_top: summary.top_eigenvalues().to_vec(),
        mu_multiplicity: multiplicity,
        m2_bound: None,
        m2_method: None,
        method_notes: Vec::new(),
    };

    let largest = summary.largest();
    if largest > mu_f + opts.tol {
        verdict.status = Status::QbFails;
        verdict
            .method_notes
            .push(format!("M1 has eigenvalue {largest:.4} above μ = {mu}"));
        return Ok(verdict);
    }
    if multiplicity != 1 {
        verdict
            .method_notes
            .push(format!("μ = {mu} has multiplicity {multiplicity} in M1"));
    }

    let z = build_z(space)?;
    let target = mu_f - opts.tol;
    for &s in &opts.s_schedule {
        let (bound, method) = if s == 0 {
            (
                row_sum_bound(&z.row_sums()).unwrap_or(0.0),
                BoundMethod::RowSum,
            )
        } else {
            let b = match weighted_row_sum_bound(z.matrix(), mu_f, s) {
                Err(SpectralError::EmptyInput) => 0.0,
                other => other?,
            };
            (b, BoundMethod::Weighted { s })
        };
        if verdict.m2_bound.is_none_or(|best| bound < best) {
            verdict.m2_bound = Some(bound);
            verdict.m2_method = Some(method);
        }
        if bound < target {
            break;
        }
    }

    let certified = verdict.m2_bound.is_some_and(|b| b < target);
    match (multiplicity == 1, certified) {
        (true, true) => {
            verdict.status = Status::QbPositive;
            verdict.method_notes.push(format!(
                "M2 eigenvalues are at most {} ({} bound)",
                fmt_bound(verdict.m2_bound),
                verdict.m2_method.map(|m| m.to_string()).unwrap_or_default()
            ));
        }
        (_, false) => verdict.method_notes.push(format!(
            "best M2 bound {} does not separate from μ = {mu}",
            fmt_bound(verdict.m2_bound)
        )),
        (false, true) => {}
    }
    Ok(verdict)
}

fn fmt_bound(b: Option<f64>) -> String {
    b.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

/// The numeric verdict, upgraded to `QbNonnegBoundary` where the closed form
/// places the space on the boundary and the numeric test cannot decide.
pub fn classify(space: &GradedSpace, opts: &ClassifyOptions) -> Result<Verdict, ClassifyError> {
    let mut verdict = classify_numeric(space, opts)?;
    let closed = classify_closed_form(verdict.algebra, verdict.p)?;
    if verdict.status == Status::Inconclusive && closed.is_boundary() {
        verdict.status = Status::QbNonnegBoundary;
        verdict
            .method_notes
            .push("boundary case settled by the closed-form classification".to_string());
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub closed: ClosedFormResult,
    pub numeric: Verdict,
}

/// Compares the numeric verdict with the closed form.
///
/// Closed-form `QB>0` must be certified numerically, closed-form failure
/// must show up as an `M1` eigenvalue above μ, and boundary cases must not
/// be reported as failures.
pub fn cross_check(
    space: &GradedSpace,
    opts: &ClassifyOptions,
) -> Result<CrossCheckReport, ClassifyError> {
    let numeric = classify_numeric(space, opts)?;
    let closed = classify_closed_form(numeric.algebra, numeric.p)?;
    let consistent = if closed.qb_positive {
        numeric.status == Status::QbPositive
    } else if closed.qb_nonneg {
        !matches!(numeric.status, Status::QbFails | Status::QbPositive)
    } else {
        numeric.status == Status::QbFails
    };
    if !consistent {
        return Err(ClassifyError::Discrepancy {
            algebra: numeric.algebra,
            p: numeric.p,
            closed,
            numeric: numeric.status,
        });
    }
    Ok(CrossCheckReport { closed, numeric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cspace::grade_space;
    use crate::rootsys::build_root_system;

    fn alg(name: &str) -> AlgebraId {
        name.parse().unwrap()
    }

    fn space(name: &str, p: usize) -> GradedSpace {
        grade_space(build_root_system(alg(name)).unwrap(), p).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let cf = |name: &str, p| classify_closed_form(alg(name), p).unwrap();
        assert_eq!(
            cf("B3", 2),
            ClosedFormResult {
                qb_nonneg: true,
                qb_positive: true
            }
        );
        assert!(cf("B4", 3).is_boundary());
        assert_eq!(
            cf("E7", 3),
            ClosedFormResult {
                qb_nonneg: false,
                qb_positive: false
            }
        );
        assert!(cf("D4", 2).qb_positive);
        assert!(cf("C3", 2).qb_positive);
    }

    #[test]
    fn scope() {
        assert!(!in_theorem_scope(alg("G2"), 1));
        assert!(!in_theorem_scope(alg("E6"), 1));
        assert!(!in_theorem_scope(alg("E6"), 6));
        assert!(!in_theorem_scope(alg("E7"), 7));
        assert!(!in_theorem_scope(alg("B3"), 1));
        assert!(!in_theorem_scope(alg("B3"), 3));
        assert!(!in_theorem_scope(alg("D5"), 4));
        assert!(in_theorem_scope(alg("D5"), 3));
        assert!(matches!(
            classify_numeric(&space("B3", 1), &ClassifyOptions::default()),
            Err(ClassifyError::OutOfTheoremScope { p: 1, .. })
        ));
    }

    #[test]
    fn g2_is_positive() {
        let v = classify_numeric(&space("G2", 2), &ClassifyOptions::default()).unwrap();
        assert_eq!(v.status, Status::QbPositive);
        assert_eq!(v.m2_method, Some(BoundMethod::Weighted { s: 1 }));
        assert!((v.m2_bound.unwrap() - 8.6309).abs() < 1e-3);
    }

    #[test]
    fn f4_alpha3_fails() {
        let v = classify_numeric(&space("F4", 3), &ClassifyOptions::default()).unwrap();
        assert_eq!(v.status, Status::QbFails);
        assert!(v.m2_bound.is_none());
    }
}
