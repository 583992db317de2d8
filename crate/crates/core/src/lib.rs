//! Curvature analysis of Kähler C-spaces with second Betti number one.
//!
//! A space `(g, α_p)` is fixed by a simple Lie algebra and one of its simple
//! roots. The crate builds the root system in exact coordinates, grades the
//! positive roots by their `α_p` coefficient, evaluates the bisectional
//! curvature matrix `M1` of the resulting Weyl frame exactly, bounds the
//! off-diagonal form `M2` by the nonnegative matrix `Z`, and combines the
//! spectra into a verdict on quadratic orthogonal bisectional curvature.
//!
//! Pipeline:
//!
//! ```text
//! AlgebraId ──build_root_system──▶ RootSystem ──grade_space──▶ GradedSpace
//!     GradedSpace ──build_m1──▶ CurvMatrix ──eigen_top──▶ SpectralSummary
//!     GradedSpace ──build_z───▶ PairBoundMatrix ──row sums──▶ M2 bound
//!     (SpectralSummary, M2 bound) ──classify_numeric──▶ Verdict
//! ```

pub mod chevalley;
pub mod classify;
pub mod cspace;
pub mod curvature;
pub mod fixtures;
pub mod format;
mod linalg;
pub mod rootsys;
pub mod spectral;

/// Exact rational scalar used for inner products and bisectional curvatures.
pub type Rational = num_rational::Ratio<i64>;

pub use chevalley::{n_abs, ntilde_abs, root_string_down, ChevalleyError, NtildeMag};
pub use classify::{
    classify, classify_closed_form, classify_numeric, cross_check, in_theorem_scope, BoundMethod,
    ClassifyError, ClassifyOptions, ClosedFormResult, CrossCheckReport, Status, Verdict,
};
pub use cspace::{
    classical_p_range, dimension_formula, grade_space, ricci_formula, CspaceError, FrameEntry,
    GradedSpace,
};
pub use curvature::{
    bisectional, build_m1, build_z, general_estimate, z_row_sums, CurvMatrix, CurvatureError,
    FramePair, PairBoundMatrix, PairIndex,
};
pub use rootsys::{
    build_root_system, inner, AlgebraId, Family, RootSystem, RootSystemError, RootVector, Sign,
    SignedRoot,
};
pub use spectral::{
    eigen_top, jacobi_eigen, mu_multiplicity, row_sum_bound, row_weights, weighted_row_sum_bound,
    AbsRowMatrix, DenseMatrix, SparseMatrix, SpectralError, SpectralSummary,
};
