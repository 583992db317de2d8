//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use kcspace::fixtures::{
    exceptional_tables, printed_bound, reproduce, space_for, weighted_bounds, ReproduceTarget,
    TABLE_TOL,
};
use kcspace::{
    build_m1, build_root_system, classical_p_range, classify, classify_closed_form,
    classify_numeric, cross_check, dimension_formula, general_estimate, ricci_formula,
    row_sum_bound, row_weights, weighted_row_sum_bound, AlgebraId, ClassifyOptions, DenseMatrix,
    Family, GradedSpace, Rational, SparseMatrix, Status,
};
use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

const CLASSICAL: [Family; 3] = [Family::B, Family::C, Family::D];
const MAX_CLASSICAL_RANK: usize = 12;

fn classical_algebras() -> impl Iterator<Item = AlgebraId> {
    CLASSICAL.into_iter().flat_map(|f| {
        (f.min_rank()..=MAX_CLASSICAL_RANK).map(move |n| AlgebraId::new(f, n).unwrap())
    })
}

fn exceptional_algebras() -> impl Iterator<Item = AlgebraId> {
    Family::EXCEPTIONAL
        .into_iter()
        .map(|f| AlgebraId::exceptional(f).unwrap())
}

/// Every `(algebra, p)` built by the library, whether or not it is
/// Hermitian symmetric.
fn all_spaces() -> impl Iterator<Item = GradedSpace> {
    exceptional_algebras()
        .chain(classical_algebras())
        .flat_map(|a| (1..=a.rank()).map(move |p| space_for(a, p).unwrap()))
}

fn finish(ok: String, bad: Vec<String>) -> Outcome {
    if bad.is_empty() {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn root_counts() -> Outcome {
    let want = [
        ("B3", 9),
        ("C3", 9),
        ("D4", 12),
        ("G2", 6),
        ("F4", 24),
        ("E6", 36),
        ("E7", 63),
        ("E8", 120),
    ];
    let bad = want
        .iter()
        .filter_map(|&(name, count)| {
            let got = build_root_system(name.parse().unwrap())
                .unwrap()
                .positive_roots()
                .len();
            (got != count).then(|| format!("{name}: {got} positive roots, expected {count}"))
        })
        .collect();
    finish("8 root systems".into(), bad)
}

fn golden(target: ReproduceTarget) -> Outcome {
    let report = reproduce(target).unwrap();
    finish(
        format!("{} lines regenerated", report.lines.len()),
        report.mismatches,
    )
}

fn einstein() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for space in all_spaces().filter(|s| s.dim() <= 106) {
        let algebra = space.system().algebra();
        let p = space.p();
        let m1 = match build_m1(&space) {
            Ok(m) => m,
            Err(e) => {
                bad.push(format!("({algebra}, α{p}): {e}"));
                continue;
            }
        };
        checked += 1;
        let family = algebra.family();
        let n = algebra.rank();
        if family.is_classical() && classical_p_range(family, n).unwrap().contains(&p) {
            if ricci_formula(family, n, p).unwrap() != m1.mu() {
                bad.push(format!(
                    "({algebra}, α{p}): μ = {} disagrees with the closed form",
                    m1.mu()
                ));
            }
            if dimension_formula(family, n, p).unwrap() != space.dim() {
                bad.push(format!(
                    "({algebra}, α{p}): dim {} disagrees with the closed form",
                    space.dim()
                ));
            }
        }
    }
    finish(format!("{checked} spaces with constant M1 row sums"), bad)
}

fn tables() -> Outcome {
    let mut bad = Vec::new();
    for family in Family::EXCEPTIONAL {
        bad.extend(
            reproduce(ReproduceTarget::Tables(family))
                .unwrap()
                .mismatches,
        );
    }
    finish(
        format!("{} table rows", exceptional_tables().unwrap().len()),
        bad,
    )
}

fn z_bounds() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for row in exceptional_tables().unwrap() {
        let (Some(0), Some(want)) = (row.s, row.bound) else {
            continue;
        };
        let space = space_for(row.algebra_id().unwrap(), row.p).unwrap();
        let got = printed_bound(&space, 0, &row.mu().unwrap()).unwrap();
        checked += 1;
        if (got - want).abs() > TABLE_TOL {
            bad.push(format!(
                "({}, α{}) row sum {got:.4}, expected {want}",
                row.algebra, row.p
            ));
        }
    }
    for row in weighted_bounds().unwrap() {
        let space = space_for(row.algebra.parse().unwrap(), row.p).unwrap();
        let mu = space.mu().unwrap();
        let got = printed_bound(&space, row.s, &mu).unwrap();
        checked += 1;
        if (got - row.bound).abs() > TABLE_TOL {
            bad.push(format!(
                "({}, α{}) s={} bound {got:.4}, expected {}",
                row.algebra, row.p, row.s, row.bound
            ));
        }
    }
    finish(format!("{checked} bounds"), bad)
}

fn classification() -> Outcome {
    let opts = ClassifyOptions::default();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (family, p) in common::exceptional_cases() {
        let space = space_for(AlgebraId::exceptional(family).unwrap(), p).unwrap();
        checked += 1;
        if let Err(e) = cross_check(&space, &opts) {
            bad.push(e.to_string());
        }
    }
    let mut boundaries = 0;
    for algebra in classical_algebras() {
        for p in classical_p_range(algebra.family(), algebra.rank()).unwrap() {
            let space = space_for(algebra, p).unwrap();
            checked += 1;
            let closed = classify_closed_form(algebra, p).unwrap();
            if closed.is_boundary() {
                boundaries += 1;
                let numeric = classify_numeric(&space, &opts).unwrap();
                let combined = classify(&space, &opts).unwrap();
                if numeric.status == Status::QbFails || combined.status != Status::QbNonnegBoundary
                {
                    bad.push(format!(
                        "({algebra}, α{p}) boundary: numeric {}, combined {}",
                        numeric.status, combined.status
                    ));
                }
            } else if let Err(e) = cross_check(&space, &opts) {
                bad.push(e.to_string());
            }
        }
    }
    finish(
        format!("{checked} spaces, {boundaries} boundary cases"),
        bad,
    )
}

fn spectral_radius(m: &DenseMatrix) -> f64 {
    let n = m.n();
    DMatrix::from_row_slice(n, n, m.data())
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn random_symmetric(rng: &mut StdRng, lo: f64, hi: f64) -> DenseMatrix {
    let n = rng.gen_range(1..=16);
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(lo..hi);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_24);
    let mut bad = Vec::new();

    for k in 0..200 {
        let m = random_symmetric(&mut rng, -5.0, 5.0);
        let bound = row_sum_bound(&SparseMatrix::from_dense(&m).abs_row_sums()).unwrap();
        if bound < spectral_radius(&m) - 1e-8 {
            bad.push(format!(
                "(a) matrix {k}: row-sum bound {bound} below the spectral radius"
            ));
        }
    }

    for k in 0..200 {
        let m = random_symmetric(&mut rng, 0.0, 2.0);
        let mu = rng.gen_range(0.5..8.0);
        let plain = row_sum_bound(&SparseMatrix::from_dense(&m).abs_row_sums()).unwrap();
        if weighted_row_sum_bound(&m, mu, 0).unwrap() != plain {
            bad.push(format!(
                "(b) matrix {k}: s = 0 differs from the plain bound"
            ));
        }
        let mut prev = row_weights(&m, mu, 0).unwrap();
        for s in 1..=10 {
            let next = row_weights(&m, mu, s).unwrap();
            if next.iter().zip(&prev).any(|(x, y)| *x > *y + 1e-12) {
                bad.push(format!("(b) matrix {k}: weights increase at s = {s}"));
            }
            prev = next;
        }
    }

    for k in 0..200 {
        let big = random_symmetric(&mut rng, 0.0, 4.0);
        let n = big.n();
        let mut small = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = big.get(i, j) * rng.gen_range(-1.0..1.0);
                small.set(i, j, v);
                small.set(j, i, v);
            }
        }
        if spectral_radius(&small) > spectral_radius(&big) + 1e-8 {
            bad.push(format!(
                "(c) pair {k}: dominated matrix has the larger spectral radius"
            ));
        }
    }

    let mut spaces = 0;
    for space in all_spaces() {
        let dim = space.dim();
        let f = space.frame();
        let algebra = space.system().algebra();
        let p = space.p();
        if common::exceptional_cases().contains(&(algebra.family(), p)) || algebra.rank() <= 6 {
            spaces += 1;
            for _ in 0..10_000 {
                if dim < 2 {
                    break;
                }
                let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(0..dim));
                if a == b || c == d || &f[a].root - &f[b].root == &f[d].root - &f[c].root {
                    continue;
                }
                let v = general_estimate(&space, a, b, c, d).unwrap();
                if v != 0.0 {
                    bad.push(format!(
                        "(d) ({algebra}, α{p}) {a},{b},{c},{d}: estimate {v} off the root relation"
                    ));
                }
            }
        }
        let m1 = build_m1(&space).unwrap();
        for e in f {
            let want = e.root.norm2() / Rational::from_integer(i64::from(e.grade));
            if m1.get(e.index, e.index) != want {
                bad.push(format!(
                    "(e) ({algebra}, α{p}) {}: diagonal entry",
                    space.label(e.index)
                ));
            }
        }
    }
    finish(
        format!("600 random matrices, estimate sampled on {spaces} spaces"),
        bad,
    )
}

fn simple_coords() -> Outcome {
    let mut bad = Vec::new();
    let mut roots = 0;
    for algebra in classical_algebras() {
        let system = build_root_system(algebra).unwrap();
        roots += system.positive_roots().len();
        for (label, got, want) in common::simple_coord_mismatches(&system) {
            bad.push(format!(
                "{algebra} {label}: solved {got:?}, closed form {want:?}"
            ));
        }
    }
    finish(format!("{roots} classical roots"), bad)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("root counts", root_counts),
        ("G2 golden M1", || golden(ReproduceTarget::G2M1)),
        ("G2 golden Z", || golden(ReproduceTarget::G2Z)),
        ("Einstein row sums", einstein),
        ("exceptional tables", tables),
        ("Z bounds", z_bounds),
        ("final classification", classification),
        ("property suites", properties),
        ("simple coordinates", simple_coords),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS {}. {name}: {summary} ({secs:.1}s)", k + 1),
            Err(problems) => {
                failed += 1;
                println!(
                    "FAIL {}. {name}: {} problem(s) ({secs:.1}s)",
                    k + 1,
                    problems.len()
                );
                for p in &problems {
                    println!("    {p}");
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
