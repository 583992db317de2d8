mod common;

use kcspace::fixtures::space_for;
use kcspace::{
    bisectional, build_m1, build_z, eigen_top, general_estimate, jacobi_eigen, row_sum_bound,
    row_weights, weighted_row_sum_bound, AbsRowMatrix, AlgebraId, DenseMatrix, Family, GradedSpace,
    Rational, SparseMatrix,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn symmetric(n: usize, cells: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n);
    let mut it = cells.iter().copied();
    for i in 0..n {
        for j in i..n {
            let v = it.next().unwrap_or(0.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn upper(n: usize) -> usize {
    n * (n + 1) / 2
}

fn sym_strategy(lo: f64, hi: f64) -> impl Strategy<Value = DenseMatrix> {
    (1usize..=12).prop_flat_map(move |n| {
        prop::collection::vec(lo..hi, upper(n)).prop_map(move |c| symmetric(n, &c))
    })
}

fn spectral_radius(m: &DenseMatrix) -> f64 {
    let n = m.n();
    DMatrix::from_row_slice(n, n, m.data())
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn row_sum_bound_dominates_spectrum(m in sym_strategy(-5.0, 5.0)) {
        let bound = row_sum_bound(&SparseMatrix::from_dense(&m).abs_row_sums()).unwrap();
        prop_assert!(bound >= spectral_radius(&m) - 1e-8);
    }

    #[test]
    fn jacobi_agrees_with_nalgebra(m in sym_strategy(-3.0, 3.0)) {
        let (mut ours, _) = jacobi_eigen(&m).unwrap();
        let n = m.n();
        let mut theirs: Vec<f64> = DMatrix::from_row_slice(n, n, m.data()).symmetric_eigen().eigenvalues.iter().copied().collect();
        ours.sort_by(f64::total_cmp);
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn jacobi_preserves_trace_and_reconstructs(m in sym_strategy(-3.0, 3.0)) {
        let (eigs, v) = jacobi_eigen(&m).unwrap();
        let n = m.n();
        prop_assert!((eigs.iter().sum::<f64>() - m.trace()).abs() < 1e-9);
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| v.get(i, k) * eigs[k] * v.get(j, k)).sum();
                prop_assert!((r - m.get(i, j)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn weights_are_monotone_in_s(m in sym_strategy(0.0, 2.0), mu in 0.5f64..8.0) {
        let plain = row_sum_bound(&SparseMatrix::from_dense(&m).abs_row_sums()).unwrap();
        prop_assert_eq!(weighted_row_sum_bound(&m, mu, 0).unwrap(), plain);
        let mut prev = row_weights(&m, mu, 0).unwrap();
        let mut prev_bound = plain;
        for s in 1..6 {
            let b = row_weights(&m, mu, s).unwrap();
            prop_assert!(b.iter().zip(&prev).all(|(x, y)| *x <= *y + 1e-12 && *x >= 0.0));
            let bound = weighted_row_sum_bound(&m, mu, s).unwrap();
            prop_assert!(bound <= prev_bound + 1e-12);
            // below μ the weighted bound still caps the spectrum
            if bound < mu {
                prop_assert!(spectral_radius(&m) < mu + 1e-8);
            }
            prev = b;
            prev_bound = bound;
        }
    }

    #[test]
    fn entrywise_domination_orders_spectral_radii(
        (n, cells, signs) in (1usize..=12).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(0.0f64..4.0, upper(n)),
            prop::collection::vec(-1.0f64..1.0, upper(n)),
        ))
    ) {
        let big = symmetric(n, &cells);
        let scaled: Vec<f64> = cells.iter().zip(&signs).map(|(c, s)| c * s).collect();
        let small = symmetric(n, &scaled);
        prop_assert!(spectral_radius(&small) <= spectral_radius(&big) + 1e-8);
    }
}

fn sample_spaces() -> Vec<GradedSpace> {
    let mut out: Vec<GradedSpace> = common::exceptional_cases()
        .into_iter()
        .filter(|(f, _)| *f != Family::E8)
        .map(|(f, p)| space_for(AlgebraId::exceptional(f).unwrap(), p).unwrap())
        .collect();
    for (name, p) in [("E8", 1), ("E8", 8), ("B5", 3), ("C5", 2), ("D6", 3)] {
        out.push(space_for(name.parse().unwrap(), p).unwrap());
    }
    out
}

#[test]
fn estimate_vanishes_off_the_root_relation() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for space in sample_spaces() {
        let dim = space.dim();
        if dim < 2 {
            continue;
        }
        let f = space.frame();
        for _ in 0..10_000 {
            let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(0..dim));
            if a == b || c == d {
                continue;
            }
            let v = general_estimate(&space, a, b, c, d).unwrap();
            if &f[a].root - &f[b].root != &f[d].root - &f[c].root {
                assert_eq!(v, 0.0, "{}", space.system().algebra());
            } else {
                assert!(v >= 0.0);
            }
        }
    }
}

#[test]
fn m1_diagonal_law() {
    for space in sample_spaces() {
        let m1 = build_m1(&space).unwrap();
        for e in space.frame() {
            let want = e.root.norm2() / Rational::from_integer(e.grade as i64);
            assert_eq!(m1.get(e.index, e.index), want);
            assert_eq!(bisectional(&space, e, e), want);
        }
    }
}

#[test]
fn m1_is_symmetric_with_all_ones_eigenvector() {
    for space in sample_spaces() {
        let m1 = build_m1(&space).unwrap();
        let mu = m1.mu();
        for a in 0..m1.dim() {
            assert_eq!(m1.row(a).iter().sum::<Rational>(), mu);
            for b in 0..a {
                assert_eq!(m1.get(a, b), m1.get(b, a));
            }
        }
        let top = eigen_top(&m1.to_dense(), 1).unwrap();
        let mu_f = *mu.numer() as f64 / *mu.denom() as f64;
        assert!(top.largest() >= mu_f - 1e-9);
    }
}

#[test]
fn z_is_symmetric_and_matches_the_estimate() {
    for name in ["G2", "F4"] {
        let algebra: AlgebraId = name.parse().unwrap();
        for p in 1..=algebra.rank() {
            let space = space_for(algebra, p).unwrap();
            let z = build_z(&space).unwrap();
            let pairs = z.pairs();
            for (ab, cd, v) in z.triples() {
                assert!(v > 0.0);
                assert_eq!(z.get(cd, ab), v, "({name}, α{p}) {ab:?} {cd:?}");
                if ab.1 != cd.0 {
                    let est = general_estimate(&space, ab.0, ab.1, cd.0, cd.1).unwrap();
                    assert!((est - v).abs() < 1e-12);
                }
            }
            assert_eq!(z.matrix().size(), pairs.len());
        }
    }
}
