//! Helpers shared by the integration tests.

#![allow(dead_code)]

use kcspace::{Family, RootSystem};

/// A classical root read back from its coordinates: `ε_i ± ε_j` with `i < j`,
/// `ε_i` or `2ε_i`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsRoot {
    Plus(usize, usize),
    Minus(usize, usize),
    Short(usize),
    Long(usize),
}

pub fn eps_form(coords2: &[i32]) -> EpsRoot {
    let nz: Vec<(usize, i32)> = coords2
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i + 1, c))
        .collect();
    match nz.as_slice() {
        [(i, 2)] => EpsRoot::Short(*i),
        [(i, 4)] => EpsRoot::Long(*i),
        [(i, 2), (j, 2)] => EpsRoot::Plus(*i, *j),
        [(i, 2), (j, -2)] => EpsRoot::Minus(*i, *j),
        _ => panic!("not a positive classical root: {coords2:?}"),
    }
}

/// Coefficients on the simple roots written out by hand for each classical
/// family, independent of any linear solve.
pub fn closed_form_simple_coords(family: Family, n: usize, root: EpsRoot) -> Vec<u32> {
    let mut c = vec![0u32; n];
    let mut add = |from: usize, to: usize, k: u32| {
        for x in &mut c[from - 1..to] {
            *x += k;
        }
    };
    match (family, root) {
        (_, EpsRoot::Minus(i, j)) => add(i, j - 1, 1),
        (Family::B, EpsRoot::Short(i)) => add(i, n, 1),
        (Family::B, EpsRoot::Plus(i, j)) => {
            add(i, j - 1, 1);
            add(j, n, 2);
        }
        (Family::C, EpsRoot::Long(i)) => {
            if i < n {
                add(i, n - 1, 2);
            }
            add(n, n, 1);
        }
        (Family::C, EpsRoot::Plus(i, j)) => {
            add(i, j - 1, 1);
            if j < n {
                add(j, n - 1, 2);
            }
            add(n, n, 1);
        }
        (Family::D, EpsRoot::Plus(i, j)) if j <= n - 2 => {
            add(i, j - 1, 1);
            add(j, n - 2, 2);
            add(n - 1, n, 1);
        }
        (Family::D, EpsRoot::Plus(i, j)) if i == n - 1 && j == n => add(n, n, 1),
        (Family::D, EpsRoot::Plus(i, j)) if j == n - 1 => add(i, n, 1),
        (Family::D, EpsRoot::Plus(i, _)) => {
            add(i, n - 2, 1);
            add(n, n, 1);
        }
        (f, r) => panic!("{r:?} is not a root of {f}"),
    }
    c
}

/// Roots whose solved simple coordinates disagree with the hand-written
/// formulas, as `(label, solved, expected)`.
pub fn simple_coord_mismatches(system: &RootSystem) -> Vec<(String, Vec<u32>, Vec<u32>)> {
    let algebra = system.algebra();
    let (family, n) = (algebra.family(), algebra.rank());
    (0..system.positive_roots().len())
        .filter_map(|i| {
            let form = eps_form(system.root(i).coords2());
            let want = closed_form_simple_coords(family, n, form);
            let got = system.simple_coords(i).to_vec();
            (got != want).then(|| (system.label(i).to_string(), got, want))
        })
        .collect()
}

/// Exceptional `(family, p)` cases that are not Hermitian symmetric.
pub fn exceptional_cases() -> Vec<(Family, usize)> {
    let mut out = vec![(Family::G2, 2)];
    out.extend((1..=4).map(|p| (Family::F4, p)));
    out.extend((2..=5).map(|p| (Family::E6, p)));
    out.extend((1..=6).map(|p| (Family::E7, p)));
    out.extend((1..=8).map(|p| (Family::E8, p)));
    out
}
