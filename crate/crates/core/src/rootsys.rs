//! Root systems of B_n, C_n, D_n and the exceptional algebras, stored in
//! doubled integer coordinates so that half-integer roots stay exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::solve_exact;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported algebra {0}")]
    UnsupportedAlgebra(String),
    #[error("vector {0:?} is not a positive root")]
    NotAPositiveRoot(Vec<i32>),
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot parse algebra name {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::B | Family::C | Family::D)
    }

    /// Smallest rank accepted for the family.
    pub fn min_rank(self) -> usize {
        match self {
            Family::B | Family::C => 3,
            Family::D => 4,
            Family::G2 => 2,
            Family::F4 => 4,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
        }
    }

    fn fixed_rank(self) -> Option<usize> {
        (!self.is_classical()).then(|| self.min_rank())
    }

    pub const EXCEPTIONAL: [Family; 5] =
        [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" => Ok(Family::G2),
            "F4" => Ok(Family::F4),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            "E8" => Ok(Family::E8),
            _ => Err(RootSystemError::Parse(s.to_string())),
        }
    }
}

/// A simple Lie algebra: a family together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    family: Family,
    rank: usize,
}

impl AlgebraId {
    /// For exceptional families `n` is ignored.
    pub fn new(family: Family, n: usize) -> Result<Self, RootSystemError> {
        let rank = family.fixed_rank().unwrap_or(n);
        if rank < family.min_rank() {
            return Err(RootSystemError::UnsupportedAlgebra(format!("{family}{n}")));
        }
        Ok(AlgebraId { family, rank })
    }

    pub fn exceptional(family: Family) -> Result<Self, RootSystemError> {
        if family.is_classical() {
            return Err(RootSystemError::UnsupportedAlgebra(family.to_string()));
        }
        Self::new(family, 0)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::B | Family::C | Family::D => self.rank,
            Family::G2 => 3,
            Family::F4 => 4,
            Family::E6 | Family::E7 | Family::E8 => 8,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_classical() {
            write!(f, "{}{}", self.family, self.rank)
        } else {
            write!(f, "{}", self.family)
        }
    }
}

impl FromStr for AlgebraId {
    type Err = RootSystemError;

    /// Accepts "G2", "E8", "B3", "d12" and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(family) = t.parse::<Family>() {
            if !family.is_classical() {
                return AlgebraId::exceptional(family);
            }
        }
        let (head, tail) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
        let family: Family = head.parse()?;
        if !family.is_classical() {
            return Err(RootSystemError::Parse(s.to_string()));
        }
        let n = tail
            .parse::<usize>()
            .map_err(|_| RootSystemError::Parse(s.to_string()))?;
        AlgebraId::new(family, n)
    }
}

/// A root in ambient coordinates, stored as twice its Euclidean coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(Vec<i32>);

impl RootVector {
    pub fn from_coords2(coords2: Vec<i32>) -> Self {
        RootVector(coords2)
    }

    pub fn coords2(&self) -> &[i32] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Squared length, exact.
    pub fn norm2(&self) -> Rational {
        let dot: i64 = self.0.iter().map(|&c| i64::from(c) * i64::from(c)).sum();
        Rational::new(dot, 4)
    }

    pub fn scaled(&self, k: i32) -> RootVector {
        RootVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Euclidean coordinates as floats, for display.
    pub fn coords(&self) -> Vec<f64> {
        self.0.iter().map(|&c| f64::from(c) / 2.0).collect()
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Exact inner product `(a, b)`.
pub fn inner(a: &RootVector, b: &RootVector) -> Result<Rational, RootSystemError> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(RootSystemError::DimensionMismatch(
            a.ambient_dim(),
            b.ambient_dim(),
        ));
    }
    Ok(inner_unchecked(a, b))
}

pub(crate) fn inner_unchecked(a: &RootVector, b: &RootVector) -> Rational {
    let dot: i64 =
        a.0.iter()
            .zip(&b.0)
            .map(|(&x, &y)| i64::from(x) * i64::from(y))
            .sum();
    Rational::new(dot, 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// `sign * positive_roots[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    algebra: AlgebraId,
    positive: Vec<RootVector>,
    labels: Vec<String>,
    simple_index: Vec<usize>,
    simple_coords: Vec<Vec<u32>>,
    lookup: HashMap<RootVector, SignedRoot>,
}

impl RootSystem {
    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.simple_index.len()
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive
    }

    pub fn root(&self, index: usize) -> &RootVector {
        &self.positive[index]
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &RootVector> + '_ {
        self.simple_index.iter().map(|&i| &self.positive[i])
    }

    /// Positions of α_1..α_l inside the positive-root list.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_index
    }

    /// Coefficients of the positive root `index` in the simple-root basis.
    pub fn simple_coords(&self, index: usize) -> &[u32] {
        &self.simple_coords[index]
    }

    pub fn simple_coords_of(&self, root: &RootVector) -> Result<&[u32], RootSystemError> {
        match self.lookup(root) {
            Some(SignedRoot {
                index,
                sign: Sign::Plus,
            }) => Ok(&self.simple_coords[index]),
            _ => Err(RootSystemError::NotAPositiveRoot(root.coords2().to_vec())),
        }
    }

    /// Finds `±r` among the positive roots.
    pub fn lookup(&self, v: &RootVector) -> Option<SignedRoot> {
        self.lookup.get(v).copied()
    }

    pub fn is_root(&self, v: &RootVector) -> bool {
        self.lookup.contains_key(v)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc<'a> {
            algebra: String,
            rank: usize,
            ambient_dim: usize,
            labels: &'a [String],
            positive_roots: Vec<&'a [i32]>,
            simple_roots: Vec<&'a [i32]>,
            simple_coords: &'a [Vec<u32>],
        }
        let doc = Doc {
            algebra: self.algebra.to_string(),
            rank: self.rank(),
            ambient_dim: self.algebra.ambient_dim(),
            labels: &self.labels,
            positive_roots: self.positive.iter().map(RootVector::coords2).collect(),
            simple_roots: self.simple_roots().map(RootVector::coords2).collect(),
            simple_coords: &self.simple_coords,
        };
        serde_json::to_value(doc).expect("root system document serializes")
    }
}

pub fn build_root_system(algebra: AlgebraId) -> Result<RootSystem, RootSystemError> {
    let dim = algebra.ambient_dim();
    let (entries, simple_labels) = match algebra.family() {
        Family::B => classical_b(dim),
        Family::C => classical_c(dim),
        Family::D => classical_d(dim),
        Family::G2 => g2(),
        Family::F4 => f4(),
        Family::E6 => e6(),
        Family::E7 => e7(),
        Family::E8 => e8(),
    };
    assemble(algebra, entries, &simple_labels)
}

fn assemble(
    algebra: AlgebraId,
    entries: Vec<(String, Vec<i32>)>,
    simple_labels: &[String],
) -> Result<RootSystem, RootSystemError> {
    let bad = || RootSystemError::UnsupportedAlgebra(algebra.to_string());
    let (labels, positive): (Vec<String>, Vec<RootVector>) =
        entries.into_iter().map(|(l, c)| (l, RootVector(c))).unzip();

    let mut lookup = HashMap::with_capacity(2 * positive.len());
    for (index, r) in positive.iter().enumerate() {
        lookup.insert(
            r.clone(),
            SignedRoot {
                index,
                sign: Sign::Plus,
            },
        );
        lookup.insert(
            -r,
            SignedRoot {
                index,
                sign: Sign::Minus,
            },
        );
    }

    let simple_index: Vec<usize> = simple_labels
        .iter()
        .map(|s| labels.iter().position(|l| l == s).ok_or_else(bad))
        .collect::<Result<_, _>>()?;

    // columns are the simple roots
    let dim = algebra.ambient_dim();
    let basis: Vec<Vec<Rational>> = (0..dim)
        .map(|row| {
            simple_index
                .iter()
                .map(|&s| Rational::from_integer(i64::from(positive[s].0[row])))
                .collect()
        })
        .collect();
    let simple_coords = positive
        .iter()
        .map(|r| {
            let rhs: Vec<Rational> =
                r.0.iter()
                    .map(|&c| Rational::from_integer(i64::from(c)))
                    .collect();
            let sol = solve_exact(&basis, &rhs).ok_or_else(bad)?;
            sol.into_iter()
                .map(|x| {
                    if x.is_integer() && *x.numer() >= 0 {
                        u32::try_from(*x.numer()).map_err(|_| bad())
                    } else {
                        Err(bad())
                    }
                })
                .collect::<Result<Vec<u32>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(RootSystem {
        algebra,
        positive,
        labels,
        simple_index,
        simple_coords,
        lookup,
    })
}

type RootListing = (Vec<(String, Vec<i32>)>, Vec<String>);

fn unit2(dim: usize, terms: &[(usize, i32)]) -> Vec<i32> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn classical_sums(n: usize, include_doubles: bool) -> Vec<(String, Vec<i32>)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j {
                if include_doubles {
                    out.push((format!("2e{}", i + 1), unit2(n, &[(i, 4)])));
                }
            } else {
                out.push((
                    format!("e{}+e{}", i + 1, j + 1),
                    unit2(n, &[(i, 2), (j, 2)]),
                ));
            }
        }
    }
    out
}

fn classical_diffs(n: usize) -> Vec<(String, Vec<i32>)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((
                format!("e{}-e{}", i + 1, j + 1),
                unit2(n, &[(i, 2), (j, -2)]),
            ));
        }
    }
    out
}

fn chain_simple(n: usize, last: String) -> Vec<String> {
    let mut s: Vec<String> = (1..n).map(|i| format!("e{}-e{}", i, i + 1)).collect();
    s.push(last);
    s
}

fn classical_b(n: usize) -> RootListing {
    let mut roots = classical_sums(n, false);
    roots.extend(classical_diffs(n));
    roots.extend((0..n).map(|i| (format!("e{}", i + 1), unit2(n, &[(i, 2)]))));
    (roots, chain_simple(n, format!("e{n}")))
}

fn classical_c(n: usize) -> RootListing {
    let mut roots = classical_sums(n, true);
    roots.extend(classical_diffs(n));
    (roots, chain_simple(n, format!("2e{n}")))
}

fn classical_d(n: usize) -> RootListing {
    let mut roots = classical_sums(n, false);
    roots.extend(classical_diffs(n));
    (roots, chain_simple(n, format!("e{}+e{}", n - 1, n)))
}

fn labelled(prefix: &str, coords: Vec<Vec<i32>>) -> impl Iterator<Item = (String, Vec<i32>)> + '_ {
    coords
        .into_iter()
        .enumerate()
        .map(move |(i, c)| (format!("{prefix}{}", i + 1), c))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn g2() -> RootListing {
    let a = vec![vec![2, -2, 0], vec![-2, 0, 2], vec![0, -2, 2]];
    let b = vec![vec![-4, 2, 2], vec![2, -4, 2], vec![-2, -2, 4]];
    let roots = labelled("a", a).chain(labelled("b", b)).collect();
    (roots, names(&["a1", "b1"]))
}

fn f4() -> RootListing {
    // signs of (e2, e3, e4)
    const HALF_SIGNS: [[i32; 3]; 8] = [
        [1, 1, 1],
        [1, -1, 1],
        [1, 1, -1],
        [1, -1, -1],
        [-1, 1, 1],
        [-1, -1, 1],
        [-1, 1, -1],
        [-1, -1, -1],
    ];
    let mut a: Vec<Vec<i32>> = HALF_SIGNS
        .iter()
        .map(|s| vec![1, s[0], s[1], s[2]])
        .collect();
    a.extend((0..4).map(|i| unit2(4, &[(i, 2)])));
    let mut b: Vec<Vec<i32>> = Vec::new();
    for sign in [2, -2] {
        for i in 0..4 {
            for j in i + 1..4 {
                b.push(unit2(4, &[(i, 2), (j, sign)]));
            }
        }
    }
    let roots = labelled("a", a).chain(labelled("b", b)).collect();
    (roots, names(&["b10", "b12", "a12", "a8"]))
}

/// Half-integer vectors `base + ½Σ±e_i` over `free` positions, with the
/// minus signs placed on each `k`-subset in lexicographic order.
fn half_spinors(
    dim: usize,
    base: &[(usize, i32)],
    free: usize,
    minus_count: usize,
) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..minus_count).collect();
    loop {
        let mut v = unit2(dim, base);
        for (i, c) in v.iter_mut().enumerate().take(free) {
            *c = if subset.contains(&i) { -1 } else { 1 };
        }
        out.push(v);
        // next k-combination of 0..free
        let mut pos = minus_count;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if subset[pos] < free - minus_count + pos {
                subset[pos] += 1;
                for q in pos + 1..minus_count {
                    subset[q] = subset[q - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Like `half_spinors` with all but one free sign negative, the positive
/// entry running over positions `0..free`.
fn single_plus(dim: usize, base: &[(usize, i32)], free: usize) -> Vec<Vec<i32>> {
    (0..free)
        .map(|k| {
            let mut v = unit2(dim, base);
            for (i, c) in v.iter_mut().enumerate().take(free) {
                *c = if i == k { 1 } else { -1 };
            }
            v
        })
        .collect()
}

fn plus_minus_pairs(dim: usize, upto: usize) -> (Vec<Vec<i32>>, Vec<Vec<i32>>) {
    let mut sums = Vec::new();
    let mut diffs = Vec::new();
    for i in 0..upto {
        for j in i + 1..upto {
            sums.push(unit2(dim, &[(i, 2), (j, 2)]));
            diffs.push(unit2(dim, &[(i, -2), (j, 2)]));
        }
    }
    (sums, diffs)
}

fn e6() -> RootListing {
    let (a, b) = plus_minus_pairs(8, 5);
    let base = [(7, 1), (6, -1), (5, -1)];
    let c = half_spinors(8, &base, 5, 2);
    let mut d = vec![unit2(
        8,
        &[
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (7, 1),
            (6, -1),
            (5, -1),
        ],
    )];
    d.extend(single_plus(8, &base, 5));
    let roots = labelled("a", a)
        .chain(labelled("b", b))
        .chain(labelled("c", c))
        .chain(labelled("d", d))
        .collect();
    (roots, names(&["d2", "a1", "b1", "b5", "b8", "b10"]))
}

fn e7() -> RootListing {
    let (a, mut b) = plus_minus_pairs(8, 6);
    b.push(unit2(8, &[(6, -2), (7, 2)]));
    let base = [(7, 1), (6, -1)];
    let c = half_spinors(8, &base, 6, 1);
    let d = half_spinors(8, &base, 6, 3);
    let e = single_plus(8, &base, 6);
    let roots = labelled("a", a)
        .chain(labelled("b", b))
        .chain(labelled("c", c))
        .chain(labelled("d", d))
        .chain(labelled("e", e))
        .collect();
    (roots, names(&["e1", "a1", "b1", "b6", "b10", "b13", "b15"]))
}

fn e8() -> RootListing {
    let (a, b) = plus_minus_pairs(8, 8);
    let base = [(7, 1)];
    let c = half_spinors(8, &base, 7, 2);
    let d = half_spinors(8, &base, 7, 4);
    let mut e = vec![half_spinors(8, &base, 7, 0).remove(0)];
    e.extend(single_plus(8, &base, 7));
    let roots = labelled("a", a)
        .chain(labelled("b", b))
        .chain(labelled("c", c))
        .chain(labelled("d", d))
        .chain(labelled("e", e))
        .collect();
    (
        roots,
        names(&["e2", "a1", "b1", "b8", "b14", "b19", "b23", "b26"]),
    )
}
