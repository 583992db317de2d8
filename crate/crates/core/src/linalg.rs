use num_traits::{One, Zero};

use crate::Rational;

/// Solves `A x = b` exactly for a consistent system whose columns are
/// linearly independent. `A` is given row-major with `rows.len() >= cols`.
///
/// Returns `None` when the columns are dependent or the system is
/// inconsistent.
pub(crate) fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    if rows == 0 || b.len() != rows {
        return None;
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..cols {
        let pivot = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, pivot);
        let inv = Rational::one() / m[pivot_row][col];
        for v in m[pivot_row].iter_mut() {
            *v *= inv;
        }
        let pivot_vals = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_vals).skip(col) {
                    *x -= factor * p;
                }
            }
        }
        pivot_row += 1;
    }
    // leftover rows must reduce to 0 = 0
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn overdetermined_consistent_system() {
        // columns (1,0,1) and (0,1,1); b = 2*c0 + 3*c1
        let a = vec![vec![r(1), r(0)], vec![r(0), r(1)], vec![r(1), r(1)]];
        let b = vec![r(2), r(3), r(5)];
        assert_eq!(solve_exact(&a, &b), Some(vec![r(2), r(3)]));
    }

    #[test]
    fn inconsistent_system_is_rejected() {
        let a = vec![vec![r(1), r(0)], vec![r(0), r(1)], vec![r(1), r(1)]];
        let b = vec![r(2), r(3), r(6)];
        assert_eq!(solve_exact(&a, &b), None);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let a = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert_eq!(solve_exact(&a, &[r(1), r(2)]), None);
    }
}
