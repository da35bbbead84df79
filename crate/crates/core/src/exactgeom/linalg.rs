use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row-reduces `rows` in place, choosing pivots among the first `pivot_cols`
/// columns only. Pivot rows come first, scaled so the pivot entry is 1, and
/// every pivot column is zero outside its pivot row. Returns the pivot
/// columns in row order.
pub(crate) fn rref(rows: &mut [Vec<Rational>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        for v in rows[next].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work, ncols).len()
}

/// Basis of `{v : row · v = 0 for every row}`, one vector per free column of
/// the reduced system. Rows must have length `ncols`.
pub(crate) fn nullspace_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, ncols);
    free_directions(&work[..pivots.len()], &pivots, ncols)
}

/// For a reduced system with the given pivots, the direction vector attached
/// to each free column: 1 at the free column, minus the column entry at each
/// pivot position.
pub(crate) fn free_directions(
    reduced: &[Vec<Rational>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn nullspace_of_difference_rows() {
        let rows = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]];
        let basis = nullspace_basis(&rows, 3);
        assert_eq!(basis, vec![vec![q(1), q(1), q(1)]]);
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let mut rows = vec![vec![q(2), q(4), q(6)], vec![q(1), q(3), q(5)]];
        let pivots = rref(&mut rows, 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0], vec![q(1), q(0), q(-1)]);
        assert_eq!(rows[1], vec![q(0), q(1), q(2)]);
    }
}
