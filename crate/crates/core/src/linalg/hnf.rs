//! Integer row reduction by unimodular operations.
//!
//! Everything here works on lists of row vectors and only ever applies
//! row swaps, negations and `row_i -= q * row_j`, so the lattice spanned by
//! the rows is preserved exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Subtracts `q * src` from `dst`.
pub(crate) fn sub_multiple(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Brings `rows[start..]` into echelon shape on the listed columns, visiting
/// them in the given order. For every column that admits a pivot, exactly one
/// row (the pivot row) keeps a nonzero entry there among the rows at or below
/// it; the pivot is positive. Returns `(row, column)` pairs of the pivots.
///
/// With `reduce_above` set, entries above each pivot are brought into
/// `[0, pivot)`, which yields the Hermite normal form when all columns are
/// visited.
pub(crate) fn echelonize(
    rows: &mut [Vec<BigInt>],
    columns: impl IntoIterator<Item = usize>,
    reduce_above: bool,
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in columns {
        if r == rows.len() {
            break;
        }
        // Euclid across rows: repeatedly take the smallest nonzero entry as the
        // pivot and reduce everything else in the column modulo it.
        loop {
            let best = rows[r..]
                .iter()
                .enumerate()
                .filter(|(_, row)| !row[col].is_zero())
                .min_by(|(_, a), (_, b)| a[col].magnitude().cmp(b[col].magnitude()))
                .map(|(i, _)| i + r);
            let Some(best) = best else { break };
            rows.swap(r, best);

            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let mut clean = true;
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&pivot_row[col]);
                sub_multiple(row, pivot_row, &q);
                if !row[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if reduce_above {
            let (head, tail) = rows.split_at_mut(r);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[col].div_floor(&pivot_row[col]);
                sub_multiple(row, pivot_row, &q);
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    pivots
}

/// Canonical Hermite normal form of the lattice generated by `rows` in
/// `Z^dim`. Pivots are taken from the last coordinate towards the first, so
/// the first returned row is the only one that may be nonzero in the last
/// coordinate. Zero rows are dropped; the result is a basis.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| {
        debug_assert_eq!(r.len(), dim);
        r.iter().any(|x| !x.is_zero())
    });
    let pivots = echelonize(&mut rows, (0..dim).rev(), true);
    rows.truncate(pivots.len());
    debug_assert!(rows.iter().all(|r| r.iter().any(|x| !x.is_zero())));
    rows
}

/// Index of the pivot (last nonzero) coordinate of an HNF row.
pub(crate) fn pivot_column(row: &[BigInt]) -> Option<usize> {
    row.iter().rposition(|x| !x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_of_index_two_sublattice() {
        let h = hermite_normal_form(vec![v(&[2, 0])], 2);
        assert_eq!(h, vec![v(&[2, 0])]);
        let h = hermite_normal_form(vec![v(&[1, 0]), v(&[0, 2])], 2);
        assert_eq!(h, vec![v(&[0, 2]), v(&[1, 0])]);
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let h = hermite_normal_form(vec![v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 0, 0])], 3);
        assert_eq!(h, vec![v(&[1, 1, 0])]);
    }

    #[test]
    fn hnf_is_basis_independent() {
        // Two different bases of the same lattice.
        let a = hermite_normal_form(vec![v(&[1, 2, 3]), v(&[0, 1, 4])], 3);
        let b = hermite_normal_form(vec![v(&[1, 3, 7]), v(&[1, 2, 3])], 3);
        assert_eq!(a, b);
        // Pivots positive, entries above pivots reduced.
        assert_eq!(pivot_column(&a[0]), Some(2));
        assert!(a[0][2] > BigInt::zero());
    }

    #[test]
    fn hnf_reduces_above_pivot() {
        let h = hermite_normal_form(vec![v(&[5, 3]), v(&[3, 0])], 2);
        // Last-coordinate gcd is 3; second pivot is det / 3 = 3.
        assert_eq!(h[0][1], BigInt::from(3));
        assert_eq!(h[1], v(&[3, 0]));
        assert!(h[0][0] >= BigInt::zero() && h[0][0] < BigInt::from(3));
    }
}
