use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::bigint_serde::vec")]
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row slices. Panics if the rows are ragged.
    pub fn from_rows<T, R>(rows: &[R]) -> Self
    where
        T: Into<BigInt> + Clone,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "row {i} has length {} but expected {cols}", row.len());
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Computes `self · x`.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Returns `(self | 1)`: the matrix with an all-ones column appended.
    pub fn append_ones_column(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            out[(i, self.cols)] = BigInt::one();
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_ones_to_identity() {
        let m = IntMatrix::identity(13).append_ones_column();
        assert_eq!((m.rows(), m.cols()), (13, 14));
        for i in 0..13 {
            for j in 0..13 {
                assert_eq!(m[(i, j)], BigInt::from(u8::from(i == j)));
            }
            assert_eq!(m[(i, 13)], BigInt::one());
        }
    }

    #[test]
    fn append_ones_to_scalar() {
        let m = IntMatrix::from_rows(&[[1]]).append_ones_column();
        assert_eq!(m, IntMatrix::from_rows(&[[1, 1]]));
    }

    #[test]
    fn transpose_and_multiply() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let t = m.transpose();
        assert_eq!(t, IntMatrix::from_rows(&[[1, 4], [2, 5], [3, 6]]));
        let x: Vec<BigInt> = vec![1.into(), (-1).into(), 1.into()];
        assert_eq!(m.mul_vec(&x), vec![BigInt::from(2), BigInt::from(5)]);
    }

    #[test]
    fn serializes_entries_as_strings() {
        let m = IntMatrix::from_rows(&[[1, -2]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":1,"cols":2,"entries":["1","-2"]}"#);
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
