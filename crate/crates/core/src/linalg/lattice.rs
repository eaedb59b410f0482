use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hnf::{echelonize, hermite_normal_form, pivot_column, sub_multiple};
use super::{IntMatrix, LinalgError};

/// A sublattice of `Z^ambient_dim`, stored by its canonical Hermite basis.
///
/// Two `LatticeBasis` values describe the same set of integer points iff they
/// compare equal. The zero lattice has an empty vector list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBasis {
    ambient_dim: usize,
    #[serde(with = "crate::bigint_serde::vec_vec")]
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// The lattice generated by `generators`, which may be dependent.
    pub fn from_generators(ambient_dim: usize, generators: Vec<Vec<BigInt>>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient_dim, "generator length must equal ambient dimension");
        }
        LatticeBasis {
            ambient_dim,
            vectors: hermite_normal_form(generators, ambient_dim),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The natural inclusion `Z^n -> Z^(n+1)`, `x -> (x, 0)`.
    ///
    /// Appending a zero coordinate keeps the basis in canonical form because
    /// the new column never receives a pivot.
    pub fn embed(&self) -> LatticeBasis {
        LatticeBasis {
            ambient_dim: self.ambient_dim + 1,
            vectors: self
                .vectors
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w.push(BigInt::zero());
                    w
                })
                .collect(),
        }
    }

    /// Exact membership test by reduction against the Hermite basis.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Integer coefficients `c` with `x = sum c_i * vectors[i]`, if `x` lies in
    /// the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        let mut rest = x.to_vec();
        let mut coeffs = Vec::with_capacity(self.vectors.len());
        for v in &self.vectors {
            let p = pivot_column(v).expect("basis vectors are nonzero");
            let (q, r) = rest[p].div_rem(&v[p]);
            if !r.is_zero() {
                return None;
            }
            sub_multiple(&mut rest, v, &q);
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    /// Coordinates at which every basis vector vanishes (all coordinates for
    /// the zero lattice).
    pub fn zero_coordinate_positions(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|&i| self.vectors.iter().all(|v| v[i].is_zero()))
            .collect()
    }

    /// Union of the supports of the basis vectors. Equals the support of the
    /// whole lattice.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|&i| self.vectors.iter().any(|v| !v[i].is_zero()))
            .collect()
    }
}

/// Basis of `{x in Z^cols : B x = 0}`.
///
/// Row-reduces `(B^T | I)` with unimodular operations; the identity half of
/// every row whose `B^T` half ends up zero is a kernel vector, and together
/// those rows form a lattice basis of the kernel because the recorded
/// transform is unimodular.
pub fn kernel_lattice_basis(b: &IntMatrix) -> LatticeBasis {
    let (n, m) = (b.rows(), b.cols());
    let mut rows: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut row = b.column(j);
            row.extend((0..m).map(|k| BigInt::from(u8::from(k == j))));
            row
        })
        .collect();
    let pivots = echelonize(&mut rows, 0..n, false);
    let kernel = rows
        .split_off(pivots.len())
        .into_iter()
        .map(|row| {
            debug_assert!(row[..n].iter().all(Zero::is_zero));
            row[n..].to_vec()
        })
        .collect();
    LatticeBasis::from_generators(m, kernel)
}

/// Aligns two lattices for comparison, embedding the smaller one when the
/// ambient dimensions differ by exactly one.
fn align<'a>(
    a: &'a LatticeBasis,
    b: &'a LatticeBasis,
) -> Result<(std::borrow::Cow<'a, LatticeBasis>, std::borrow::Cow<'a, LatticeBasis>), LinalgError>
{
    use std::borrow::Cow;
    let (da, db) = (a.ambient_dim, b.ambient_dim);
    if da == db {
        Ok((Cow::Borrowed(a), Cow::Borrowed(b)))
    } else if da + 1 == db {
        Ok((Cow::Owned(a.embed()), Cow::Borrowed(b)))
    } else if db + 1 == da {
        Ok((Cow::Borrowed(a), Cow::Owned(b.embed())))
    } else {
        Err(LinalgError::DimensionMismatch { left: da, right: db })
    }
}

/// Equality of lattices as point sets, after the natural inclusion when the
/// dimensions differ by one.
pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LinalgError> {
    let (a, b) = align(a, b)?;
    Ok(a.vectors == b.vectors)
}

/// A vector of `big` that is not in `small`, or `None` when they are equal.
///
/// Among basis vectors of `big` outside `small`, the one with the smallest
/// nonzero last coordinate in absolute value is returned, signed so that the
/// last coordinate is positive. If every such vector ends in zero, the first
/// one is returned.
pub fn lattice_difference_vector(
    big: &LatticeBasis,
    small: &LatticeBasis,
) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if small.ambient_dim != big.ambient_dim && small.ambient_dim + 1 != big.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            left: big.ambient_dim,
            right: small.ambient_dim,
        });
    }
    let (big, small) = align(big, small)?;
    if let Some(v) = small.vectors.iter().find(|v| !big.contains(v)) {
        return Err(LinalgError::InclusionViolation { witness: v.clone() });
    }
    if big.vectors == small.vectors {
        return Ok(None);
    }
    let outside: Vec<&Vec<BigInt>> = big.vectors.iter().filter(|v| !small.contains(v)).collect();
    let last = big.ambient_dim.checked_sub(1);
    let by_last = last.and_then(|l| {
        outside
            .iter()
            .filter(|v| !v[l].is_zero())
            .min_by(|a, b| a[l].magnitude().cmp(b[l].magnitude()))
            .map(|v| {
                if v[l].is_negative() {
                    v.iter().map(|x| -x).collect()
                } else {
                    (*v).clone()
                }
            })
    });
    Ok(by_last.or_else(|| outside.first().map(|v| (*v).clone())))
}

/// `sum_{i in positions} x_i^2`.
pub fn projection_norm_sq(x: &[BigInt], positions: &[usize]) -> BigInt {
    positions.iter().map(|&i| &x[i] * &x[i]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_two_equations() {
        let b = IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        let k = kernel_lattice_basis(&b);
        assert_eq!(k.vectors(), &[v(&[1, -1, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_lattice_basis(&IntMatrix::identity(13));
        assert!(k.is_zero());
        assert_eq!(k.ambient_dim(), 13);
        assert_eq!(k.zero_coordinate_positions(), (0..13).collect::<Vec<_>>());
    }

    #[test]
    fn kernel_of_four_set_incidence() {
        let b = IntMatrix::from_rows(&[[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]]);
        let k = kernel_lattice_basis(&b);
        assert_eq!(k.rank(), 1);
        let g = &k.vectors()[0];
        assert!(g == &v(&[1, 1, -1, -1]) || g == &v(&[-1, -1, 1, 1]));
        assert!(k.zero_coordinate_positions().is_empty());
    }

    #[test]
    fn kernel_of_ones_column() {
        let b = IntMatrix::identity(13).append_ones_column();
        let k = kernel_lattice_basis(&b);
        let mut expected = vec![BigInt::from(-1); 13];
        expected.push(BigInt::from(1));
        assert_eq!(k.vectors(), &[expected]);
    }

    #[test]
    fn zero_positions_examples() {
        let l = LatticeBasis::from_generators(4, vec![v(&[1, -1, 0, 0])]);
        assert_eq!(l.zero_coordinate_positions(), vec![2, 3]);
        let l = LatticeBasis::from_generators(4, vec![v(&[1, 1, -1, -1])]);
        assert!(l.zero_coordinate_positions().is_empty());
    }

    #[test]
    fn equality_examples() {
        let a = LatticeBasis::from_generators(2, vec![v(&[2, 0])]);
        let b = LatticeBasis::from_generators(2, vec![v(&[1, 0])]);
        assert!(!lattice_equal(&a, &b).unwrap());
        assert!(lattice_equal(&a, &a).unwrap());

        let zero = LatticeBasis::zero(13);
        let mut g = vec![BigInt::from(-1); 13];
        g.push(BigInt::from(1));
        let big = LatticeBasis::from_generators(14, vec![g]);
        assert!(!lattice_equal(&zero, &big).unwrap());
        assert!(lattice_equal(&zero, &LatticeBasis::zero(14)).unwrap());

        let err = lattice_equal(&LatticeBasis::zero(3), &LatticeBasis::zero(5)).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch { left: 3, right: 5 }));
    }

    #[test]
    fn difference_vector_examples() {
        let mut g = vec![BigInt::from(-1); 13];
        g.push(BigInt::from(1));
        let big = LatticeBasis::from_generators(14, vec![g.clone()]);
        let small = LatticeBasis::zero(13);
        assert_eq!(lattice_difference_vector(&big, &small).unwrap(), Some(g));

        assert_eq!(lattice_difference_vector(&big, &big).unwrap(), None);

        let big = LatticeBasis::from_generators(2, vec![v(&[1, 0]), v(&[0, 2])]);
        let small = LatticeBasis::from_generators(2, vec![v(&[1, 0])]);
        assert_eq!(lattice_difference_vector(&big, &small).unwrap(), Some(v(&[0, 2])));

        // Falls back to the first outside vector when no last coordinate helps.
        let big = LatticeBasis::from_generators(2, vec![v(&[1, 0])]);
        let small = LatticeBasis::from_generators(2, vec![v(&[3, 0])]);
        assert_eq!(lattice_difference_vector(&big, &small).unwrap(), Some(v(&[1, 0])));
    }

    #[test]
    fn difference_vector_rejects_non_inclusion() {
        let big = LatticeBasis::from_generators(2, vec![v(&[2, 0])]);
        let small = LatticeBasis::from_generators(2, vec![v(&[1, 0])]);
        let err = lattice_difference_vector(&big, &small).unwrap_err();
        assert!(matches!(err, LinalgError::InclusionViolation { .. }));
    }

    #[test]
    fn projection_norms() {
        let x = v(&[3, -4, 0]);
        assert_eq!(projection_norm_sq(&x, &[0, 1]), BigInt::from(25));
        assert_eq!(projection_norm_sq(&x, &[]), BigInt::zero());
        let ones = vec![BigInt::from(-1); 13];
        let all: Vec<usize> = (0..13).collect();
        assert_eq!(projection_norm_sq(&ones, &all), BigInt::from(13));
    }

    #[test]
    fn membership_and_coordinates() {
        let l = LatticeBasis::from_generators(3, vec![v(&[1, 2, 3]), v(&[0, 1, 4])]);
        let x = v(&[2, 7, 18]); // 2*(1,2,3) + 3*(0,1,4)
        let c = l.coordinates(&x).unwrap();
        let rebuilt: Vec<BigInt> = (0..3)
            .map(|i| c.iter().zip(l.vectors()).map(|(ci, b)| ci * &b[i]).sum())
            .collect();
        assert_eq!(rebuilt, x);
        assert!(!l.contains(&v(&[0, 0, 1])));
    }
}
