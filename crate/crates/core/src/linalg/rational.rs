use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::IntMatrix;

/// A vector of reduced fractions with positive denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    entries: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        // BigRational::new already reduces and normalises the sign.
        RationalVector { entries }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of nonzero entries.
    pub fn hamming_weight(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|x| {
            if x.denom().is_one() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        }))
    }
}

/// Fraction-free (Bareiss) forward elimination. Leaves `m` in row echelon
/// form whose entries are minors of the input and returns the pivot
/// `(row, column)` pairs.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..m[i].len() {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(b: &IntMatrix) -> usize {
    let mut m = b.to_rows();
    bareiss(&mut m, b.cols()).len()
}

/// Some exact rational solution of `B y = target`, or `None` if the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_rational(b: &IntMatrix, target: &[BigInt]) -> Option<RationalVector> {
    assert_eq!(target.len(), b.rows(), "target length must equal row count");
    let cols = b.cols();
    let mut m: Vec<Vec<BigInt>> = (0..b.rows())
        .map(|i| {
            let mut row = b.row(i).to_vec();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = bareiss(&mut m, cols);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); cols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = BigRational::from_integer(m[r][cols].clone());
        for j in c + 1..cols {
            if !m[r][j].is_zero() && !y[j].is_zero() {
                acc -= &y[j] * BigRational::from_integer(m[r][j].clone());
            }
        }
        y[c] = acc / BigRational::from_integer(m[r][c].clone());
    }
    Some(RationalVector::new(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_solution(b: &IntMatrix, target: &[BigInt], y: &RationalVector) {
        for (i, t) in target.iter().enumerate() {
            let lhs: BigRational = b
                .row(i)
                .iter()
                .zip(y.entries())
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum();
            assert_eq!(lhs, BigRational::from_integer(t.clone()));
        }
    }

    #[test]
    fn identity_system() {
        let b = IntMatrix::identity(5);
        let t = ints(&[1; 5]);
        let y = solve_rational(&b, &t).unwrap();
        assert!(y.entries().iter().all(|x| x.is_one()));
        assert_eq!(y.hamming_weight(), 5);
    }

    #[test]
    fn underdetermined_system() {
        let b = IntMatrix::from_rows(&[[1, 1]]);
        let t = ints(&[1]);
        let y = solve_rational(&b, &t).unwrap();
        check_solution(&b, &t, &y);
    }

    #[test]
    fn inconsistent_system() {
        let b = IntMatrix::from_rows(&[[1], [1]]);
        assert_eq!(solve_rational(&b, &ints(&[1, 2])), None);
    }

    #[test]
    fn fractional_solution() {
        let b = IntMatrix::from_rows(&[[2, 1], [1, 3]]);
        let t = ints(&[1, 1]);
        let y = solve_rational(&b, &t).unwrap();
        check_solution(&b, &t, &y);
        assert_eq!(y.entries()[0], BigRational::new(2.into(), 5.into()));
        assert_eq!(serde_json::to_string(&y).unwrap(), r#"["2/5","1/5"]"#);
    }

    #[test]
    fn hamming_weights() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(RationalVector::new(vec![r(1, 2), r(0, 1), r(-3, 1)]).hamming_weight(), 2);
        assert_eq!(RationalVector::new(vec![r(0, 1); 4]).hamming_weight(), 0);
        assert_eq!(RationalVector::new(vec![r(1, 1); 7]).hamming_weight(), 7);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&IntMatrix::from_rows(&[[1, 2], [2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::from_rows(&[[0, 0], [0, 0]])), 0);
        assert_eq!(rank(&IntMatrix::from_rows(&[[0, 1, 1], [0, 1, 1], [1, 0, 1]])), 2);
    }
}
