//! Fraction-free and rational elimination: rank, determinant, row echelon
//! forms, linear solves and kernels.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix};
use super::rational::Rational;

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space and rank. Returns the per-row scale factors.
fn clear_denominators(m: &RationalMatrix) -> (IntegerMatrix, Vec<BigInt>) {
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let lcm = m.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        for v in m.row(i) {
            data.push(v.numer() * (&lcm / v.denom()));
        }
        scales.push(lcm);
    }
    (IntegerMatrix::from_vec(m.rows(), m.cols(), data), scales)
}

/// Bareiss elimination in place. Returns the rank and the sign of the row
/// permutation applied. Entries below the pivots become zero.
fn bareiss(a: &mut IntegerMatrix) -> (usize, i32) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut sign = 1;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            a.swap_rows(pivot_row, rank);
            sign = -sign;
        }
        let pivot = a.get(rank, col).clone();
        for r in rank + 1..rows {
            let factor = a.get(r, col).clone();
            for c in col..cols {
                let v = (a.get(r, c) * &pivot - &factor * a.get(rank, c)) / &prev;
                a.set(r, c, v);
            }
            for c in 0..col {
                a.set(r, c, BigInt::zero());
            }
        }
        prev = pivot;
        rank += 1;
    }
    (rank, sign)
}

/// Rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    let (mut a, _) = clear_denominators(m);
    bareiss(&mut a).0
}

pub fn integer_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.clone();
    bareiss(&mut a).0
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &RationalMatrix) -> Rational {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scales) = clear_denominators(m);
    let (rank, sign) = bareiss(&mut a);
    if rank < n {
        return Rational::zero();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = a.get(n - 1, n - 1).clone() * BigInt::from(sign);
    Rational::new(det, scale)
}

pub fn integer_determinant(m: &IntegerMatrix) -> BigInt {
    determinant(&m.to_rational()).to_integer()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip();
        for j in 0..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !a.get(i, c).is_zero() {
                let f = -a.get(i, c).clone();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the kernel `{x : M x = 0}`, one vector per free column.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// A particular solution together with a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Solves `M x = v`. Returns `None` when the system is inconsistent. The
/// particular solution has zeros in every free coordinate.
pub fn solve(m: &RationalMatrix, v: &[Rational]) -> Option<Solution> {
    assert_eq!(v.len(), m.rows(), "right-hand side length");
    let augmented = m.hcat(&RationalMatrix::from_columns(m.rows(), &[v.to_vec()]));
    let (reduced, pivots) = rref(&augmented);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut particular = vec![Rational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = reduced.get(row, m.cols()).clone();
    }
    Some(Solution { particular, kernel: nullspace(m) })
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert!(m.is_square(), "inverse of non-square matrix");
    let n = m.rows();
    let (reduced, pivots) = rref(&m.hcat(&RationalMatrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let right: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(reduced.submatrix(&rows, &right))
}

/// Row-reduced basis of the span of `vectors`, leading coefficients one.
pub fn echelon_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (reduced, pivots) = rref(&m);
    (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect()
}
