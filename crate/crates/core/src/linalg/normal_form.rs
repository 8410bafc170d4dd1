//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `D = U·A·V` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smallest nonzero |entry| in the lower-right block starting at `k`, ties
/// broken by lowest (row, col).
fn smallest_entry(a: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for k in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, k) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
            let pivot = d.get(k, k).clone();

            let mut clean = true;
            for i in k + 1..m {
                let q = d.get(i, k).div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_row_multiple(i, k, &f);
                    u.add_row_multiple(i, k, &f);
                }
                clean &= d.get(i, k).is_zero();
            }
            for j in k + 1..n {
                let q = d.get(k, j).div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_col_multiple(j, k, &f);
                    v.add_col_multiple(j, k, &f);
                }
                clean &= d.get(k, j).is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold any offending row into row k and retry.
            let offending = (k + 1..m).find(|&i| (k + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
    }
    SmithForm { u, d, v }
}

/// Column-style Hermite normal form `H = A·U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    /// Pivot row of each nonzero column of `h`.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns, i.e. a canonical basis of the column lattice.
    pub fn basis(&self) -> IntegerMatrix {
        let cols: Vec<usize> = (0..self.rank()).collect();
        self.h.select_columns(&cols)
    }
}

/// Column echelon form: pivot rows strictly increase, pivots are positive,
/// and entries to the left of a pivot lie in `[0, pivot)`. Zero columns are
/// moved to the end. This is the unique representative of the column lattice.
pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..n {
                let v = h.get(r, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| v.abs() < h.get(r, b).abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(c, b);
            u.swap_cols(c, b);
            let pivot = h.get(r, c).clone();
            let mut done = true;
            for j in c + 1..n {
                let q = h.get(r, j).div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    h.add_col_multiple(j, c, &f);
                    u.add_col_multiple(j, c, &f);
                }
                done &= h.get(r, j).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        let pivot = h.get(r, c).clone();
        for j in 0..c {
            let q = h.get(r, j).div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_col_multiple(j, c, &f);
                u.add_col_multiple(j, c, &f);
            }
        }
        pivot_rows.push(r);
        c += 1;
    }
    HermiteForm { h, u, pivot_rows }
}

/// Basis of `span_R(A) ∩ Z^m` for an integer matrix `A`.
pub fn saturate(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let u_inv = super::elimination::inverse(&snf.u.to_rational())
        .and_then(|m| m.to_integer())
        .expect("unimodular inverse is integral");
    let cols: Vec<usize> = (0..r).collect();
    hermite_normal_form(&u_inv.select_columns(&cols)).basis()
}
