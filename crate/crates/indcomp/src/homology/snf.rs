//! Dense integer matrices and Smith normal form over arbitrary-precision
//! integers.
//!
//! Plain row/column elimination, pivoting on the entry of smallest nonzero
//! absolute value (ties broken by lowest row, then column). Intermediate
//! coefficient growth is the reason everything here is `BigInt`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

/// Row-major dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntegerMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntegerMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.cols + j] = value.into();
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(BigInt::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    pub fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        assert_ne!(a, b);
        for j in 0..self.cols {
            let delta = q * self.get(b, j);
            self.data[a * self.cols + j] += delta;
        }
    }

    /// col_a += q * col_b
    pub fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        assert_ne!(a, b);
        for i in 0..self.rows {
            let delta = q * self.get(i, b);
            self.data[i * self.cols + a] += delta;
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a).clone();
            self.set(i, a, v);
        }
    }

    /// (|a| smallest nonzero, ties by lowest row then column) within the
    /// trailing submatrix starting at (k, k).
    fn min_abs_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((m, _, _)) if *m <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    /// d_1 | d_2 | ... | d_rank, all positive.
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
}

/// Smith normal form by integer row and column reduction.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let mut w = m.clone();
    let steps = w.rows.min(w.cols);
    let mut factors = Vec::new();
    let mut k = 0;
    while k < steps {
        let Some((pi, pj)) = w.min_abs_pivot(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            // Clear the pivot column, re-pivoting on remainders as they shrink.
            let mut dirty = false;
            let mut i = k + 1;
            while i < w.rows {
                if w.get(i, k).is_zero() {
                    i += 1;
                    continue;
                }
                let q = w.get(i, k) / w.get(k, k);
                if !q.is_zero() {
                    let q = -q;
                    w.add_row_multiple(i, k, &q);
                }
                if !w.get(i, k).is_zero() {
                    // nonzero remainder, strictly smaller than the pivot
                    w.swap_rows(k, i);
                    dirty = true;
                } else {
                    i += 1;
                }
            }
            let mut j = k + 1;
            while j < w.cols {
                if w.get(k, j).is_zero() {
                    j += 1;
                    continue;
                }
                let q = w.get(k, j) / w.get(k, k);
                if !q.is_zero() {
                    let q = -q;
                    w.add_col_multiple(j, k, &q);
                }
                if !w.get(k, j).is_zero() {
                    w.swap_cols(k, j);
                    dirty = true;
                } else {
                    j += 1;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide every remaining entry for the divisibility chain.
            let pivot = w.get(k, k).clone();
            let mut fixed = true;
            'scan: for i in k + 1..w.rows {
                for j in k + 1..w.cols {
                    if !(w.get(i, j) % &pivot).is_zero() {
                        let one = BigInt::from(1);
                        w.add_row_multiple(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if w.get(k, k).is_negative() {
            w.negate_row(k);
        }
        factors.push(w.get(k, k).to_biguint().expect("pivot normalized positive"));
        k += 1;
    }
    SmithNormalForm { rank: factors.len(), invariant_factors: factors }
}
