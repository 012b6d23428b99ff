//! Sparse integer elimination for boundary matrices.
//!
//! Boundary matrices are overwhelmingly unit-entried, so we first eliminate
//! on +-1 pivots (unimodular steps that contribute invariant factor 1),
//! choosing pivots by Markowitz cost to limit fill-in. Whatever survives
//! without a unit entry is handed to the dense Smith routine; at desk scale
//! that residue is tiny. A mod-2 variant of the same loop provides the fast
//! Betti oracle.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::snf::{smith_normal_form, IntegerMatrix, SmithNormalForm};

pub(crate) struct SparseIntMatrix {
    nrows: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    /// rows holding a nonzero in each column
    col_rows: Vec<BTreeSet<usize>>,
}

impl SparseIntMatrix {
    pub(crate) fn new(nrows: usize, ncols: usize) -> SparseIntMatrix {
        SparseIntMatrix {
            nrows,
            rows: vec![BTreeMap::new(); nrows],
            col_rows: vec![BTreeSet::new(); ncols],
        }
    }

    pub(crate) fn set_unit(&mut self, r: usize, c: usize, sign: i8) {
        self.rows[r].insert(c, BigInt::from(sign));
        self.col_rows[c].insert(r);
    }

    fn row_nnz(&self, r: usize) -> usize {
        self.rows[r].len()
    }

    fn col_nnz(&self, c: usize) -> usize {
        self.col_rows[c].len()
    }

    fn markowitz(&self, r: usize, c: usize) -> u64 {
        (self.row_nnz(r) as u64 - 1) * (self.col_nnz(c) as u64 - 1)
    }
}

/// Reduce and report rank plus the full list of invariant factors.
pub(crate) fn reduce(mut m: SparseIntMatrix) -> SmithNormalForm {
    // candidate heap of unit entries, keyed by Markowitz cost
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    for r in 0..m.nrows {
        for (&c, v) in &m.rows[r] {
            if v.abs().is_one() {
                heap.push(Reverse((m.markowitz(r, c), r, c)));
            }
        }
    }
    let mut unit_rank = 0usize;
    let mut row_alive = vec![true; m.nrows];
    let mut col_alive = vec![true; m.col_rows.len()];
    while let Some(Reverse((cost, pr, pc))) = heap.pop() {
        if !row_alive[pr] || !col_alive[pc] {
            continue;
        }
        let Some(v) = m.rows[pr].get(&pc) else { continue };
        if !v.abs().is_one() {
            continue;
        }
        let current = m.markowitz(pr, pc);
        if current != cost {
            heap.push(Reverse((current, pr, pc)));
            continue;
        }
        // eliminate: clear column pc with row pr, then retire both
        let pivot_sign = m.rows[pr].get(&pc).unwrap().clone();
        let pivot_row: Vec<(usize, BigInt)> =
            m.rows[pr].iter().map(|(&c, v)| (c, v.clone())).collect();
        let targets: Vec<usize> = m.col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r != pr && row_alive[r])
            .collect();
        for r in targets {
            let factor = {
                let entry = m.rows[r].get(&pc).expect("indexed entry");
                // entry - factor*pivot = 0 with pivot = +-1
                entry * &pivot_sign
            };
            for (c, pv) in &pivot_row {
                if !col_alive[*c] {
                    continue;
                }
                let delta = &factor * pv;
                let slot = m.rows[r].entry(*c).or_insert_with(BigInt::zero);
                *slot -= delta;
                if slot.is_zero() {
                    m.rows[r].remove(c);
                    m.col_rows[*c].remove(&r);
                } else {
                    m.col_rows[*c].insert(r);
                    if slot.abs().is_one() {
                        heap.push(Reverse((0, r, *c))); // cost recomputed on pop
                    }
                }
            }
        }
        // retire pivot row and column
        for (c, _) in &pivot_row {
            m.col_rows[*c].remove(&pr);
        }
        m.rows[pr].clear();
        row_alive[pr] = false;
        col_alive[pc] = false;
        unit_rank += 1;
    }
    // collect the residual submatrix (entries with no unit left anywhere)
    let live_rows: Vec<usize> = (0..m.nrows)
        .filter(|&r| row_alive[r] && !m.rows[r].is_empty())
        .collect();
    if live_rows.is_empty() {
        return SmithNormalForm {
            invariant_factors: vec![BigUint::one(); unit_rank],
            rank: unit_rank,
        };
    }
    let mut live_cols = BTreeSet::new();
    for &r in &live_rows {
        live_cols.extend(m.rows[r].keys().copied());
    }
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = IntegerMatrix::zero(live_rows.len(), col_index.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &m.rows[r] {
            dense.set(i, col_index[c], v.clone());
        }
    }
    let tail = smith_normal_form(&dense);
    let mut invariant_factors = vec![BigUint::one(); unit_rank];
    invariant_factors.extend(tail.invariant_factors);
    SmithNormalForm { rank: unit_rank + tail.rank, invariant_factors }
}

/// Rank over GF(2) by the same sparse strategy; rows are vertex sets.
pub(crate) fn rank_mod2(mut rows: Vec<BTreeSet<usize>>, ncols: usize) -> usize {
    let nrows = rows.len();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            col_rows[c].insert(r);
        }
    }
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            heap.push(Reverse((
                (row.len() as u64 - 1) * (col_rows[c].len() as u64 - 1),
                r,
                c,
            )));
        }
    }
    let mut rank = 0usize;
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    while let Some(Reverse((cost, pr, pc))) = heap.pop() {
        if !row_alive[pr] || !col_alive[pc] || !rows[pr].contains(&pc) {
            continue;
        }
        let current = (rows[pr].len() as u64 - 1) * (col_rows[pc].len() as u64 - 1);
        if current != cost {
            heap.push(Reverse((current, pr, pc)));
            continue;
        }
        let pivot_row: Vec<usize> = rows[pr].iter().copied().collect();
        let targets: Vec<usize> = col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r != pr && row_alive[r])
            .collect();
        for r in targets {
            for &c in &pivot_row {
                if !col_alive[c] {
                    continue;
                }
                if rows[r].remove(&c) {
                    col_rows[c].remove(&r);
                } else {
                    rows[r].insert(c);
                    col_rows[c].insert(r);
                    heap.push(Reverse((0, r, c)));
                }
            }
        }
        for &c in &pivot_row {
            col_rows[c].remove(&pr);
        }
        rows[pr].clear();
        row_alive[pr] = false;
        col_alive[pc] = false;
        rank += 1;
    }
    // over GF(2) every nonzero entry is a unit, so nothing survives
    debug_assert!(rows.iter().enumerate().all(|(r, row)| !row_alive[r] || row.is_empty()));
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse_from(rows: &[Vec<i64>]) -> SparseIntMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseIntMatrix::new(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.rows[r].insert(c, BigInt::from(v));
                    m.col_rows[c].insert(r);
                }
            }
        }
        m
    }

    #[test]
    fn agrees_with_dense_snf() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 1, 1]],
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 0, 0], vec![0, 5, 0]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        ];
        for rows in cases {
            let dense = smith_normal_form(&IntegerMatrix::from_rows(&rows));
            let sparse = reduce(sparse_from(&rows));
            assert_eq!(sparse.rank, dense.rank, "{rows:?}");
            assert_eq!(sparse.invariant_factors, dense.invariant_factors, "{rows:?}");
        }
    }

    #[test]
    fn mod2_rank_matches_hand_values() {
        // triangle boundary over GF(2): rank 2
        let rows = vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([0, 2]),
            BTreeSet::from([1, 2]),
        ];
        assert_eq!(rank_mod2(rows, 3), 2);
        assert_eq!(rank_mod2(vec![BTreeSet::new()], 4), 0);
    }
}
