//! Property suites over randomized inputs: Smith-form invariance under
//! unimodular scrambles, oracle equality of the enumerator, element-matching
//! invariants, join face counts, and mod-2/integral consistency.

mod common;

use common::naive_independence_complex;
use indcomp::complex::{independence_complex, EnumerationOptions, Simplex, SimplicialComplex};
use indcomp::graph::Graph;
use indcomp::homology::{
    betti_mod2, reduced_homology, smith_normal_form, universal_coefficients_consistent,
    IntegerMatrix,
};
use indcomp::morse::{element_matching_sequence, verify_acyclic};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A graph on `n` vertices from an edge-selection mask.
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut text = String::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    text.push_str(&format!("{n} {}\n", edges.len()));
    for (u, v) in edges {
        text.push_str(&format!("{u} {v}\n"));
    }
    Graph::parse_edge_list(&text).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << bits)).prop_map(|(n, mask)| graph_from_mask(n, mask))
    })
}

#[derive(Clone, Debug)]
enum Scramble {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    NegateRow(usize),
    NegateCol(usize),
    AddRow(usize, usize, i64),
    AddCol(usize, usize, i64),
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
    })
}

fn arb_scrambles() -> impl Strategy<Value = Vec<Scramble>> {
    proptest::collection::vec(
        prop_oneof![
            (0usize..5, 0usize..5).prop_map(|(a, b)| Scramble::SwapRows(a, b)),
            (0usize..5, 0usize..5).prop_map(|(a, b)| Scramble::SwapCols(a, b)),
            (0usize..5).prop_map(Scramble::NegateRow),
            (0usize..5).prop_map(Scramble::NegateCol),
            (0usize..5, 0usize..5, -3i64..=3).prop_map(|(a, b, q)| Scramble::AddRow(a, b, q)),
            (0usize..5, 0usize..5, -3i64..=3).prop_map(|(a, b, q)| Scramble::AddCol(a, b, q)),
        ],
        0..14,
    )
}

fn apply_scrambles(m: &mut IntegerMatrix, ops: &[Scramble]) {
    for op in ops {
        match *op {
            Scramble::SwapRows(a, b) => {
                if a < m.rows() && b < m.rows() {
                    m.swap_rows(a, b);
                }
            }
            Scramble::SwapCols(a, b) => {
                if a < m.cols() && b < m.cols() {
                    m.swap_cols(a, b);
                }
            }
            Scramble::NegateRow(a) => {
                if a < m.rows() {
                    m.negate_row(a);
                }
            }
            Scramble::NegateCol(a) => {
                if a < m.cols() {
                    m.negate_col(a);
                }
            }
            Scramble::AddRow(a, b, q) => {
                if a < m.rows() && b < m.rows() && a != b {
                    m.add_row_multiple(a, b, &BigInt::from(q));
                }
            }
            Scramble::AddCol(a, b, q) => {
                if a < m.cols() && b < m.cols() && a != b {
                    m.add_col_multiple(a, b, &BigInt::from(q));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn snf_invariant_under_unimodular_scrambles(
        rows in arb_matrix(),
        ops in arb_scrambles(),
    ) {
        let original = IntegerMatrix::from_rows(&rows);
        let mut scrambled = original.clone();
        apply_scrambles(&mut scrambled, &ops);
        let a = smith_normal_form(&original);
        let b = smith_normal_form(&scrambled);
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(a.invariant_factors, b.invariant_factors);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerator_matches_oracle_on_random_graphs(g in arb_graph(7), r in 1usize..=3) {
        let k = independence_complex(&g, r, &EnumerationOptions::default()).unwrap();
        let fast: Vec<Simplex> = k.all_faces().cloned().collect();
        prop_assert_eq!(fast, naive_independence_complex(&g, r));
        prop_assert!(k.is_downward_closed());
    }

    #[test]
    fn element_matching_invariants(g in arb_graph(6), r in 1usize..=2, perm in 0usize..720) {
        let k = independence_complex(&g, r, &EnumerationOptions::default()).unwrap();
        // vertex order derived from the permutation index
        let n = g.vertex_count();
        let mut pool: Vec<usize> = (0..n).collect();
        let mut xs = Vec::new();
        let mut idx = perm;
        while !pool.is_empty() {
            xs.push(pool.remove(idx % pool.len()));
            idx /= pool.len().max(1) + 1;
        }
        let (m, remaining) = element_matching_sequence(&k, &xs).unwrap();
        // pairs are covering relations and partition the matched faces
        let mut seen = std::collections::BTreeSet::new();
        for (lo, hi) in m.pairs() {
            prop_assert!(lo.is_face_of(hi) && lo.len() + 1 == hi.len());
            prop_assert!(seen.insert(lo.clone()));
            prop_assert!(seen.insert(hi.clone()));
        }
        for f in &remaining {
            prop_assert!(!seen.contains(f));
        }
        prop_assert_eq!(seen.len() + remaining.len(), k.face_count());
        let domain: Vec<Simplex> = k.all_faces().cloned().collect();
        prop_assert_eq!(verify_acyclic(&domain, &m), Ok(true));
    }

    #[test]
    fn join_face_counts_multiply(g in arb_graph(5), h in arb_graph(5)) {
        let a = independence_complex(&g, 2, &EnumerationOptions::default()).unwrap();
        let b = independence_complex(&h, 2, &EnumerationOptions::default()).unwrap();
        let j = a.join(&b);
        let f = |k: &SimplicialComplex, d: isize| -> usize {
            if d == -1 { 1 } else { k.faces_of_dim(d).len() }
        };
        for d in 0..=j.dim() {
            let expected: usize = (-1..=d).map(|x| f(&a, x) * f(&b, d - 1 - x)).sum();
            prop_assert_eq!(f(&j, d), expected);
        }
        // joining complexes of disjoint graphs is the complex of the union
        let direct = independence_complex(
            &g.disjoint_union(&h),
            2,
            &EnumerationOptions::default(),
        )
        .unwrap();
        prop_assert_eq!(
            j.all_faces().collect::<Vec<_>>(),
            direct.all_faces().collect::<Vec<_>>()
        );
    }

    #[test]
    fn mod2_betti_consistent_with_integral(g in arb_graph(6), r in 1usize..=2) {
        let k = independence_complex(&g, r, &EnumerationOptions::default()).unwrap();
        let top = k.dim().max(0);
        let hom = reduced_homology(&k, 0, top).unwrap();
        let b2 = betti_mod2(&k, 0, top).unwrap();
        prop_assert!(universal_coefficients_consistent(&hom, &b2));
    }
}

/// The wedge-join combinator against direct computation: for disjoint paths
/// the join of the two closed forms must be the homology of the union.
#[test]
fn wedge_join_matches_disjoint_path_unions() {
    use indcomp::formulas::{expected_homology, ht_path};
    for d in [3usize, 4] {
        for n1 in 1..=2 * d {
            for n2 in 1..=d + 1 {
                let g = Graph::path(n1).disjoint_union(&Graph::path(n2));
                let k = independence_complex(&g, d - 2, &EnumerationOptions::default()).unwrap();
                let hom = reduced_homology(&k, 0, k.dim().max(0)).unwrap();
                let joined = ht_path(n1, d).join(&ht_path(n2, d));
                assert!(
                    expected_homology(&joined).matches(&hom),
                    "P_{n1} + P_{n2}, d={d}: {joined} vs computed"
                );
            }
        }
    }
}
