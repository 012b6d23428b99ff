//! Shared fixtures for the integration suites: a catalog of small generated
//! graphs, the brute-force independence oracle, and the published grid
//! homology table.

#![allow(dead_code)] // each test binary uses a subset of these helpers

use indcomp::complex::{independence_complex, EnumerationOptions, Simplex, SimplicialComplex};
use indcomp::graph::{Graph, VertexSubset};

pub fn ind(g: &Graph, r: usize) -> SimplicialComplex {
    independence_complex(g, r, &EnumerationOptions::default()).unwrap()
}

/// Every generator family at small parameters, 12 vertices or fewer.
pub fn catalog() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    let mut push = |name: String, g: Graph| {
        assert!(g.vertex_count() <= 12, "{name} too large for the oracle");
        out.push((name, g));
    };
    for n in 1..=6 {
        push(format!("P_{n}"), Graph::path(n));
    }
    for n in 3..=7 {
        push(format!("C_{n}"), Graph::cycle(n).unwrap());
    }
    push("K_5".into(), Graph::complete(5));
    push("K_{3,2}".into(), Graph::complete_multipartite(&[3, 2]).unwrap());
    push("K_{2,2,2}".into(), Graph::complete_multipartite(&[2, 2, 2]).unwrap());
    push("K_{4,1}".into(), Graph::complete_multipartite(&[4, 1]).unwrap());
    push("G_{2,3}".into(), Graph::grid(2, 3));
    push("G_{2,6}".into(), Graph::grid(2, 6));
    push("G_{3,3}".into(), Graph::grid(3, 3));
    push("G_{2,5}".into(), Graph::grid(2, 5));
    push("W(P_3)".into(), Graph::path(3).whisker_all());
    push("W(C_3)".into(), Graph::cycle(3).unwrap().whisker_all());
    push("P_3^(2,1,1)".into(), Graph::path(3).attach_leaves(&[2, 1, 1]).unwrap());
    push("C_4^(1,1,1,2)".into(), Graph::cycle(4).unwrap().attach_leaves(&[1, 1, 1, 2]).unwrap());
    push("B_2".into(), Graph::perfect_mary_tree(2, 2));
    push("B_1^3".into(), Graph::perfect_mary_tree(3, 1));
    push("M_1(C_4)".into(), Graph::cycle(4).unwrap().generalized_mycielskian(1));
    push("M_2(K_2)".into(), Graph::path(2).generalized_mycielskian(2));
    push("P_2+P_3".into(), Graph::path(2).disjoint_union(&Graph::path(3)));
    push("C_3+P_2".into(), Graph::cycle(3).unwrap().disjoint_union(&Graph::path(2)));
    out
}

/// All subsets of the vertex set filtered through the r-independence test.
pub fn naive_independence_complex(g: &Graph, r: usize) -> Vec<Simplex> {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut faces = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if indcomp::complex::is_r_independent(g, &VertexSubset::new(verts.clone()), r) {
            faces.push(Simplex::new(verts));
        }
    }
    faces.sort_by_key(|f| (f.len(), f.clone()));
    faces
}

/// Reduced homology of `Ind_r(G_{2,n})` as published: `(dimension, rank)`
/// pairs, everything else zero, no torsion anywhere in this range.
pub fn published_grid_homology(n: usize, r: usize) -> Vec<(isize, usize)> {
    assert!((1..=9).contains(&n) && (1..=9).contains(&r));
    let table: [[&[(isize, usize)]; 9]; 9] = [
        // n = 1
        [&[(0, 1)], &[], &[], &[], &[], &[], &[], &[], &[]],
        // n = 2
        [&[(0, 1)], &[(1, 3)], &[(2, 1)], &[], &[], &[], &[], &[], &[]],
        // n = 3
        [&[(1, 1)], &[(1, 1)], &[(2, 5)], &[(3, 5)], &[(4, 1)], &[], &[], &[], &[]],
        // n = 4
        [&[(1, 1)], &[(3, 2)], &[], &[(3, 7)], &[(4, 13)], &[(5, 7)], &[(6, 1)], &[], &[]],
        // n = 5
        [
            &[(2, 1)],
            &[(3, 7)],
            &[(5, 1)],
            &[],
            &[(4, 8)],
            &[(5, 25)],
            &[(6, 25)],
            &[(7, 9)],
            &[(8, 1)],
        ],
        // n = 6
        [
            &[(2, 1)],
            &[(3, 1)],
            &[(5, 17)],
            &[(7, 2)],
            &[],
            &[(5, 8)],
            &[(6, 40)],
            &[(7, 63)],
            &[(8, 41)],
        ],
        // n = 7
        [
            &[(3, 1)],
            &[(5, 10)],
            &[(5, 8)],
            &[(7, 31)],
            &[(9, 1)],
            &[],
            &[(6, 8)],
            &[(7, 56)],
            &[(8, 128)],
        ],
        // n = 8
        [
            &[(3, 1)],
            &[(5, 13)],
            &[(8, 1)],
            &[(7, 49)],
            &[(9, 57)],
            &[(11, 2)],
            &[],
            &[(7, 8)],
            &[(8, 72)],
        ],
        // n = 9
        [
            &[(4, 1)],
            &[(5, 1), (7, 4)],
            &[(8, 45)],
            &[(7, 8)],
            &[(9, 160)],
            &[(11, 79)],
            &[(13, 1)],
            &[],
            &[(8, 8)],
        ],
    ];
    table[n - 1][r - 1].to_vec()
}
