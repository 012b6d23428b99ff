//! Exact reduced simplicial homology with integer coefficients.
//!
//! Homology is always reduced: the chain complex is augmented, with the empty
//! simplex spanning degree -1 and the boundary of every vertex equal to it.
//! Free ranks come from `rank H~_d = f_d - rank d_d - rank d_{d+1}`, torsion
//! from the invariant factors of `d_{d+1}` exceeding 1. Computation is
//! windowed so that large complexes can be interrogated in the few degrees
//! that matter without enumerating everything above them.

mod snf;
mod sparse;

pub use snf::{smith_normal_form, IntegerMatrix, SmithNormalForm};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigUint;
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary dimension {0} out of range (complex has dimension {1})")]
    DimensionOutOfRange(isize, isize),
    #[error("window [{lo}, {hi}] is invalid (need 0 <= lo <= hi)")]
    BadWindow { lo: isize, hi: isize },
    #[error(
        "window needs faces up to dimension {needed} but enumeration was truncated at {truncated}"
    )]
    WindowTruncated { needed: isize, truncated: isize },
}

/// One reduced homology group: free rank plus invariant-factor torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Torsion coefficients >= 2, each dividing the next.
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn trivial() -> HomologyGroup {
        HomologyGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> HomologyGroup {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Reduced homology over a dimension window. Dimensions outside the window
/// are unknown, never implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    lo: isize,
    hi: isize,
    groups: BTreeMap<isize, HomologyGroup>,
}

impl HomologySummary {
    pub fn window(&self) -> (isize, isize) {
        (self.lo, self.hi)
    }

    /// `None` when `d` lies outside the computed window.
    pub fn group(&self, d: isize) -> Option<&HomologyGroup> {
        if d < self.lo || d > self.hi {
            return None;
        }
        Some(self.groups.get(&d).unwrap_or(const { &HomologyGroup { rank: 0, torsion: Vec::new() } }))
    }

    /// Dimensions in the window carrying a nonzero group.
    pub fn nonzero(&self) -> Vec<(isize, &HomologyGroup)> {
        self.groups.iter().filter(|(_, g)| !g.is_trivial()).map(|(&d, g)| (d, g)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_trivial)
    }

    /// Text report: one `d: rank=<p> torsion=[...]` line per dimension.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for d in self.lo..=self.hi {
            let g = self.group(d).expect("dimension inside window");
            let torsion: Vec<String> = g.torsion.iter().map(BigUint::to_string).collect();
            out.push_str(&format!("{d}: rank={} torsion=[{}]\n", g.rank, torsion.join(",")));
        }
        out
    }
}

/// The matrix of `d_d` against the complex's canonical face orders.
///
/// Rows are the (d-1)-faces, columns the d-faces, entry signs alternating by
/// the position of the deleted vertex. `d_0` is the augmentation (every
/// vertex maps to the empty face); `d_{-1}` and `d_{dim+1}` are legal and
/// have zero columns or rows.
pub fn boundary_matrix(k: &SimplicialComplex, d: isize) -> Result<IntegerMatrix, HomologyError> {
    if d < -1 || d > k.dim() + 1 {
        return Err(HomologyError::DimensionOutOfRange(d, k.dim()));
    }
    let domain = k.faces_of_dim(d);
    let codomain = k.faces_of_dim(d - 1);
    let mut m = IntegerMatrix::zero(codomain.len(), domain.len());
    for (j, face) in domain.iter().enumerate() {
        for p in 0..face.len() {
            let sub = face.facet(p);
            let i = codomain.binary_search(&sub).expect("complex is downward closed");
            m.set(i, j, if p % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

fn sparse_boundary(k: &SimplicialComplex, d: isize) -> sparse::SparseIntMatrix {
    let domain = k.faces_of_dim(d);
    let codomain = k.faces_of_dim(d - 1);
    let mut m = sparse::SparseIntMatrix::new(codomain.len(), domain.len());
    for (j, face) in domain.iter().enumerate() {
        for p in 0..face.len() {
            let sub = face.facet(p);
            let i = codomain.binary_search(&sub).expect("complex is downward closed");
            m.set_unit(i, j, if p % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

fn check_window(k: &SimplicialComplex, lo: isize, hi: isize) -> Result<(), HomologyError> {
    if lo < 0 || lo > hi {
        return Err(HomologyError::BadWindow { lo, hi });
    }
    if let Some(t) = k.truncated_at() {
        if hi + 1 > t {
            return Err(HomologyError::WindowTruncated { needed: hi + 1, truncated: t });
        }
    }
    Ok(())
}

/// Reduced integer homology over `[lo, hi]`.
pub fn reduced_homology(
    k: &SimplicialComplex,
    lo: isize,
    hi: isize,
) -> Result<HomologySummary, HomologyError> {
    reduced_homology_threaded(k, lo, hi, 1)
}

/// As `reduced_homology`, reducing boundary matrices for different dimensions
/// on up to `threads` workers. The result does not depend on `threads`.
pub fn reduced_homology_threaded(
    k: &SimplicialComplex,
    lo: isize,
    hi: isize,
    threads: usize,
) -> Result<HomologySummary, HomologyError> {
    check_window(k, lo, hi)?;
    let dims: Vec<isize> = (lo..=hi + 1).collect();
    let reductions = reduce_many(k, &dims, threads.max(1));
    let mut groups = BTreeMap::new();
    for d in lo..=hi {
        let here = &reductions[&d];
        let above = &reductions[&(d + 1)];
        let f_d = k.faces_of_dim(d).len();
        let rank = f_d - here.rank - above.rank;
        let torsion: Vec<BigUint> = above
            .invariant_factors
            .iter()
            .filter(|f| **f > BigUint::from(1u32))
            .cloned()
            .collect();
        groups.insert(d, HomologyGroup { rank, torsion });
    }
    Ok(HomologySummary { lo, hi, groups })
}

fn reduce_many(
    k: &SimplicialComplex,
    dims: &[isize],
    threads: usize,
) -> BTreeMap<isize, SmithNormalForm> {
    if threads <= 1 || dims.len() <= 1 {
        return dims.iter().map(|&d| (d, sparse::reduce(sparse_boundary(k, d)))).collect();
    }
    let next = Mutex::new(0usize);
    let results: Mutex<BTreeMap<isize, SmithNormalForm>> = Mutex::new(BTreeMap::new());
    std::thread::scope(|scope| {
        for _ in 0..threads.min(dims.len()) {
            scope.spawn(|| loop {
                let mine = {
                    let mut guard = next.lock().unwrap();
                    let i = *guard;
                    *guard += 1;
                    i
                };
                let Some(&d) = dims.get(mine) else { break };
                let reduced = sparse::reduce(sparse_boundary(k, d));
                results.lock().unwrap().insert(d, reduced);
            });
        }
    });
    results.into_inner().unwrap()
}

/// Mod-2 Betti numbers over `[lo, hi]`: the independent fast oracle used to
/// cross-check the integral answer through universal coefficients.
pub fn betti_mod2(
    k: &SimplicialComplex,
    lo: isize,
    hi: isize,
) -> Result<Vec<usize>, HomologyError> {
    check_window(k, lo, hi)?;
    let rank2 = |d: isize| {
        let domain = k.faces_of_dim(d);
        let codomain = k.faces_of_dim(d - 1);
        let mut rows = vec![std::collections::BTreeSet::new(); codomain.len()];
        for (j, face) in domain.iter().enumerate() {
            for p in 0..face.len() {
                let sub = face.facet(p);
                let i = codomain.binary_search(&sub).expect("complex is downward closed");
                rows[i].insert(j);
            }
        }
        sparse::rank_mod2(rows, domain.len())
    };
    let mut ranks: BTreeMap<isize, usize> = BTreeMap::new();
    for d in lo..=hi + 1 {
        ranks.insert(d, rank2(d));
    }
    Ok((lo..=hi)
        .map(|d| k.faces_of_dim(d).len() - ranks[&d] - ranks[&(d + 1)])
        .collect())
}

/// Universal-coefficients check: the mod-2 Betti number in degree `d` must
/// equal `rank H~_d` plus the even torsion counts of degrees `d` and `d-1`.
/// Degrees whose `d-1` torsion lies outside the window are skipped.
pub fn universal_coefficients_consistent(hom: &HomologySummary, betti2: &[usize]) -> bool {
    let (lo, hi) = hom.window();
    let even = |d: isize| {
        hom.group(d).map(|g| g.torsion.iter().filter(|t| !t.bit(0)).count())
    };
    for d in lo..=hi {
        let Some(g) = hom.group(d) else { return false };
        let Some(e_here) = even(d) else { return false };
        let e_below = if d - 1 < lo { None } else { even(d - 1) };
        if d == lo && lo > 0 {
            // torsion of the degree below is unknown; cannot confirm
            continue;
        }
        let expected = g.rank + e_here + e_below.unwrap_or(0);
        if betti2[(d - lo) as usize] != expected {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{independence_complex, EnumerationOptions, Simplex, SimplicialComplex};
    use crate::graph::Graph;

    fn ind(g: &Graph, r: usize) -> SimplicialComplex {
        independence_complex(g, r, &EnumerationOptions::default()).unwrap()
    }

    fn full_homology(k: &SimplicialComplex) -> HomologySummary {
        reduced_homology(k, 0, k.dim().max(0)).unwrap()
    }

    #[test]
    fn augmentation_row() {
        let k = SimplicialComplex::from_faces(
            3,
            (0..3).map(|v| Simplex::new(vec![v])),
        );
        let d0 = boundary_matrix(&k, 0).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (1, 3));
        for j in 0..3 {
            assert_eq!(d0.get(0, j), &num_bigint::BigInt::from(1));
        }
        // degree -1 maps the empty face into nothing
        let dm1 = boundary_matrix(&k, -1).unwrap();
        assert_eq!((dm1.rows(), dm1.cols()), (0, 1));
        assert!(boundary_matrix(&k, -2).is_err());
    }

    #[test]
    fn edge_boundary_signs() {
        let k = SimplicialComplex::from_maximal(2, vec![Simplex::new(vec![0, 1])]);
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (2, 1));
        assert_eq!(d1.get(0, 0), &num_bigint::BigInt::from(-1)); // row for {0}
        assert_eq!(d1.get(1, 0), &num_bigint::BigInt::from(1)); // row for {1}
    }

    #[test]
    fn boundary_composition_vanishes() {
        let k = ind(&Graph::grid(2, 3), 2);
        for d in 0..=k.dim() {
            let a = boundary_matrix(&k, d).unwrap();
            let b = boundary_matrix(&k, d + 1).unwrap();
            // (a * b)[i][j] = sum_t a[i][t] b[t][j]
            for i in 0..a.rows() {
                for j in 0..b.cols() {
                    let mut acc = num_bigint::BigInt::from(0);
                    for t in 0..a.cols() {
                        acc += a.get(i, t) * b.get(t, j);
                    }
                    assert_eq!(acc, num_bigint::BigInt::from(0));
                }
            }
        }
        assert!(boundary_matrix(&k, k.dim() + 2).is_err());
    }

    #[test]
    fn spheres_and_cones() {
        // Ind_2(C_4): wedge of three 1-spheres
        let k = ind(&Graph::cycle(4).unwrap(), 2);
        let hom = full_homology(&k);
        assert_eq!(hom.group(1), Some(&HomologyGroup::free(3)));
        assert!(hom.group(0).unwrap().is_trivial());

        // Ind_1(C_3): two points' worth of reduced H_0
        let hom = full_homology(&ind(&Graph::cycle(3).unwrap(), 1));
        assert_eq!(hom.group(0), Some(&HomologyGroup::free(2)));

        // full simplex on 4 vertices: contractible
        let full = ind(&Graph::complete_multipartite(&[4]).unwrap(), 4);
        assert!(full_homology(&full).is_trivial());
    }

    #[test]
    fn torsion_detected() {
        // Minimal triangulation of RP^2: six vertices, ten triangles.
        let rp2 = [
            [0, 1, 2], [0, 2, 3], [0, 1, 5], [0, 3, 4], [0, 4, 5],
            [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5],
        ];
        let k = SimplicialComplex::from_maximal(
            6,
            rp2.iter().map(|t| Simplex::new(t.to_vec())),
        );
        let hom = full_homology(&k);
        let h1 = hom.group(1).unwrap();
        assert_eq!(h1.rank, 0);
        assert_eq!(h1.torsion, vec![BigUint::from(2u32)]);
        assert!(hom.group(2).unwrap().is_trivial());

        let b2 = betti_mod2(&k, 0, 2).unwrap();
        assert_eq!(b2, vec![0, 1, 1]);
        assert!(universal_coefficients_consistent(&hom, &b2));
    }

    #[test]
    fn join_of_two_zero_spheres_is_a_circle() {
        let s0 = SimplicialComplex::from_faces(
            2,
            vec![Simplex::new(vec![0]), Simplex::new(vec![1])],
        );
        let square = s0.join(&s0);
        let hom = full_homology(&square);
        assert_eq!(hom.group(1), Some(&HomologyGroup::free(1)));
        assert!(hom.group(0).unwrap().is_trivial());
    }

    #[test]
    fn betti_mod2_small_cases() {
        let two_points = SimplicialComplex::from_faces(
            2,
            vec![Simplex::new(vec![0]), Simplex::new(vec![1])],
        );
        assert_eq!(betti_mod2(&two_points, 0, 0).unwrap(), vec![1]);

        let triangle = SimplicialComplex::from_maximal(
            3,
            vec![
                Simplex::new(vec![0, 1]),
                Simplex::new(vec![1, 2]),
                Simplex::new(vec![0, 2]),
            ],
        );
        assert_eq!(betti_mod2(&triangle, 0, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn euler_agreement() {
        for (g, r) in [
            (Graph::cycle(6).unwrap(), 1),
            (Graph::path(7), 2),
            (Graph::grid(2, 3), 2),
        ] {
            let k = ind(&g, r);
            let hom = full_homology(&k);
            let mut alternating = 0i64;
            for d in 0..=k.dim().max(0) {
                let rank = hom.group(d).unwrap().rank as i64;
                alternating += if d % 2 == 0 { rank } else { -rank };
            }
            assert_eq!(alternating, k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn windows_and_truncation() {
        let g = Graph::cycle(8).unwrap();
        let full = ind(&g, 2);
        let hom_full = full_homology(&full);
        let cut = independence_complex(
            &g,
            2,
            &EnumerationOptions { max_dim: Some(3), face_cap: 1 << 24 },
        )
        .unwrap();
        let windowed = reduced_homology(&cut, 0, 2).unwrap();
        for d in 0..=2 {
            assert_eq!(windowed.group(d), hom_full.group(d));
        }
        assert_eq!(windowed.group(5), None);
        assert_eq!(
            reduced_homology(&cut, 0, 3).unwrap_err(),
            HomologyError::WindowTruncated { needed: 4, truncated: 3 }
        );
        assert!(matches!(
            reduced_homology(&full, 2, 1),
            Err(HomologyError::BadWindow { .. })
        ));
    }

    #[test]
    fn threaded_matches_sequential() {
        let k = ind(&Graph::grid(2, 4), 3);
        let seq = reduced_homology(&k, 0, k.dim()).unwrap();
        let par = reduced_homology_threaded(&k, 0, k.dim(), 4).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn report_format() {
        let k = ind(&Graph::cycle(4).unwrap(), 2);
        let hom = full_homology(&k);
        let report = hom.report();
        assert!(report.contains("1: rank=3 torsion=[]"));
        assert_eq!(format!("{}", hom.group(1).unwrap()), "Z^3");
    }
}
