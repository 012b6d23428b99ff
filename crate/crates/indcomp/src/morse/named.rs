//! Element-matching constructions for whiskered graphs, complete
//! multipartite graphs, and perfect m-ary trees. Each runs the generic
//! matching sequence with the vertex list its theorem prescribes and checks
//! the surviving cells against the stated count.

use std::collections::BTreeMap;

use crate::complex::{independence_complex, EnumerationOptions, SimplicialComplex};
use crate::formulas::{binomial, decompose_r};
use crate::graph::{mary_tree_index, mary_tree_vertex_count, Graph, Label};

use super::{element_matching_sequence, MorseError, MorseResult};

fn expect_counts(
    what: &str,
    result: &MorseResult,
    expected: BTreeMap<isize, usize>,
) -> Result<(), MorseError> {
    if result.counts_by_dim() != expected {
        return Err(MorseError::Internal(format!(
            "{what}: critical counts {:?}, expected {expected:?}",
            result.counts_by_dim()
        )));
    }
    Ok(())
}

fn count_from(b: num_bigint::BigUint) -> Result<usize, MorseError> {
    usize::try_from(&b).map_err(|_| MorseError::Internal("critical count overflows usize".into()))
}

/// The matching on `Ind_r(W(g))` that pairs along the whisker leaves
/// `b_1, ..., b_n` in order. Needs `g` connected and nonempty.
pub fn whisker_matching(g: &Graph, r: usize) -> Result<MorseResult, MorseError> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return Err(MorseError::Hypothesis(
            "whisker matching needs a nonempty connected base graph".into(),
        ));
    }
    assert!(r >= 1);
    let w = g.whisker_all();
    let k = independence_complex(&w, r, &EnumerationOptions::default())
        .expect("whiskered complexes stay under the default cap");
    let leaves: Vec<usize> = (n..2 * n).collect();
    let (m, _) = element_matching_sequence(&k, &leaves)?;
    let result = MorseResult::assemble(k, m)?;
    let mut expected = BTreeMap::new();
    if n <= r && r < 2 * n {
        let t = count_from(binomial(n as i64 - 1, r as i64 - n as i64))?;
        if t > 0 {
            expected.insert(r as isize - 1, t);
        }
    }
    expect_counts("whiskered graph", &result, expected)?;
    Ok(result)
}

/// The matching on `Ind_r(K_{m_1,...,m_s})` that pairs along the first
/// vertex of each part. Needs at least two parts.
pub fn multipartite_matching(parts: &[usize], r: usize) -> Result<MorseResult, MorseError> {
    if parts.len() < 2 {
        return Err(MorseError::Hypothesis(
            "multipartite matching needs at least two parts".into(),
        ));
    }
    assert!(r >= 1);
    let g = Graph::complete_multipartite(parts)
        .map_err(|e| MorseError::Hypothesis(e.to_string()))?;
    let k = independence_complex(&g, r, &EnumerationOptions::default())
        .expect("multipartite complexes stay under the default cap");
    let mut firsts = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for &m in parts {
        firsts.push(offset);
        offset += m;
    }
    let (m, _) = element_matching_sequence(&k, &firsts)?;
    let result = MorseResult::assemble(k, m)?;
    let total: usize = parts.iter().sum();
    let mut t = binomial(total as i64 - 1, r as i64);
    for &m in parts {
        t -= binomial(m as i64 - 1, r as i64);
    }
    let t = count_from(t)?;
    let mut expected = BTreeMap::new();
    if t > 0 {
        expected.insert(r as isize - 1, t);
    }
    expect_counts("complete multipartite graph", &result, expected)?;
    Ok(result)
}

/// Vertex indices of the leftmost grandchild-line leaves
/// `a_{h,1}, a_{h,m+1}, ..., a_{h,m^h-(m-1)}` of `B_h^m`.
fn leftmost_leaves(m: usize, h: usize) -> Vec<usize> {
    if h == 0 {
        return vec![0];
    }
    (0..m.pow((h - 1) as u32))
        .map(|i| mary_tree_index(m, h, m * i + 1))
        .collect()
}

/// The element-matching sequence on `Ind_r(B_h^m)` over the leftmost leaves,
/// in the regime where `r` reaches the internal-vertex count
/// `(m^h - 1)/(m - 1)`.
pub fn tree_matching(m: usize, h: usize, r: usize) -> Result<MorseResult, MorseError> {
    assert!(m >= 2 && r >= 1);
    let internal = (m.pow(h as u32) - 1) / (m - 1);
    if r < internal {
        return Err(MorseError::Hypothesis(format!(
            "tree matching needs r >= (m^h - 1)/(m - 1) = {internal}, got {r}"
        )));
    }
    let tree = Graph::perfect_mary_tree(m, h);
    let k = independence_complex(&tree, r, &EnumerationOptions::default())
        .expect("tree complexes stay under the default cap");
    let (matching, _) = element_matching_sequence(&k, &leftmost_leaves(m, h))?;
    let result = MorseResult::assemble(k, matching)?;
    let mut expected = BTreeMap::new();
    if r < mary_tree_vertex_count(m, h) {
        let s = r - internal;
        let t = count_from(binomial(m.pow(h as u32) as i64 - 1, s as i64))?;
        if t > 0 {
            expected.insert(r as isize - 1, t);
        }
    }
    expect_counts("perfect m-ary tree", &result, expected)?;
    Ok(result)
}

/// The collapse of `Ind_r(B_h^m)` onto the faces avoiding depth
/// `h - (t + 1)`, where `r = (m^t - 1)/(m - 1) + s`.
///
/// The leftmost-leaf sequence, restricted to the faces that touch that
/// depth, matches all of them perfectly; the untouched faces are then
/// exactly the subcomplex `Ind_r(B_h^m - V_{h-(t+1)})`, onto which the
/// complex simplicially collapses.
pub fn tree_collapse(m: usize, h: usize, r: usize) -> Result<SimplicialComplex, MorseError> {
    assert!(m >= 2 && r >= 1);
    let (t, _) = decompose_r(m, r);
    if h <= t {
        return Err(MorseError::Hypothesis(format!(
            "tree collapse needs h > t; r = {r} decomposes with t = {t} >= h = {h}"
        )));
    }
    let tree = Graph::perfect_mary_tree(m, h);
    let k = independence_complex(&tree, r, &EnumerationOptions::default())
        .expect("tree complexes stay under the default cap");
    let removed_depth = h - (t + 1);
    let touches_level = |f: &crate::complex::Simplex| {
        f.vertices().iter().any(|&v| {
            matches!(
                tree.label(v),
                Some(&Label::Tree { depth, .. }) if depth == removed_depth
            )
        })
    };
    // element-matching sequence on the upward-closed family of faces that
    // meet the doomed depth; it must clear the family completely
    let mut alive: std::collections::BTreeSet<_> =
        k.all_faces().filter(|f| touches_level(f)).cloned().collect();
    let mut pairs = Vec::new();
    for x in leftmost_leaves(m, h) {
        pairs.extend(super::element_matching_step(&mut alive, x));
    }
    if !alive.is_empty() {
        return Err(MorseError::Internal(format!(
            "{} faces touching depth {removed_depth} were left unmatched",
            alive.len()
        )));
    }
    let result = MorseResult::assemble(k, super::Matching::new(pairs))?;
    debug_assert!(result.critical.iter().all(|f| !touches_level(f)));
    let sub = SimplicialComplex::from_faces(tree.vertex_count(), result.critical.clone());
    debug_assert!(sub.is_downward_closed());
    Ok(sub)
}
