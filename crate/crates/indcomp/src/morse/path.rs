//! The perfect acyclic matching on `Ind_{d-2}(P_n)`.
//!
//! Faces are fibered by the smallest vertex they contain among
//! `d, 2d, ..., dk` (1-based). Each such fiber admits a perfect element
//! matching using the vertex one short of the previous multiple; the fiber of
//! faces avoiding every multiple is handled by an element-matching sequence
//! on `1, d+1, 2d+1, ...`. The one face that can survive is the disjoint
//! union of the interior blocks `{di+2, ..., di+d-1}`, present exactly when
//! `n = dk` or `dk - 1`.

use std::collections::BTreeSet;

use crate::complex::{independence_complex, EnumerationOptions, Simplex, SimplicialComplex};
use crate::graph::Graph;

use super::{element_matching_step, Matching, MorseError, MorseResult};

/// Matching data for `Ind_{d-2}(P_m)` on 0-based path positions `0..m`.
/// `m = 0` is the complex whose only face is the empty simplex.
pub(crate) struct PathCore {
    pub complex: SimplicialComplex,
    pub pairs: Vec<(Simplex, Simplex)>,
    pub critical: Vec<Simplex>,
}

pub(crate) fn path_core(m: usize, d: usize) -> PathCore {
    assert!(d >= 3);
    if m == 0 {
        return PathCore {
            complex: SimplicialComplex::from_faces(0, vec![Simplex::empty()]),
            pairs: Vec::new(),
            critical: vec![Simplex::empty()],
        };
    }
    let complex = independence_complex(&Graph::path(m), d - 2, &EnumerationOptions::default())
        .expect("path complexes stay under the default cap");
    let k_down = m / d;
    let k_up = m.div_ceil(d);
    // rank 0 is the multiple-free fiber; containing an earlier multiple
    // ranks higher, so growing a face can only raise the rank
    let rank = |f: &Simplex| -> usize {
        for j in 1..=k_down {
            if f.contains_vertex(j * d - 1) {
                return k_down + 1 - j;
            }
        }
        0
    };
    let mut fibers: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); k_down + 1];
    for f in complex.all_faces() {
        fibers[rank(f)].insert(f.clone());
    }
    let mut pairs = Vec::new();
    for j in 1..=k_down {
        let x = d * (j - 1);
        pairs.extend(element_matching_step(&mut fibers[k_down + 1 - j], x));
    }
    for i in 0..k_up {
        pairs.extend(element_matching_step(&mut fibers[0], i * d));
    }
    let mut critical: Vec<Simplex> = fibers.into_iter().flatten().collect();
    critical.sort_unstable_by_key(|f| (f.len(), f.clone()));
    PathCore { complex, pairs, critical }
}

/// The face `{di+2, ..., di+d-1 : 0 <= i < k}` (1-based labels, 0-based
/// here), the unique critical cell when `n = dk` or `dk - 1`.
pub fn path_critical_cell(n: usize, d: usize) -> Option<Simplex> {
    assert!(d >= 3);
    let k = if n.is_multiple_of(d) {
        n / d
    } else if (n + 1).is_multiple_of(d) {
        (n + 1) / d
    } else {
        return None;
    };
    let mut verts = Vec::with_capacity(k * (d - 2));
    for i in 0..k {
        verts.extend(d * i + 1..=d * i + d - 2);
    }
    Some(Simplex::new(verts))
}

/// Perfect acyclic matching on `Ind_{d-2}(P_n)`.
pub fn path_perfect_matching(n: usize, d: usize) -> Result<MorseResult, MorseError> {
    if n < 1 || d < 3 {
        return Err(MorseError::Hypothesis(format!(
            "path matching needs n >= 1 and d >= 3, got n={n}, d={d}"
        )));
    }
    let core = path_core(n, d);
    let result = MorseResult::assemble(core.complex, Matching::new(core.pairs))?;
    let expected: Vec<Simplex> = path_critical_cell(n, d).into_iter().collect();
    if result.critical != expected {
        return Err(MorseError::Internal(format!(
            "path ({n}, {d}): critical cells {:?}, expected {:?}",
            result.critical, expected
        )));
    }
    Ok(result)
}
