//! The composite acyclic matching on `Ind_{d-2}(C_n)` for `n >= d >= 3`.
//!
//! Writing `n = dk + t` with `0 <= t < d`, faces are fibered by the smallest
//! vertex among `d, 2d, ..., dk` they contain. Fibers of multiples past the
//! first admit perfect element matchings. The fiber of `d` splits by the
//! component of `d` inside the face: each possible component is an arc, and
//! deleting the arc together with its two neighbors leaves a relabeled path
//! whose perfect matching lifts. An extra matching pairs off the leftover
//! cells of consecutive arc lengths; the multiple-free fiber is a disjoint
//! union of paths and is matched factor by factor. The survivors are exactly
//! `d - 1` cells of dimension `dk - 2k - 1` when `t = 0`, and one cell of
//! dimension `dk - 2k + t - 2` otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::complex::{independence_complex, EnumerationOptions, Simplex};
use crate::graph::Graph;

use super::path::path_core;
use super::{element_matching_step, Matching, MorseError, MorseResult};

fn relabel(f: &Simplex, map: &[usize]) -> Simplex {
    Simplex::new(f.vertices().iter().map(|&p| map[p]).collect())
}

pub fn cycle_morse_matching(n: usize, d: usize) -> Result<MorseResult, MorseError> {
    if d < 3 || n < d {
        return Err(MorseError::Hypothesis(format!(
            "cycle matching needs n >= d >= 3, got n={n}, d={d}"
        )));
    }
    let g = Graph::cycle(n).expect("n >= 3");
    let complex = independence_complex(&g, d - 2, &EnumerationOptions::default())
        .expect("cycle complexes stay under the default cap");
    let k = n / d;
    let t = n - d * k;
    // 0-based positions of the 1-based multiples d, 2d, ..., dk
    let multiple = |j: usize| j * d - 1;
    let fiber_rank = |f: &Simplex| -> usize {
        for j in 1..=k {
            if f.contains_vertex(multiple(j)) {
                return k + 1 - j;
            }
        }
        0
    };
    // pairs per fiber rank, glued through the patchwork combinator at the end
    let mut fiber_pairs: Vec<Vec<(Simplex, Simplex)>> = vec![Vec::new(); k + 1];

    // fibers of 2d, ..., dk: perfect element matchings
    let mut later_fibers: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); k + 1];
    for f in complex.all_faces() {
        let r = fiber_rank(f);
        if (1..k).contains(&r) {
            later_fibers[r].insert(f.clone());
        }
    }
    for j in 2..=k {
        let x = d * (j - 1);
        let fiber = &mut later_fibers[k + 1 - j];
        fiber_pairs[k + 1 - j].extend(element_matching_step(fiber, x));
        if !fiber.is_empty() {
            return Err(MorseError::Internal(format!(
                "fiber of multiple {j} was not perfectly matched"
            )));
        }
    }

    // fiber of d: one lifted path matching per possible component arc,
    // collecting the critical cells per arc length for the follow-up pairing
    let mut arc_criticals: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for s in 1..=d - 2 {
        for i in 0..s {
            // run of s consecutive vertices containing d (0-based d-1)
            let a = (d - s + i + n) % n;
            let run = Simplex::new((0..s).map(|q| (a + q) % n).collect());
            let b = (a + s - 1) % n;
            let map: Vec<usize> = (0..n - s - 2).map(|p| (b + 2 + p) % n).collect();
            let core = path_core(n - s - 2, d);
            for (lo, hi) in &core.pairs {
                fiber_pairs[k]
                    .push((relabel(lo, &map).union(&run), relabel(hi, &map).union(&run)));
            }
            for c in &core.critical {
                arc_criticals
                    .entry(s)
                    .or_default()
                    .push(relabel(c, &map).union(&run));
            }
        }
    }

    // pair each arc-length t-2 survivor with its one-step left extension
    // among the arc-length t-1 survivors
    if t >= 3 {
        let longer: HashSet<Simplex> =
            arc_criticals.get(&(t - 1)).cloned().unwrap_or_default().into_iter().collect();
        for gamma in arc_criticals.get(&(t - 2)).cloned().unwrap_or_default() {
            // left endpoint of the component of vertex d
            let mut a = d - 1;
            while gamma.contains_vertex((a + n - 1) % n) {
                a = (a + n - 1) % n;
            }
            let extension = (a + n - 1) % n;
            let extended = gamma.with_vertex(extension);
            if !longer.contains(&extended) {
                return Err(MorseError::Internal(format!(
                    "expected {extended} among the longer-arc critical cells"
                )));
            }
            fiber_pairs[k].push((gamma, extended));
        }
    }

    // multiple-free fiber: a disjoint union of paths, one per arc between
    // consecutive multiples; match on the first factor that is not critical
    let mut factor_of = vec![usize::MAX; n];
    let mut partner_maps: Vec<HashMap<Simplex, Simplex>> = Vec::new();
    let mut critical_parts: Vec<HashSet<Simplex>> = Vec::new();
    for j in 1..=k {
        let len = if j < k { d - 1 } else { t + d - 1 };
        let start = (multiple(j) + 1) % n;
        let map: Vec<usize> = (0..len).map(|p| (start + p) % n).collect();
        for &v in &map {
            factor_of[v] = j - 1;
        }
        let core = path_core(len, d);
        let mut partners = HashMap::new();
        for (lo, hi) in &core.pairs {
            let (lo, hi) = (relabel(lo, &map), relabel(hi, &map));
            partners.insert(lo.clone(), hi.clone());
            partners.insert(hi, lo);
        }
        partner_maps.push(partners);
        critical_parts.push(core.critical.iter().map(|c| relabel(c, &map)).collect());
    }
    for f in complex.all_faces() {
        if fiber_rank(f) != 0 {
            continue;
        }
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
        for &v in f.vertices() {
            parts[factor_of[v]].push(v);
        }
        for (j, part) in parts.iter().enumerate() {
            let part = Simplex::new(part.clone());
            if critical_parts[j].contains(&part) {
                continue;
            }
            let partner_part = &partner_maps[j][&part];
            // emit each pair once, from its lower face
            if partner_part.len() > part.len() {
                let rest = Simplex::new(
                    f.vertices().iter().copied().filter(|&v| factor_of[v] != j).collect(),
                );
                fiber_pairs[0].push((f.clone(), rest.union(partner_part)));
            }
            break;
        }
    }

    // the fiber map is order-preserving and each piece stays inside its
    // fiber; patchwork checks both before taking the union
    let domain: Vec<Simplex> = complex.all_faces().cloned().collect();
    let matching = super::patchwork(
        &domain,
        &fiber_rank,
        fiber_pairs.into_iter().map(Matching::new).collect(),
    )?;
    let result = MorseResult::assemble(complex, matching)?;
    let expected: BTreeMap<isize, usize> = if t == 0 {
        BTreeMap::from([((d * k - 2 * k) as isize - 1, d - 1)])
    } else {
        BTreeMap::from([((d * k - 2 * k + t) as isize - 2, 1)])
    };
    if result.counts_by_dim() != expected {
        return Err(MorseError::Internal(format!(
            "cycle ({n}, {d}): critical counts {:?}, expected {expected:?}",
            result.counts_by_dim()
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_three_has_two_circles() {
        let res = cycle_morse_matching(6, 3).unwrap();
        assert_eq!(res.counts_by_dim(), BTreeMap::from([(1, 2)]));
        assert!(res.empty_face_paired);
    }

    #[test]
    fn seven_three_has_one_circle() {
        let res = cycle_morse_matching(7, 3).unwrap();
        assert_eq!(res.counts_by_dim(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn ten_four_lands_in_dimension_four() {
        let res = cycle_morse_matching(10, 4).unwrap();
        assert_eq!(res.counts_by_dim(), BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn smallest_cases() {
        // n = d: d - 1 cells of dimension d - 3
        for d in 3..=5 {
            let res = cycle_morse_matching(d, d).unwrap();
            assert_eq!(
                res.counts_by_dim(),
                BTreeMap::from([(d as isize - 3, d - 1)]),
                "d={d}"
            );
        }
    }

    #[test]
    fn extension_pairing_cases() {
        // t >= 3 exercises the arc-extension matching
        let res = cycle_morse_matching(11, 4).unwrap(); // k=2, t=3
        assert_eq!(res.counts_by_dim(), BTreeMap::from([(5, 1)]));
        let res = cycle_morse_matching(14, 5).unwrap(); // k=2, t=4
        assert_eq!(res.counts_by_dim(), BTreeMap::from([(8, 1)]));
    }

    #[test]
    fn rejects_small_n() {
        assert!(cycle_morse_matching(3, 4).is_err());
        assert!(cycle_morse_matching(5, 2).is_err());
    }
}
