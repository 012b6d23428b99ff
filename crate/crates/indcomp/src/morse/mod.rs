//! Discrete Morse machinery on face posets: partial matchings, the acyclicity
//! audit, element-matching sequences, the patchwork combinator, and the named
//! matchings built for specific graph families.
//!
//! Matchings here are explicit face-pair sets rather than implicit rules, so
//! the one generic cycle checker audits every construction the same way.

mod cycle;
mod named;
mod path;

pub use cycle::cycle_morse_matching;
pub use named::{multipartite_matching, tree_collapse, tree_matching, whisker_matching};
pub use path::{path_critical_cell, path_perfect_matching};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::homology::HomologySummary;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("pair ({lower}, {upper}) is not a covering relation")]
    NotCovering { lower: Simplex, upper: Simplex },
    #[error("face {0} appears in more than one pair")]
    DuplicateFace(Simplex),
    #[error("face {0} is outside the matching domain")]
    OutsideDomain(Simplex),
    #[error("vertex {0} is not in the ground set")]
    VertexNotInGround(usize),
    #[error("fiber map is not order-preserving at covering pair ({lower}, {upper})")]
    OrderViolation { lower: Simplex, upper: Simplex },
    #[error("matching pair ({lower}, {upper}) crosses fibers")]
    PairCrossesFibers { lower: Simplex, upper: Simplex },
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("construction diverged from the expected critical cells: {0}")]
    Internal(String),
    #[error("homology window [{lo}, {hi}] does not cover the critical dimensions")]
    WindowMismatch { lo: isize, hi: isize },
}

/// A partial matching on a face poset: pairs `(s, t)` with `t` covering `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(Simplex, Simplex)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(Simplex, Simplex)>) -> Matching {
        pairs.sort_unstable_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        Matching { pairs }
    }

    pub fn empty() -> Matching {
        Matching { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Disjoint union; the caller asserts the operands pair different faces.
    pub fn merged(parts: impl IntoIterator<Item = Matching>) -> Matching {
        Matching::new(parts.into_iter().flat_map(|m| m.pairs).collect())
    }

    pub fn pairs_face(&self, f: &Simplex) -> bool {
        self.pairs.iter().any(|(a, b)| a == f || b == f)
    }

    /// Export format: one `s -> t` line per pair.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.pairs {
            let _ = writeln!(out, "{a} -> {b}");
        }
        out
    }
}

/// Outcome of a Morse construction: the complex it lives on, the matching,
/// and everything left unmatched.
#[derive(Clone, Debug)]
pub struct MorseResult {
    pub complex: SimplicialComplex,
    pub matching: Matching,
    /// Unmatched faces in (dimension, lexicographic) order; includes the
    /// empty simplex when it is unmatched.
    pub critical: Vec<Simplex>,
    pub empty_face_paired: bool,
}

impl MorseResult {
    pub(crate) fn assemble(
        complex: SimplicialComplex,
        matching: Matching,
    ) -> Result<MorseResult, MorseError> {
        let mut matched = BTreeSet::new();
        for (a, b) in matching.pairs() {
            matched.insert(a.clone());
            matched.insert(b.clone());
        }
        let mut critical: Vec<Simplex> = complex
            .all_faces()
            .filter(|f| !matched.contains(*f))
            .cloned()
            .collect();
        critical.sort_unstable_by_key(|f| (f.len(), f.clone()));
        let empty_face_paired = matched.contains(&Simplex::empty());
        let result = MorseResult { complex, matching, critical, empty_face_paired };
        match result.verify()? {
            true => Ok(result),
            false => Err(MorseError::Internal("matching has a directed cycle".into())),
        }
    }

    /// Critical-cell counts per dimension, exactly as found (the empty face
    /// counts at dimension -1).
    pub fn counts_by_dim(&self) -> BTreeMap<isize, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.critical {
            *counts.entry(f.dim()).or_insert(0) += 1;
        }
        counts
    }

    /// Cells of the collapsed complex: critical cells of dimension >= 0 plus
    /// one extra 0-cell when the empty simplex was paired.
    pub fn cell_counts(&self) -> BTreeMap<isize, usize> {
        let mut counts: BTreeMap<isize, usize> = self
            .counts_by_dim()
            .into_iter()
            .filter(|&(d, _)| d >= 0)
            .collect();
        if self.empty_face_paired {
            *counts.entry(0).or_insert(0) += 1;
        }
        counts
    }

    /// Re-run the acyclicity audit over the full face poset.
    pub fn verify(&self) -> Result<bool, MorseError> {
        let domain: Vec<Simplex> = self.complex.all_faces().cloned().collect();
        verify_acyclic(&domain, &self.matching)
    }

    /// Matching plus critical cells in the text export format.
    pub fn export_text(&self) -> String {
        let mut out = self.matching.export_text();
        out.push_str("critical:\n");
        for f in &self.critical {
            let _ = writeln!(out, "{f}");
        }
        out
    }
}

/// Checks that `m` is a valid partial matching on `domain` and that the
/// matched Hasse diagram (matched edges up, all other covering edges down)
/// has no directed cycle. `Ok(false)` means a cycle; malformed input is an
/// error, reported distinctly.
pub fn verify_acyclic(domain: &[Simplex], m: &Matching) -> Result<bool, MorseError> {
    let index: HashMap<&Simplex, usize> =
        domain.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut partner = vec![usize::MAX; domain.len()];
    for (a, b) in m.pairs() {
        if !(a.len() + 1 == b.len() && a.is_face_of(b)) {
            return Err(MorseError::NotCovering { lower: a.clone(), upper: b.clone() });
        }
        let (&ia, &ib) = match (index.get(a), index.get(b)) {
            (Some(ia), Some(ib)) => (ia, ib),
            (None, _) => return Err(MorseError::OutsideDomain(a.clone())),
            (_, None) => return Err(MorseError::OutsideDomain(b.clone())),
        };
        for i in [ia, ib] {
            if partner[i] != usize::MAX {
                return Err(MorseError::DuplicateFace(domain[i].clone()));
            }
        }
        partner[ia] = ib;
        partner[ib] = ia;
    }
    let matched_up: HashMap<usize, usize> = m
        .pairs()
        .iter()
        .map(|(a, b)| (index[a], index[b]))
        .collect();
    // successors: up along the matched edge, down along every other covering
    let succ = |i: usize, out: &mut Vec<usize>| {
        out.clear();
        if let Some(&up) = matched_up.get(&i) {
            out.push(up);
        }
        let f = &domain[i];
        for p in 0..f.len() {
            let sub = f.facet(p);
            if let Some(&j) = index.get(&sub) {
                if matched_up.get(&j) != Some(&i) {
                    out.push(j);
                }
            }
        }
    };
    // iterative three-color depth-first search
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; domain.len()];
    let mut nbuf = Vec::new();
    for start in 0..domain.len() {
        if color[start] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = GRAY;
        while let Some(&mut (node, cursor)) = stack.last_mut() {
            succ(node, &mut nbuf);
            if cursor >= nbuf.len() {
                color[node] = BLACK;
                stack.pop();
                continue;
            }
            stack.last_mut().expect("frame present").1 += 1;
            let next = nbuf[cursor];
            match color[next] {
                GRAY => return Ok(false),
                WHITE => {
                    color[next] = GRAY;
                    stack.push((next, 0));
                }
                _ => {}
            }
        }
    }
    Ok(true)
}

/// One element matching inside an arbitrary face collection: pairs
/// `s <-> s + {x}` whenever both lie in `alive`, and removes the paired faces.
pub(crate) fn element_matching_step(alive: &mut BTreeSet<Simplex>, x: usize) -> Vec<(Simplex, Simplex)> {
    let mut pairs = Vec::new();
    let lowers: Vec<Simplex> = alive
        .iter()
        .filter(|f| !f.contains_vertex(x))
        .cloned()
        .collect();
    for lower in lowers {
        let upper = lower.with_vertex(x);
        if alive.contains(&upper) {
            alive.remove(&lower);
            alive.remove(&upper);
            pairs.push((lower, upper));
        }
    }
    pairs
}

/// The element-matching sequence: starting from all faces of `k`, match with
/// `xs[0]`, drop everything touched, match the remainder with `xs[1]`, and so
/// on. Returns the union matching and the surviving faces.
pub fn element_matching_sequence(
    k: &SimplicialComplex,
    xs: &[usize],
) -> Result<(Matching, Vec<Simplex>), MorseError> {
    let mut seen = BTreeSet::new();
    for &x in xs {
        if x >= k.ground_set() {
            return Err(MorseError::VertexNotInGround(x));
        }
        if !seen.insert(x) {
            return Err(MorseError::Hypothesis(format!("vertex {x} repeated")));
        }
    }
    let mut alive: BTreeSet<Simplex> = k.all_faces().cloned().collect();
    let mut pairs = Vec::new();
    for &x in xs {
        pairs.extend(element_matching_step(&mut alive, x));
    }
    let mut remaining: Vec<Simplex> = alive.into_iter().collect();
    remaining.sort_unstable_by_key(|f| (f.len(), f.clone()));
    Ok((Matching::new(pairs), remaining))
}

/// Patchwork: glue per-fiber matchings along an order-preserving map into a
/// finite chain. Verifies that every covering pair inside `domain` respects
/// the fiber order and that no matched pair crosses fibers, which is what the
/// acyclicity of the union needs.
pub fn patchwork(
    domain: &[Simplex],
    fiber_of: &dyn Fn(&Simplex) -> usize,
    fibers: Vec<Matching>,
) -> Result<Matching, MorseError> {
    let index: std::collections::HashSet<&Simplex> = domain.iter().collect();
    for f in domain {
        let here = fiber_of(f);
        for p in 0..f.len() {
            let sub = f.facet(p);
            if index.contains(&sub) && fiber_of(&sub) > here {
                return Err(MorseError::OrderViolation { lower: sub, upper: f.clone() });
            }
        }
    }
    for m in &fibers {
        for (a, b) in m.pairs() {
            if fiber_of(a) != fiber_of(b) {
                return Err(MorseError::PairCrossesFibers { lower: a.clone(), upper: b.clone() });
            }
        }
    }
    Ok(Matching::merged(fibers))
}

/// Morse-theoretic consistency of a matching against computed homology:
/// every cell count must dominate `rank + torsion(d) + torsion(d-1)` of the
/// (unreduced) homology, and the alternating cell sum must equal the Euler
/// characteristic.
pub fn morse_inequality_check(
    res: &MorseResult,
    hom: &HomologySummary,
) -> Result<bool, MorseError> {
    let cells = res.cell_counts();
    let max_dim = cells.keys().max().copied().unwrap_or(0);
    let (lo, hi) = hom.window();
    if lo > 0 || hi < max_dim {
        return Err(MorseError::WindowMismatch { lo, hi });
    }
    let mut euler_cells = 0i64;
    for (&d, &c) in &cells {
        euler_cells += if d % 2 == 0 { c as i64 } else { -(c as i64) };
    }
    // beyond the top critical dimension homology must vanish; the window may
    // extend past it, which only adds zero checks below
    let mut ok = euler_cells == res.complex.reduced_euler_characteristic() + 1;
    for d in 0..=hi {
        let g = hom.group(d).expect("window covers d");
        let torsion_below = if d == 0 {
            0
        } else {
            hom.group(d - 1).map_or(0, |g| g.torsion.len())
        };
        // unreduced rank: reduced rank plus 1 in degree 0
        let unreduced = g.rank + usize::from(d == 0);
        let needed = unreduced + g.torsion.len() + torsion_below;
        if cells.get(&d).copied().unwrap_or(0) < needed {
            ok = false;
        }
    }
    Ok(ok)
}
