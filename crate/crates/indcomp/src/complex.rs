//! Simplicial complexes with faces stratified by dimension, and the
//! enumeration of r-independence complexes.
//!
//! The empty simplex is a first-class face of dimension -1, since the Morse
//! constructions pair it like any other cell. Within each dimension faces are
//! kept in lexicographic order, which fixes the row and column order of every
//! boundary matrix.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexSubset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face count exceeded the configured cap of {cap}")]
    FaceCapExceeded { cap: usize },
    #[error("malformed complex text: {0}")]
    Parse(String),
}

/// A simplex: a strictly increasing (possibly empty) sequence of vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    verts: Vec<usize>,
}

impl Simplex {
    pub fn new(mut verts: Vec<usize>) -> Simplex {
        verts.sort_unstable();
        verts.dedup();
        Simplex { verts }
    }

    pub fn empty() -> Simplex {
        Simplex { verts: Vec::new() }
    }

    /// Dimension: one less than the number of vertices; the empty simplex has
    /// dimension -1.
    pub fn dim(&self) -> isize {
        self.verts.len() as isize - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn with_vertex(&self, v: usize) -> Simplex {
        match self.verts.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut verts = self.verts.clone();
                verts.insert(pos, v);
                Simplex { verts }
            }
        }
    }

    pub fn without_vertex(&self, v: usize) -> Simplex {
        let mut verts = self.verts.clone();
        if let Ok(pos) = verts.binary_search(&v) {
            verts.remove(pos);
        }
        Simplex { verts }
    }

    /// The face obtained by deleting the vertex at `position`.
    pub fn facet(&self, position: usize) -> Simplex {
        let mut verts = self.verts.clone();
        verts.remove(position);
        Simplex { verts }
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut verts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.verts.len() || j < other.verts.len() {
            match (self.verts.get(i), other.verts.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    verts.push(a);
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    verts.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    verts.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    verts.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    verts.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Simplex { verts }
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut j = 0;
        for &v in &self.verts {
            while j < other.verts.len() && other.verts[j] < v {
                j += 1;
            }
            if j == other.verts.len() || other.verts[j] != v {
                return false;
            }
            j += 1;
        }
        true
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verts.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.verts.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for Simplex {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Simplex, ComplexError> {
        let s = s.trim();
        if s == "-" {
            return Ok(Simplex::empty());
        }
        let verts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| ComplexError::Parse(format!("bad vertex `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Simplex::new(verts))
    }
}

/// Faces stratified by dimension. `by_dim[i]` holds the faces of dimension
/// `i - 1` in lexicographic order, so slot 0 is the empty simplex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    ground: usize,
    by_dim: Vec<Vec<Simplex>>,
    truncated_at: Option<isize>,
    provenance: Option<String>,
}

impl SimplicialComplex {
    /// Builds a complex from an explicit face list. The empty simplex is
    /// inserted whenever the list is nonempty. Downward closure is the
    /// caller's responsibility (`is_downward_closed` checks it).
    pub fn from_faces(ground: usize, faces: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for f in faces {
            let slot = f.len();
            if by_dim.len() <= slot {
                by_dim.resize(slot + 1, Vec::new());
            }
            by_dim[slot].push(f);
        }
        if !by_dim.is_empty() && by_dim[0].is_empty() {
            by_dim[0].push(Simplex::empty());
        }
        for bucket in &mut by_dim {
            bucket.sort_unstable();
            bucket.dedup();
        }
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex { ground, by_dim, truncated_at: None, provenance: None }
    }

    /// Builds the downward closure of the given generating faces.
    pub fn from_maximal(ground: usize, generators: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut seen = std::collections::HashSet::new();
        let mut queue: VecDeque<Simplex> = generators.into_iter().collect();
        while let Some(f) = queue.pop_front() {
            if !seen.insert(f.clone()) {
                continue;
            }
            for p in 0..f.len() {
                queue.push_back(f.facet(p));
            }
        }
        SimplicialComplex::from_faces(ground, seen)
    }

    pub fn ground_set(&self) -> usize {
        self.ground
    }

    /// Largest dimension with a face; -2 for the void complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 2
    }

    pub fn faces_of_dim(&self, d: isize) -> &[Simplex] {
        let slot = d + 1;
        if slot < 0 || slot as usize >= self.by_dim.len() {
            return &[];
        }
        &self.by_dim[slot as usize]
    }

    pub fn face_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, f: &Simplex) -> bool {
        self.face_index(f).is_some()
    }

    /// Position of `f` within its dimension bucket.
    pub fn face_index(&self, f: &Simplex) -> Option<usize> {
        let slot = f.len();
        self.by_dim.get(slot)?.binary_search(f).ok()
    }

    /// `Some(d)` when enumeration was cut off at dimension `d`; homology
    /// above `d - 1` is then unavailable.
    pub fn truncated_at(&self) -> Option<isize> {
        self.truncated_at
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    /// `f_d` for `d >= 0` (the empty face is not counted).
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().skip(1).map(Vec::len).collect()
    }

    /// Reduced Euler characteristic: `sum_d (-1)^d f_d - 1`, so a point
    /// scores 0 and two points score 1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi: i64 = -1;
        for (d, count) in self.f_vector().iter().enumerate() {
            let term = *count as i64;
            chi += if d % 2 == 0 { term } else { -term };
        }
        chi
    }

    /// Checks that every codimension-1 face of a stored face is stored.
    /// Exhaustive; intended for small complexes and tests.
    pub fn is_downward_closed(&self) -> bool {
        self.all_faces().all(|f| {
            (0..f.len()).all(|p| self.contains(&f.facet(p)))
        })
    }

    /// Faces of dimension at most `s`.
    pub fn skeleton(&self, s: isize) -> SimplicialComplex {
        let keep = self
            .by_dim
            .iter()
            .take((s + 2).max(0) as usize)
            .flatten()
            .cloned();
        let mut out = SimplicialComplex::from_faces(self.ground, keep);
        out.provenance = self.provenance.clone();
        out
    }

    /// Join: every union of a face of `self` with a face of `other`, the
    /// second ground set shifted past the first.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.ground;
        let mut faces = Vec::with_capacity(self.face_count() * other.face_count());
        for a in self.all_faces() {
            for b in other.all_faces() {
                let shifted = Simplex::new(b.vertices().iter().map(|&v| v + shift).collect());
                faces.push(a.union(&shifted));
            }
        }
        SimplicialComplex::from_faces(self.ground + other.ground, faces)
    }

    /// Export format: `dim_max` and `n_faces` header lines, then one face per
    /// line (comma-separated vertices, `-` for the empty face).
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dim_max {}\n", self.dim()));
        out.push_str(&format!("n_faces {}\n", self.face_count()));
        for f in self.all_faces() {
            out.push_str(&format!("{f}\n"));
        }
        out
    }

    pub fn parse_text(text: &str, ground: usize) -> Result<SimplicialComplex, ComplexError> {
        let mut faces = Vec::new();
        let mut n_faces: Option<usize> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("dim_max") {
                rest.trim()
                    .parse::<isize>()
                    .map_err(|_| ComplexError::Parse("bad dim_max".into()))?;
            } else if let Some(rest) = line.strip_prefix("n_faces") {
                n_faces = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| ComplexError::Parse("bad n_faces".into()))?,
                );
            } else {
                faces.push(line.parse::<Simplex>()?);
            }
        }
        if let Some(expected) = n_faces {
            if expected != faces.len() {
                return Err(ComplexError::Parse(format!(
                    "header promised {expected} faces, found {}",
                    faces.len()
                )));
            }
        }
        Ok(SimplicialComplex::from_faces(ground, faces))
    }
}

/// Limits applied while enumerating a complex.
#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Stop extending faces past this dimension and record the truncation.
    pub max_dim: Option<isize>,
    /// Abort with `FaceCapExceeded` past this many faces.
    pub face_cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_dim: None, face_cap: 50_000_000 }
    }
}

/// True iff every connected component of `G[s]` has at most `r` vertices.
pub fn is_r_independent(g: &Graph, s: &VertexSubset, r: usize) -> bool {
    if s.len() <= r {
        return true;
    }
    g.connected_components(s)
        .map(|comps| comps.iter().all(|c| c.len() <= r))
        .unwrap_or(false)
}

/// Enumerates `Ind_r(G)`: all r-independent subsets of the vertex set.
///
/// Depth-first over sorted vertex indices, extending each face only by larger
/// vertices; r-independence is hereditary, so pruning a failed extension is
/// sound. Faces come out in lexicographic order within each dimension.
pub fn independence_complex(
    g: &Graph,
    r: usize,
    opts: &EnumerationOptions,
) -> Result<SimplicialComplex, ComplexError> {
    assert!(r >= 1, "r-independence needs r >= 1");
    let n = g.vertex_count();
    let max_len = match opts.max_dim {
        Some(d) if d < -1 => 0,
        Some(d) => (d + 1) as usize,
        None => n,
    };
    let mut by_dim: Vec<Vec<Simplex>> = vec![vec![Simplex::empty()]];
    let mut count = 1usize;
    let mut face: Vec<usize> = Vec::new();
    // scratch buffers for the component walk
    let mut in_face = vec![false; n];
    let mut queue = VecDeque::new();
    let mut visited = vec![0u32; n];
    let mut stamp = 0u32;

    struct Dfs<'a> {
        g: &'a Graph,
        r: usize,
        max_len: usize,
        cap: usize,
        by_dim: &'a mut Vec<Vec<Simplex>>,
        count: &'a mut usize,
        face: &'a mut Vec<usize>,
        in_face: &'a mut Vec<bool>,
        queue: &'a mut VecDeque<usize>,
        visited: &'a mut Vec<u32>,
        stamp: &'a mut u32,
    }

    impl Dfs<'_> {
        /// Size of the component of `v` inside `face + {v}`; only this
        /// component can have grown past `r`.
        fn component_ok(&mut self, v: usize) -> bool {
            *self.stamp += 1;
            let stamp = *self.stamp;
            self.queue.clear();
            self.queue.push_back(v);
            self.visited[v] = stamp;
            let mut size = 0usize;
            while let Some(u) = self.queue.pop_front() {
                size += 1;
                if size > self.r {
                    return false;
                }
                for &w in self.g.neighbors(u) {
                    if (self.in_face[w] || w == v) && self.visited[w] != stamp {
                        self.visited[w] = stamp;
                        self.queue.push_back(w);
                    }
                }
            }
            true
        }

        fn extend(&mut self, from: usize) -> Result<(), ComplexError> {
            if self.face.len() >= self.max_len {
                return Ok(());
            }
            for v in from..self.g.vertex_count() {
                if !self.component_ok(v) {
                    continue;
                }
                self.face.push(v);
                self.in_face[v] = true;
                let slot = self.face.len();
                if self.by_dim.len() <= slot {
                    self.by_dim.resize(slot + 1, Vec::new());
                }
                self.by_dim[slot].push(Simplex::new(self.face.clone()));
                *self.count += 1;
                if *self.count > self.cap {
                    return Err(ComplexError::FaceCapExceeded { cap: self.cap });
                }
                self.extend(v + 1)?;
                self.in_face[v] = false;
                self.face.pop();
            }
            Ok(())
        }
    }

    Dfs {
        g,
        r,
        max_len,
        cap: opts.face_cap,
        by_dim: &mut by_dim,
        count: &mut count,
        face: &mut face,
        in_face: &mut in_face,
        queue: &mut queue,
        visited: &mut visited,
        stamp: &mut stamp,
    }
    .extend(0)?;

    while by_dim.last().is_some_and(Vec::is_empty) {
        by_dim.pop();
    }
    // the cutoff only bit if some face actually reached it; otherwise the
    // enumeration is complete and any homology window is fair game
    let reached_dim = by_dim.len() as isize - 2;
    let truncated = match opts.max_dim {
        Some(d) if (d + 1) < n as isize && reached_dim == d => Some(d),
        _ => None,
    };
    Ok(SimplicialComplex {
        ground: n,
        by_dim,
        truncated_at: truncated,
        provenance: Some(format!("Ind_{r} of a graph on {n} vertices")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn ind(g: &Graph, r: usize) -> SimplicialComplex {
        independence_complex(g, r, &EnumerationOptions::default()).unwrap()
    }

    /// All subsets of the vertex set, filtered through `is_r_independent`.
    fn naive_ind(g: &Graph, r: usize) -> Vec<Simplex> {
        let n = g.vertex_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if is_r_independent(g, &VertexSubset::new(verts.clone()), r) {
                out.push(Simplex::new(verts));
            }
        }
        out.sort_by_key(|f| (f.len(), f.clone()));
        out
    }

    #[test]
    fn figure_one_example() {
        // The 4-vertex graph with edges v1v2, v1v3, v1v4 (0-based: 0-1, 0-2, 0-3).
        let g = Graph::parse_edge_list("4 3\n0 1\n0 2\n0 3\n").unwrap();
        let k1 = ind(&g, 1);
        // maximal faces {v2,v3,v4} and {v1}
        assert!(k1.contains(&Simplex::new(vec![1, 2, 3])));
        assert!(!k1.contains(&Simplex::new(vec![0, 1])));
        let k2 = ind(&g, 2);
        for maximal in [vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2, 3]] {
            assert!(k2.contains(&Simplex::new(maximal)));
        }
        assert!(!k2.contains(&Simplex::new(vec![0, 1, 2])));
        assert_eq!(k2.dim(), 2);
    }

    #[test]
    fn big_r_gives_full_simplex() {
        let g = Graph::cycle(5).unwrap();
        let k = ind(&g, 5);
        assert_eq!(k.face_count(), 1 << 5);
        assert!(k.contains(&Simplex::new((0..5).collect())));
    }

    #[test]
    fn complete_graph_gives_skeleton() {
        let k = ind(&Graph::complete(5), 2);
        let full = ind(&Graph::complete_multipartite(&[5]).unwrap(), 5);
        let skel = full.skeleton(1);
        assert_eq!(
            k.all_faces().collect::<Vec<_>>(),
            skel.all_faces().collect::<Vec<_>>()
        );
    }

    #[test]
    fn matches_naive_enumeration() {
        for (g, rmax) in [
            (Graph::path(6), 4),
            (Graph::cycle(6).unwrap(), 3),
            (Graph::grid(2, 3), 3),
            (Graph::perfect_mary_tree(2, 2), 4),
            (Graph::complete_multipartite(&[3, 2]).unwrap(), 3),
        ] {
            for r in 1..=rmax {
                let fast: Vec<Simplex> = ind(&g, r).all_faces().cloned().collect();
                assert_eq!(fast, naive_ind(&g, r), "graph {g:?} r={r}");
            }
        }
    }

    #[test]
    fn downward_closed_and_low_subsets_present() {
        let g = Graph::grid(2, 3);
        for r in 1..=3 {
            let k = ind(&g, r);
            assert!(k.is_downward_closed());
            // every subset of size <= r is a face
            for mask in 0u32..(1 << 6) {
                let verts: Vec<usize> = (0..6).filter(|&v| mask >> v & 1 == 1).collect();
                if verts.len() <= r {
                    assert!(k.contains(&Simplex::new(verts)));
                }
            }
        }
    }

    #[test]
    fn join_identities() {
        let two_points = |g: usize| {
            SimplicialComplex::from_faces(
                g,
                vec![Simplex::new(vec![0]), Simplex::new(vec![1])],
            )
        };
        let s0 = two_points(2);
        let trivial = SimplicialComplex::from_faces(0, vec![Simplex::empty()]);
        let same = trivial.join(&s0);
        assert_eq!(same.f_vector(), s0.f_vector());

        // S^0 * S^0 is the boundary of a square
        let square = s0.join(&two_points(2));
        assert_eq!(square.f_vector(), vec![4, 4]);

        // f_d(join) = sum_{a+b=d-1} f_a f_b with f_{-1} = 1
        let k1 = ind(&Graph::path(4), 2);
        let k2 = ind(&Graph::cycle(4).unwrap(), 1);
        let j = k1.join(&k2);
        let (f1, f2) = (k1.f_vector(), k2.f_vector());
        let fd = |f: &Vec<usize>, d: isize| -> usize {
            if d == -1 {
                1
            } else if d >= 0 && (d as usize) < f.len() {
                f[d as usize]
            } else {
                0
            }
        };
        for d in 0..=j.dim() {
            let expect: usize = (-1..=d)
                .map(|a| fd(&f1, a) * fd(&f2, d - 1 - a))
                .sum();
            assert_eq!(j.f_vector()[d as usize], expect, "dim {d}");
        }
    }

    #[test]
    fn union_complex_equals_join_facewise() {
        let g = Graph::path(3);
        let h = Graph::cycle(3).unwrap();
        for r in 1..=2 {
            let joined = ind(&g, r).join(&ind(&h, r));
            let direct = ind(&g.disjoint_union(&h), r);
            assert_eq!(
                joined.all_faces().collect::<Vec<_>>(),
                direct.all_faces().collect::<Vec<_>>(),
                "r={r}"
            );
        }
    }

    #[test]
    fn skeleton_edges() {
        let k = ind(&Graph::path(4), 2);
        let same = k.skeleton(k.dim());
        assert_eq!(same.face_count(), k.face_count());
        let base = k.skeleton(-1);
        assert_eq!(base.face_count(), 1);
        assert_eq!(base.dim(), -1);
    }

    #[test]
    fn euler_characteristics() {
        let point = SimplicialComplex::from_faces(1, vec![Simplex::new(vec![0])]);
        assert_eq!(point.reduced_euler_characteristic(), 0);
        let two = SimplicialComplex::from_faces(
            2,
            vec![Simplex::new(vec![0]), Simplex::new(vec![1])],
        );
        assert_eq!(two.reduced_euler_characteristic(), 1);
        // Ind_1(C_6) is homotopy equivalent to two circles
        let k = ind(&Graph::cycle(6).unwrap(), 1);
        assert_eq!(k.reduced_euler_characteristic(), -2);
    }

    #[test]
    fn truncation_and_cap() {
        let g = Graph::cycle(6).unwrap();
        let full = ind(&g, 2);
        let cut = independence_complex(
            &g,
            2,
            &EnumerationOptions { max_dim: Some(1), face_cap: 1 << 20 },
        )
        .unwrap();
        assert_eq!(cut.truncated_at(), Some(1));
        assert_eq!(cut.dim(), 1);
        assert_eq!(cut.faces_of_dim(1), full.faces_of_dim(1));

        let err = independence_complex(
            &g,
            2,
            &EnumerationOptions { max_dim: None, face_cap: 5 },
        );
        assert_eq!(err.unwrap_err(), ComplexError::FaceCapExceeded { cap: 5 });

        // a cutoff above the complex's dimension never bites
        let roomy = independence_complex(
            &g,
            2,
            &EnumerationOptions { max_dim: Some(4), face_cap: 1 << 20 },
        )
        .unwrap();
        assert_eq!(roomy.dim(), full.dim());
        assert_eq!(roomy.truncated_at(), None);
    }

    #[test]
    fn export_round_trip() {
        let k = ind(&Graph::path(4), 2);
        let text = k.export_text();
        assert!(text.starts_with("dim_max"));
        let back = SimplicialComplex::parse_text(&text, 4).unwrap();
        assert_eq!(back.f_vector(), k.f_vector());
        assert_eq!(
            back.all_faces().collect::<Vec<_>>(),
            k.all_faces().collect::<Vec<_>>()
        );
    }
}
