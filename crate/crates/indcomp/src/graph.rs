//! Finite simple graphs and the parameterized families used throughout the
//! crate: paths, cycles, complete multipartite graphs, whiskered and leafy
//! graphs, perfect m-ary trees, grids, and generalized Mycielskians.
//!
//! Vertices are `0..n` internally. The 1-based names used in the literature
//! (path vertex `i`, tree vertex `a_{d,q}`, part vertex `v_i^j`, ...) live in
//! the optional label map so constructions that depend on those conventions
//! can recover them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("cycle graphs need at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("expected one leaf count per vertex ({expected}), got {got}")]
    LeafCountMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("multipartite graphs need at least one part")]
    EmptyPartition,
    #[error("multipartite part sizes must be positive")]
    ZeroPart,
    #[error("malformed edge list: {0}")]
    Parse(String),
}

/// Structured vertex name assigned by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// 1-based index, used by paths and cycles.
    Num(usize),
    /// `v_i^j`: position `pos` inside part `part` of a multipartite graph.
    Part { part: usize, pos: usize },
    /// `a_{d,q}`: depth and left-to-right position in a perfect m-ary tree.
    Tree { depth: usize, pos: usize },
    /// `(i, j)` in a grid graph, 1-based.
    Grid { row: usize, col: usize },
    /// `v_i^j`: vertex `base` on level `level` of a generalized Mycielskian.
    Level { base: usize, level: usize },
    /// The apex vertex of a generalized Mycielskian.
    Apex,
    /// `a_i`: a base vertex of a whiskered or leafy graph.
    Anchor(usize),
    /// `b_{i,j}`: pendant leaf number `index` attached at `a_{anchor}`.
    Pendant { anchor: usize, index: usize },
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSubset {
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSubset { members }
    }

    pub fn full(n: usize) -> Self {
        VertexSubset { members: (0..n).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl From<&[usize]> for VertexSubset {
    fn from(s: &[usize]) -> Self {
        VertexSubset::new(s.to_vec())
    }
}

/// An immutable simple undirected graph.
///
/// Adjacency is kept both as sorted neighbor lists (for enumeration) and as a
/// bit matrix (for constant-time edge queries during component checks).
#[derive(Clone)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    adj_bits: Vec<u64>,
    words_per_row: usize,
    labels: Option<Vec<Label>>,
}

impl Graph {
    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<Label>>,
    ) -> Graph {
        let words_per_row = n.div_ceil(64).max(1);
        let mut g = Graph {
            n,
            neighbors: vec![Vec::new(); n],
            adj_bits: vec![0; n * words_per_row],
            words_per_row,
            labels,
        };
        for (u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge ({u}, {v}) for order {n}");
            if !g.has_edge(u, v) {
                g.set_bit(u, v);
                g.set_bit(v, u);
                g.neighbors[u].push(v);
                g.neighbors[v].push(u);
            }
        }
        for list in &mut g.neighbors {
            list.sort_unstable();
        }
        if let Some(ls) = &g.labels {
            debug_assert_eq!(ls.len(), n);
        }
        g
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.adj_bits[u * self.words_per_row + v / 64] |= 1u64 << (v % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&Label> {
        self.labels.as_ref().map(|ls| &ls[v])
    }

    fn check_subset(&self, s: &VertexSubset) -> Result<(), GraphError> {
        match s.members().last() {
            Some(&v) if v >= self.n => {
                Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
            }
            _ => Ok(()),
        }
    }

    /// Path graph `P_n` on vertices `1..=n` (paper labels); internally `0..n`.
    pub fn path(n: usize) -> Graph {
        assert!(n >= 1, "path graphs need at least one vertex");
        Graph::build(
            n,
            (0..n.saturating_sub(1)).map(|i| (i, i + 1)),
            Some((1..=n).map(Label::Num).collect()),
        )
    }

    /// Cycle graph `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        let edges = (0..n - 1).map(|i| (i, i + 1)).chain(Some((0, n - 1)));
        Ok(Graph::build(n, edges, Some((1..=n).map(Label::Num).collect())))
    }

    /// Complete graph `K_n`, as the multipartite graph with singleton parts.
    pub fn complete(n: usize) -> Graph {
        assert!(n >= 1);
        Graph::complete_multipartite(&vec![1; n]).unwrap()
    }

    /// Complete s-partite graph `K_{m_1,...,m_s}`: all edges between distinct
    /// parts, none inside a part.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(GraphError::ZeroPart);
        }
        let n: usize = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for (i, &m) in parts.iter().enumerate() {
            for j in 0..m {
                part_of.push(i);
                labels.push(Label::Part { part: i + 1, pos: j + 1 });
            }
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph::build(n, edges, Some(labels)))
    }

    /// Fully whiskered graph `W(G)`: one new pendant leaf `b_i` attached at
    /// every vertex `a_i`. Base vertices keep their indices; leaf `b_i` is
    /// vertex `n + i`.
    pub fn whisker_all(&self) -> Graph {
        let n = self.n;
        let mut labels = Vec::with_capacity(2 * n);
        labels.extend((1..=n).map(Label::Anchor));
        labels.extend((1..=n).map(|i| Label::Pendant { anchor: i, index: 1 }));
        let edges = self.edges().into_iter().chain((0..n).map(|i| (i, n + i)));
        Graph::build(2 * n, edges, Some(labels))
    }

    /// `G^L`: vertex `a_i` gains `counts[i]` pendant leaves `b_{i,1..}`.
    /// Leaves are appended after the base vertices in vertex order.
    pub fn attach_leaves(&self, counts: &[usize]) -> Result<Graph, GraphError> {
        if counts.len() != self.n {
            return Err(GraphError::LeafCountMismatch { expected: self.n, got: counts.len() });
        }
        let total: usize = counts.iter().sum();
        let mut labels: Vec<Label> = (1..=self.n).map(Label::Anchor).collect();
        let mut edges = self.edges();
        let mut next = self.n;
        for (i, &c) in counts.iter().enumerate() {
            for j in 1..=c {
                labels.push(Label::Pendant { anchor: i + 1, index: j });
                edges.push((i, next));
                next += 1;
            }
        }
        Ok(Graph::build(self.n + total, edges, Some(labels)))
    }

    /// Perfect m-ary tree `B_h^m`: every internal node has `m` children, all
    /// leaves at depth `h`. Vertices are indexed level by level, left to
    /// right, so `a_{d,q}` is vertex `(m^d - 1)/(m - 1) + q - 1`.
    pub fn perfect_mary_tree(m: usize, h: usize) -> Graph {
        assert!(m >= 2, "m-ary trees need m >= 2");
        let n = mary_tree_vertex_count(m, h);
        let mut labels = Vec::with_capacity(n);
        let mut edges = Vec::new();
        for d in 0..=h {
            let level = mary_tree_level_offset(m, d);
            for q in 1..=pow(m, d) {
                labels.push(Label::Tree { depth: d, pos: q });
                if d < h {
                    let child_level = mary_tree_level_offset(m, d + 1);
                    for j in 0..m {
                        edges.push((level + q - 1, child_level + m * (q - 1) + j));
                    }
                }
            }
        }
        Graph::build(n, edges, Some(labels))
    }

    /// Rectangular grid graph `G_{m,n}` with `m` rows and `n` columns.
    pub fn grid(m: usize, n: usize) -> Graph {
        assert!(m >= 1 && n >= 1);
        let idx = |i: usize, j: usize| i * n + j;
        let mut edges = Vec::new();
        let mut labels = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                labels.push(Label::Grid { row: i + 1, col: j + 1 });
                if j + 1 < n {
                    edges.push((idx(i, j), idx(i, j + 1)));
                }
                if i + 1 < m {
                    edges.push((idx(i, j), idx(i + 1, j)));
                }
            }
        }
        Graph::build(m * n, edges, Some(labels))
    }

    /// Generalized Mycielskian `M_s(G)`: levels `0..=s` of copies of `V(G)`
    /// plus an apex `u`. Level 0 carries the edges of `G`; `v_i^j ~ v_k^{j+1}`
    /// whenever `ik` is an edge of `G`; `u` is adjacent to all of level `s`.
    /// Vertex `v_i^j` is `j*n + i`; the apex is the last vertex.
    pub fn generalized_mycielskian(&self, s: usize) -> Graph {
        assert!(s >= 1);
        let n = self.n;
        let order = n * (s + 1) + 1;
        let apex = n * (s + 1);
        let mut edges = self.edges();
        for j in 0..s {
            for (u, v) in self.edges() {
                edges.push((j * n + u, (j + 1) * n + v));
                edges.push((j * n + v, (j + 1) * n + u));
            }
        }
        for i in 0..n {
            edges.push((s * n + i, apex));
        }
        let mut labels = Vec::with_capacity(order);
        for j in 0..=s {
            labels.extend((1..=n).map(|i| Label::Level { base: i, level: j }));
        }
        labels.push(Label::Apex);
        Graph::build(order, edges, Some(labels))
    }

    /// Disjoint union; the second graph's vertices are shifted up by
    /// `self.vertex_count()`. Labels are dropped (indices no longer match
    /// either generator's convention).
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::build(self.n + other.n, edges, None)
    }

    /// Induced subgraph `G[U]`; vertices are renumbered by rank in `s`.
    pub fn induced_subgraph(&self, s: &VertexSubset) -> Result<Graph, GraphError> {
        self.check_subset(s)?;
        let members = s.members();
        let rank = |v: usize| members.binary_search(&v).unwrap();
        let mut edges = Vec::new();
        for (p, &u) in members.iter().enumerate() {
            for &v in &self.neighbors[u] {
                if v > u && members.binary_search(&v).is_ok() {
                    edges.push((p, rank(v)));
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| members.iter().map(|&v| ls[v].clone()).collect());
        Ok(Graph::build(members.len(), edges, labels))
    }

    /// `G - A`: the subgraph induced on the complement of `a`.
    pub fn remove_vertices(&self, a: &VertexSubset) -> Result<Graph, GraphError> {
        self.check_subset(a)?;
        let keep: Vec<usize> = (0..self.n).filter(|v| a.members().binary_search(v).is_err()).collect();
        self.induced_subgraph(&VertexSubset::new(keep))
    }

    /// Connected components of `G[s]`, ordered by their minimum vertex.
    pub fn connected_components(&self, s: &VertexSubset) -> Result<Vec<VertexSubset>, GraphError> {
        self.check_subset(s)?;
        let mut in_s = vec![false; self.n];
        for &v in s.members() {
            in_s[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &start in s.members() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if in_s[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(VertexSubset::new(comp));
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1
            || self
                .connected_components(&VertexSubset::full(self.n))
                .expect("full subset is valid")
                .len()
                == 1
    }

    /// Parses the edge-list format: first data line `n m`, then `m` lines
    /// `u v` with 0-based endpoints; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut tokens = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            tokens.extend(line.split_whitespace().map(str::to_string));
        }
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("expected an integer, got `{t}`")))
        };
        if tokens.len() < 2 {
            return Err(GraphError::Parse("missing `n m` header".into()));
        }
        let n = parse(&tokens[0])?;
        let m = parse(&tokens[1])?;
        if tokens.len() != 2 + 2 * m {
            return Err(GraphError::Parse(format!(
                "expected {} edge endpoints, got {}",
                2 * m,
                tokens.len() - 2
            )));
        }
        let mut edges = Vec::with_capacity(m);
        for e in 0..m {
            let u = parse(&tokens[2 + 2 * e])?;
            let v = parse(&tokens[3 + 2 * e])?;
            if u >= n || v >= n {
                return Err(GraphError::Parse(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(GraphError::Parse(format!("self-loop at {u}")));
            }
            edges.push((u, v));
        }
        Ok(Graph::build(n, edges, None))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let edges = self.edges();
        let _ = writeln!(out, "{} {}", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

fn pow(m: usize, e: usize) -> usize {
    m.checked_pow(e as u32).expect("tree size overflow")
}

/// Number of vertices of `B_h^m`: `(m^{h+1} - 1)/(m - 1)`.
pub fn mary_tree_vertex_count(m: usize, h: usize) -> usize {
    (pow(m, h + 1) - 1) / (m - 1)
}

/// Index of the first depth-`d` vertex of `B_h^m`.
pub fn mary_tree_level_offset(m: usize, d: usize) -> usize {
    (pow(m, d) - 1) / (m - 1)
}

/// Vertex index of `a_{d,q}` (1-based `q`).
pub fn mary_tree_index(m: usize, d: usize, q: usize) -> usize {
    assert!(q >= 1 && q <= pow(m, d));
    mary_tree_level_offset(m, d) + q - 1
}

/// The vertex order on `B_h^m` used by the tree constructions:
/// `a_{p,q} < a_{p',q'}` iff `q < q'`, or `q = q'` and `p < p'`.
pub fn mary_tree_label_order(a: (usize, usize), b: (usize, usize)) -> std::cmp::Ordering {
    (a.1, a.0).cmp(&(b.1, b.0))
}

/// Brute-force isomorphism test. Intended for small graphs only; refuses
/// anything with more than 12 vertices.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    assert!(
        a.vertex_count() <= 12 && b.vertex_count() <= 12,
        "brute-force isomorphism is capped at 12 vertices"
    );
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    // Map vertices of `a` in descending-degree order to prune early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        a: &Graph,
        b: &Graph,
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        for w in 0..b.vertex_count() {
            if used[w] || a.degree(u) != b.degree(w) {
                continue;
            }
            let consistent = order[..pos].iter().all(|&prev| {
                a.has_edge(u, prev) == b.has_edge(w, image[prev])
            });
            if consistent {
                image[u] = w;
                used[w] = true;
                if assign(a, b, order, pos + 1, image, used) {
                    return true;
                }
                used[w] = false;
                image[u] = usize::MAX;
            }
        }
        false
    }
    assign(a, b, &order, 0, &mut image, &mut used)
}
