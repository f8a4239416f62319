//! Simple undirected graphs with dense integer vertex ids, tripartite
//! labelings, and the three-copies tripartite embedding.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Unordered edge, stored as `(min, max)`.
pub type Edge = (u32, u32);

/// Normalize an unordered vertex pair to `(min, max)`.
pub fn edge(u: u32, v: u32) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("edge {{{0}, {1}}} joins two vertices of the same part")]
    IntraPartEdge(u32, u32),
    #[error("part labeling has {got} entries, graph has {expected} vertices")]
    PartLengthMismatch { got: usize, expected: usize },
}

/// Simple undirected graph. No self-loops, no parallel edges; adjacency
/// lists are sorted and symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, BuildError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (u as usize) < self.n()
            && (v as usize) < self.n()
            && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges in canonical order: `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            let u = u as u32;
            ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn try_add_edge(&mut self, u: u32, v: u32) -> Result<(), BuildError> {
        if u == v {
            return Err(BuildError::SelfLoop(u));
        }
        let n = self.n();
        for w in [u, v] {
            if w as usize >= n {
                return Err(BuildError::VertexOutOfRange { v: w, n });
            }
        }
        if self.has_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(BuildError::DuplicateEdge(a, b));
        }
        self.insert_half(u, v);
        self.insert_half(v, u);
        self.m += 1;
        Ok(())
    }

    /// Add an edge that the caller knows is valid (used by generators).
    pub fn add_edge(&mut self, u: u32, v: u32) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    fn insert_half(&mut self, u: u32, v: u32) {
        let list = &mut self.adj[u as usize];
        if let Err(pos) = list.binary_search(&v) {
            list.insert(pos, v);
        }
    }

    /// Remove an edge if present; returns whether it existed.
    pub fn remove_edge(&mut self, u: u32, v: u32) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a as usize];
            let pos = list.binary_search(&b).unwrap();
            list.remove(pos);
        }
        self.m -= 1;
        true
    }

    /// Vertices adjacent to both `u` and `v` (sorted-list intersection).
    pub fn common_neighbors(&self, u: u32, v: u32) -> Vec<u32> {
        let (mut a, mut b) = (self.neighbors(u).iter(), self.neighbors(v).iter());
        let mut out = Vec::new();
        let (mut x, mut y) = (a.next(), b.next());
        while let (Some(&p), Some(&q)) = (x, y) {
            match p.cmp(&q) {
                std::cmp::Ordering::Less => x = a.next(),
                std::cmp::Ordering::Greater => y = b.next(),
                std::cmp::Ordering::Equal => {
                    out.push(p);
                    x = a.next();
                    y = b.next();
                }
            }
        }
        out
    }
}

/// The three sides of a tripartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Part {
    A,
    B,
    C,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::A, Part::B, Part::C];

    pub fn as_char(self) -> char {
        match self {
            Part::A => 'A',
            Part::B => 'B',
            Part::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Part> {
        match c {
            'A' => Some(Part::A),
            'B' => Some(Part::B),
            'C' => Some(Part::C),
            _ => None,
        }
    }
}

/// Graph whose vertices carry an A/B/C side label and whose edges all cross
/// two distinct sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripartiteGraph {
    graph: Graph,
    parts: Vec<Part>,
}

impl TripartiteGraph {
    pub fn new(graph: Graph, parts: Vec<Part>) -> Result<TripartiteGraph, BuildError> {
        if parts.len() != graph.n() {
            return Err(BuildError::PartLengthMismatch {
                got: parts.len(),
                expected: graph.n(),
            });
        }
        for (u, v) in graph.edges() {
            if parts[u as usize] == parts[v as usize] {
                return Err(BuildError::IntraPartEdge(u, v));
            }
        }
        Ok(TripartiteGraph { graph, parts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn part(&self, v: u32) -> Part {
        self.parts[v as usize]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn side(&self, p: Part) -> Vec<u32> {
        (0..self.n() as u32).filter(|&v| self.part(v) == p).collect()
    }

    pub fn part_sizes(&self) -> [usize; 3] {
        let mut sizes = [0usize; 3];
        for &p in &self.parts {
            sizes[p as usize] += 1;
        }
        sizes
    }

    /// Replace the underlying graph, keeping the labeling. The caller must
    /// only remove edges (removal cannot violate the cross-part invariant).
    pub fn with_graph(&self, graph: Graph) -> TripartiteGraph {
        debug_assert_eq!(graph.n(), self.n());
        TripartiteGraph {
            graph,
            parts: self.parts.clone(),
        }
    }
}

/// Tripartite graph with integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTripartiteGraph {
    tg: TripartiteGraph,
    weights: BTreeMap<Edge, i64>,
}

impl WeightedTripartiteGraph {
    pub fn new(
        tg: TripartiteGraph,
        weights: BTreeMap<Edge, i64>,
    ) -> Result<WeightedTripartiteGraph, BuildError> {
        for (u, v) in tg.graph().edges() {
            if !weights.contains_key(&(u, v)) {
                return Err(BuildError::DuplicateEdge(u, v)); // unreachable by construction in this crate
            }
        }
        Ok(WeightedTripartiteGraph { tg, weights })
    }

    pub fn tripartite(&self) -> &TripartiteGraph {
        &self.tg
    }

    pub fn weight(&self, u: u32, v: u32) -> Option<i64> {
        self.weights.get(&edge(u, v)).copied()
    }

    pub fn weights(&self) -> &BTreeMap<Edge, i64> {
        &self.weights
    }

    /// Smallest `W` with every `|w(e)| <= W` (0 for an edgeless graph).
    pub fn weight_bound(&self) -> i64 {
        self.weights.values().map(|w| w.abs()).max().unwrap_or(0)
    }
}

/// Vertex id of copy `v` in part `p` of the tripartite embedding of an
/// `n`-vertex graph: the three copies are laid out as contiguous blocks.
pub fn embed_copy(n: usize, v: u32, p: Part) -> u32 {
    v + (p as usize * n) as u32
}

/// Underlying original vertex of an embedded-vertex id.
pub fn embed_original(n: usize, v: u32) -> u32 {
    v % n as u32
}

/// Embed a plain graph into a tripartite one on `3n` vertices: three copies
/// per vertex, and for each original edge the six cross-part edges between
/// copies with distinct underlying endpoints. Triangles of the output with
/// one vertex per part correspond 6-to-1 to triangles of the input.
pub fn tripartite_embed(g: &Graph) -> TripartiteGraph {
    let n = g.n();
    let mut out = Graph::empty(3 * n);
    for (u, v) in g.edges() {
        for (p, q) in [
            (Part::A, Part::B),
            (Part::A, Part::C),
            (Part::B, Part::C),
        ] {
            out.add_edge(embed_copy(n, u, p), embed_copy(n, v, q));
            out.add_edge(embed_copy(n, u, q), embed_copy(n, v, p));
        }
    }
    let mut parts = Vec::with_capacity(3 * n);
    for p in Part::ALL {
        parts.extend(std::iter::repeat_n(p, n));
    }
    TripartiteGraph::new(out, parts).expect("embedding is tripartite by construction")
}
