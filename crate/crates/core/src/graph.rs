//! Simple undirected graphs with adjacency-bitset rows, plus vertex subsets.
//!
//! Vertices are always the dense range `0..n`. Graphs are immutable once
//! built, so they can be shared freely across worker threads.

use crate::bitset::BitSet;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on vertex counts accepted by constructors and generators.
pub const MAX_VERTICES: usize = 100_000;

/// Errors raised by graph construction and elementary queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Input text could not be decoded; `offset` is a byte offset into the text.
    Parse { offset: usize, msg: String },
    /// An edge `u u` was given.
    SelfLoop { vertex: usize },
    /// A vertex index is outside `0..n`.
    OutOfRange { vertex: usize, n: usize },
    /// The operation needs at least one vertex.
    EmptyGraph,
    /// `n` exceeds [`MAX_VERTICES`].
    TooLarge { n: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Parse { offset, msg } => {
                write!(f, "parse error at byte {offset}: {msg}")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::OutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::EmptyGraph => write!(f, "operation undefined on the empty graph"),
            GraphError::TooLarge { n } => {
                write!(
                    f,
                    "{n} vertices exceeds the supported maximum {MAX_VERTICES}"
                )
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// A simple undirected graph on vertices `0..n`.
///
/// Invariants: no self-loops, adjacency symmetric. Both are enforced by the
/// constructors; the adjacency rows are never exposed mutably.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        Ok(Graph {
            n,
            rows: vec![BitSet::new(n); n],
        })
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES);
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = BitSet::full(n);
            row.remove(v);
            rows.push(row);
        }
        Graph { n, rows }
    }

    /// Cycle `C_n` (requires `n >= 3`).
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    /// Neighbor set of `v` as a bitset row.
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Minimum degree. Errors on the empty graph.
    pub fn min_degree(&self) -> Result<usize, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok((0..self.n).map(|v| self.degree(v)).min().unwrap())
    }

    /// Induced subgraph on `s`, relabeled to `0..|s|` in ascending original
    /// order. Also returns the relabeling map (new index -> original vertex).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        s.check_range(self.n)?;
        let map: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        Ok((g, map))
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.n).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// A duplicate-free set of vertex indices, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet {
            members: Vec::new(),
        }
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_iter_unchecked<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// Fast path for input already sorted and duplicate-free.
    pub fn from_sorted(members: Vec<usize>) -> VertexSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.members.binary_search(&v) {
            self.members.insert(pos, v);
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        // Merge walk; both sides are sorted.
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Errors unless every member is below `n`.
    pub fn check_range(&self, n: usize) -> Result<(), GraphError> {
        match self.members.last() {
            Some(&v) if v >= n => Err(GraphError::OutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn to_bitset(&self, universe: usize) -> BitSet {
        let mut b = BitSet::new(universe);
        for &v in &self.members {
            b.insert(v);
        }
        b
    }

    pub fn from_bitset(b: &BitSet) -> VertexSet {
        VertexSet::from_sorted(b.to_vec())
    }
}

impl Default for VertexSet {
    fn default() -> Self {
        VertexSet::new()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_iter_unchecked(iter)
    }
}

/// Seeded Erdos-Renyi graph `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    use rand::Rng;
    use rand::SeedableRng;
    assert!((0.0..=1.0).contains(&p));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n).expect("gnp size over MAX_VERTICES");
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.rows[u].insert(v);
                g.rows[v].insert(u);
            }
        }
    }
    g
}
