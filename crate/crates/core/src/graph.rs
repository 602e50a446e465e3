// SPDX-License-Identifier: Apache-2.0

//! Immutable simple undirected graphs, vertex orderings and suffix views.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::{Error, Result};

/// Dense vertex id in `0..n`.
pub type Vertex = usize;

/// Above this order the adjacency bitset mirror is not built.
pub const BITSET_MIRROR_LIMIT: usize = 4096;

/// What `Graph::from_edges` dropped to keep the graph simple.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Undirected simple graph with sorted adjacency arrays.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    bits: Option<Vec<BitSet>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Pairs may repeat or be reversed;
    /// self-loops and repeats are dropped and counted. The vertex count is
    /// `n` when given (and at least max id + 1), otherwise max id + 1.
    pub fn from_edges<I>(n: Option<usize>, edges: I) -> (Graph, BuildStats)
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut stats = BuildStats::default();
        let mut pairs = Vec::new();
        let mut max_id = None;
        for (u, v) in edges {
            max_id = max_id.max(Some(u.max(v)));
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        let raw = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicates = raw - pairs.len();

        let n = n.unwrap_or(0).max(max_id.map_or(0, |m| m + 1));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        (Self::from_sorted_adjacency(adj, pairs.len()), stats)
    }

    /// Convenience wrapper over [`Graph::from_edges`] for literal edge lists.
    pub fn from_edge_slice(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        Self::from_edges(Some(n), edges.iter().copied()).0
    }

    fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>, edge_count: usize) -> Graph {
        let n = adj.len();
        let bits = (n <= BITSET_MIRROR_LIMIT).then(|| {
            adj.iter()
                .map(|list| {
                    let mut b = BitSet::new(n);
                    list.iter().for_each(|&x| b.insert(x));
                    b
                })
                .collect()
        });
        Graph {
            adj,
            edge_count,
            bits,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_bitset_mirror(&self) -> bool {
        self.bits.is_some()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Adjacency test; uses the bitset mirror when present.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match &self.bits {
            Some(bits) => bits[u].contains(v),
            None => self.has_edge_sorted(u, v),
        }
    }

    /// Adjacency test by binary search on the sorted arrays.
    #[inline]
    pub fn has_edge_sorted(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// `N(u) ∩ N(v)` for distinct `u`, `v`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u, v));
        }
        Ok(intersect_sorted(&self.adj[u], &self.adj[v]))
    }

    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        match &self.bits {
            Some(bits) => bits[u].intersection_count(&bits[v]),
            None => intersect_count_sorted(&self.adj[u], &self.adj[v]),
        }
    }

    /// True when every pair of `vertices` is adjacent.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &a)| {
            vertices[i + 1..]
                .iter()
                .all(|&b| a != b && self.has_edge(a, b))
        })
    }
}

/// Sorted-set intersection of two ascending slices.
pub fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn intersect_count_sorted(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// A permutation `σ` of `0..n` together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    seq: Vec<Vertex>,
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        Self {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn new(seq: Vec<Vertex>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidPermutation { n });
            }
            pos[v] = i;
        }
        Ok(Self { seq, pos })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.seq
    }

    pub fn vertex_at(&self, i: usize) -> Vertex {
        self.seq[i]
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }
}

/// The induced subgraph `G[V_i]` on the suffix `σ(i), …, σ(n-1)`.
#[derive(Debug, Clone, Copy)]
pub struct SuffixView<'g> {
    graph: &'g Graph,
    order: &'g VertexOrder,
    start: usize,
}

impl<'g> SuffixView<'g> {
    pub fn new(graph: &'g Graph, order: &'g VertexOrder, start: usize) -> Result<Self> {
        if order.len() != graph.n() {
            return Err(Error::InvalidPermutation { n: graph.n() });
        }
        Ok(Self {
            graph,
            order,
            start: start.min(order.len()),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.order.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.graph.n() && self.order.position(v) >= self.start
    }

    /// Vertices of the view in order `σ`.
    pub fn vertices(&self) -> &'g [Vertex] {
        &self.order.as_slice()[self.start..]
    }

    /// `N(v) ∩ V_i`, sorted by id.
    pub fn neighborhood_in_suffix(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.graph.check_vertex(v)?;
        if !self.contains(v) {
            return Err(Error::NotInView(v));
        }
        Ok(self
            .graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| self.contains(x))
            .collect())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && self.graph.has_edge(u, v)
    }
}
