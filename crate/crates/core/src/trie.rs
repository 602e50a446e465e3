// SPDX-License-Identifier: Apache-2.0

//! Candidate filters for one elimination step.
//!
//! A step produces blocks `(u_j, G[N_H(u_j)])` and the maximal cliques of
//! each block. A clique maximal in its own block can still sit inside a
//! clique of another block; the filters here drop those.
//!
//! [`double_scan`] orders the union of the blocks by first appearance
//! (`σ_c`) and runs two prefix-trie passes, forward under `σ_c` and backward
//! under its reverse. [`exact_filter`] checks maximality in the union graph
//! directly and [`curing_filter`] probes every subset of every candidate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::kernels::is_maximal_in_counted;
use crate::{Error, Result};

/// Largest candidate the curing filter accepts.
pub const CURING_LIMIT: usize = 30;

/// One block: the partner `u_j`, the vertex set `N_H(u_j)` and the maximal
/// cliques of the block subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CandidateBlock {
    pub partner: Vertex,
    pub vertices: Vec<Vertex>,
    pub cliques: Vec<Vec<Vertex>>,
}

/// `σ_c`: union vertices ranked block by block, first appearance wins,
/// ascending id inside a block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockOrdering {
    rank: BTreeMap<Vertex, usize>,
    by_rank: Vec<Vertex>,
    blocks: Vec<(Vertex, Vec<Vertex>)>,
}

pub fn build_sigma_c<'a, I>(candidate_blocks: I) -> BlockOrdering
where
    I: IntoIterator<Item = (Vertex, &'a [Vertex])>,
{
    let mut ordering = BlockOrdering::default();
    for (partner, vertices) in candidate_blocks {
        let mut fresh: Vec<Vertex> = vertices
            .iter()
            .copied()
            .filter(|v| !ordering.rank.contains_key(v))
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        for &v in &fresh {
            ordering.rank.insert(v, ordering.by_rank.len());
            ordering.by_rank.push(v);
        }
        ordering.blocks.push((partner, fresh));
    }
    ordering
}

impl BlockOrdering {
    pub fn from_blocks(blocks: &[CandidateBlock]) -> Self {
        build_sigma_c(blocks.iter().map(|b| (b.partner, b.vertices.as_slice())))
    }

    pub fn rank(&self, v: Vertex) -> Option<usize> {
        self.rank.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// `(u_j, first-seen vertices of block j)` in visiting order.
    pub fn blocks(&self) -> &[(Vertex, Vec<Vertex>)] {
        &self.blocks
    }

    /// Rank sequence of `clique` under `σ_c`, ascending.
    pub fn forward_key(&self, clique: &[Vertex]) -> Result<Vec<usize>> {
        let mut key = clique
            .iter()
            .map(|&v| self.rank(v).ok_or(Error::Unranked(v)))
            .collect::<Result<Vec<_>>>()?;
        key.sort_unstable();
        Ok(key)
    }

    /// Rank sequence of `clique` under the reversed ordering, ascending.
    pub fn reverse_key(&self, clique: &[Vertex]) -> Result<Vec<usize>> {
        let top = self.len().saturating_sub(1);
        let mut key = self.forward_key(clique)?;
        key.iter_mut().for_each(|r| *r = top - *r);
        key.reverse();
        Ok(key)
    }

    /// Converts a reversed-ordering key back to its `σ_c` key.
    fn reverse_to_forward(&self, key: &[usize]) -> Vec<usize> {
        let top = self.len().saturating_sub(1);
        key.iter().rev().map(|r| top - r).collect()
    }

    /// `σ_c` as a vertex sequence.
    pub fn sequence(&self) -> &[Vertex] {
        &self.by_rank
    }

    fn vertices_of(&self, key: &[usize]) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = key.iter().map(|&r| self.by_rank[r]).collect();
        vs.sort_unstable();
        vs
    }
}

type NodeId = usize;

#[derive(Debug, Clone, Default)]
struct Node {
    children: Vec<(usize, NodeId)>,
    marked: bool,
}

/// Prefix tree over strictly increasing key sequences, with a terminal mark
/// on every node that ends an inserted sequence.
#[derive(Debug, Clone)]
pub struct CliqueTrie {
    nodes: Vec<Node>,
    ops: u64,
}

impl Default for CliqueTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl CliqueTrie {
    pub fn new() -> Self {
        Self {
            nodes: alloc::vec![Node::default()],
            ops: 0,
        }
    }

    /// Nodes below the root.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Node visits performed so far.
    pub fn ops(&self) -> u64 {
        self.ops
    }

    fn child(&self, node: NodeId, key: usize) -> Option<NodeId> {
        let kids = &self.nodes[node].children;
        kids.binary_search_by_key(&key, |&(k, _)| k)
            .ok()
            .map(|i| kids[i].1)
    }

    fn check_monotone(seq: &[usize]) -> Result<()> {
        match seq.windows(2).position(|w| w[0] >= w[1]) {
            Some(i) => Err(Error::NonMonotone(i + 1)),
            None => Ok(()),
        }
    }

    /// Ensures the path exists and marks its end. Returns false when the
    /// sequence was already marked.
    pub fn insert(&mut self, seq: &[usize]) -> Result<bool> {
        Self::check_monotone(seq)?;
        let mut node = 0;
        for &key in seq {
            self.ops += 1;
            node = match self.child(node, key) {
                Some(next) => next,
                None => {
                    let id = self.nodes.len();
                    self.nodes.push(Node::default());
                    let kids = &mut self.nodes[node].children;
                    let at = kids.partition_point(|&(k, _)| k < key);
                    kids.insert(at, (key, id));
                    id
                }
            };
        }
        let fresh = !self.nodes[node].marked;
        self.nodes[node].marked = true;
        Ok(fresh)
    }

    /// Nodes along `seq`, root excluded, stopping where the path ends.
    fn walk(&mut self, seq: &[usize]) -> Vec<NodeId> {
        let mut path = Vec::with_capacity(seq.len());
        let mut node = 0;
        for &key in seq {
            self.ops += 1;
            match self.child(node, key) {
                Some(next) => {
                    path.push(next);
                    node = next;
                }
                None => break,
            }
        }
        path
    }

    pub fn is_marked(&mut self, seq: &[usize]) -> bool {
        let path = self.walk(seq);
        path.len() == seq.len() && path.last().is_some_and(|&n| self.nodes[n].marked)
    }

    /// Clears the mark at the end of `seq`; true when a mark was cleared.
    pub fn unmark(&mut self, seq: &[usize]) -> bool {
        let path = self.walk(seq);
        match path.last() {
            Some(&n) if path.len() == seq.len() && self.nodes[n].marked => {
                self.nodes[n].marked = false;
                true
            }
            _ => false,
        }
    }

    /// Lengths of the proper prefixes of `seq` whose nodes are marked.
    pub fn marked_proper_prefixes(&mut self, seq: &[usize]) -> Vec<usize> {
        let path = self.walk(seq);
        path.iter()
            .take(seq.len().saturating_sub(1))
            .enumerate()
            .filter(|&(_, &n)| self.nodes[n].marked)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Clears the mark of every marked proper prefix of `seq`.
    pub fn unmark_proper_prefixes(&mut self, seq: &[usize]) -> usize {
        let path = self.walk(seq);
        let mut cleared = 0;
        for &n in path.iter().take(seq.len().saturating_sub(1)) {
            if self.nodes[n].marked {
                self.nodes[n].marked = false;
                cleared += 1;
            }
        }
        cleared
    }

    /// Marked nodes without children, as key sequences in trie order.
    pub fn surviving_cliques(&mut self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<(NodeId, usize)> = alloc::vec![(0, 0)];
        let mut path: Vec<usize> = Vec::new();
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next == 0 && node != 0 {
                self.ops += 1;
                let n = &self.nodes[node];
                if n.marked && n.children.is_empty() {
                    out.push(path.clone());
                }
            }
            match self.nodes[node].children.get(*next).copied() {
                Some((key, child)) => {
                    *next += 1;
                    path.push(key);
                    stack.push((child, 0));
                }
                None => {
                    stack.pop();
                    path.pop();
                }
            }
        }
        out
    }
}

/// Counters shared by the three filters. Fields a filter does not use stay
/// zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterStats {
    pub candidates: u64,
    pub duplicates: u64,
    pub trie_ops: u64,
    pub trie_nodes: u64,
    pub forward_unmarks: u64,
    pub check_set: u64,
    pub check_unmarks: u64,
    pub subset_probes: u64,
    pub adjacency_probes: u64,
}

impl FilterStats {
    /// Elementary filter operations.
    pub fn ops(&self) -> u64 {
        self.trie_ops + self.subset_probes + self.adjacency_probes
    }

    pub fn add(&mut self, other: &FilterStats) {
        self.candidates += other.candidates;
        self.duplicates += other.duplicates;
        self.trie_ops += other.trie_ops;
        self.trie_nodes += other.trie_nodes;
        self.forward_unmarks += other.forward_unmarks;
        self.check_set += other.check_set;
        self.check_unmarks += other.check_unmarks;
        self.subset_probes += other.subset_probes;
        self.adjacency_probes += other.adjacency_probes;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterOutput {
    /// Surviving cliques, each ascending, list sorted.
    pub cliques: Vec<Vec<Vertex>>,
    pub stats: FilterStats,
}

fn candidate_count(blocks: &[CandidateBlock]) -> u64 {
    blocks.iter().map(|b| b.cliques.len() as u64).sum()
}

/// The two-pass prefix-trie filter.
///
/// Forward pass over blocks `1..=k`: each candidate is inserted into
/// `T_start` under `σ_c` and its marked proper prefixes are unmarked. Reverse
/// pass over `k..=1`: each candidate is inserted into `T_end` under the
/// reversed ordering and its marked proper prefixes there are collected,
/// re-keyed under `σ_c`, into the check set. Check-set members still marked
/// in `T_start` are unmarked. The result is every marked childless node of
/// `T_start`.
pub fn double_scan(blocks: &[CandidateBlock], ordering: &BlockOrdering) -> Result<FilterOutput> {
    let mut stats = FilterStats {
        candidates: candidate_count(blocks),
        ..Default::default()
    };
    let mut start = CliqueTrie::new();
    for block in blocks {
        for clique in &block.cliques {
            let key = ordering.forward_key(clique)?;
            if !start.insert(&key)? {
                stats.duplicates += 1;
            }
            stats.forward_unmarks += start.unmark_proper_prefixes(&key) as u64;
        }
    }

    let mut end = CliqueTrie::new();
    let mut check: BTreeSet<Vec<usize>> = BTreeSet::new();
    for block in blocks.iter().rev() {
        for clique in &block.cliques {
            let key = ordering.reverse_key(clique)?;
            end.insert(&key)?;
            for len in end.marked_proper_prefixes(&key) {
                check.insert(ordering.reverse_to_forward(&key[..len]));
            }
        }
    }
    stats.check_set = check.len() as u64;
    for key in &check {
        if start.unmark(key) {
            stats.check_unmarks += 1;
        }
    }

    let mut cliques: Vec<Vec<Vertex>> = start
        .surviving_cliques()
        .iter()
        .map(|key| ordering.vertices_of(key))
        .collect();
    cliques.sort();
    stats.trie_ops = start.ops() + end.ops();
    stats.trie_nodes = (start.node_count() + end.node_count()) as u64;
    Ok(FilterOutput { cliques, stats })
}

/// Keeps a candidate iff it is maximal in the union graph `∪_j G[V_j]`
/// (edges of `g` with both ends in a common block).
pub fn exact_filter(blocks: &[CandidateBlock], g: &Graph) -> FilterOutput {
    let mut stats = FilterStats {
        candidates: candidate_count(blocks),
        ..Default::default()
    };
    let mut union: Vec<Vertex> = blocks
        .iter()
        .flat_map(|b| b.vertices.iter().copied())
        .collect();
    union.sort_unstable();
    union.dedup();
    let local_id = |v: Vertex| union.binary_search(&v).expect("block vertex in union");

    let mut edges = Vec::new();
    for b in blocks {
        for (i, &x) in b.vertices.iter().enumerate() {
            for &y in &b.vertices[i + 1..] {
                stats.adjacency_probes += 1;
                if g.has_edge(x, y) {
                    edges.push((local_id(x), local_id(y)));
                }
            }
        }
    }
    let (local, _) = Graph::from_edges(Some(union.len()), edges);
    let everything: Vec<Vertex> = (0..union.len()).collect();

    let mut seen = BTreeSet::new();
    let mut cliques = Vec::new();
    for clique in blocks.iter().flat_map(|b| b.cliques.iter()) {
        if !seen.insert(clique.clone()) {
            stats.duplicates += 1;
            continue;
        }
        let mut mapped: Vec<Vertex> = clique.iter().map(|&v| local_id(v)).collect();
        mapped.sort_unstable();
        if is_maximal_in_counted(&local, &everything, &mapped, &mut stats.adjacency_probes) {
            cliques.push(clique.clone());
        }
    }
    cliques.sort();
    FilterOutput { cliques, stats }
}

/// The exhaustive cure: all candidates go into a set; visiting them from
/// largest to smallest, every proper subset of the visited clique is probed
/// and removed from the set. Refuses candidates above [`CURING_LIMIT`].
pub fn curing_filter(candidates: &[Vec<Vertex>]) -> Result<FilterOutput> {
    let mut stats = FilterStats {
        candidates: candidates.len() as u64,
        ..Default::default()
    };
    let mut set: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for c in candidates {
        if c.len() > CURING_LIMIT {
            return Err(Error::CliqueTooLarge {
                limit: CURING_LIMIT,
                size: c.len(),
            });
        }
        let mut sorted = c.clone();
        sorted.sort_unstable();
        if !set.insert(sorted) {
            stats.duplicates += 1;
        }
    }
    let mut visit: Vec<Vec<Vertex>> = set.iter().cloned().collect();
    visit.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let mut probe = Vec::with_capacity(CURING_LIMIT);
    for k in &visit {
        let full: u32 = (1u32 << k.len()) - 1;
        for mask in 1..full {
            probe.clear();
            probe.extend((0..k.len()).filter(|&i| mask & (1 << i) != 0).map(|i| k[i]));
            stats.subset_probes += 1;
            set.remove(&probe);
        }
    }
    Ok(FilterOutput {
        cliques: set.into_iter().collect(),
        stats,
    })
}
