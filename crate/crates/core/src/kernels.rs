// SPDX-License-Identifier: Apache-2.0

//! Maximal clique enumerators over induced subgraphs `G[subset]`.
//!
//! * [`pivot_enumerate`]: Bron–Kerbosch with the Tomita pivot rule.
//! * [`output_sensitive_enumerate`]: reverse search over maximal cliques,
//!   polynomial work per emitted clique.
//! * [`oracle_enumerate`]: every vertex subset, filtered; ground truth for
//!   small inputs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::{Graph, Vertex};
use crate::{Error, Result};

/// Default size guard for [`oracle_enumerate`].
pub const ORACLE_LIMIT: usize = 25;

/// Above this subset size the pivot kernel splits the problem along a
/// degeneracy order instead of building one dense local graph.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    #[default]
    Tomita,
    Outsens,
    Oracle,
}

impl KernelKind {
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Tomita => "tomita",
            KernelKind::Outsens => "outsens",
            KernelKind::Oracle => "oracle",
        }
    }

    pub fn run(&self, g: &Graph, subset: &[Vertex]) -> Result<(CliqueList, KernelStats)> {
        match self {
            KernelKind::Tomita => Ok(pivot_enumerate(g, subset)),
            KernelKind::Outsens => Ok(output_sensitive_enumerate(g, subset)),
            KernelKind::Oracle => oracle_enumerate(g, subset),
        }
    }
}

/// Maximal cliques as ascending id sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueList {
    pub cliques: Vec<Vec<Vertex>>,
    pub source: KernelKind,
}

impl CliqueList {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Cliques as a set, for order-insensitive comparison.
    pub fn to_set(&self) -> BTreeSet<Vec<Vertex>> {
        self.cliques.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    pub recursive_calls: u64,
    pub emitted: u64,
    /// Largest number of work units between two consecutive outputs (or
    /// before the first / after the last one).
    pub delay_max: u64,
    /// Elementary operations: calls for the pivot kernel, closure
    /// evaluations for the reverse search, subsets for the oracle.
    pub work: u64,
}

struct Tracker {
    stats: KernelStats,
    since_emit: u64,
}

impl Tracker {
    fn new() -> Self {
        Self {
            stats: KernelStats::default(),
            since_emit: 0,
        }
    }

    #[inline]
    fn tick(&mut self, units: u64) {
        self.stats.work += units;
        self.since_emit += units;
    }

    fn emit(&mut self) {
        self.stats.emitted += 1;
        self.stats.delay_max = self.stats.delay_max.max(self.since_emit);
        self.since_emit = 0;
    }

    fn finish(mut self) -> KernelStats {
        self.stats.delay_max = self.stats.delay_max.max(self.since_emit);
        self.stats
    }
}

/// Dense local copy of `G[subset]`, vertices re-indexed by ascending id.
struct LocalGraph {
    ids: Vec<Vertex>,
    adj: Vec<BitSet>,
}

impl LocalGraph {
    fn new(g: &Graph, ids: Vec<Vertex>) -> Self {
        let m = ids.len();
        let adj = ids
            .iter()
            .map(|&v| {
                let mut row = BitSet::new(m);
                for &w in g.neighbors(v) {
                    if let Ok(j) = ids.binary_search(&w) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self { ids, adj }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn globals(&self, local: &BitSet) -> Vec<Vertex> {
        local.iter().map(|i| self.ids[i]).collect()
    }
}

fn normalize(g: &Graph, subset: &[Vertex]) -> Vec<Vertex> {
    let mut ids: Vec<Vertex> = subset.iter().copied().filter(|&v| v < g.n()).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Maximal cliques of `G[subset]` by pivoting Bron–Kerbosch. The pivot is the
/// vertex of `P ∪ X` with the most neighbours in `P`, smallest id on ties.
pub fn pivot_enumerate(g: &Graph, subset: &[Vertex]) -> (CliqueList, KernelStats) {
    let ids = normalize(g, subset);
    let mut tracker = Tracker::new();
    let mut cliques = Vec::new();
    if ids.is_empty() {
        tracker.tick(1);
        tracker.stats.recursive_calls = 1;
    } else if ids.len() <= DENSE_LIMIT {
        let local = LocalGraph::new(g, ids);
        let m = local.len();
        let mut r = Vec::new();
        expand(
            &local,
            &mut r,
            BitSet::full(m),
            BitSet::new(m),
            &[],
            &mut tracker,
            &mut cliques,
        );
    } else {
        pivot_by_degeneracy(g, &ids, &mut tracker, &mut cliques);
    }
    let stats = tracker.finish();
    (
        CliqueList {
            cliques,
            source: KernelKind::Tomita,
        },
        stats,
    )
}

fn expand(
    local: &LocalGraph,
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    prefix: &[Vertex],
    tracker: &mut Tracker,
    out: &mut Vec<Vec<Vertex>>,
) {
    tracker.stats.recursive_calls += 1;
    tracker.tick(1);
    if p.is_empty() {
        if x.is_empty() {
            let mut clique: Vec<Vertex> = prefix.to_vec();
            clique.extend(r.iter().map(|&i| local.ids[i]));
            clique.sort_unstable();
            out.push(clique);
            tracker.emit();
        }
        return;
    }
    let mut best = None;
    let mut best_cover = 0;
    let mut union = p.clone();
    for i in x.iter() {
        union.insert(i);
    }
    for u in union.iter() {
        let cover = p.intersection_count(&local.adj[u]);
        if best.is_none() || cover > best_cover {
            best = Some(u);
            best_cover = cover;
        }
    }
    let pivot = best.expect("P is non-empty");
    let mut branch = p.clone();
    branch.difference_with(&local.adj[pivot]);
    for v in branch.iter() {
        let mut np = p.clone();
        np.intersect_with(&local.adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&local.adj[v]);
        r.push(v);
        expand(local, r, np, nx, prefix, tracker, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Outer loop along a degeneracy order: each vertex is expanded with its
/// later neighbours as candidates and its earlier neighbours as excluded.
fn pivot_by_degeneracy(
    g: &Graph,
    ids: &[Vertex],
    tracker: &mut Tracker,
    out: &mut Vec<Vec<Vertex>>,
) {
    let order = degeneracy_order(g, ids);
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] != usize::MAX)
            .collect();
        let local = LocalGraph::new(g, nbrs);
        let m = local.len();
        let mut p = BitSet::new(m);
        let mut x = BitSet::new(m);
        for (j, &w) in local.ids.iter().enumerate() {
            if pos[w] > i {
                p.insert(j);
            } else {
                x.insert(j);
            }
        }
        let mut r = Vec::new();
        expand(&local, &mut r, p, x, &[v], tracker, out);
    }
}

fn degeneracy_order(g: &Graph, ids: &[Vertex]) -> Vec<Vertex> {
    let n = g.n();
    let mut inside = vec![false; n];
    ids.iter().for_each(|&v| inside[v] = true);
    let mut deg = vec![0usize; n];
    for &v in ids {
        deg[v] = g.neighbors(v).iter().filter(|&&w| inside[w]).count();
    }
    let max_deg = ids.iter().map(|&v| deg[v]).max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); max_deg + 1];
    for &v in ids {
        buckets[deg[v]].insert(v);
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(ids.len());
    let mut low = 0;
    while order.len() < ids.len() {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if inside[w] && !done[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        low = low.saturating_sub(1);
    }
    order
}

/// Maximal cliques of `G[subset]` by reverse search.
///
/// `close(S)` greedily extends a clique by the smallest compatible vertices.
/// The root is `close(∅)`; the parent of any other maximal clique `K` is
/// `close(K ∩ [0, p])` for the largest `p` at which that closure differs
/// from `K`, and `K` is reached from its parent through vertex `p + 1`.
/// Every step costs polynomial work in `|subset|`.
pub fn output_sensitive_enumerate(g: &Graph, subset: &[Vertex]) -> (CliqueList, KernelStats) {
    let ids = normalize(g, subset);
    let mut tracker = Tracker::new();
    tracker.tick(1);
    let mut cliques = Vec::new();
    if !ids.is_empty() {
        let local = LocalGraph::new(g, ids);
        let search = ReverseSearch { g: &local };
        let root = search.close(&BitSet::new(local.len()), &mut tracker);
        let mut stack = vec![(root, 0usize)];
        cliques.push(local.globals(&stack[0].0));
        tracker.stats.recursive_calls += 1;
        tracker.emit();
        while let Some((clique, next)) = stack.last_mut() {
            let m = local.len();
            let mut found = None;
            while *next < m {
                let i = *next;
                *next += 1;
                if clique.contains(i) {
                    continue;
                }
                if let Some(child) = search.child(clique, i, &mut tracker) {
                    found = Some(child);
                    break;
                }
            }
            match found {
                Some(child) => {
                    cliques.push(local.globals(&child));
                    tracker.stats.recursive_calls += 1;
                    tracker.emit();
                    stack.push((child, 0));
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    let stats = tracker.finish();
    (
        CliqueList {
            cliques,
            source: KernelKind::Outsens,
        },
        stats,
    )
}

struct ReverseSearch<'a> {
    g: &'a LocalGraph,
}

impl ReverseSearch<'_> {
    fn close(&self, seed: &BitSet, tracker: &mut Tracker) -> BitSet {
        tracker.tick(1);
        let m = self.g.len();
        let mut cand = BitSet::full(m);
        for s in seed.iter() {
            cand.intersect_with(&self.g.adj[s]);
        }
        let mut out = seed.clone();
        while let Some(x) = cand.first() {
            out.insert(x);
            cand.intersect_with(&self.g.adj[x]);
        }
        out
    }

    fn prefix(set: &BitSet, last: usize) -> BitSet {
        let mut p = set.clone();
        for i in set.iter().filter(|&i| i > last) {
            p.remove(i);
        }
        p
    }

    /// The child of `parent` through vertex `i`, if the parent relation
    /// confirms it.
    fn child(&self, parent: &BitSet, i: usize, tracker: &mut Tracker) -> Option<BitSet> {
        let mut seed = Self::prefix(parent, i);
        seed.intersect_with(&self.g.adj[i]);
        seed.insert(i);
        let cand = self.close(&seed, tracker);
        let below_i = if i == 0 {
            BitSet::new(self.g.len())
        } else {
            Self::prefix(&cand, i - 1)
        };
        if self.close(&below_i, tracker) != *parent {
            return None;
        }
        // The parent index must be exactly i - 1: closing any prefix that
        // reaches i has to give `cand` back. Prefixes only change at members.
        let members: Vec<usize> = cand.iter().filter(|&t| t >= i).collect();
        for &t in &members[..members.len() - 1] {
            if self.close(&Self::prefix(&cand, t), tracker) != cand {
                return None;
            }
        }
        Some(cand)
    }
}

/// Maximal cliques of `G[subset]` by checking every vertex subset.
pub fn oracle_enumerate(g: &Graph, subset: &[Vertex]) -> Result<(CliqueList, KernelStats)> {
    oracle_enumerate_with_limit(g, subset, ORACLE_LIMIT)
}

pub fn oracle_enumerate_with_limit(
    g: &Graph,
    subset: &[Vertex],
    limit: usize,
) -> Result<(CliqueList, KernelStats)> {
    let ids = normalize(g, subset);
    let m = ids.len();
    let limit = limit.min(63);
    if m > limit {
        return Err(Error::OracleLimit { limit, size: m });
    }
    let masks: Vec<u64> = ids
        .iter()
        .map(|&v| {
            ids.iter()
                .enumerate()
                .filter(|&(_, &w)| g.has_edge(v, w))
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let mut tracker = Tracker::new();
    let mut cliques = Vec::new();
    for set in 1u64..(1u64 << m) {
        tracker.tick(1);
        let members = || (0..m).filter(move |&j| set & (1 << j) != 0);
        let is_clique = members().all(|j| (masks[j] | (1 << j)) & set == set);
        if !is_clique {
            continue;
        }
        let maximal = (0..m)
            .filter(|&j| set & (1 << j) == 0)
            .all(|j| masks[j] & set != set);
        if maximal {
            cliques.push(members().map(|j| ids[j]).collect());
            tracker.emit();
        }
    }
    tracker.stats.recursive_calls = 1;
    Ok((
        CliqueList {
            cliques,
            source: KernelKind::Oracle,
        },
        tracker.finish(),
    ))
}

/// True iff `k` is a non-empty clique of `G[subset]` that no other vertex of
/// `subset` extends. `subset` must be sorted.
pub fn is_maximal_in(g: &Graph, subset: &[Vertex], k: &[Vertex]) -> bool {
    let mut ops = 0;
    is_maximal_in_counted(g, subset, k, &mut ops)
}

/// [`is_maximal_in`] that adds the number of adjacency probes to `ops`.
pub fn is_maximal_in_counted(g: &Graph, subset: &[Vertex], k: &[Vertex], ops: &mut u64) -> bool {
    if k.is_empty() {
        return false;
    }
    if k.iter()
        .any(|&v| v >= g.n() || subset.binary_search(&v).is_err())
    {
        return false;
    }
    *ops += (k.len() * k.len().saturating_sub(1) / 2) as u64;
    if !g.is_clique(k) {
        return false;
    }
    let anchor = *k
        .iter()
        .min_by_key(|&&v| g.degree(v))
        .expect("k is non-empty");
    for &w in g.neighbors(anchor) {
        *ops += 1;
        if k.contains(&w) || subset.binary_search(&w).is_err() {
            continue;
        }
        if k.iter().all(|&x| {
            *ops += 1;
            x == anchor || g.has_edge(w, x)
        }) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn all(g: &Graph) -> Vec<Vertex> {
        (0..g.n()).collect()
    }

    fn sorted(mut v: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
        v.sort();
        v
    }

    #[test]
    fn pivot_examples() {
        let (k4, _) = pivot_enumerate(&complete(4), &[0, 1, 2, 3]);
        assert_eq!(k4.cliques, vec![vec![0, 1, 2, 3]]);

        let c5 = cycle(5);
        let (got, stats) = pivot_enumerate(&c5, &all(&c5));
        let (oracle, _) = oracle_enumerate(&c5, &all(&c5)).unwrap();
        assert_eq!(got.to_set(), oracle.to_set());
        assert_eq!(got.len(), 5);
        assert_eq!(stats.emitted, 5);

        let mm = multipartite(3, 3);
        let (got, _) = pivot_enumerate(&mm, &all(&mm));
        assert_eq!(got.len(), 27);
        assert!(got.cliques.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn outsens_examples() {
        let empty = Graph::from_edge_slice(4, &[]);
        let (got, _) = output_sensitive_enumerate(&empty, &all(&empty));
        assert_eq!(
            sorted(got.cliques),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );

        for g in [cycle(5), k33(), multipartite(3, 3), star(4), path(5)] {
            let (a, _) = output_sensitive_enumerate(&g, &all(&g));
            let (b, _) = pivot_enumerate(&g, &all(&g));
            assert_eq!(a.to_set(), b.to_set());
            assert_eq!(a.len(), b.len(), "reverse search emits no duplicates");
        }
        let (k, _) = output_sensitive_enumerate(&k33(), &all(&k33()));
        assert_eq!(k.len(), 9);
    }

    #[test]
    fn oracle_examples() {
        let one = Graph::from_edge_slice(1, &[]);
        assert_eq!(
            oracle_enumerate(&one, &[0]).unwrap().0.cliques,
            vec![vec![0]]
        );
        let p3 = path(3);
        assert_eq!(
            sorted(oracle_enumerate(&p3, &[0, 1, 2]).unwrap().0.cliques),
            vec![vec![0, 1], vec![1, 2]]
        );
        let big = Graph::from_edge_slice(30, &[]);
        assert_eq!(
            oracle_enumerate(&big, &all(&big)).unwrap_err(),
            Error::OracleLimit {
                limit: ORACLE_LIMIT,
                size: 30
            }
        );
    }

    #[test]
    fn empty_subset_gives_empty_list() {
        let g = cycle(5);
        assert!(pivot_enumerate(&g, &[]).0.is_empty());
        assert!(output_sensitive_enumerate(&g, &[]).0.is_empty());
        assert!(oracle_enumerate(&g, &[]).unwrap().0.is_empty());
    }

    #[test]
    fn subset_restriction() {
        let g = complete(5);
        let (got, _) = pivot_enumerate(&g, &[4, 1, 3]);
        assert_eq!(got.cliques, vec![vec![1, 3, 4]]);
    }

    #[test]
    fn maximality_examples() {
        let c5 = cycle(5);
        assert!(is_maximal_in(&c5, &all(&c5), &[0, 1]));
        let k4 = complete(4);
        assert!(!is_maximal_in(&k4, &all(&k4), &[0, 1]));
        assert!(is_maximal_in(&k4, &[0, 1], &[0, 1]));
        assert!(!is_maximal_in(&k4, &all(&k4), &[]));
        assert!(!is_maximal_in(&c5, &all(&c5), &[0, 2]));
    }

    #[test]
    fn degeneracy_split_matches_dense() {
        let g = multipartite(4, 3);
        let ids = all(&g);
        let (dense, _) = pivot_enumerate(&g, &ids);
        let mut tracker = Tracker::new();
        let mut split = Vec::new();
        pivot_by_degeneracy(&g, &ids, &mut tracker, &mut split);
        assert_eq!(sorted(split), sorted(dense.cliques));
    }

    #[test]
    fn delay_is_tracked() {
        let g = multipartite(4, 3);
        let (_, stats) = output_sensitive_enumerate(&g, &all(&g));
        assert_eq!(stats.emitted, 81);
        assert!(stats.delay_max > 0);
        assert!(stats.delay_max <= stats.work);
    }
}
