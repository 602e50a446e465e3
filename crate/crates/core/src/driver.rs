// SPDX-License-Identifier: Apache-2.0

//! The elimination recursion, run as a loop from the last vertex of the
//! order back to the first.
//!
//! Before step `i` the solution forest holds the maximal cliques of
//! `G[V_{i+1}]`, one per root-to-leaf path. A maximal clique `K` of `G[V_i]`
//! that contains `v = v_i` either extends a leaf (`K \ {v}` was already
//! maximal) or `K \ {v}` lies in `N(v) ∩ N(u)` for some non-neighbour `u` of
//! `v` in the suffix. The second kind is found by enumerating the blocks
//! `N(v) ∩ N(u) ∩ V_i` and filtering their cliques.
//!
//! A block clique can also sit inside one of the cliques just extended by
//! `v`; no block sees those, so every filter survivor is checked against the
//! extended cliques before it is attached.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, SuffixView, Vertex, VertexOrder};
use crate::kernels::KernelKind;
use crate::trie::{
    curing_filter, double_scan, exact_filter, BlockOrdering, CandidateBlock, FilterOutput,
    FilterStats,
};
use crate::wedge::{
    candidate_neighborhood, candidate_neighborhood_direct, enumerate_wedges,
    nonneighbor_suffix_set, NeighborhoodSource, WedgeIndex,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Per-step candidates cured by subset probing.
    Baseline,
    /// Per-step candidates filtered by the selected [`FilterKind`].
    #[default]
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    #[default]
    DoubleScan,
    Exact,
    Cure,
}

impl FilterKind {
    pub fn name(&self) -> &'static str {
        match self {
            FilterKind::DoubleScan => "doublescan",
            FilterKind::Exact => "exact",
            FilterKind::Cure => "cure",
        }
    }

    pub fn apply(&self, blocks: &[CandidateBlock], g: &Graph) -> Result<FilterOutput> {
        match self {
            FilterKind::DoubleScan => double_scan(blocks, &BlockOrdering::from_blocks(blocks)),
            FilterKind::Exact => Ok(exact_filter(blocks, g)),
            FilterKind::Cure => {
                let all: Vec<Vec<Vertex>> = blocks
                    .iter()
                    .flat_map(|b| b.cliques.iter().cloned())
                    .collect();
                curing_filter(&all)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DriverConfig {
    pub mode: Mode,
    pub filter: FilterKind,
    pub kernel: KernelKind,
    pub source: NeighborhoodSource,
    /// Closure parameter valid for the run's order; arms the bound checks.
    pub c: Option<usize>,
}

impl DriverConfig {
    /// The filter actually used: baseline always cures.
    pub fn effective_filter(&self) -> FilterKind {
        match self.mode {
            Mode::Baseline => FilterKind::Cure,
            Mode::Improved => self.filter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Counters of one run. Per-step vectors are indexed by position in the
/// elimination order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunMetrics {
    pub n: usize,
    pub mode: Mode,
    pub filter_mode: FilterKind,
    pub kernel: KernelKind,
    pub source: NeighborhoodSource,
    pub c: Option<usize>,
    pub alpha: u64,
    /// Cliques attached as new trees at each step.
    pub alpha_i: Vec<u64>,
    /// Maximal cliques of `G[N(v_i) ∩ V_{i+1}]`: attached plus extended.
    pub union_alpha_i: Vec<u64>,
    /// Block candidates at each step, summed over blocks.
    pub beta_i: Vec<u64>,
    pub extended: u64,
    pub singleton_steps: u64,
    pub context_rejections: u64,
    pub blocks: u64,
    pub max_block_size: usize,
    pub max_block_cliques: usize,
    pub kernel_calls: u64,
    pub kernel_work: u64,
    pub filter: FilterStats,
    pub wedge_count: Option<usize>,
    pub wedge_time_us: Option<u64>,
    pub bound_checks: Vec<BoundCheck>,
}

impl RunMetrics {
    /// Kernel plus filter elementary operations.
    pub fn work(&self) -> u64 {
        self.kernel_work + self.filter.ops()
    }
}

#[derive(Debug, Clone)]
struct TreeNode {
    vertex: Vertex,
    parent: Option<usize>,
    children: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Leaf {
    node: usize,
    clique: Vec<Vertex>,
}

/// Forest whose root-to-leaf paths are the enumerated cliques. Each leaf
/// caches its path as a sorted vertex set.
#[derive(Debug, Clone, Default)]
pub struct SolutionForest {
    nodes: Vec<TreeNode>,
    roots: Vec<usize>,
    leaves: Vec<Leaf>,
}

impl SolutionForest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn depth_of_leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.leaves.iter().map(|l| self.path_to_root(l.node).len())
    }

    /// `K(l)` read off the tree, leaf first.
    pub fn path_to_root(&self, mut node: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        loop {
            out.push(self.nodes[node].vertex);
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return out,
            }
        }
    }

    /// Leaf cliques, each ascending, list sorted.
    pub fn cliques(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = self.leaves.iter().map(|l| l.clique.clone()).collect();
        out.sort();
        out
    }

    fn push_node(&mut self, vertex: Vertex, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            vertex,
            parent,
            children: Vec::new(),
        });
        match parent {
            Some(p) => self.nodes[p].children.push(id),
            None => self.roots.push(id),
        }
        id
    }

    /// Gives every leaf with `K(l) ⊆ nbhd` the child `v`; returns how many.
    pub fn extend_leaves(&mut self, v: Vertex, nbhd: &[Vertex]) -> usize {
        self.extend_leaves_collect(v, nbhd).len()
    }

    /// Like [`extend_leaves`](Self::extend_leaves), returning the extended
    /// cliques as they were before `v` was added. `nbhd` must be sorted.
    pub fn extend_leaves_collect(&mut self, v: Vertex, nbhd: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut extended = Vec::new();
        for i in 0..self.leaves.len() {
            let inside = self.leaves[i]
                .clique
                .iter()
                .all(|x| nbhd.binary_search(x).is_ok());
            if !inside {
                continue;
            }
            let parent = self.leaves[i].node;
            let child = self.push_node(v, Some(parent));
            let leaf = &mut self.leaves[i];
            extended.push(leaf.clique.clone());
            leaf.node = child;
            let at = leaf.clique.partition_point(|&x| x < v);
            leaf.clique.insert(at, v);
        }
        extended
    }

    /// Adds a tree rooted at `v` carrying `v ∪ K` for each `K` in `cliques`.
    /// Cliques sharing a prefix share the path.
    pub fn add_tree(&mut self, v: Vertex, cliques: &[Vec<Vertex>]) {
        if cliques.is_empty() {
            return;
        }
        let root = self.push_node(v, None);
        for clique in cliques {
            let mut node = root;
            for &x in clique {
                let existing = self.nodes[node]
                    .children
                    .iter()
                    .copied()
                    .find(|&c| self.nodes[c].vertex == x);
                node = match existing {
                    Some(c) => c,
                    None => self.push_node(x, Some(node)),
                };
            }
            let mut set = clique.clone();
            set.push(v);
            set.sort_unstable();
            self.leaves.push(Leaf { node, clique: set });
        }
    }

    /// A single-vertex tree.
    pub fn add_singleton(&mut self, v: Vertex) {
        let node = self.push_node(v, None);
        self.leaves.push(Leaf {
            node,
            clique: alloc::vec![v],
        });
    }
}

fn is_proper_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.len() < big.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Enumerates all maximal cliques of `g` along `order`.
///
/// `wedges` is used when the config asks for wedge-based neighbourhoods; it
/// is built here when not supplied.
pub fn enumerate_cclosed(
    g: &Graph,
    order: &VertexOrder,
    config: &DriverConfig,
    wedges: Option<&WedgeIndex>,
) -> Result<(SolutionForest, RunMetrics)> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::InvalidPermutation { n });
    }
    let owned;
    let wedges = match (config.source, wedges) {
        (NeighborhoodSource::Wedges, None) => {
            owned = enumerate_wedges(g);
            Some(&owned)
        }
        (NeighborhoodSource::Wedges, Some(w)) => Some(w),
        (NeighborhoodSource::Direct, _) => None,
    };
    let filter = config.effective_filter();

    let mut metrics = RunMetrics {
        n,
        mode: config.mode,
        filter_mode: filter,
        kernel: config.kernel,
        source: config.source,
        c: config.c,
        alpha_i: alloc::vec![0; n],
        union_alpha_i: alloc::vec![0; n],
        beta_i: alloc::vec![0; n],
        wedge_count: wedges.map(WedgeIndex::wedge_count),
        ..Default::default()
    };
    let mut forest = SolutionForest::new();

    for i in (0..n).rev() {
        let v = order.vertex_at(i);
        let view = SuffixView::new(g, order, i)?;
        let nbhd = view.neighborhood_in_suffix(v)?;
        if nbhd.is_empty() {
            forest.add_singleton(v);
            metrics.singleton_steps += 1;
            metrics.alpha_i[i] = 1;
            metrics.union_alpha_i[i] = 1;
            continue;
        }

        let context = forest.extend_leaves_collect(v, &nbhd);
        metrics.extended += context.len() as u64;

        let mut blocks = Vec::new();
        for u in nonneighbor_suffix_set(&view, v)? {
            let vertices = match wedges {
                Some(idx) => candidate_neighborhood(idx, &view, v, u)?,
                None => candidate_neighborhood_direct(&view, v, u)?,
            };
            let (list, stats) = config.kernel.run(g, &vertices)?;
            metrics.blocks += 1;
            metrics.kernel_calls += stats.recursive_calls;
            metrics.kernel_work += stats.work;
            metrics.max_block_size = metrics.max_block_size.max(vertices.len());
            metrics.max_block_cliques = metrics.max_block_cliques.max(list.len());
            metrics.beta_i[i] += list.len() as u64;
            if !list.is_empty() {
                blocks.push(CandidateBlock {
                    partner: u,
                    vertices,
                    cliques: list.cliques,
                });
            }
        }

        let mut survivors = if blocks.is_empty() {
            Vec::new()
        } else {
            let out = filter.apply(&blocks, g)?;
            metrics.filter.add(&out.stats);
            out.cliques
        };
        let before = survivors.len();
        survivors.retain(|k| !context.iter().any(|m| is_proper_subset(k, m)));
        metrics.context_rejections += (before - survivors.len()) as u64;

        forest.add_tree(v, &survivors);
        metrics.alpha_i[i] = survivors.len() as u64;
        metrics.union_alpha_i[i] = (survivors.len() + context.len()) as u64;
    }

    metrics.alpha = forest.leaf_count() as u64;
    if let Some(c) = config.c {
        metrics.bound_checks = check_bounds(&metrics, n, c);
    }
    Ok((forest, metrics))
}

/// Evaluates the closure-parameter bounds on a finished run:
///
/// * `alpha`: α ≤ 3^((c−1)/3)·n²
/// * `block_size`: every block has fewer than `c` vertices
/// * `block_cliques`: every block has at most 3^(c/3) maximal cliques
/// * `beta`: β_i ≤ n·c·α_i at every step (α_i as in `union_alpha_i`);
///   reported at the step with the smallest slack
pub fn check_bounds(m: &RunMetrics, n: usize, c: usize) -> Vec<BoundCheck> {
    let c_f = c as f64;
    let n_f = n as f64;
    let mut out = Vec::new();

    let rhs = libm::pow(3.0, (c_f - 1.0) / 3.0) * n_f * n_f;
    out.push(BoundCheck {
        name: "alpha".into(),
        lhs: m.alpha as f64,
        rhs,
        holds: (m.alpha as f64) <= rhs,
    });

    out.push(BoundCheck {
        name: "block_size".into(),
        lhs: m.max_block_size as f64,
        rhs: c_f,
        holds: m.max_block_size < c,
    });

    let rhs = libm::pow(3.0, c_f / 3.0);
    out.push(BoundCheck {
        name: "block_cliques".into(),
        lhs: m.max_block_cliques as f64,
        rhs,
        holds: (m.max_block_cliques as f64) <= rhs,
    });

    let (mut lhs, mut rhs, mut slack) = (0.0, 0.0, f64::INFINITY);
    for (&beta, &alpha) in m.beta_i.iter().zip(&m.union_alpha_i) {
        let r = n_f * c_f * alpha as f64;
        let s = r - beta as f64;
        if beta > 0 && s < slack {
            (lhs, rhs, slack) = (beta as f64, r, s);
        }
    }
    out.push(BoundCheck {
        name: "beta".into(),
        lhs,
        rhs,
        holds: lhs <= rhs,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::weak_closure_number;
    use crate::graph::fixtures::*;
    use crate::kernels::oracle_enumerate;
    use alloc::vec;

    fn oracle(g: &Graph) -> Vec<Vec<Vertex>> {
        let all: Vec<Vertex> = (0..g.n()).collect();
        let mut c = oracle_enumerate(g, &all).unwrap().0.cliques;
        c.sort();
        c
    }

    fn run(g: &Graph, filter: FilterKind) -> (SolutionForest, RunMetrics) {
        let config = DriverConfig {
            filter,
            ..Default::default()
        };
        enumerate_cclosed(g, &VertexOrder::identity(g.n()), &config, None).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edge_slice(1, &[]);
        let (f, m) = run(&g, FilterKind::DoubleScan);
        assert_eq!(f.root_count(), 1);
        assert_eq!(m.alpha, 1);
        assert_eq!(f.cliques(), vec![vec![0]]);
    }

    #[test]
    fn cycle_matches_oracle() {
        let g = cycle(5);
        for filter in [FilterKind::DoubleScan, FilterKind::Exact, FilterKind::Cure] {
            let (f, m) = run(&g, filter);
            assert_eq!(f.cliques(), oracle(&g));
            assert_eq!(m.alpha, 5);
            assert!(f.depth_of_leaves().all(|d| d == 2));
        }
    }

    #[test]
    fn moon_moser_nine() {
        let g = multipartite(3, 3);
        let (f, m) = run(&g, FilterKind::DoubleScan);
        assert_eq!(m.alpha, 27);
        assert!(f.depth_of_leaves().all(|d| d == 3));
        assert_eq!(f.cliques(), oracle(&g));
    }

    #[test]
    fn extended_clique_dominates_block_candidate() {
        // {2,3} is maximal in block N(0) ∩ N(1) but {0,2,3} sits inside
        // {0,2,3,4}, which arrives by extension.
        let g = Graph::from_edge_slice(
            5,
            &[
                (0, 2),
                (0, 3),
                (0, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (1, 2),
                (1, 3),
            ],
        );
        for filter in [FilterKind::DoubleScan, FilterKind::Exact, FilterKind::Cure] {
            let (f, m) = run(&g, filter);
            assert_eq!(f.cliques(), vec![vec![0, 2, 3, 4], vec![1, 2, 3]]);
            assert_eq!(m.context_rejections, 1);
        }
    }

    #[test]
    fn interleaved_blocks_fool_double_scan() {
        let g = Graph::from_edge_slice(
            7,
            &[
                (0, 4),
                (0, 5),
                (0, 6),
                (4, 5),
                (4, 6),
                (5, 6),
                (1, 4),
                (1, 6),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (3, 6),
            ],
        );
        let (exact, _) = run(&g, FilterKind::Exact);
        assert_eq!(exact.cliques(), oracle(&g));
        let (scanned, _) = run(&g, FilterKind::DoubleScan);
        assert!(scanned.cliques().contains(&vec![0, 4, 5]));
        assert!(!oracle(&g).contains(&vec![0, 4, 5]));
    }

    #[test]
    fn extend_leaves_examples() {
        let mut f = SolutionForest::new();
        f.add_singleton(2);
        assert_eq!(f.extend_leaves(1, &[2]), 1);
        assert_eq!(f.cliques(), vec![vec![1, 2]]);
        assert_eq!(f.path_to_root(f.leaves[0].node), vec![1, 2]);

        let mut f = SolutionForest::new();
        f.add_tree(2, &[vec![3]]);
        assert_eq!(f.extend_leaves(1, &[2]), 0);

        let mut f = SolutionForest::new();
        f.add_tree(5, &[vec![2], vec![3]]);
        assert_eq!(f.extend_leaves(1, &[2, 3, 5]), 2);
        assert_eq!(f.root_count(), 1);
    }

    #[test]
    fn bounds_on_small_runs() {
        let g = cycle(5);
        let w = weak_closure_number(&g);
        let config = DriverConfig {
            c: Some(w.c),
            ..Default::default()
        };
        let (_, m) = enumerate_cclosed(&g, &w.order, &config, None).unwrap();
        assert!(
            m.bound_checks.iter().all(|b| b.holds),
            "{:?}",
            m.bound_checks
        );
        assert_eq!(m.bound_checks[0].lhs, 5.0);

        let k4 = complete(4);
        let (_, m) = run(&k4, FilterKind::DoubleScan);
        let checks = check_bounds(&m, 4, 1);
        assert_eq!((checks[0].lhs, checks[0].rhs), (1.0, 16.0));
        assert!(checks.iter().all(|b| b.holds));

        let mm = multipartite(3, 3);
        let (_, m) = run(&mm, FilterKind::DoubleScan);
        let checks = check_bounds(&m, 9, 7);
        assert_eq!((checks[0].lhs, checks[0].rhs), (27.0, 9.0 * 81.0));
        assert!(checks.iter().all(|b| b.holds));
    }

    #[test]
    fn wrong_order_length_is_rejected() {
        let g = cycle(5);
        let err = enumerate_cclosed(
            &g,
            &VertexOrder::identity(4),
            &DriverConfig::default(),
            None,
        )
        .unwrap_err();
        assert_eq!(err, Error::InvalidPermutation { n: 5 });
    }

    #[test]
    fn baseline_uses_cure() {
        let g = multipartite(3, 3);
        let config = DriverConfig {
            mode: Mode::Baseline,
            filter: FilterKind::Exact,
            ..Default::default()
        };
        let (f, m) = enumerate_cclosed(&g, &VertexOrder::identity(9), &config, None).unwrap();
        assert_eq!(m.filter_mode, FilterKind::Cure);
        assert!(m.filter.subset_probes > 0);
        assert_eq!(f.leaf_count(), 27);
    }
}
