// SPDX-License-Identifier: Apache-2.0

//! Wedge (induced 2-path) enumeration and the candidate neighbourhoods
//! `N_H(u)` derived from it.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{intersect_sorted, Graph, SuffixView, Vertex};
use crate::{Error, Result};

/// Induced path `end_a - mid - end_b` with `end_a < end_b` non-adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Wedge {
    pub end_a: Vertex,
    pub mid: Vertex,
    pub end_b: Vertex,
}

impl Wedge {
    pub fn other_end(&self, x: Vertex) -> Vertex {
        if self.end_a == x {
            self.end_b
        } else {
            self.end_a
        }
    }
}

/// The mapping from each vertex to the wedges having it as an endpoint.
///
/// Each list is sorted by (other endpoint, midpoint), so the wedges joining a
/// fixed pair `(v, u)` form one contiguous run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeIndex {
    by_endpoint: Vec<Vec<Wedge>>,
    count: usize,
}

/// How `N_H(u)` is obtained in the enumeration driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborhoodSource {
    #[default]
    Wedges,
    Direct,
}

/// Lists every wedge of `g` once.
pub fn enumerate_wedges(g: &Graph) -> WedgeIndex {
    let mut by_endpoint: Vec<Vec<Wedge>> = (0..g.n()).map(|_| Vec::new()).collect();
    let mut count = 0;
    for mid in 0..g.n() {
        let nbrs = g.neighbors(mid);
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.has_edge(a, b) {
                    let w = Wedge {
                        end_a: a,
                        mid,
                        end_b: b,
                    };
                    by_endpoint[a].push(w);
                    by_endpoint[b].push(w);
                    count += 1;
                }
            }
        }
    }
    for (x, list) in by_endpoint.iter_mut().enumerate() {
        list.sort_unstable_by_key(|w| (w.other_end(x), w.mid));
    }
    WedgeIndex { by_endpoint, count }
}

impl WedgeIndex {
    pub fn wedge_count(&self) -> usize {
        self.count
    }

    /// `M[x]`.
    pub fn wedges_at(&self, x: Vertex) -> &[Wedge] {
        &self.by_endpoint[x]
    }

    pub fn endpoint_counts(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_endpoint.iter().map(Vec::len)
    }

    /// Wedges joining `v` and `u`, i.e. the run of `M[v]` with partner `u`.
    pub fn wedges_between(&self, v: Vertex, u: Vertex) -> &[Wedge] {
        let list = &self.by_endpoint[v];
        let lo = list.partition_point(|w| w.other_end(v) < u);
        let hi = list.partition_point(|w| w.other_end(v) <= u);
        &list[lo..hi]
    }

    /// Every wedge in canonical order.
    pub fn all(&self) -> Vec<Wedge> {
        let mut out: Vec<Wedge> = self
            .by_endpoint
            .iter()
            .enumerate()
            .flat_map(|(x, list)| list.iter().filter(move |w| w.end_a == x).copied())
            .collect();
        out.sort_unstable();
        out
    }
}

fn check_pair(view: &SuffixView<'_>, v: Vertex, u: Vertex) -> Result<()> {
    let g = view.graph();
    g.check_vertex(v)?;
    g.check_vertex(u)?;
    if u == v {
        return Err(Error::SameVertex(v, u));
    }
    for x in [v, u] {
        if !view.contains(x) {
            return Err(Error::NotInView(x));
        }
    }
    if g.has_edge(v, u) {
        return Err(Error::AdjacentPair(v, u));
    }
    Ok(())
}

/// `N_H(u)` inside the view: midpoints of wedges `(v, x, u)` with `x ∈ V_i`.
pub fn candidate_neighborhood(
    idx: &WedgeIndex,
    view: &SuffixView<'_>,
    v: Vertex,
    u: Vertex,
) -> Result<Vec<Vertex>> {
    check_pair(view, v, u)?;
    Ok(idx
        .wedges_between(v, u)
        .iter()
        .map(|w| w.mid)
        .filter(|&x| view.contains(x))
        .collect())
}

/// Same set as [`candidate_neighborhood`], as `N(v) ∩ N(u) ∩ V_i`.
pub fn candidate_neighborhood_direct(
    view: &SuffixView<'_>,
    v: Vertex,
    u: Vertex,
) -> Result<Vec<Vertex>> {
    check_pair(view, v, u)?;
    let g = view.graph();
    let mut out = intersect_sorted(g.neighbors(v), g.neighbors(u));
    out.retain(|&x| view.contains(x));
    Ok(out)
}

/// `A_i`: vertices of the view other than `v` and not adjacent to it.
pub fn nonneighbor_suffix_set(view: &SuffixView<'_>, v: Vertex) -> Result<Vec<Vertex>> {
    let g = view.graph();
    g.check_vertex(v)?;
    if !view.contains(v) {
        return Err(Error::NotInView(v));
    }
    let mut out: Vec<Vertex> = view
        .vertices()
        .iter()
        .copied()
        .filter(|&x| x != v && !g.has_edge(v, x))
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::VertexOrder;
    use alloc::vec;

    /// Every ordered triple, kept when it is an induced 2-path.
    fn brute_wedges(g: &Graph) -> Vec<Wedge> {
        let n = g.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for m in 0..n {
                    if m != a
                        && m != b
                        && g.has_edge_sorted(a, m)
                        && g.has_edge_sorted(m, b)
                        && !g.has_edge_sorted(a, b)
                    {
                        out.push(Wedge {
                            end_a: a,
                            mid: m,
                            end_b: b,
                        });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(enumerate_wedges(&complete(3)).wedge_count(), 0);
        let p3 = enumerate_wedges(&path(3));
        assert_eq!(
            p3.all(),
            vec![Wedge {
                end_a: 0,
                mid: 1,
                end_b: 2
            }]
        );
        let s = enumerate_wedges(&star(3));
        let expect = brute_wedges(&star(3));
        assert_eq!(s.all(), expect);
        assert_eq!(
            expect
                .iter()
                .map(|w| (w.end_a, w.mid, w.end_b))
                .collect::<Vec<_>>(),
            vec![(1, 0, 2), (1, 0, 3), (2, 0, 3)]
        );
    }

    #[test]
    fn each_wedge_listed_at_both_endpoints() {
        for g in [cycle(5), k33(), multipartite(3, 3), star(4)] {
            let idx = enumerate_wedges(&g);
            assert_eq!(idx.endpoint_counts().sum::<usize>(), 2 * idx.wedge_count());
            assert_eq!(idx.all(), brute_wedges(&g));
        }
    }

    #[test]
    fn candidate_examples() {
        let c5 = cycle(5);
        let id = VertexOrder::identity(5);
        let view = SuffixView::new(&c5, &id, 0).unwrap();
        let idx = enumerate_wedges(&c5);
        assert_eq!(candidate_neighborhood(&idx, &view, 0, 2).unwrap(), vec![1]);

        let k = k33();
        let id6 = VertexOrder::identity(6);
        let view = SuffixView::new(&k, &id6, 0).unwrap();
        let idx = enumerate_wedges(&k);
        assert_eq!(
            candidate_neighborhood(&idx, &view, 0, 1).unwrap(),
            vec![3, 4, 5]
        );
        assert_eq!(
            candidate_neighborhood_direct(&view, 0, 1).unwrap(),
            vec![3, 4, 5]
        );
        assert_eq!(
            candidate_neighborhood(&idx, &view, 0, 3),
            Err(Error::AdjacentPair(0, 3))
        );

        let p3 = path(3);
        let id3 = VertexOrder::identity(3);
        let view = SuffixView::new(&p3, &id3, 0).unwrap();
        let idx = enumerate_wedges(&p3);
        assert_eq!(candidate_neighborhood(&idx, &view, 0, 2).unwrap(), vec![1]);
    }

    #[test]
    fn candidate_respects_suffix() {
        let k = k33();
        let order = VertexOrder::new(vec![3, 0, 1, 4, 5, 2]).unwrap();
        let view = SuffixView::new(&k, &order, 1).unwrap();
        let idx = enumerate_wedges(&k);
        assert_eq!(
            candidate_neighborhood(&idx, &view, 0, 1).unwrap(),
            vec![4, 5]
        );
        assert_eq!(
            candidate_neighborhood(&idx, &view, 3, 4),
            Err(Error::NotInView(3))
        );
    }

    #[test]
    fn nonneighbor_examples() {
        let k4 = complete(4);
        let id4 = VertexOrder::identity(4);
        let view = SuffixView::new(&k4, &id4, 1).unwrap();
        assert!(nonneighbor_suffix_set(&view, 2).unwrap().is_empty());

        let c5 = cycle(5);
        let id = VertexOrder::identity(5);
        let full = SuffixView::new(&c5, &id, 0).unwrap();
        assert_eq!(nonneighbor_suffix_set(&full, 0).unwrap(), vec![2, 3]);
        let tail = SuffixView::new(&c5, &id, 3).unwrap();
        assert!(nonneighbor_suffix_set(&tail, 3).unwrap().is_empty());
    }
}
