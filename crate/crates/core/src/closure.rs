// SPDX-License-Identifier: Apache-2.0

//! Closure numbers, bad pairs and weak-closure orderings.
//!
//! A graph is c-closed when every non-adjacent pair has fewer than `c`
//! common neighbours; a non-adjacent pair with at least `c` of them is a bad
//! pair. A weak-closure ordering lists the vertices so that each one is in no
//! bad pair of the subgraph induced by itself and the vertices after it.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex, VertexOrder};

/// Above this order `weak_closure_order` recounts per step instead of
/// maintaining an n×n count matrix.
pub const COUNT_MATRIX_LIMIT: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPair {
    pub u: Vertex,
    pub v: Vertex,
    pub witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub closure_c: usize,
    pub weak_c: usize,
    pub weak_order: Vec<Vertex>,
}

impl ClosureReport {
    pub fn analyze(g: &Graph) -> Self {
        let weak = weak_closure_number(g);
        ClosureReport {
            closure_c: closure_number(g),
            weak_c: weak.c,
            weak_order: weak.order.into_vec(),
        }
    }
}

/// Where greedy extraction got stuck: every remaining vertex is in a bad pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuckSet {
    pub c: usize,
    pub extracted: usize,
    pub remaining: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakClosure {
    pub c: usize,
    pub order: VertexOrder,
    /// One entry per rejected `c` below the answer.
    pub failures: Vec<StuckSet>,
}

/// Counts common neighbours of a fixed vertex with everyone else by walking
/// its 2-paths. Reusable scratch space.
struct TwoPathCounter {
    count: Vec<usize>,
    touched: Vec<Vertex>,
}

impl TwoPathCounter {
    fn new(n: usize) -> Self {
        Self {
            count: vec![0; n],
            touched: Vec::new(),
        }
    }

    /// Fills counts of common neighbours of `x` restricted to `alive`.
    fn fill(&mut self, g: &Graph, x: Vertex, alive: impl Fn(Vertex) -> bool) {
        self.clear();
        for &m in g.neighbors(x) {
            if !alive(m) {
                continue;
            }
            for &w in g.neighbors(m) {
                if w == x || !alive(w) {
                    continue;
                }
                if self.count[w] == 0 {
                    self.touched.push(w);
                }
                self.count[w] += 1;
            }
        }
    }

    fn clear(&mut self) {
        for &w in &self.touched {
            self.count[w] = 0;
        }
        self.touched.clear();
    }

    /// `(w, count)` over vertices with at least one common neighbour.
    fn entries(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.touched.iter().map(|&w| (w, self.count[w]))
    }
}

/// Histogram of common-neighbour counts over non-adjacent pairs `u < v`:
/// entry `k` is the number of such pairs with exactly `k` common neighbours
/// (pairs with none are not counted).
fn nonadjacent_histogram(g: &Graph) -> Vec<usize> {
    let mut hist = vec![0usize; 1];
    let mut counter = TwoPathCounter::new(g.n());
    for u in 0..g.n() {
        counter.fill(g, u, |_| true);
        for (w, k) in counter.entries() {
            if w > u && !g.has_edge(u, w) {
                if hist.len() <= k {
                    hist.resize(k + 1, 0);
                }
                hist[k] += 1;
            }
        }
    }
    hist
}

/// Smallest `c` such that `g` is c-closed.
pub fn closure_number(g: &Graph) -> usize {
    nonadjacent_histogram(g).len()
}

/// Number of bad pairs at each level `c = 1 ..= closure_number(g)`
/// (index 0 holds `c = 1`; the last entry is always zero).
pub fn bad_pair_counts(g: &Graph) -> Vec<usize> {
    let hist = nonadjacent_histogram(g);
    let top = hist.len();
    (1..=top).map(|c| hist.iter().skip(c).sum()).collect()
}

/// All non-adjacent pairs with at least `c` common neighbours, sorted.
pub fn bad_pairs(g: &Graph, c: usize) -> Vec<BadPair> {
    let c = c.max(1);
    let mut out = Vec::new();
    let mut counter = TwoPathCounter::new(g.n());
    for u in 0..g.n() {
        counter.fill(g, u, |_| true);
        for (w, k) in counter.entries() {
            if w > u && k >= c && !g.has_edge(u, w) {
                out.push(BadPair {
                    u,
                    v: w,
                    witnesses: k,
                });
            }
        }
    }
    out.sort_unstable_by_key(|p| (p.u, p.v));
    out
}

/// Greedy weak-closure ordering at level `c`: repeatedly extracts the
/// smallest-id vertex that is in no bad pair of the remaining graph.
pub fn weak_closure_order(g: &Graph, c: usize) -> Result<VertexOrder, StuckSet> {
    if g.n() <= COUNT_MATRIX_LIMIT {
        weak_order_incremental(g, c)
    } else {
        weak_order_recount(g, c)
    }
}

/// Per-step recount variant; exposed for cross-checking.
pub fn weak_order_recount(g: &Graph, c: usize) -> Result<VertexOrder, StuckSet> {
    let c = c.max(1);
    let n = g.n();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut counter = TwoPathCounter::new(n);
    while order.len() < n {
        let next = (0..n).filter(|&x| alive[x]).find(|&x| {
            counter.fill(g, x, |w| alive[w]);
            !counter.entries().any(|(w, k)| k >= c && !g.has_edge(x, w))
        });
        match next {
            Some(x) => {
                alive[x] = false;
                order.push(x);
            }
            None => return Err(stuck(c, &order, &alive)),
        }
    }
    Ok(VertexOrder::new(order).expect("extraction yields a permutation"))
}

/// Count-matrix variant, O(n²) memory.
pub fn weak_order_incremental(g: &Graph, c: usize) -> Result<VertexOrder, StuckSet> {
    let c = c.max(1);
    let n = g.n();
    let mut cnt = vec![0u32; n * n];
    let mut counter = TwoPathCounter::new(n);
    for u in 0..n {
        counter.fill(g, u, |_| true);
        for (w, k) in counter.entries() {
            cnt[u * n + w] = k as u32;
        }
    }
    let c32 = c as u32;
    let mut bad = vec![0usize; n];
    for u in 0..n {
        for w in u + 1..n {
            if cnt[u * n + w] >= c32 && !g.has_edge(u, w) {
                bad[u] += 1;
                bad[w] += 1;
            }
        }
    }

    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let Some(x) = (0..n).find(|&x| alive[x] && bad[x] == 0) else {
            return Err(stuck(c, &order, &alive));
        };
        alive[x] = false;
        order.push(x);
        // x is in no bad pair, so only pairs through x as a midpoint change.
        let nbrs: Vec<Vertex> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&a| alive[a])
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                let before = cnt[a * n + b];
                cnt[a * n + b] -= 1;
                cnt[b * n + a] -= 1;
                if before == c32 && !g.has_edge(a, b) {
                    bad[a] -= 1;
                    bad[b] -= 1;
                }
            }
        }
    }
    Ok(VertexOrder::new(order).expect("extraction yields a permutation"))
}

fn stuck(c: usize, order: &[Vertex], alive: &[bool]) -> StuckSet {
    StuckSet {
        c,
        extracted: order.len(),
        remaining: (0..alive.len()).filter(|&v| alive[v]).collect(),
    }
}

/// Smallest `c` admitting a weak-closure ordering, searched upward from 1.
pub fn weak_closure_number(g: &Graph) -> WeakClosure {
    let mut failures = Vec::new();
    for c in 1.. {
        match weak_closure_order(g, c) {
            Ok(order) => return WeakClosure { c, order, failures },
            Err(s) => failures.push(s),
        }
    }
    unreachable!("every graph is weakly closed at its closure number")
}

/// True iff each `order[i]` is in no bad pair of `G[order[i..]]` at level `c`.
pub fn is_weak_order(g: &Graph, c: usize, order: &VertexOrder) -> bool {
    if order.len() != g.n() {
        return false;
    }
    let c = c.max(1);
    let mut counter = TwoPathCounter::new(g.n());
    (0..g.n()).all(|i| {
        let v = order.vertex_at(i);
        counter.fill(g, v, |w| order.position(w) >= i);
        !counter.entries().any(|(w, k)| k >= c && !g.has_edge(v, w))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    /// Brute-force pair scan.
    fn brute_closure(g: &Graph) -> usize {
        let mut best = 0;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge_sorted(u, v) {
                    let k = (0..g.n())
                        .filter(|&x| g.has_edge_sorted(x, u) && g.has_edge_sorted(x, v))
                        .count();
                    best = best.max(k);
                }
            }
        }
        best + 1
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure_number(&complete(4)), 1);
        assert_eq!(closure_number(&cycle(5)), brute_closure(&cycle(5)));
        assert_eq!(closure_number(&cycle(5)), 2);
        assert_eq!(closure_number(&k33()), 4);
        assert_eq!(closure_number(&Graph::from_edge_slice(3, &[])), 1);
    }

    #[test]
    fn bad_pair_examples() {
        let p3 = path(3);
        assert_eq!(
            bad_pairs(&p3, 1),
            vec![BadPair {
                u: 0,
                v: 2,
                witnesses: 1
            }]
        );
        assert!(bad_pairs(&p3, 2).is_empty());
        assert!(bad_pairs(&complete(4), 1).is_empty());
        assert_eq!(bad_pair_counts(&k33()), vec![6, 6, 6, 0]);
    }

    #[test]
    fn weak_order_examples() {
        let p3 = path(3);
        let order = weak_closure_order(&p3, 1).unwrap();
        assert_eq!(order.as_slice(), &[1, 0, 2]);
        assert!(weak_closure_order(&complete(4), 1).is_ok());

        let c4 = cycle(4);
        let err = weak_closure_order(&c4, 2).unwrap_err();
        assert_eq!(err.extracted, 0);
        assert_eq!(err.remaining, vec![0, 1, 2, 3]);
        assert!(weak_closure_order(&c4, 3).is_ok());
    }

    #[test]
    fn weak_number_examples() {
        let w = weak_closure_number(&path(3));
        assert_eq!(w.c, 1);
        assert!(is_weak_order(&path(3), 1, &w.order));

        let w = weak_closure_number(&cycle(4));
        assert_eq!(w.c, 3);
        assert_eq!(w.failures.len(), 2);

        let w = weak_closure_number(&cycle(5));
        assert_eq!(w.c, 2);
        assert!(is_weak_order(&cycle(5), 2, &w.order));
    }

    #[test]
    fn is_weak_order_examples() {
        let p3 = path(3);
        assert!(is_weak_order(
            &p3,
            1,
            &VertexOrder::new(vec![1, 0, 2]).unwrap()
        ));
        assert!(!is_weak_order(&p3, 1, &VertexOrder::identity(3)));
        let g = k33();
        let c = closure_number(&g);
        assert!(is_weak_order(
            &g,
            c,
            &VertexOrder::new(vec![5, 3, 1, 0, 4, 2]).unwrap()
        ));
    }

    #[test]
    fn incremental_and_recount_agree() {
        for g in [
            cycle(4),
            cycle(5),
            cycle(7),
            k33(),
            multipartite(3, 3),
            star(5),
            path(6),
        ] {
            for c in 1..6 {
                assert_eq!(weak_order_incremental(&g, c), weak_order_recount(&g, c));
            }
        }
    }
}
