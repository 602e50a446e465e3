// SPDX-License-Identifier: Apache-2.0

//! Seeded instance generators.

use cclique_core::{bad_pairs, Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_MOON_MOSER_K: usize = 6;
pub const MAX_N: usize = 100_000;

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("moon_moser needs 1 <= k <= {MAX_MOON_MOSER_K}, got {0}")]
    MoonMoserK(usize),
    #[error("n must be at most {MAX_N}, got {0}")]
    TooLarge(usize),
    #[error("p must lie in [0, 1], got {0}")]
    Probability(f64),
    #[error("c must be at least 1")]
    ZeroC,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    MoonMoser {
        k: usize,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
    PlantedCclosed {
        n: usize,
        c: usize,
        seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph, GenerateError> {
        match *self {
            GeneratorSpec::MoonMoser { k } => moon_moser(k),
            GeneratorSpec::Gnp { n, p, seed } => gnp(n, p, seed),
            GeneratorSpec::PlantedCclosed { n, c, seed, p } => planted_cclosed(n, c, seed, p),
        }
    }
}

fn check_np(n: usize, p: f64) -> Result<(), GenerateError> {
    if n > MAX_N {
        return Err(GenerateError::TooLarge(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Probability(p));
    }
    Ok(())
}

/// Complete `k`-partite graph with parts `{3i, 3i+1, 3i+2}`.
pub fn moon_moser(k: usize) -> Result<Graph, GenerateError> {
    if !(1..=MAX_MOON_MOSER_K).contains(&k) {
        return Err(GenerateError::MoonMoserK(k));
    }
    let n = 3 * k;
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u / 3 != v / 3)
        .collect();
    Ok(Graph::from_edge_slice(n, &edges))
}

/// Pairs `u < v` of `0..n`, each kept with probability `p`, using geometric
/// skips over the pair sequence.
fn gnp_pairs(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    if p >= 1.0 {
        for u in 0..n {
            edges.extend((u + 1..n).map(|v| (u, v)));
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    // Pairs (w, v) with w < v, visited row by row.
    let mut v = 1usize;
    let mut w: usize = 0;
    let mut first = true;
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        let step = if skip >= (n * n) as f64 {
            n * n
        } else {
            skip as usize
        };
        w = if first { step } else { w + 1 + step };
        first = false;
        while v < n && w >= v {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w, v));
        }
    }
    edges
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    check_np(n, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Graph::from_edge_slice(n, &gnp_pairs(n, p, &mut rng)))
}

/// A sparse random graph with closure number at most `c` that still carries
/// maximal cliques of size close to `c`.
///
/// Consecutive id ranges of `c + 1` vertices hold gadgets: two non-adjacent
/// tips followed by a `(c-1)`-clique joined to both. A `G(n, p)` background
/// (default `p = 1/n`) is added, then every bad pair at level `c` is joined
/// until none remain.
pub fn planted_cclosed(
    n: usize,
    c: usize,
    seed: u64,
    p: Option<f64>,
) -> Result<Graph, GenerateError> {
    if c == 0 {
        return Err(GenerateError::ZeroC);
    }
    let p = p.unwrap_or(if n > 0 { 1.0 / n as f64 } else { 0.0 });
    check_np(n, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = gnp_pairs(n, p, &mut rng);

    let width = c + 1;
    if c >= 2 {
        for base in (0..n / width).map(|i| i * width) {
            let core = base + 2..base + width;
            for a in core.clone() {
                edges.push((base, a));
                edges.push((base + 1, a));
                edges.extend((a + 1..base + width).map(|b| (a, b)));
            }
        }
    }

    let mut g = Graph::from_edge_slice(n, &edges);
    loop {
        let bad = bad_pairs(&g, c);
        if bad.is_empty() {
            break;
        }
        edges = g.edges().collect();
        edges.extend(bad.iter().map(|b| (b.u, b.v)));
        g = Graph::from_edge_slice(n, &edges);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cclique_core::closure_number;

    #[test]
    fn moon_moser_sizes() {
        let g = moon_moser(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 27));
        assert_eq!(moon_moser(7), Err(GenerateError::MoonMoserK(7)));
    }

    #[test]
    fn gnp_extremes() {
        let g = gnp(10, 0.0, 1).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 0));
        assert_eq!(gnp(10, 1.0, 1).unwrap().edge_count(), 45);
        assert_eq!(gnp(3, 1.5, 1), Err(GenerateError::Probability(1.5)));
    }

    #[test]
    fn gnp_density_and_determinism() {
        let a = gnp(400, 0.05, 7).unwrap();
        let b = gnp(400, 0.05, 7).unwrap();
        assert_eq!(a, b);
        let expected = 0.05 * (400.0 * 399.0 / 2.0);
        let m = a.edge_count() as f64;
        assert!((m - expected).abs() < 0.1 * expected, "m={m}");
        assert_ne!(a, gnp(400, 0.05, 8).unwrap());
    }

    #[test]
    fn planted_is_cclosed() {
        for c in [2, 3, 5, 8] {
            let g = planted_cclosed(120, c, 3, None).unwrap();
            assert!(closure_number(&g) <= c);
        }
        let g = planted_cclosed(60, 4, 9, Some(0.3)).unwrap();
        assert!(closure_number(&g) <= 4);
    }

    #[test]
    fn planted_gadgets_present() {
        let g = planted_cclosed(90, 8, 1, Some(0.0)).unwrap();
        assert!(g.is_clique(&(2..9).collect::<Vec<_>>()));
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.common_neighbor_count(0, 1), 7);
    }
}
