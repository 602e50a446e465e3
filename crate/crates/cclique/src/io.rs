// SPDX-License-Identifier: Apache-2.0

//! Edge-list text format.
//!
//! One `u v` pair per line, whitespace separated. Lines starting with `#` are
//! comments, except that a `# n=<N>` comment fixes the vertex count so that
//! trailing isolated vertices survive a round trip. The writer emits
//! `# n=<N> m=<M>` followed by the edges with `u < v`, sorted.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use cclique_core::{BuildStats, Graph, Vertex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected two vertex ids, found {found:?}")]
    Arity { line: usize, found: String },
    #[error("line {line}: {token:?} is not a non-negative integer vertex id")]
    BadToken { line: usize, token: String },
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: vertex {vertex} exceeds declared n={n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
}

/// How vertex tokens are mapped to dense ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Labels {
    /// Tokens are the ids themselves.
    #[default]
    Numeric,
    /// Arbitrary tokens, numbered in order of first appearance.
    Relabel,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub stats: BuildStats,
    /// External label of each dense id when relabelling was requested.
    pub labels: Option<Vec<String>>,
}

impl ParsedGraph {
    /// External name of `v`.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }
}

fn header_n(body: &str, line: usize) -> Result<Option<usize>, ParseError> {
    for field in body.split_whitespace() {
        if let Some(value) = field.strip_prefix("n=") {
            return value.parse().map(Some).map_err(|_| ParseError::BadHeader {
                line,
                text: body.trim().to_string(),
            });
        }
    }
    Ok(None)
}

pub fn parse_edge_list(text: &str, labels: Labels) -> Result<ParsedGraph, ParseError> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, Vertex> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(body) = trimmed.strip_prefix('#') {
            if declared_n.is_none() && labels == Labels::Numeric {
                declared_n = header_n(body, line)?;
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::Arity {
                line,
                found: trimmed.to_string(),
            });
        }
        let mut pair = [0; 2];
        for (slot, token) in pair.iter_mut().zip(&tokens) {
            *slot = match labels {
                Labels::Numeric => token.parse().map_err(|_| ParseError::BadToken {
                    line,
                    token: token.to_string(),
                })?,
                Labels::Relabel => *ids.entry(token.to_string()).or_insert_with(|| {
                    names.push(token.to_string());
                    names.len() - 1
                }),
            };
            if let Some(n) = declared_n {
                if *slot >= n {
                    return Err(ParseError::OutOfRange {
                        line,
                        vertex: *slot,
                        n,
                    });
                }
            }
        }
        edges.push((pair[0], pair[1]));
    }

    let n = match labels {
        Labels::Numeric => declared_n,
        Labels::Relabel => Some(names.len()),
    };
    let (graph, stats) = Graph::from_edges(n, edges);
    Ok(ParsedGraph {
        graph,
        stats,
        labels: (labels == Labels::Relabel).then_some(names),
    })
}

pub fn read_edge_list(path: &Path, labels: Labels) -> anyhow::Result<ParsedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    parse_edge_list(&text, labels).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Canonical text: header, then sorted `u v` lines with `u < v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    let _ = writeln!(out, "# n={} m={}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
