// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {0} is not in the suffix view")]
    NotInView(Vertex),
    #[error("vertices {0} and {1} must be distinct")]
    SameVertex(Vertex, Vertex),
    #[error(
        "vertices {0} and {1} are adjacent; candidate neighbourhoods need a non-adjacent pair"
    )]
    AdjacentPair(Vertex, Vertex),
    #[error("order is not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },
    #[error("oracle refuses subsets larger than {limit} vertices (got {size})")]
    OracleLimit { limit: usize, size: usize },
    #[error("curing refuses cliques larger than {limit} vertices (got {size})")]
    CliqueTooLarge { limit: usize, size: usize },
    #[error("sequence is not strictly increasing at position {0}")]
    NonMonotone(usize),
    #[error("vertex {0} has no rank in the block ordering")]
    Unranked(Vertex),
}
