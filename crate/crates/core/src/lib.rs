// SPDX-License-Identifier: Apache-2.0

//! Maximal clique enumeration for c-closed and weakly c-closed graphs.
//!
//! The enumeration eliminates vertices along an ordering `v_1, …, v_n` and
//! rebuilds the maximal cliques of each suffix graph `G[V_i]` from those of
//! `G[V_{i+1}]`. Cliques that gain `v_i` by extension are handled on the
//! solution forest directly; the remaining ones are found inside the small
//! common neighbourhoods `N(v_i) ∩ N(u)` of `v_i` and its non-neighbours `u`
//! and then filtered, by default with a pair of ordered prefix tries.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and the
//! command line live in the `cclique` crate.

#![no_std]

extern crate alloc;

mod bitset;
pub mod closure;
pub mod driver;
mod error;
pub mod graph;
pub mod kernels;
pub mod trie;
pub mod wedge;

pub use closure::{
    bad_pair_counts, bad_pairs, closure_number, is_weak_order, weak_closure_number,
    weak_closure_order, BadPair, ClosureReport, StuckSet, WeakClosure,
};
pub use driver::{
    check_bounds, enumerate_cclosed, BoundCheck, DriverConfig, FilterKind, Mode, RunMetrics,
    SolutionForest,
};
pub use error::Error;
pub use graph::{BuildStats, Graph, SuffixView, Vertex, VertexOrder};
pub use kernels::{
    is_maximal_in, oracle_enumerate, oracle_enumerate_with_limit, output_sensitive_enumerate,
    pivot_enumerate, CliqueList, KernelKind, KernelStats, ORACLE_LIMIT,
};
pub use trie::{
    build_sigma_c, curing_filter, double_scan, exact_filter, BlockOrdering, CandidateBlock,
    CliqueTrie, FilterOutput, FilterStats,
};
pub use wedge::{
    candidate_neighborhood, candidate_neighborhood_direct, enumerate_wedges,
    nonneighbor_suffix_set, NeighborhoodSource, Wedge, WedgeIndex,
};

pub type Result<T> = core::result::Result<T, Error>;
