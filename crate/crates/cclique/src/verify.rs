// SPDX-License-Identifier: Apache-2.0

//! Runs the enumeration pipelines on one graph and compares their clique sets
//! with a reference enumeration.

use std::collections::BTreeSet;

use cclique_core::{
    closure_number, enumerate_cclosed, oracle_enumerate_with_limit, output_sensitive_enumerate,
    pivot_enumerate, weak_closure_number, DriverConfig, FilterKind, Graph, KernelKind, Mode,
    Vertex, VertexOrder, ORACLE_LIMIT,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ORACLE_LIMIT_ENV: &str = "CCLIQUE_ORACLE_LIMIT";

/// Oracle size guard, from the environment when set.
pub fn oracle_limit() -> usize {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(ORACLE_LIMIT)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(
        "refusing to run the subset oracle on n={n} (limit {limit}); raise {ORACLE_LIMIT_ENV} \
         (at most 63) or use --cross"
    )]
    Refused { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Compare against whole-graph pivoting instead of the subset oracle.
    pub cross: bool,
    pub oracle_limit: usize,
    /// Symmetric-difference members reported per failing pipeline.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            cross: false,
            oracle_limit: ORACLE_LIMIT,
            samples: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOutcome {
    pub label: String,
    pub alpha: usize,
    pub pass: bool,
    pub missing: Vec<Vec<Vertex>>,
    pub extra: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    pub reference: String,
    pub reference_alpha: usize,
    pub pass: bool,
    pub pipelines: Vec<PipelineOutcome>,
}

type CliqueSet = BTreeSet<Vec<Vertex>>;

fn compare(
    label: String,
    got: Vec<Vec<Vertex>>,
    want: &CliqueSet,
    samples: usize,
) -> PipelineOutcome {
    let alpha = got.len();
    let got: CliqueSet = got.into_iter().collect();
    let missing: Vec<_> = want.difference(&got).take(samples).cloned().collect();
    let extra: Vec<_> = got.difference(want).take(samples).cloned().collect();
    PipelineOutcome {
        label,
        pass: missing.is_empty() && extra.is_empty() && alpha == want.len(),
        alpha,
        missing,
        extra,
    }
}

/// Driver configurations exercised by `verify`: baseline and improved with
/// every filter, both kernels, identity and weak-closure orders.
pub fn driver_matrix(g: &Graph) -> Vec<(String, VertexOrder, DriverConfig)> {
    let weak = weak_closure_number(g);
    let orders = [
        ("identity", VertexOrder::identity(g.n()), closure_number(g)),
        ("weak", weak.order, weak.c),
    ];
    let mut out = Vec::new();
    for (order_name, order, c) in orders {
        for kernel in [KernelKind::Tomita, KernelKind::Outsens] {
            let mut configs = vec![DriverConfig {
                mode: Mode::Baseline,
                kernel,
                c: Some(c),
                ..Default::default()
            }];
            for filter in [FilterKind::DoubleScan, FilterKind::Exact, FilterKind::Cure] {
                configs.push(DriverConfig {
                    mode: Mode::Improved,
                    filter,
                    kernel,
                    c: Some(c),
                    ..Default::default()
                });
            }
            for config in configs {
                let label = match config.mode {
                    Mode::Baseline => format!("baseline/{}/{order_name}", kernel.name()),
                    Mode::Improved => format!(
                        "improved/{}/{}/{order_name}",
                        config.filter.name(),
                        kernel.name()
                    ),
                };
                out.push((label, order.clone(), config));
            }
        }
    }
    out
}

pub fn verify(g: &Graph, opts: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let all: Vec<Vertex> = (0..g.n()).collect();
    let mut pipelines = Vec::new();
    let (reference, want): (&str, CliqueSet) = if opts.cross {
        let want = pivot_enumerate(g, &all).0.to_set();
        let outsens = output_sensitive_enumerate(g, &all).0.cliques;
        pipelines.push(compare(
            "outsens/whole".into(),
            outsens,
            &want,
            opts.samples,
        ));
        ("tomita/whole", want)
    } else {
        let limit = opts.oracle_limit.min(63);
        if g.n() > limit {
            return Err(VerifyError::Refused { n: g.n(), limit });
        }
        let (list, _) =
            oracle_enumerate_with_limit(g, &all, limit).expect("size checked against the limit");
        ("oracle", list.to_set())
    };

    for (label, order, config) in driver_matrix(g) {
        let (forest, _) =
            enumerate_cclosed(g, &order, &config, None).expect("order matches the graph");
        pipelines.push(compare(label, forest.cliques(), &want, opts.samples));
    }
    Ok(VerifyReport {
        n: g.n(),
        m: g.edge_count(),
        reference: reference.into(),
        reference_alpha: want.len(),
        pass: pipelines.iter().all(|p| p.pass),
        pipelines,
    })
}
