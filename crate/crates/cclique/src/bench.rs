// SPDX-License-Identifier: Apache-2.0

//! Benchmark suites: instances × driver configurations, one JSON record per
//! pair.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use cclique_core::{
    closure_number, enumerate_cclosed, enumerate_wedges, weak_closure_number, DriverConfig,
    FilterKind, FilterStats, Graph, KernelKind, Mode, NeighborhoodSource, VertexOrder,
};
use serde::{Deserialize, Serialize};

use crate::generate::GeneratorSpec;
use crate::io::{read_edge_list, Labels};

pub const DEFAULT_TIMEOUT_S: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderChoice {
    /// Vertex ids in ascending order, with `c` set to the closure number.
    Identity,
    /// Greedy weak-closure order, with `c` set to the weak closure number.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSource {
    Generator { generator: GeneratorSpec },
    File { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub name: String,
    #[serde(flatten)]
    pub source: InstanceSource,
}

impl InstanceSpec {
    pub fn load(&self) -> anyhow::Result<Graph> {
        match &self.source {
            InstanceSource::Generator { generator } => Ok(generator.build()?),
            InstanceSource::File { file } => Ok(read_edge_list(file, Labels::Numeric)?.graph),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub mode: Mode,
    pub filter: FilterKind,
    pub kernel: KernelKind,
    pub order: OrderChoice,
    pub source: NeighborhoodSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    #[serde(default = "default_configs")]
    pub configs: Vec<RunConfig>,
    #[serde(default = "default_timeout")]
    pub timeout_s: f64,
    #[serde(default = "default_threads")]
    pub threads: usize,
}

fn default_configs() -> Vec<RunConfig> {
    vec![RunConfig::default()]
}

fn default_timeout() -> f64 {
    DEFAULT_TIMEOUT_S
}

fn default_threads() -> usize {
    1
}

/// Counter snapshot of one run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Counters {
    pub blocks: u64,
    pub kernel_calls: u64,
    pub kernel_work: u64,
    pub filter: FilterStats,
    pub extended: u64,
    pub singleton_steps: u64,
    pub context_rejections: u64,
    pub max_block_size: usize,
    pub max_block_cliques: usize,
    pub max_beta_i: u64,
    pub wedge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub closure_c: usize,
    pub weak_c: usize,
    pub mode: Mode,
    pub filter: FilterKind,
    pub kernel: KernelKind,
    pub order: OrderChoice,
    pub alpha: u64,
    /// Closure number and weak-closure order.
    pub analysis_us: u64,
    /// Wedge enumeration.
    pub preprocess_us: u64,
    pub enumerate_us: u64,
    pub counters: Counters,
    /// Kernel plus filter elementary operations.
    pub work: u64,
    pub work_per_alpha: f64,
    pub work_per_alpha_n: f64,
    pub bounds_hold: Option<bool>,
    pub timed_out: bool,
    pub error: Option<String>,
}

fn micros(d: Duration) -> u64 {
    d.as_micros().min(u64::MAX as u128) as u64
}

/// Runs one configuration on `g` without a time limit.
pub fn measure(name: &str, g: &Graph, config: &RunConfig) -> BenchRecord {
    let t = Instant::now();
    let closure_c = closure_number(g);
    let weak = weak_closure_number(g);
    let analysis_us = micros(t.elapsed());
    let (order, c) = match config.order {
        OrderChoice::Identity => (VertexOrder::identity(g.n()), closure_c),
        OrderChoice::Auto => (weak.order.clone(), weak.c),
    };

    let t = Instant::now();
    let wedges = (config.source == NeighborhoodSource::Wedges).then(|| enumerate_wedges(g));
    let preprocess_us = micros(t.elapsed());

    let driver = DriverConfig {
        mode: config.mode,
        filter: config.filter,
        kernel: config.kernel,
        source: config.source,
        c: Some(c),
    };
    let mut record = BenchRecord {
        instance: name.to_string(),
        n: g.n(),
        m: g.edge_count(),
        closure_c,
        weak_c: weak.c,
        mode: config.mode,
        filter: driver.effective_filter(),
        kernel: config.kernel,
        order: config.order,
        analysis_us,
        preprocess_us,
        ..Default::default()
    };
    let t = Instant::now();
    match enumerate_cclosed(g, &order, &driver, wedges.as_ref()) {
        Ok((_, m)) => {
            record.enumerate_us = micros(t.elapsed());
            record.alpha = m.alpha;
            record.work = m.work();
            let alpha = m.alpha.max(1) as f64;
            record.work_per_alpha = m.work() as f64 / alpha;
            record.work_per_alpha_n = m.work() as f64 / (alpha * g.n().max(1) as f64);
            record.bounds_hold = Some(m.bound_checks.iter().all(|b| b.holds));
            record.counters = Counters {
                blocks: m.blocks,
                kernel_calls: m.kernel_calls,
                kernel_work: m.kernel_work,
                filter: m.filter,
                extended: m.extended,
                singleton_steps: m.singleton_steps,
                context_rejections: m.context_rejections,
                max_block_size: m.max_block_size,
                max_block_cliques: m.max_block_cliques,
                max_beta_i: m.beta_i.iter().copied().max().unwrap_or(0),
                wedge_count: wedges.as_ref().map_or(0, |w| w.wedge_count()),
            };
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

struct Job {
    index: usize,
    instance: InstanceSpec,
    config: RunConfig,
}

fn failed_record(job: &Job, timed_out: bool, error: Option<String>) -> BenchRecord {
    BenchRecord {
        instance: job.instance.name.clone(),
        mode: job.config.mode,
        filter: job.config.filter,
        kernel: job.config.kernel,
        order: job.config.order,
        timed_out,
        error,
        ..Default::default()
    }
}

fn run_job(job: &Job, timeout: Duration) -> BenchRecord {
    let (tx, rx) = mpsc::channel();
    let instance = job.instance.clone();
    let config = job.config;
    // The computation cannot be interrupted; on timeout its thread is left
    // to finish in the background and its result is dropped.
    thread::spawn(move || {
        let out = instance
            .load()
            .map(|g| measure(&instance.name, &g, &config))
            .map_err(|e| e.to_string());
        let _ = tx.send(out);
    });
    match rx.recv_timeout(timeout) {
        Ok(Ok(record)) => record,
        Ok(Err(e)) => failed_record(job, false, Some(e)),
        Err(mpsc::RecvTimeoutError::Timeout) => failed_record(job, true, None),
        Err(mpsc::RecvTimeoutError::Disconnected) => {
            failed_record(job, false, Some("worker panicked".into()))
        }
    }
}

/// Runs every instance against every configuration on `spec.threads`
/// workers. `sink` sees the records in suite order.
pub fn run_suite(spec: &SuiteSpec, mut sink: impl FnMut(&BenchRecord)) -> Vec<BenchRecord> {
    let jobs: Vec<Job> = spec
        .instances
        .iter()
        .flat_map(|i| spec.configs.iter().map(move |c| (i, c)))
        .enumerate()
        .map(|(index, (instance, config))| Job {
            index,
            instance: instance.clone(),
            config: *config,
        })
        .collect();
    let total = jobs.len();
    let timeout = Duration::from_secs_f64(spec.timeout_s.max(0.0));
    let queue = Arc::new(Mutex::new(jobs.into_iter()));
    let (tx, rx) = mpsc::channel();
    let workers: Vec<_> = (0..spec.threads.max(1).min(total.max(1)))
        .map(|_| {
            let queue = Arc::clone(&queue);
            let tx = tx.clone();
            thread::spawn(move || loop {
                let job = queue.lock().expect("queue lock").next();
                let Some(job) = job else { break };
                let record = run_job(&job, timeout);
                if tx.send((job.index, record)).is_err() {
                    break;
                }
            })
        })
        .collect();
    drop(tx);

    let mut pending = BTreeMap::new();
    let mut out = Vec::with_capacity(total);
    for (index, record) in rx {
        pending.insert(index, record);
        while let Some(record) = pending.remove(&out.len()) {
            sink(&record);
            out.push(record);
        }
    }
    for w in workers {
        let _ = w.join();
    }
    out
}
