// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use cclique::bench::{run_suite, SuiteSpec};
use cclique::generate::GeneratorSpec;
use cclique::io::{parse_edge_list, write_edge_list, Labels, ParsedGraph};
use cclique::verify::{oracle_limit, verify, VerifyError, VerifyOptions};
use cclique_core::{
    bad_pair_counts, closure_number, enumerate_cclosed, enumerate_wedges,
    oracle_enumerate_with_limit, output_sensitive_enumerate, pivot_enumerate, weak_closure_number,
    DriverConfig, FilterKind, KernelKind, Mode, NeighborhoodSource, Vertex, VertexOrder,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cclique",
    version,
    about = "Maximal cliques of (weakly) c-closed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    file: PathBuf,
    /// Treat vertex tokens as arbitrary labels and number them densely.
    #[arg(long)]
    relabel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Closure number, weak closure number and a weak-closure order.
    Closure {
        #[command(flatten)]
        input: Input,
    },
    /// Wedge count and enumeration time.
    Wedges {
        #[command(flatten)]
        input: Input,
        /// Print every wedge as `end_a mid end_b`.
        #[arg(long)]
        dump: bool,
    },
    /// Lists all maximal cliques, one per line.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Algo::Improved)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = FilterArg::Doublescan)]
        filter: FilterArg,
        #[arg(long, value_enum, default_value_t = KernelArg::Tomita)]
        kernel: KernelArg,
        /// Eliminate along the weak-closure order instead of by vertex id.
        #[arg(long)]
        auto_order: bool,
        /// Use the exact filter.
        #[arg(long)]
        safe: bool,
        /// Intersect neighbourhoods directly instead of via wedges.
        #[arg(long)]
        direct: bool,
        /// Print a run summary to stderr.
        #[arg(long)]
        stats: bool,
        /// Write the run metrics as JSON.
        #[arg(long)]
        metrics: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compares every pipeline with a reference enumeration.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Reference is whole-graph pivoting; lifts the oracle size guard.
        #[arg(long)]
        cross: bool,
        /// Differences reported per failing pipeline.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Runs a JSON suite and writes JSON-lines records.
    Bench {
        suite: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-instance timeout in seconds (overrides the suite).
        #[arg(long)]
        timeout: Option<f64>,
        /// Worker threads (overrides the suite).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Writes a generated graph as an edge list.
    Generate {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Complete k-partite graph with parts of size 3.
    MoonMoser {
        #[arg(long)]
        k: usize,
    },
    /// Erdős–Rényi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sparse graph with closure number at most c and planted near-c cliques.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Background edge probability (default 1/n).
        #[arg(long)]
        p: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Improved,
    Baseline,
    Tomita,
    Outsens,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Doublescan,
    Exact,
    Cure,
}

impl From<FilterArg> for FilterKind {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Doublescan => FilterKind::DoubleScan,
            FilterArg::Exact => FilterKind::Exact,
            FilterArg::Cure => FilterKind::Cure,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Tomita,
    Outsens,
    Oracle,
}

impl From<KernelArg> for KernelKind {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Tomita => KernelKind::Tomita,
            KernelArg::Outsens => KernelKind::Outsens,
            KernelArg::Oracle => KernelKind::Oracle,
        }
    }
}

enum Failure {
    Usage(anyhow::Error),
    VerifyFailed,
    Refused(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn load(input: &Input) -> anyhow::Result<ParsedGraph> {
    let mut text = String::new();
    if input.file == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&input.file)
            .with_context(|| format!("cannot read {}", input.file.display()))?;
    }
    let labels = if input.relabel {
        Labels::Relabel
    } else {
        Labels::Numeric
    };
    parse_edge_list(&text, labels).with_context(|| format!("{}", input.file.display()))
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(anyhow::Error::from)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct ClosureOutput {
    n: usize,
    m: usize,
    closure_c: usize,
    weak_c: usize,
    weak_order: Vec<String>,
    bad_pair_counts: Vec<usize>,
}

fn cmd_closure(input: &Input) -> CmdResult {
    let p = load(input)?;
    let g = &p.graph;
    let weak = weak_closure_number(g);
    print_json(&ClosureOutput {
        n: g.n(),
        m: g.edge_count(),
        closure_c: closure_number(g),
        weak_c: weak.c,
        weak_order: weak.order.as_slice().iter().map(|&v| p.label(v)).collect(),
        bad_pair_counts: bad_pair_counts(g),
    })
}

#[derive(Serialize)]
struct WedgeSummary {
    n: usize,
    m: usize,
    wedges: usize,
    time_us: u64,
}

fn cmd_wedges(input: &Input, dump: bool) -> CmdResult {
    let p = load(input)?;
    let t = Instant::now();
    let idx = enumerate_wedges(&p.graph);
    let summary = WedgeSummary {
        n: p.graph.n(),
        m: p.graph.edge_count(),
        wedges: idx.wedge_count(),
        time_us: t.elapsed().as_micros() as u64,
    };
    if !dump {
        return print_json(&summary);
    }
    let mut out = sink(None)?;
    for w in idx.all() {
        writeln!(
            out,
            "{} {} {}",
            p.label(w.end_a),
            p.label(w.mid),
            p.label(w.end_b)
        )?;
    }
    out.flush()?;
    eprintln!(
        "{}",
        serde_json::to_string(&summary).map_err(anyhow::Error::from)?
    );
    Ok(())
}

struct EnumerateArgs {
    algo: Algo,
    filter: FilterKind,
    kernel: KernelKind,
    auto_order: bool,
    direct: bool,
    stats: bool,
    metrics: Option<PathBuf>,
    output: Option<PathBuf>,
}

fn cmd_enumerate(input: &Input, args: EnumerateArgs) -> CmdResult {
    let p = load(input)?;
    let g = &p.graph;
    let all: Vec<Vertex> = (0..g.n()).collect();
    let t = Instant::now();
    let mut cliques = match args.algo {
        Algo::Tomita => pivot_enumerate(g, &all).0.cliques,
        Algo::Outsens => output_sensitive_enumerate(g, &all).0.cliques,
        Algo::Oracle => {
            let limit = oracle_limit();
            oracle_enumerate_with_limit(g, &all, limit)
                .map_err(|e| Failure::Refused(format!("{e}; raise CCLIQUE_ORACLE_LIMIT")))?
                .0
                .cliques
        }
        Algo::Improved | Algo::Baseline => {
            let (order, c) = if args.auto_order {
                let weak = weak_closure_number(g);
                (weak.order, weak.c)
            } else {
                (VertexOrder::identity(g.n()), closure_number(g))
            };
            let config = DriverConfig {
                mode: match args.algo {
                    Algo::Baseline => Mode::Baseline,
                    _ => Mode::Improved,
                },
                filter: args.filter,
                kernel: args.kernel,
                source: if args.direct {
                    NeighborhoodSource::Direct
                } else {
                    NeighborhoodSource::Wedges
                },
                c: Some(c),
            };
            let wedge_start = Instant::now();
            let wedges = (!args.direct).then(|| enumerate_wedges(g));
            let wedge_us = wedge_start.elapsed().as_micros() as u64;
            let (forest, mut metrics) = enumerate_cclosed(g, &order, &config, wedges.as_ref())
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            if wedges.is_some() {
                metrics.wedge_time_us = Some(wedge_us);
            }
            if args.stats {
                eprintln!(
                    "alpha={} c={} order={} filter={} kernel={} work={} wedges={} bounds_hold={}",
                    metrics.alpha,
                    c,
                    if args.auto_order { "auto" } else { "identity" },
                    metrics.filter_mode.name(),
                    metrics.kernel.name(),
                    metrics.work(),
                    metrics.wedge_count.unwrap_or(0),
                    metrics.bound_checks.iter().all(|b| b.holds)
                );
            }
            if let Some(path) = &args.metrics {
                let mut f = sink(Some(path))?;
                serde_json::to_writer_pretty(&mut f, &metrics).map_err(anyhow::Error::from)?;
                writeln!(f)?;
                f.flush()?;
            }
            forest.cliques()
        }
    };
    let elapsed = t.elapsed();
    cliques.iter_mut().for_each(|c| c.sort_unstable());
    cliques.sort();
    let mut out = sink(args.output.as_deref())?;
    for c in &cliques {
        let line: Vec<String> = c.iter().map(|&v| p.label(v)).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    if args.stats {
        eprintln!("cliques={} time_us={}", cliques.len(), elapsed.as_micros());
    }
    Ok(())
}

fn cmd_verify(input: &Input, cross: bool, samples: usize) -> CmdResult {
    let p = load(input)?;
    let opts = VerifyOptions {
        cross,
        oracle_limit: oracle_limit(),
        samples,
    };
    let report = match verify(&p.graph, &opts) {
        Ok(r) => r,
        Err(e @ VerifyError::Refused { .. }) => return Err(Failure::Refused(e.to_string())),
    };
    print_json(&report)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::VerifyFailed)
    }
}

fn cmd_bench(
    suite: &Path,
    output: Option<&Path>,
    timeout: Option<f64>,
    threads: Option<usize>,
) -> CmdResult {
    let text = std::fs::read_to_string(suite)
        .with_context(|| format!("cannot read {}", suite.display()))?;
    let mut spec: SuiteSpec = serde_json::from_str(&text)
        .with_context(|| format!("{}: invalid suite", suite.display()))?;
    if let Some(t) = timeout {
        spec.timeout_s = t;
    }
    if let Some(t) = threads {
        spec.threads = t;
    }
    // Relative instance files resolve against the suite's directory.
    let base = suite.parent().unwrap_or(Path::new("."));
    for inst in &mut spec.instances {
        if let cclique::bench::InstanceSource::File { file } = &mut inst.source {
            if file.is_relative() {
                *file = base.join(&*file);
            }
        }
    }
    let mut out = sink(output)?;
    let mut write_err = None;
    run_suite(&spec, |r| {
        if write_err.is_none() {
            let line = serde_json::to_string(r).expect("record serializes");
            if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
                write_err = Some(e);
            }
        }
    });
    match write_err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn cmd_generate(kind: &GenKind, output: Option<&Path>) -> CmdResult {
    let spec = match *kind {
        GenKind::MoonMoser { k } => GeneratorSpec::MoonMoser { k },
        GenKind::Gnp { n, p, seed } => GeneratorSpec::Gnp { n, p, seed },
        GenKind::Planted { n, c, seed, p } => GeneratorSpec::PlantedCclosed { n, c, seed, p },
    };
    let g = spec.build().map_err(anyhow::Error::from)?;
    let mut out = sink(output)?;
    out.write_all(write_edge_list(&g).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Closure { input } => cmd_closure(&input),
        Command::Wedges { input, dump } => cmd_wedges(&input, dump),
        Command::Enumerate {
            input,
            algo,
            filter,
            kernel,
            auto_order,
            safe,
            direct,
            stats,
            metrics,
            output,
        } => cmd_enumerate(
            &input,
            EnumerateArgs {
                algo,
                filter: if safe {
                    FilterKind::Exact
                } else {
                    filter.into()
                },
                kernel: kernel.into(),
                auto_order,
                direct,
                stats,
                metrics,
                output,
            },
        ),
        Command::Verify {
            input,
            cross,
            samples,
        } => cmd_verify(&input, cross, samples),
        Command::Bench {
            suite,
            output,
            timeout,
            threads,
        } => cmd_bench(&suite, output.as_deref(), timeout, threads),
        Command::Generate { kind, output } => cmd_generate(&kind, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::VerifyFailed) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(EXIT_REFUSED)
        }
    }
}
