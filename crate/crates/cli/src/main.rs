//! `mepnet`: topology generation, experiment runs, closed-form curves,
//! crossover tables and charts.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, bad config),
//! 2 on runtime failures.

mod config;
mod plot;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use mepnet_core::experiment::{baseline_curve, curve};
use mepnet_core::{
    assign_edge_concurrence, avg_spf, avg_spl, build_barabasi_albert, build_lattice, build_random,
    crossover_distance, read_csv, run_experiment_with_threads, write_csv, write_edge_list, AggregateRow,
    Concurrence, EdgeDistribution, Strategy, TopologyKind,
};

#[derive(Parser, Debug)]
#[command(name = "mepnet", version, about = "Multipath entanglement purification on network graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a network and write it as an edge list.
    Topology(TopologyArgs),
    /// Run an experiment described by a TOML config and write the CSV.
    Run(RunArgs),
    /// Write a closed-form lattice average curve as CSV.
    Analytic(AnalyticArgs),
    /// Print crossover distances for every curve in one or more CSVs.
    Compare(CompareArgs),
    /// Render an experiment CSV as an SVG line chart.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct TopologyArgs {
    /// RN, BAN, TLN, SLN or HLN.
    #[arg(long)]
    kind: TopologyKind,
    /// Node count (RN, BAN).
    #[arg(long)]
    nodes: Option<usize>,
    /// Edge count (RN, BAN). BAN attaches round(edges / nodes) links per node.
    #[arg(long)]
    edges: Option<usize>,
    /// Lattice rows.
    #[arg(long)]
    rows: Option<usize>,
    /// Lattice columns.
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long, env = "MEPNET_SEED")]
    seed: u64,
    /// Largest edge concurrence.
    #[arg(long, default_value_t = 0.99)]
    max: f64,
    /// Mean edge concurrence.
    #[arg(long, default_value_t = 0.98)]
    mean: f64,
    /// Smallest edge concurrence.
    #[arg(long, default_value_t = 0.97)]
    min: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; the output does not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seed used when the config has none.
    #[arg(long, env = "MEPNET_SEED")]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct AnalyticArgs {
    /// TLN, SLN or HLN.
    #[arg(long)]
    topology: TopologyKind,
    /// SPF or SPL.
    #[arg(long)]
    strategy: Strategy,
    #[arg(long = "l0-max", default_value_t = 6)]
    l0_max: u32,
    /// Edge concurrence.
    #[arg(long)]
    c: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long = "csv", required = true)]
    csv: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Topology(a) => cmd_topology(a),
        Command::Run(a) => cmd_run(a),
        Command::Analytic(a) => cmd_analytic(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn open(path: &Path) -> anyhow::Result<File> {
    File::open(path).with_context(|| format!("cannot open {}", path.display()))
}

fn cmd_topology(a: TopologyArgs) -> CmdResult {
    let dist = EdgeDistribution::from_bounds(a.max, a.mean, a.min).map_err(|e| usage(e.to_string()))?;
    let g = if a.kind.is_lattice() {
        if a.nodes.is_some() || a.edges.is_some() {
            return Err(usage(format!("--nodes/--edges do not apply to {}; use --rows and --cols", a.kind)));
        }
        let (Some(rows), Some(cols)) = (a.rows, a.cols) else {
            return Err(usage(format!("{} needs --rows and --cols", a.kind)));
        };
        build_lattice(a.kind, rows, cols).map_err(|e| usage(e.to_string()))?
    } else {
        if a.rows.is_some() || a.cols.is_some() {
            return Err(usage(format!("--rows/--cols do not apply to {}; use --nodes and --edges", a.kind)));
        }
        let (Some(n), Some(m)) = (a.nodes, a.edges) else {
            return Err(usage(format!("{} needs --nodes and --edges", a.kind)));
        };
        if n == 0 {
            return Err(usage("--nodes must be positive"));
        }
        let built = if a.kind == TopologyKind::Rn {
            build_random(n, m, a.seed)
        } else {
            build_barabasi_albert(n, ((m as f64 / n as f64).round() as usize).max(1), a.seed)
        };
        built.map_err(|e| usage(e.to_string()))?
    };
    let g = assign_edge_concurrence(g, &dist, a.seed)
        .map_err(|e| usage(e.to_string()))?
        .with_seed(a.seed);
    let mut out = create(&a.out)?;
    write_edge_list(&g, &mut out).context("writing edge list")?;
    out.flush().context("writing edge list")?;

    let hist = g.degree_histogram();
    let min_degree = hist.iter().position(|&c| c > 0).unwrap_or(0);
    let mode = hist.iter().enumerate().max_by_key(|&(d, c)| (*c, std::cmp::Reverse(d))).map_or(0, |p| p.0);
    println!("topology {}", g.topology());
    println!("nodes {}", g.node_count());
    println!("edges {}", g.edge_count());
    println!(
        "degree min {min_degree} max {} mean {:.4} mode {mode}",
        g.max_degree(),
        g.mean_degree()
    );
    Ok(())
}

fn cmd_run(a: RunArgs) -> CmdResult {
    if a.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let cfg = config::load(&a.config, a.seed).map_err(|e| usage(format!("{}: {e}", a.config.display())))?;
    let report = run_experiment_with_threads(&cfg, a.threads).context("experiment failed")?;
    for s in &report.shortfalls {
        eprintln!(
            "note: {} realization {} l0={}: {} of {} requested pairs",
            s.topology, s.realization, s.l0, s.achieved, s.requested
        );
    }
    let mut out = create(&a.out)?;
    write_csv(&report.rows, &mut out).context("writing CSV")?;
    out.flush().context("writing CSV")?;
    Ok(())
}

fn cmd_analytic(a: AnalyticArgs) -> CmdResult {
    if !a.topology.is_lattice() {
        return Err(usage(format!(
            "{} has no closed form; analytic curves exist for TLN, SLN and HLN only",
            a.topology
        )));
    }
    let average = match a.strategy {
        Strategy::Spf => avg_spf,
        Strategy::Spl => avg_spl,
        ref other => return Err(usage(format!("no closed form for {other}; use SPF or SPL"))),
    };
    if a.l0_max == 0 {
        return Err(usage("--l0-max must be at least 1"));
    }
    let c = Concurrence::new(a.c).map_err(|e| usage(format!("--c: {e}")))?;
    if c.value() <= 0.0 {
        return Err(usage("--c must be positive"));
    }
    let mut text = String::from("l0,value\n");
    for l0 in 1..=a.l0_max {
        let v = average(a.topology, l0, c).map_err(|e| usage(e.to_string()))?;
        text.push_str(&format!("{l0},{}\n", mepnet_core::format::sig9(v.value())));
    }
    match a.out {
        Some(path) => {
            let mut out = create(&path)?;
            out.write_all(text.as_bytes()).context("writing CSV")?;
            out.flush().context("writing CSV")?;
        }
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout")?,
    }
    Ok(())
}

fn load_rows(path: &Path) -> anyhow::Result<Vec<AggregateRow>> {
    read_csv(open(path)?).with_context(|| format!("reading {}", path.display()))
}

fn cmd_compare(a: CompareArgs) -> CmdResult {
    // Files are kept apart so several seeds or runs can be compared side by side.
    let mut groups: BTreeMap<(u64, &'static str, String, usize), (TopologyKind, Strategy)> = BTreeMap::new();
    let mut tables = Vec::new();
    for path in &a.csv {
        let rows = load_rows(path)?;
        groups.clear();
        for r in rows.iter().filter(|r| r.strategy != Strategy::Baseline) {
            groups
                .entry((r.seed, r.topology.name(), r.strategy.to_string(), r.k))
                .or_insert((r.topology, r.strategy.clone()));
        }
        for ((seed, _, _, k), (topology, strategy)) in &groups {
            let seed_rows: Vec<AggregateRow> = rows.iter().filter(|r| r.seed == *seed).cloned().collect();
            let base = baseline_curve(&seed_rows, *topology);
            if base.is_empty() {
                return Err(Failure::Runtime(anyhow::anyhow!(
                    "{}: no BASELINE rows for {topology} (seed {seed})",
                    path.display()
                )));
            }
            let c = curve(&seed_rows, *topology, strategy, *k);
            let cross = crossover_distance(&c, &base).with_context(|| format!("{}: {topology} {strategy}", path.display()))?;
            tables.push((topology.name(), strategy.to_string(), *k, *seed, cross));
        }
        if groups.is_empty() && !rows.iter().any(|r| r.strategy == Strategy::Baseline) {
            return Err(Failure::Runtime(anyhow::anyhow!("{}: no BASELINE rows", path.display())));
        }
    }
    let mut out = io::stdout().lock();
    let w = |e: io::Error| Failure::Runtime(e.into());
    writeln!(out, "{:<9}{:<16}{:>4}{:>22}  crossover", "topology", "strategy", "k", "seed").map_err(w)?;
    for (t, s, k, seed, cross) in tables {
        let cross = cross.map_or_else(|| "none".to_string(), |l| l.to_string());
        writeln!(out, "{t:<9}{s:<16}{k:>4}{seed:>22}  {cross}").map_err(w)?;
    }
    Ok(())
}

fn cmd_plot(a: PlotArgs) -> CmdResult {
    let rows = load_rows(&a.csv)?;
    if rows.is_empty() {
        return Err(Failure::Runtime(anyhow::anyhow!("{}: no data rows", a.csv.display())));
    }
    let svg = plot::render_svg(&rows);
    let mut out = create(&a.out)?;
    out.write_all(svg.as_bytes()).context("writing SVG")?;
    out.flush().context("writing SVG")?;
    Ok(())
}
