//! The numerical protocol: build each network, sample source/destination
//! pairs at every shortest distance, run the pumping strategies and aggregate.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::calculus::EdgeDistribution;
use crate::error::{invalid, Error, Result};
use crate::format::sig9;
use crate::network::{
    assign_edge_concurrence, build_barabasi_albert, build_lattice, build_random, NetworkGraph,
    TopologyKind,
};
use crate::paths::{sample_pairs_with, PairSampling, PathFinder};
use crate::rng::derive_seed;
use crate::strategy::{run_mep, Strategy};

pub const CSV_HEADER: [&str; 8] = [
    "topology",
    "strategy",
    "k",
    "l0",
    "mean_concurrence",
    "std_dev",
    "n_samples",
    "seed",
];

/// How many paths a strategy may combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KPaths {
    Fixed(usize),
    All,
}

impl KPaths {
    fn cap(self) -> usize {
        match self {
            KPaths::Fixed(k) => k,
            KPaths::All => usize::MAX,
        }
    }

    /// Value written to the `k` column. `All` prints as the interior lattice
    /// degree, or 0 where the degree is unbounded.
    pub fn label(self, topology: TopologyKind) -> usize {
        match self {
            KPaths::Fixed(k) => k,
            KPaths::All => topology.lattice_degree().unwrap_or(0),
        }
    }
}

impl fmt::Display for KPaths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPaths::Fixed(k) => k.fmt(f),
            KPaths::All => f.write_str("all"),
        }
    }
}

impl FromStr for KPaths {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("all") {
            return Ok(KPaths::All);
        }
        match t.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(KPaths::Fixed(k)),
            _ => Err(invalid(format!("k must be a positive integer or `all`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub topologies: Vec<TopologyKind>,
    pub n_nodes: usize,
    /// Edge count for RN and BAN; lattices take theirs from the geometry.
    pub target_edges: usize,
    pub distribution: EdgeDistribution,
    pub l0_min: u32,
    pub l0_max: u32,
    pub n_sources: usize,
    pub n_dests: usize,
    /// Per-topology path cap; topologies not listed use `default_k`.
    pub k_paths: BTreeMap<TopologyKind, KPaths>,
    pub default_k: KPaths,
    pub strategies: Vec<Strategy>,
    pub seed: u64,
    pub n_graph_realizations: usize,
    /// Extra hops beyond `l0` that lattice sources keep from the boundary.
    pub interior_margin: u32,
}

impl ExperimentConfig {
    fn base(seed: u64) -> Self {
        ExperimentConfig {
            topologies: TopologyKind::ALL.to_vec(),
            n_nodes: 10_000,
            target_edges: 50_000,
            distribution: EdgeDistribution::from_bounds(0.99, 0.98, 0.97).expect("valid bounds"),
            l0_min: 1,
            l0_max: 6,
            n_sources: 100,
            n_dests: 100,
            k_paths: BTreeMap::new(),
            default_k: KPaths::Fixed(3),
            strategies: vec![Strategy::Spf],
            seed,
            n_graph_realizations: 1,
            interior_margin: 6,
        }
    }

    /// SPF with every available path on lattices and three on RN/BAN.
    pub fn crossover_preset(seed: u64) -> Self {
        let mut cfg = Self::base(seed);
        for t in TopologyKind::ALL.into_iter().filter(|t| t.is_lattice()) {
            cfg.k_paths.insert(t, KPaths::All);
        }
        cfg
    }

    /// SPF and SPL with three paths everywhere.
    pub fn dominance_preset(seed: u64) -> Self {
        let mut cfg = Self::base(seed);
        cfg.strategies = vec![Strategy::Spf, Strategy::Spl];
        cfg
    }

    pub fn k_for(&self, topology: TopologyKind) -> KPaths {
        self.k_paths.get(&topology).copied().unwrap_or(self.default_k)
    }

    pub fn validate(&self) -> Result<()> {
        if self.topologies.is_empty() {
            return Err(invalid("topologies: at least one topology is required"));
        }
        if !(1..=20).contains(&self.l0_min) || !(1..=20).contains(&self.l0_max) || self.l0_min > self.l0_max {
            return Err(invalid(format!(
                "l0_range: [{}, {}] must be ordered and within [1, 20]",
                self.l0_min, self.l0_max
            )));
        }
        let counts = [
            ("n_nodes", self.n_nodes),
            ("n_sources", self.n_sources),
            ("n_dests", self.n_dests),
            ("n_graph_realizations", self.n_graph_realizations),
        ];
        if let Some((key, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(invalid(format!("{key}: must be positive")));
        }
        if self.n_nodes > u32::MAX as usize {
            return Err(invalid("n_nodes: too large"));
        }
        if self.topologies.iter().any(|t| !t.is_lattice()) && self.target_edges == 0 {
            return Err(invalid("target_edges: must be positive for RN and BAN"));
        }
        if let Some(k) = std::iter::once(&self.default_k)
            .chain(self.k_paths.values())
            .find(|k| **k == KPaths::Fixed(0))
        {
            return Err(invalid(format!("k_paths: {k} is not a valid path count")));
        }
        if self.strategies.is_empty() {
            return Err(invalid("strategies: at least one strategy is required"));
        }
        Ok(())
    }
}

/// Mean and spread of the final concurrence for one
/// (topology, strategy, k, l0) point.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub topology: TopologyKind,
    pub strategy: Strategy,
    pub k: usize,
    pub l0: u32,
    pub mean_concurrence: f64,
    pub std_dev: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl AggregateRow {
    fn sort_key(&self) -> (&'static str, String, usize, u32) {
        (self.topology.name(), self.strategy.to_string(), self.k, self.l0)
    }
}

pub fn sort_rows(rows: &mut [AggregateRow]) {
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// A distance at which fewer pairs were found than requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortfall {
    pub topology: TopologyKind,
    pub realization: usize,
    pub l0: u32,
    pub requested: usize,
    pub achieved: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub rows: Vec<AggregateRow>,
    pub shortfalls: Vec<Shortfall>,
}

fn topology_code(t: TopologyKind) -> u64 {
    TopologyKind::ALL.iter().position(|&x| x == t).unwrap_or(0) as u64
}

/// Builds realization `realization` of `topology` with edge concurrences
/// assigned.
pub fn build_network(cfg: &ExperimentConfig, topology: TopologyKind, realization: usize) -> Result<NetworkGraph> {
    let key = [topology_code(topology), realization as u64];
    let graph_seed = derive_seed(cfg.seed, &[key[0], key[1], 0]);
    let g = match topology {
        TopologyKind::Rn => build_random(cfg.n_nodes, cfg.target_edges, graph_seed)?,
        TopologyKind::Ban => {
            let m = ((cfg.target_edges as f64 / cfg.n_nodes as f64).round() as usize).max(1);
            build_barabasi_albert(cfg.n_nodes, m, graph_seed)?
        }
        lattice => {
            let side = ((cfg.n_nodes as f64).sqrt().round() as usize).max(3);
            build_lattice(lattice, side, side)?
        }
    };
    assign_edge_concurrence(g, &cfg.distribution, derive_seed(cfg.seed, &[key[0], key[1], 1]))
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs the protocol on the current rayon pool.
///
/// Results depend only on `cfg`: pairs are evaluated in parallel but
/// collected in sampling order, and rows are sorted before returning.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut strategies = vec![Strategy::Baseline];
    for s in &cfg.strategies {
        if !strategies.contains(s) {
            strategies.push(s.clone());
        }
    }

    let mut report = ExperimentReport::default();
    let mut topologies = cfg.topologies.clone();
    topologies.sort();
    topologies.dedup();
    for &topology in &topologies {
        let k = cfg.k_for(topology);
        // (strategy index, l0) -> pooled samples over realizations
        let mut samples: BTreeMap<(usize, u32), Vec<f64>> = BTreeMap::new();
        for realization in 0..cfg.n_graph_realizations {
            let g = build_network(cfg, topology, realization)?;
            let mut finder = PathFinder::new(&g);
            for l0 in cfg.l0_min..=cfg.l0_max {
                let spec = PairSampling {
                    l0,
                    n_sources: cfg.n_sources,
                    n_dests_per_source: cfg.n_dests,
                    seed: derive_seed(cfg.seed, &[topology_code(topology), realization as u64, 2, u64::from(l0)]),
                    interior_only: true,
                    margin: cfg.interior_margin,
                };
                let sample = sample_pairs_with(&mut finder, &spec);
                if sample.shortfall() > 0 {
                    report.shortfalls.push(Shortfall {
                        topology,
                        realization,
                        l0,
                        requested: sample.requested,
                        achieved: sample.pairs.len(),
                    });
                }
                let per_pair: Vec<Vec<f64>> = sample
                    .pairs
                    .par_iter()
                    .map_init(
                        || PathFinder::new(&g),
                        |pf, &(s, d)| {
                            let ps = pf.edge_disjoint_paths(s, d, k.cap());
                            strategies
                                .iter()
                                .map(|st| run_mep(&ps, st, k.cap()).map(|o| o.final_concurrence.value()))
                                .collect::<Result<Vec<f64>>>()
                        },
                    )
                    .collect::<Result<_>>()?;
                for values in per_pair {
                    for (i, v) in values.into_iter().enumerate() {
                        samples.entry((i, l0)).or_default().push(v);
                    }
                }
            }
        }
        for ((i, l0), xs) in samples {
            let strategy = strategies[i].clone();
            let k_label = if strategy == Strategy::Baseline { 1 } else { k.label(topology) };
            let (mean, std) = mean_std(&xs);
            report.rows.push(AggregateRow {
                topology,
                strategy,
                k: k_label,
                l0,
                mean_concurrence: mean,
                std_dev: std,
                n_samples: xs.len(),
                seed: cfg.seed,
            });
        }
    }
    sort_rows(&mut report.rows);
    Ok(report)
}

/// Runs the protocol on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| invalid(format!("threads: {e}")))?;
    pool.install(|| run_experiment(cfg))
}

/// `(l0, mean)` points of one curve, ordered by `l0`.
pub type Curve = Vec<(u32, f64)>;

pub fn curve(rows: &[AggregateRow], topology: TopologyKind, strategy: &Strategy, k: usize) -> Curve {
    let mut c: Curve = rows
        .iter()
        .filter(|r| r.topology == topology && &r.strategy == strategy && r.k == k)
        .map(|r| (r.l0, r.mean_concurrence))
        .collect();
    c.sort_by_key(|p| p.0);
    c
}

pub fn baseline_curve(rows: &[AggregateRow], topology: TopologyKind) -> Curve {
    let mut c: Curve = rows
        .iter()
        .filter(|r| r.topology == topology && r.strategy == Strategy::Baseline)
        .map(|r| (r.l0, r.mean_concurrence))
        .collect();
    c.sort_by_key(|p| p.0);
    c
}

/// Smallest `l0` from which the strategy mean stays at or above the baseline
/// mean for the rest of the grid.
pub fn crossover_distance(strategy: &[(u32, f64)], baseline: &[(u32, f64)]) -> Result<Option<u32>> {
    if strategy.len() != baseline.len() || strategy.iter().zip(baseline).any(|(a, b)| a.0 != b.0) {
        return Err(invalid("strategy and baseline curves are sampled on different l0 grids"));
    }
    let mut crossover = None;
    for (s, b) in strategy.iter().zip(baseline).rev() {
        if s.1 >= b.1 {
            crossover = Some(s.0);
        } else {
            break;
        }
    }
    Ok(crossover)
}

pub fn write_csv<W: Write>(rows: &[AggregateRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.topology.name().to_string(),
            r.strategy.to_string(),
            r.k.to_string(),
            r.l0.to_string(),
            sig9(r.mean_concurrence),
            sig9(r.std_dev),
            r.n_samples.to_string(),
            r.seed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<AggregateRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| parse_error(1, "header", e.to_string()))?,
        None => return Err(parse_error(1, "header", "file is empty".into())),
    };
    for (i, expected) in CSV_HEADER.iter().enumerate() {
        match header.get(i).map(str::trim) {
            Some(found) if found == *expected => {}
            Some(found) => {
                return Err(parse_error(1, expected, format!("expected column `{expected}`, found `{found}`")))
            }
            None => return Err(parse_error(1, expected, format!("missing column `{expected}`"))),
        }
    }
    if header.len() > CSV_HEADER.len() {
        let extra = header.get(CSV_HEADER.len()).unwrap_or_default();
        return Err(parse_error(1, extra, format!("unexpected column `{extra}`")));
    }

    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, "record", e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| rec.get(i).map(str::trim).unwrap_or_default();
        fn parse<T: FromStr>(line: u64, name: &str, raw: &str) -> Result<T>
        where
            T::Err: fmt::Display,
        {
            raw.parse::<T>().map_err(|e| parse_error(line, name, format!("`{raw}`: {e}")))
        }
        if rec.len() != CSV_HEADER.len() {
            return Err(parse_error(
                line,
                "record",
                format!("expected {} fields, found {}", CSV_HEADER.len(), rec.len()),
            ));
        }
        let row = AggregateRow {
            topology: parse(line, "topology", field(0))?,
            strategy: parse(line, "strategy", field(1))?,
            k: parse(line, "k", field(2))?,
            l0: parse(line, "l0", field(3))?,
            mean_concurrence: parse(line, "mean_concurrence", field(4))?,
            std_dev: parse(line, "std_dev", field(5))?,
            n_samples: parse(line, "n_samples", field(6))?,
            seed: parse(line, "seed", field(7))?,
        };
        if !(0.0..=1.0).contains(&row.mean_concurrence) {
            return Err(parse_error(line, "mean_concurrence", "must lie in [0, 1]".into()));
        }
        if row.std_dev.is_nan() || row.std_dev < 0.0 {
            return Err(parse_error(line, "std_dev", "must be non-negative".into()));
        }
        if row.n_samples == 0 {
            return Err(parse_error(line, "n_samples", "must be at least 1".into()));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_error(line: u64, field: &str, message: String) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{swap_concurrences, Concurrence};

    fn small(topologies: Vec<TopologyKind>, seed: u64) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::dominance_preset(seed);
        cfg.topologies = topologies;
        cfg.n_nodes = 900;
        cfg.target_edges = 4_500;
        cfg.n_sources = 10;
        cfg.n_dests = 10;
        cfg.l0_max = 4;
        cfg.interior_margin = 4;
        cfg
    }

    #[test]
    fn crossover_rules() {
        let base = vec![(1, 0.98), (2, 0.96), (3, 0.94), (4, 0.92)];
        let s = vec![(1, 0.97), (2, 0.96), (3, 0.95), (4, 0.93)];
        assert_eq!(crossover_distance(&s, &base).unwrap(), Some(2));
        let dip = vec![(1, 0.99), (2, 0.95), (3, 0.95), (4, 0.93)];
        assert_eq!(crossover_distance(&dip, &base).unwrap(), Some(3));
        let never = vec![(1, 0.9), (2, 0.9), (3, 0.9), (4, 0.9)];
        assert_eq!(crossover_distance(&never, &base).unwrap(), None);
        assert!(crossover_distance(&s[..3], &base).is_err());
    }

    #[test]
    fn config_validation_names_key() {
        let mut cfg = ExperimentConfig::crossover_preset(1);
        cfg.validate().unwrap();
        cfg.n_sources = 0;
        assert!(cfg.validate().unwrap_err().to_string().contains("n_sources"));
        let mut cfg = ExperimentConfig::crossover_preset(1);
        cfg.l0_max = 21;
        assert!(cfg.validate().unwrap_err().to_string().contains("l0_range"));
    }

    #[test]
    fn baseline_first_hop_is_mean_edge() {
        let report = run_experiment(&small(vec![TopologyKind::Rn], 3)).unwrap();
        let b = baseline_curve(&report.rows, TopologyKind::Rn);
        assert!((b[0].1 - 0.98).abs() < 0.003, "{b:?}");
        for w in b.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
    }

    #[test]
    fn homogeneous_lattice_baseline_is_exact() {
        let mut cfg = small(vec![TopologyKind::Sln], 5);
        cfg.distribution = EdgeDistribution::homogeneous(0.02).unwrap();
        let report = run_experiment(&cfg).unwrap();
        for row in report.rows.iter().filter(|r| r.strategy == Strategy::Baseline) {
            let expected = swap_concurrences(vec![Concurrence::new(0.98).unwrap(); row.l0 as usize]).unwrap();
            assert!((row.mean_concurrence - expected.value()).abs() < 1e-12);
            assert!(row.std_dev < 1e-12);
        }
    }

    #[test]
    fn every_strategy_row_has_baseline() {
        let report = run_experiment(&small(vec![TopologyKind::Ban, TopologyKind::Hln], 9)).unwrap();
        for r in &report.rows {
            assert!(r.n_samples >= 1);
            assert!(report
                .rows
                .iter()
                .any(|b| b.strategy == Strategy::Baseline && b.topology == r.topology && b.l0 == r.l0));
        }
        let mut sorted = report.rows.clone();
        sort_rows(&mut sorted);
        assert_eq!(sorted, report.rows);
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let cfg = small(vec![TopologyKind::Rn, TopologyKind::Tln], 11);
        let render = |threads| {
            let mut buf = Vec::new();
            write_csv(&run_experiment_with_threads(&cfg, threads).unwrap().rows, &mut buf).unwrap();
            buf
        };
        assert_eq!(render(1), render(4));
    }

    #[test]
    fn csv_round_trip() {
        let report = run_experiment(&small(vec![TopologyKind::Sln], 2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&report.rows, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), report.rows.len());
        for (a, b) in back.iter().zip(&report.rows) {
            assert_eq!((a.topology, &a.strategy, a.k, a.l0, a.n_samples), (b.topology, &b.strategy, b.k, b.l0, b.n_samples));
            assert!((a.mean_concurrence - b.mean_concurrence).abs() < 1e-9);
            assert!((a.std_dev - b.std_dev).abs() < 1e-9);
        }
        let mut again = Vec::new();
        write_csv(&back, &mut again).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn csv_errors_name_column_and_line() {
        let bad_header = "topology,strategy,k,l0,mean,std_dev,n_samples,seed\n";
        let err = read_csv(bad_header.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("mean_concurrence"), "{err}");
        let bad_row = "topology,strategy,k,l0,mean_concurrence,std_dev,n_samples,seed\n\
                       RN,SPF,3,1,0.9,0.01,10,1\nRN,SPF,3,x,0.9,0.01,10,1\n";
        let err = read_csv(bad_row.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("l0"), "{err}");
    }
}
