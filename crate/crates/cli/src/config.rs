//! TOML experiment configuration.
//!
//! ```toml
//! seed = 1
//!
//! [network]
//! topologies = ["RN", "BAN", "TLN", "SLN", "HLN"]
//! n_nodes = 10000
//! target_edges = 50000
//! n_graph_realizations = 1
//!
//! [edges]
//! max = 0.99
//! mean = 0.98
//! min = 0.97
//!
//! [sampling]
//! l0_range = [1, 6]
//! n_sources = 100
//! n_dests = 100
//! interior_margin = 6
//!
//! [strategies]
//! names = ["SPF"]
//! k_default = 3
//! k_paths = { TLN = "all", SLN = "all", HLN = "all" }
//! ```
//!
//! Every key except `seed` is optional and falls back to the values shown.
//! Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use mepnet_core::{EdgeDistribution, ExperimentConfig, KPaths, Strategy, TopologyKind};
use serde::Deserialize;

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    #[serde(default)]
    network: RawNetwork,
    #[serde(default)]
    edges: RawEdges,
    #[serde(default)]
    sampling: RawSampling,
    #[serde(default)]
    strategies: RawStrategies,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    topologies: Option<Vec<String>>,
    n_nodes: Option<usize>,
    target_edges: Option<usize>,
    n_graph_realizations: Option<usize>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawEdges {
    max: Option<f64>,
    mean: Option<f64>,
    min: Option<f64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    l0_range: Option<[u32; 2]>,
    n_sources: Option<usize>,
    n_dests: Option<usize>,
    interior_margin: Option<u32>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawStrategies {
    names: Option<Vec<String>>,
    k_default: Option<RawK>,
    k_paths: Option<BTreeMap<String, RawK>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawK {
    Count(i64),
    Word(String),
}

impl RawK {
    fn resolve(&self, key: &str) -> Result<KPaths, String> {
        let text = match self {
            RawK::Count(n) => n.to_string(),
            RawK::Word(w) => w.clone(),
        };
        text.parse().map_err(|e| format!("{key}: {e}"))
    }
}

/// Parses a config file. Errors name the offending key.
pub fn load(path: &Path, seed_fallback: Option<u64>) -> Result<ExperimentConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text, seed_fallback)
}

pub fn parse(text: &str, seed_fallback: Option<u64>) -> Result<ExperimentConfig, String> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| e.to_string())?;
    let seed = raw
        .seed
        .or(seed_fallback)
        .ok_or("seed: missing (set it in the config, pass --seed or export MEPNET_SEED)")?;
    let mut cfg = ExperimentConfig::crossover_preset(seed);

    let net = raw.network;
    if let Some(names) = net.topologies {
        cfg.topologies = names
            .iter()
            .map(|n| n.parse::<TopologyKind>().map_err(|e| format!("network.topologies: {e}")))
            .collect::<Result<_, _>>()?;
    }
    set(&mut cfg.n_nodes, net.n_nodes);
    set(&mut cfg.target_edges, net.target_edges);
    set(&mut cfg.n_graph_realizations, net.n_graph_realizations);

    let e = raw.edges;
    if e.max.is_some() || e.mean.is_some() || e.min.is_some() {
        let d = cfg.distribution;
        cfg.distribution = EdgeDistribution::from_bounds(
            e.max.unwrap_or(d.max()),
            e.mean.unwrap_or(d.mean()),
            e.min.unwrap_or(d.min()),
        )
        .map_err(|err| format!("edges: {err}"))?;
    }

    let s = raw.sampling;
    if let Some([lo, hi]) = s.l0_range {
        cfg.l0_min = lo;
        cfg.l0_max = hi;
    }
    set(&mut cfg.n_sources, s.n_sources);
    set(&mut cfg.n_dests, s.n_dests);
    set(&mut cfg.interior_margin, s.interior_margin);

    let st = raw.strategies;
    if let Some(names) = st.names {
        cfg.strategies = names
            .iter()
            .map(|n| n.parse::<Strategy>().map_err(|e| format!("strategies.names: {e}")))
            .collect::<Result<_, _>>()?;
    }
    if let Some(k) = st.k_default {
        cfg.default_k = k.resolve("strategies.k_default")?;
    }
    if let Some(map) = st.k_paths {
        cfg.k_paths.clear();
        for (name, k) in map {
            let key = format!("strategies.k_paths.{name}");
            let t = name.parse::<TopologyKind>().map_err(|e| format!("{key}: {e}"))?;
            cfg.k_paths.insert(t, k.resolve(&key)?);
        }
    }

    cfg.validate().map_err(|e| match e {
        mepnet_core::Error::InvalidParameter(m) => m,
        other => other.to_string(),
    })?;
    Ok(cfg)
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
