//! Multipath entanglement purification on quantum network graphs.
//!
//! Edges carry isotropic two-qubit states described by their concurrence.
//! Swapping joins the edges of a path into one long-range state, and pumping
//! combines the states of several edge-disjoint paths into one of higher
//! concurrence. The order in which paths are pumped matters; this crate
//! provides the scalar algebra, the network models, path extraction, the
//! pumping strategies, closed-form lattice averages and the experiment
//! driver that ties them together.
//!
//! ```
//! use mepnet_core::{build_square, edge_disjoint_paths, run_mep, NodeId, Strategy};
//!
//! let g = build_square(9, 9).unwrap();
//! let ps = edge_disjoint_paths(&g, NodeId(40), NodeId(41), 3);
//! assert_eq!(ps.lengths(), vec![1, 3, 3]);
//! let out = run_mep(&ps, &Strategy::Spl, 3).unwrap();
//! assert_eq!(out.paths_used, 3);
//! ```

pub mod analytic;
pub mod calculus;
pub mod error;
pub mod experiment;
pub mod format;
pub mod network;
pub mod paths;
pub mod rng;
pub mod strategy;

pub use analytic::{avg_spf, avg_spl, c_k3, c_k3_not_symmetric_check, lattice_classes, LatticeClass, Order};
pub use calculus::{
    asymptotic_combined, concurrence_from_noise, expected_gain, h_function, noise_from_concurrence,
    pump_concurrences, pump_improves, pump_step, pump_useful, purify_probability_bound,
    sequential_pump, swap_concurrences, swap_path, usefulness_margin, Concurrence, EdgeDistribution,
    NoiseParam, SEPARABLE_NOISE,
};
pub use error::{Error, Result};
pub use experiment::{
    crossover_distance, read_csv, run_experiment, run_experiment_with_threads, write_csv, AggregateRow,
    ExperimentConfig, ExperimentReport, KPaths,
};
pub use network::{
    assign_edge_concurrence, build_barabasi_albert, build_hexagonal, build_lattice, build_random,
    build_square, build_triangular, read_edge_list, write_edge_list, Edge, NetworkGraph, NodeId,
    TopologyKind,
};
pub use paths::{
    edge_disjoint_paths, sample_pairs_at_distance, shortest_path_length, PairSample, PairSampling, Path,
    PathFinder, PathSet,
};
pub use strategy::{run_mep, run_mep_with, MepOutcome, PumpMode, Strategy};
