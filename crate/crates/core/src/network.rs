//! Network graphs: the five topologies, edge-concurrence assignment and the
//! edge-list text format.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::calculus::{Concurrence, EdgeDistribution};
use crate::error::{invalid, Error, Result};
use crate::format::sig9;
use crate::rng::rng_from_seed;

/// Network topology family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopologyKind {
    /// Uniform random graph with a fixed edge count.
    Rn,
    /// Barabási–Albert preferential attachment.
    Ban,
    /// Triangular lattice.
    Tln,
    /// Square lattice.
    Sln,
    /// Hexagonal (honeycomb) lattice.
    Hln,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 5] = [
        TopologyKind::Rn,
        TopologyKind::Ban,
        TopologyKind::Tln,
        TopologyKind::Sln,
        TopologyKind::Hln,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Rn => "RN",
            TopologyKind::Ban => "BAN",
            TopologyKind::Tln => "TLN",
            TopologyKind::Sln => "SLN",
            TopologyKind::Hln => "HLN",
        }
    }

    pub fn is_lattice(self) -> bool {
        self.lattice_degree().is_some()
    }

    /// Degree of an interior lattice node.
    pub fn lattice_degree(self) -> Option<usize> {
        match self {
            TopologyKind::Tln => Some(6),
            TopologyKind::Sln => Some(4),
            TopologyKind::Hln => Some(3),
            TopologyKind::Rn | TopologyKind::Ban => None,
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TopologyKind::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| invalid(format!("unknown topology `{s}` (expected RN, BAN, TLN, SLN or HLN)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub concurrence: Concurrence,
}

/// Entry of a node's adjacency list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjacent {
    pub node: u32,
    pub edge: u32,
}

/// Immutable simple undirected graph with per-edge concurrences.
///
/// Adjacency lists are sorted by neighbour index, which fixes the tie-breaking
/// of every breadth-first search run on the graph.
#[derive(Debug, Clone)]
pub struct NetworkGraph {
    topology: TopologyKind,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<Adjacent>,
    lattice_dims: Option<(usize, usize)>,
    boundary_distance: Option<Vec<u32>>,
    seed: u64,
}

impl NetworkGraph {
    /// Builds a graph from node pairs, rejecting self-loops, parallel edges and
    /// out-of-range endpoints. All edges start at concurrence 1.
    pub fn from_pairs(
        topology: TopologyKind,
        node_count: usize,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        if node_count > u32::MAX as usize {
            return Err(invalid("too many nodes"));
        }
        let mut edges: Vec<Edge> = pairs
            .into_iter()
            .map(|(a, b)| Edge {
                u: NodeId(a.min(b)),
                v: NodeId(a.max(b)),
                concurrence: Concurrence::ONE,
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        for e in &edges {
            if e.u == e.v {
                return Err(invalid(format!("self-loop at node {}", e.u)));
            }
            if e.v.index() >= node_count {
                return Err(invalid(format!(
                    "edge ({}, {}) references a node outside [0, {node_count})",
                    e.u, e.v
                )));
            }
        }
        if let Some(w) = edges.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(invalid(format!("parallel edge ({}, {})", w[0].u, w[0].v)));
        }
        Self::from_sorted_edges(topology, node_count, edges)
    }

    fn from_sorted_edges(topology: TopologyKind, node_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if edges.len() > u32::MAX as usize {
            return Err(invalid("too many edges"));
        }
        let mut degree = vec![0usize; node_count];
        for e in &edges {
            degree[e.u.index()] += 1;
            degree[e.v.index()] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut adjacency = vec![Adjacent { node: 0, edge: 0 }; offsets[node_count]];
        for (id, e) in edges.iter().enumerate() {
            let id = id as u32;
            adjacency[fill[e.u.index()]] = Adjacent { node: e.v.0, edge: id };
            fill[e.u.index()] += 1;
            adjacency[fill[e.v.index()]] = Adjacent { node: e.u.0, edge: id };
            fill[e.v.index()] += 1;
        }
        for v in 0..node_count {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable_by_key(|a| a.node);
        }
        Ok(NetworkGraph {
            topology,
            edges,
            offsets,
            adjacency,
            lattice_dims: None,
            boundary_distance: None,
            seed: 0,
        })
    }

    pub fn topology(&self) -> TopologyKind {
        self.topology
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: u32) -> &Edge {
        &self.edges[id as usize]
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[Adjacent] {
        &self.adjacency[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    /// Edge id joining `u` and `v`, if any.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<u32> {
        let adj = self.neighbors(u);
        adj.binary_search_by_key(&v.0, |a| a.node).ok().map(|i| adj[i].edge)
    }

    pub fn lattice_dims(&self) -> Option<(usize, usize)> {
        self.lattice_dims
    }

    /// Hop distance to the nearest boundary node of a lattice.
    pub fn boundary_distance(&self, v: NodeId) -> Option<u32> {
        self.boundary_distance.as_ref().map(|d| d[v.index()])
    }

    /// A node is interior when it has the full lattice degree and lies at
    /// least `margin` hops from the boundary. Every node of a non-lattice
    /// graph is interior.
    pub fn is_interior(&self, v: NodeId, margin: u32) -> bool {
        match (&self.boundary_distance, self.topology.lattice_degree()) {
            (Some(dist), Some(full)) => self.degree(v) == full && dist[v.index()] >= margin,
            _ => true,
        }
    }

    pub fn interior_flags(&self, margin: u32) -> Vec<bool> {
        self.nodes().map(|v| self.is_interior(v, margin)).collect()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `histogram[d]` is the number of nodes with degree `d`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_degree() + 1];
        for v in self.nodes() {
            hist[self.degree(v)] += 1;
        }
        hist
    }

    fn with_lattice(mut self, rows: usize, cols: usize) -> Self {
        let full = self.topology.lattice_degree().expect("lattice topology");
        let n = self.node_count();
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for v in self.nodes() {
            if self.degree(v) < full {
                dist[v.index()] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = dist[u.index()] + 1;
            for a in self.neighbors(u) {
                if dist[a.node as usize] == u32::MAX {
                    dist[a.node as usize] = next;
                    queue.push_back(NodeId(a.node));
                }
            }
        }
        self.lattice_dims = Some((rows, cols));
        self.boundary_distance = Some(dist);
        self
    }
}

/// Uniform random simple graph with exactly `m` edges on `n` nodes.
pub fn build_random(n: usize, m: usize, seed: u64) -> Result<NetworkGraph> {
    let possible = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > possible {
        return Err(invalid(format!(
            "{m} edges requested but a simple graph on {n} nodes has at most {possible}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let pairs = index::sample(&mut rng, possible, m)
        .into_iter()
        .map(|i| upper_triangle_pair(i as u64));
    Ok(NetworkGraph::from_pairs(TopologyKind::Rn, n, pairs)?.with_seed(seed))
}

/// Maps a linear index onto the pair `(u, v)`, `u < v`, enumerated column by
/// column: (0,1), (0,2), (1,2), (0,3), ...
fn upper_triangle_pair(i: u64) -> (u32, u32) {
    let mut v = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > i {
        v -= 1;
    }
    while (v + 1) * v / 2 <= i {
        v += 1;
    }
    let u = i - v * (v - 1) / 2;
    (u as u32, v as u32)
}

/// Preferential-attachment graph.
///
/// Starts from a complete graph on `m_attach + 1` nodes; every later node
/// attaches to `m_attach` distinct existing nodes chosen with probability
/// proportional to their degree. With `m_attach = n - 1` the result is the
/// complete graph on `n` nodes. The edge count is
/// `m0 (m0 - 1) / 2 + (n - m0) m_attach` with `m0 = m_attach + 1`.
pub fn build_barabasi_albert(n: usize, m_attach: usize, seed: u64) -> Result<NetworkGraph> {
    if m_attach == 0 || m_attach >= n {
        return Err(invalid(format!(
            "attachment count {m_attach} must satisfy 1 <= m_attach < n = {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let m0 = m_attach + 1;
    let mut pairs = Vec::with_capacity(m0 * (m0 - 1) / 2 + (n - m0) * m_attach);
    // Each node appears once per incident edge.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * pairs.capacity());
    for u in 0..m0 as u32 {
        for v in (u + 1)..m0 as u32 {
            pairs.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(m_attach);
    for v in m0 as u32..n as u32 {
        chosen.clear();
        while chosen.len() < m_attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            pairs.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Ok(NetworkGraph::from_pairs(TopologyKind::Ban, n, pairs)?.with_seed(seed))
}

fn check_dims(kind: TopologyKind, rows: usize, cols: usize) -> Result<()> {
    if rows < 3 || cols < 3 {
        return Err(invalid(format!(
            "{kind} lattice needs at least 3 rows and 3 columns, got {rows}x{cols}"
        )));
    }
    Ok(())
}

/// Square lattice with open boundaries; node `(r, c)` has index `r * cols + c`.
pub fn build_square(rows: usize, cols: usize) -> Result<NetworkGraph> {
    check_dims(TopologyKind::Sln, rows, cols)?;
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut pairs = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(NetworkGraph::from_pairs(TopologyKind::Sln, rows * cols, pairs)?.with_lattice(rows, cols))
}

/// Triangular lattice on a rectangular patch in offset coordinates: odd rows
/// are shifted half a cell to the right.
pub fn build_triangular(rows: usize, cols: usize) -> Result<NetworkGraph> {
    check_dims(TopologyKind::Tln, rows, cols)?;
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut pairs = Vec::with_capacity(3 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
                let diagonal = if r % 2 == 1 { c.checked_add(1) } else { c.checked_sub(1) };
                if let Some(cc) = diagonal.filter(|&cc| cc < cols) {
                    pairs.push((id(r, c), id(r + 1, cc)));
                }
            }
        }
    }
    Ok(NetworkGraph::from_pairs(TopologyKind::Tln, rows * cols, pairs)?.with_lattice(rows, cols))
}

/// Honeycomb lattice in brick-wall form: every node links to its horizontal
/// neighbours, and `(r, c)` with `r + c` even links down to `(r + 1, c)`.
pub fn build_hexagonal(rows: usize, cols: usize) -> Result<NetworkGraph> {
    check_dims(TopologyKind::Hln, rows, cols)?;
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut pairs = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows && (r + c) % 2 == 0 {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(NetworkGraph::from_pairs(TopologyKind::Hln, rows * cols, pairs)?.with_lattice(rows, cols))
}

pub fn build_lattice(kind: TopologyKind, rows: usize, cols: usize) -> Result<NetworkGraph> {
    match kind {
        TopologyKind::Tln => build_triangular(rows, cols),
        TopologyKind::Sln => build_square(rows, cols),
        TopologyKind::Hln => build_hexagonal(rows, cols),
        TopologyKind::Rn | TopologyKind::Ban => {
            Err(invalid(format!("{kind} is not a lattice topology")))
        }
    }
}

/// Draws each edge concurrence independently and uniformly from
/// `[dist.min(), dist.max()]`.
///
/// The uniform shape centres on `1 - delta` only when `a + b = 2`; other
/// parameters are rejected.
pub fn assign_edge_concurrence(
    mut g: NetworkGraph,
    dist: &EdgeDistribution,
    seed: u64,
) -> Result<NetworkGraph> {
    if g.edges.is_empty() {
        return Err(invalid("graph has no edges"));
    }
    if dist.delta() > 0.0 && (dist.a() + dist.b() - 2.0).abs() > 1e-9 {
        return Err(invalid(format!(
            "uniform edge distribution needs a + b = 2 to keep the mean at 1 - delta (a = {}, b = {})",
            dist.a(),
            dist.b()
        )));
    }
    let (lo, hi) = (dist.min(), dist.max());
    let mut rng = rng_from_seed(seed);
    for e in &mut g.edges {
        let c = if hi > lo { rng.random_range(lo..=hi) } else { hi };
        e.concurrence = Concurrence::saturating(c);
    }
    Ok(g)
}

/// Writes the `# topology=<kind> n=<n> seed=<seed>` header followed by one
/// `u v c_e` line per edge.
pub fn write_edge_list<W: Write>(g: &NetworkGraph, mut out: W) -> Result<()> {
    writeln!(out, "# topology={} n={} seed={}", g.topology, g.node_count(), g.seed)?;
    for e in &g.edges {
        writeln!(out, "{} {} {}", e.u, e.v, sig9(e.concurrence.value()))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<NetworkGraph> {
    let mut lines = input.lines();
    let header = lines.next().transpose()?.ok_or_else(|| Error::Parse {
        line: 1,
        field: "header".into(),
        message: "empty file".into(),
    })?;
    let parse_err = |line: u64, field: &str, message: String| Error::Parse {
        line,
        field: field.into(),
        message,
    };
    let body = header
        .strip_prefix('#')
        .ok_or_else(|| parse_err(1, "header", "expected `# topology=...`".into()))?;
    let (mut topology, mut n, mut seed) = (None, None, None);
    for token in body.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(1, token, "expected key=value".into()))?;
        match key {
            "topology" => topology = Some(value.parse::<TopologyKind>()?),
            "n" => n = Some(value.parse::<usize>().map_err(|e| parse_err(1, "n", e.to_string()))?),
            "seed" => {
                seed = Some(value.parse::<u64>().map_err(|e| parse_err(1, "seed", e.to_string()))?)
            }
            other => return Err(parse_err(1, other, "unknown header key".into())),
        }
    }
    let topology = topology.ok_or_else(|| parse_err(1, "topology", "missing".into()))?;
    let n = n.ok_or_else(|| parse_err(1, "n", "missing".into()))?;
    let seed = seed.ok_or_else(|| parse_err(1, "seed", "missing".into()))?;

    let mut pairs = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i as u64 + 2;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut field = |name: &str| {
            parts
                .next()
                .ok_or_else(|| parse_err(line_no, name, "missing value".into()))
                .map(str::to_owned)
        };
        let u: u32 = field("u")?
            .parse()
            .map_err(|e: std::num::ParseIntError| parse_err(line_no, "u", e.to_string()))?;
        let v: u32 = field("v")?
            .parse()
            .map_err(|e: std::num::ParseIntError| parse_err(line_no, "v", e.to_string()))?;
        let c: f64 = field("c_e")?
            .parse()
            .map_err(|e: std::num::ParseFloatError| parse_err(line_no, "c_e", e.to_string()))?;
        let c = Concurrence::new(c).map_err(|e| parse_err(line_no, "c_e", e.to_string()))?;
        pairs.push((u.min(v), u.max(v)));
        values.push(((u.min(v), u.max(v)), c));
    }
    let mut g = NetworkGraph::from_pairs(topology, n, pairs)?.with_seed(seed);
    values.sort_by_key(|(k, _)| *k);
    for (e, (_, c)) in g.edges.iter_mut().zip(values) {
        e.concurrence = c;
    }
    Ok(g)
}

/// Set of edges, used by tests and diagnostics to compare graphs.
pub fn edge_set(g: &NetworkGraph) -> HashSet<(u32, u32)> {
    g.edges.iter().map(|e| (e.u.0, e.v.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_degrees_ok(g: &NetworkGraph, full: usize) {
        let flags = g.interior_flags(1);
        assert!(flags.iter().any(|&f| f));
        for v in g.nodes() {
            if flags[v.index()] {
                assert_eq!(g.degree(v), full);
            }
            assert!(g.degree(v) <= full);
        }
    }

    #[test]
    fn upper_triangle_enumeration() {
        let decoded: Vec<_> = (0..10).map(upper_triangle_pair).collect();
        assert_eq!(
            decoded,
            vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
        );
        let i = 49_995_000u64 - 1;
        assert_eq!(upper_triangle_pair(i), (9998, 9999));
    }

    #[test]
    fn random_graph_counts() {
        let g = build_random(3, 3, 1).unwrap();
        assert_eq!(edge_set(&g), HashSet::from([(0, 1), (0, 2), (1, 2)]));
        let g = build_random(10_000, 50_000, 7).unwrap();
        assert_eq!(g.edge_count(), 50_000);
        assert!((g.mean_degree() - 10.0).abs() < 1e-12);
        assert!(build_random(4, 7, 1).is_err());
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = build_random(500, 2000, 11).unwrap();
        let b = build_random(500, 2000, 11).unwrap();
        let c = build_random(500, 2000, 12).unwrap();
        assert_eq!(edge_set(&a), edge_set(&b));
        assert_ne!(edge_set(&a), edge_set(&c));
    }

    #[test]
    fn barabasi_albert_counts() {
        let g = build_barabasi_albert(10_000, 5, 3).unwrap();
        assert_eq!(g.edge_count(), 15 + 9_994 * 5);
        let complete = build_barabasi_albert(10, 9, 3).unwrap();
        assert_eq!(complete.edge_count(), 45);
        assert!(build_barabasi_albert(10, 10, 3).is_err());
        assert!(build_barabasi_albert(10, 0, 3).is_err());
    }

    #[test]
    fn lattice_degrees() {
        let sq = build_square(100, 100).unwrap();
        assert_eq!(sq.node_count(), 10_000);
        assert_eq!(sq.edge_count(), 2 * 100 * 99);
        interior_degrees_ok(&sq, 4);
        let tri = build_triangular(20, 20).unwrap();
        interior_degrees_ok(&tri, 6);
        let hex = build_hexagonal(20, 20).unwrap();
        interior_degrees_ok(&hex, 3);
        assert!(build_square(2, 10).is_err());
    }

    #[test]
    fn boundary_distance_on_square() {
        let g = build_square(9, 9).unwrap();
        assert_eq!(g.boundary_distance(NodeId(0)), Some(0));
        assert_eq!(g.boundary_distance(NodeId(4 * 9 + 4)), Some(4));
        assert!(g.is_interior(NodeId(4 * 9 + 4), 4));
        assert!(!g.is_interior(NodeId(4 * 9 + 4), 5));
    }

    #[test]
    fn edge_concurrence_assignment() {
        let dist = EdgeDistribution::from_bounds(0.99, 0.98, 0.97).unwrap();
        let g = assign_edge_concurrence(build_square(50, 50).unwrap(), &dist, 5).unwrap();
        let values: Vec<f64> = g.edges().iter().map(|e| e.concurrence.value()).collect();
        assert!(values.iter().all(|&c| (dist.min()..=dist.max()).contains(&c)));
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let se = (0.02f64.powi(2) / 12.0).sqrt() / (values.len() as f64).sqrt();
        assert!((mean - 0.98).abs() < 3.0 * se);

        let hom = EdgeDistribution::homogeneous(0.02).unwrap();
        let g = assign_edge_concurrence(g, &hom, 5).unwrap();
        assert!(g.edges().iter().all(|e| e.concurrence.value() == 0.98));

        let perfect = EdgeDistribution::homogeneous(0.0).unwrap();
        let g = assign_edge_concurrence(g, &perfect, 5).unwrap();
        assert!(g.edges().iter().all(|e| e.concurrence.value() == 1.0));

        let skewed = EdgeDistribution::new(0.02, 0.0, 3.0).unwrap();
        assert!(assign_edge_concurrence(g, &skewed, 5).is_err());
    }

    #[test]
    fn rejects_non_simple_graphs() {
        assert!(NetworkGraph::from_pairs(TopologyKind::Rn, 3, [(0, 0)]).is_err());
        assert!(NetworkGraph::from_pairs(TopologyKind::Rn, 3, [(0, 1), (1, 0)]).is_err());
        assert!(NetworkGraph::from_pairs(TopologyKind::Rn, 3, [(0, 3)]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let dist = EdgeDistribution::from_bounds(0.99, 0.98, 0.97).unwrap();
        let g = assign_edge_concurrence(build_random(200, 600, 9).unwrap(), &dist, 4).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# topology=RN n=200 seed=9\n"));
        assert_eq!(text.lines().count(), 601);
        let back = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(edge_set(&back), edge_set(&g));
        for (a, b) in back.edges().iter().zip(g.edges()) {
            assert!((a.concurrence.value() - b.concurrence.value()).abs() < 1e-9);
        }
        let mut again = Vec::new();
        write_edge_list(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn edge_list_errors_name_line() {
        let text = "# topology=RN n=3 seed=1\n0 1 0.9\n1 2 abc\n";
        match read_edge_list(text.as_bytes()) {
            Err(Error::Parse { line, field, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(field, "c_e");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
