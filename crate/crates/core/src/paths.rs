//! Edge-disjoint path discovery and distance-stratified pair sampling.
//!
//! Every search is a breadth-first search over neighbours in ascending index
//! order, and a node keeps the first parent that discovers it. Equal-length
//! shortest paths are therefore resolved the same way on every run.

use rand::seq::{index, SliceRandom};

use crate::calculus::{swap_concurrences, Concurrence};
use crate::error::{domain, Error, Result};
use crate::network::{Adjacent, NetworkGraph, NodeId};
use crate::rng::rng_from_seed;

/// A simple path between two nodes with its swapped concurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    nodes: Vec<NodeId>,
    edges: Vec<u32>,
    concurrence: Concurrence,
}

impl Path {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Edge ids in traversal order.
    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    /// Hop count.
    pub fn length(&self) -> usize {
        self.edges.len()
    }

    pub fn concurrence(&self) -> Concurrence {
        self.concurrence
    }
}

/// Edge-disjoint paths between one source and one destination, in discovery
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub source: NodeId,
    pub destination: NodeId,
    pub paths: Vec<Path>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(Path::length).collect()
    }

    pub fn is_edge_disjoint(&self) -> bool {
        let mut seen: Vec<u32> = self.paths.iter().flat_map(|p| p.edges.iter().copied()).collect();
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == total
    }
}

/// Reusable breadth-first search state over one graph.
pub struct PathFinder<'g> {
    graph: &'g NetworkGraph,
    visit_epoch: Vec<u32>,
    epoch: u32,
    parent: Vec<Adjacent>,
    depth: Vec<u32>,
    queue: Vec<u32>,
    removed: Vec<bool>,
    removed_list: Vec<u32>,
}

impl<'g> PathFinder<'g> {
    pub fn new(graph: &'g NetworkGraph) -> Self {
        let n = graph.node_count();
        PathFinder {
            graph,
            visit_epoch: vec![0; n],
            epoch: 0,
            parent: vec![Adjacent { node: u32::MAX, edge: u32::MAX }; n],
            depth: vec![0; n],
            queue: Vec::with_capacity(n),
            removed: vec![false; graph.edge_count()],
            removed_list: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g NetworkGraph {
        self.graph
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.visit_epoch.fill(0);
            self.epoch = 1;
        }
    }

    #[inline]
    fn visited(&self, v: u32) -> bool {
        self.visit_epoch[v as usize] == self.epoch
    }

    /// Breadth-first search from `s` that skips removed edges. Stops once `d`
    /// is discovered (when given) or once `max_depth` is exhausted. Returns
    /// whether `d` was reached.
    fn search(&mut self, s: NodeId, d: Option<NodeId>, max_depth: u32) -> bool {
        self.next_epoch();
        self.queue.clear();
        self.visit_epoch[s.index()] = self.epoch;
        self.depth[s.index()] = 0;
        self.queue.push(s.0);
        let target = d.map(|d| d.0);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.depth[u as usize];
            if du >= max_depth {
                continue;
            }
            for &a in self.graph.neighbors(NodeId(u)) {
                if self.removed[a.edge as usize] || self.visited(a.node) {
                    continue;
                }
                let v = a.node as usize;
                self.visit_epoch[v] = self.epoch;
                self.parent[v] = Adjacent { node: u, edge: a.edge };
                self.depth[v] = du + 1;
                if Some(a.node) == target {
                    return true;
                }
                self.queue.push(a.node);
            }
        }
        false
    }

    fn trace(&self, s: NodeId, d: NodeId) -> (Vec<NodeId>, Vec<u32>) {
        let mut nodes = vec![d];
        let mut edges = Vec::new();
        let mut cur = d.0;
        while cur != s.0 {
            let p = self.parent[cur as usize];
            edges.push(p.edge);
            nodes.push(NodeId(p.node));
            cur = p.node;
        }
        nodes.reverse();
        edges.reverse();
        (nodes, edges)
    }

    fn clear_removed(&mut self) {
        for &e in &self.removed_list {
            self.removed[e as usize] = false;
        }
        self.removed_list.clear();
    }

    pub fn shortest_path_length(&mut self, s: NodeId, d: NodeId) -> Result<usize> {
        if s == d {
            return Err(domain("source and destination coincide"));
        }
        self.clear_removed();
        if self.search(s, Some(d), u32::MAX) {
            Ok(self.depth[d.index()] as usize)
        } else {
            Err(Error::Disconnected(s.index(), d.index()))
        }
    }

    /// Greedy successive shortest paths: find a shortest path, delete its
    /// edges, repeat up to `k` times or until `s` and `d` separate.
    pub fn edge_disjoint_paths(&mut self, s: NodeId, d: NodeId, k: usize) -> PathSet {
        let mut set = PathSet {
            source: s,
            destination: d,
            paths: Vec::new(),
        };
        if s == d {
            return set;
        }
        let cap = k.min(self.graph.degree(s)).min(self.graph.degree(d));
        self.clear_removed();
        while set.paths.len() < cap && self.search(s, Some(d), u32::MAX) {
            let (nodes, edges) = self.trace(s, d);
            for &e in &edges {
                self.removed[e as usize] = true;
                self.removed_list.push(e);
            }
            let concurrence = swap_concurrences(edges.iter().map(|&e| self.graph.edge(e).concurrence))
                .expect("a traced path has at least one edge");
            set.paths.push(Path {
                nodes,
                edges,
                concurrence,
            });
        }
        self.clear_removed();
        set
    }

    /// Nodes at exactly `distance` hops from `s`, in discovery order.
    pub fn nodes_at_distance(&mut self, s: NodeId, distance: u32) -> Vec<NodeId> {
        self.clear_removed();
        self.search(s, None, distance);
        self.queue
            .iter()
            .filter(|&&v| self.depth[v as usize] == distance)
            .map(|&v| NodeId(v))
            .collect()
    }

    /// Hop distance from `s` to every node, `u32::MAX` when unreachable.
    pub fn distances_from(&mut self, s: NodeId) -> Vec<u32> {
        self.clear_removed();
        self.search(s, None, u32::MAX);
        let mut out = vec![u32::MAX; self.graph.node_count()];
        for &v in &self.queue {
            out[v as usize] = self.depth[v as usize];
        }
        out
    }
}

pub fn shortest_path_length(g: &NetworkGraph, s: NodeId, d: NodeId) -> Result<usize> {
    PathFinder::new(g).shortest_path_length(s, d)
}

pub fn edge_disjoint_paths(g: &NetworkGraph, s: NodeId, d: NodeId, k: usize) -> PathSet {
    PathFinder::new(g).edge_disjoint_paths(s, d, k)
}

/// Parameters of [`sample_pairs_at_distance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSampling {
    /// Exact shortest-path distance between source and destination.
    pub l0: u32,
    pub n_sources: usize,
    pub n_dests_per_source: usize,
    pub seed: u64,
    /// Restrict lattice sources to interior nodes at least `l0 + margin` hops
    /// from the boundary. Ignored for graphs without a boundary.
    pub interior_only: bool,
    pub margin: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSample {
    pub l0: u32,
    pub pairs: Vec<(NodeId, NodeId)>,
    pub requested: usize,
    pub sources_found: usize,
}

impl PairSample {
    pub fn shortfall(&self) -> usize {
        self.requested.saturating_sub(self.pairs.len())
    }
}

/// Samples up to `n_sources` sources uniformly (sources with no node at
/// distance `l0` are skipped) and, for each, up to `n_dests_per_source`
/// destinations uniformly among the nodes at exact distance `l0`.
pub fn sample_pairs_at_distance(g: &NetworkGraph, spec: &PairSampling) -> PairSample {
    let mut finder = PathFinder::new(g);
    sample_pairs_with(&mut finder, spec)
}

pub fn sample_pairs_with(finder: &mut PathFinder<'_>, spec: &PairSampling) -> PairSample {
    let g = finder.graph();
    let mut sample = PairSample {
        l0: spec.l0,
        pairs: Vec::new(),
        requested: spec.n_sources * spec.n_dests_per_source,
        sources_found: 0,
    };
    if spec.l0 == 0 || spec.n_sources == 0 || spec.n_dests_per_source == 0 {
        return sample;
    }
    let margin = spec.l0.saturating_add(spec.margin);
    let mut candidates: Vec<NodeId> = g
        .nodes()
        .filter(|&v| !spec.interior_only || g.is_interior(v, margin))
        .collect();
    let mut rng = rng_from_seed(spec.seed);
    candidates.shuffle(&mut rng);
    for s in candidates {
        if sample.sources_found == spec.n_sources {
            break;
        }
        let ring = finder.nodes_at_distance(s, spec.l0);
        if ring.is_empty() {
            continue;
        }
        sample.sources_found += 1;
        let take = spec.n_dests_per_source.min(ring.len());
        sample
            .pairs
            .extend(index::sample(&mut rng, ring.len(), take).into_iter().map(|i| (s, ring[i])));
    }
    sample
}
