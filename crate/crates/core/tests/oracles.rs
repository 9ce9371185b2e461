//! Library results against independent computations.

use mepnet_core::analytic::{c_k3, c_k3_parts};
use mepnet_core::{
    edge_disjoint_paths, pump_concurrences, sequential_pump, swap_concurrences, Concurrence, NetworkGraph,
    NodeId, TopologyKind,
};

fn conc(v: f64) -> Concurrence {
    Concurrence::new(v).unwrap()
}

/// Bell-diagonal weights of an isotropic state.
fn bell(c: f64) -> [f64; 4] {
    let q = 2.0 * (1.0 - c) / 3.0;
    [1.0 - 0.75 * q, 0.25 * q, 0.25 * q, 0.25 * q]
}

/// Swapping convolves Bell-diagonal weights over the Pauli frame.
fn swap_oracle(cs: &[f64]) -> f64 {
    let mut acc = bell(cs[0]);
    for &c in &cs[1..] {
        let w = bell(c);
        let mut next = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                next[i ^ j] += acc[i] * w[j];
            }
        }
        acc = next;
    }
    (2.0 * acc.iter().cloned().fold(0.0, f64::max) - 1.0).max(0.0)
}

#[test]
fn swap_matches_bell_diagonal_convolution() {
    let cases: [&[f64]; 5] = [
        &[0.98],
        &[0.98, 0.98, 0.98],
        &[0.97, 0.99, 0.975, 0.985],
        &[0.5, 0.6],
        &[0.2, 0.1, 0.9],
    ];
    for cs in cases {
        let lib = swap_concurrences(cs.iter().map(|&c| conc(c))).unwrap().value();
        assert!((lib - swap_oracle(cs)).abs() < 1e-12, "{cs:?}: {lib} vs {}", swap_oracle(cs));
    }
}

/// First-order deficit of the sequential pump: each step maps deficits
/// `(e1, e2)` to `(2/9)(e1 + e2)`.
fn fold_deficit(lengths: &[u32]) -> f64 {
    lengths[1..]
        .iter()
        .fold(f64::from(lengths[0]), |acc, &l| 2.0 / 9.0 * (acc + f64::from(l)))
}

#[test]
fn sequential_pump_first_order_law() {
    let eps = 1e-6;
    for lengths in [&[1u32, 2, 2][..], &[3, 5, 5], &[2, 4, 8], &[7, 1], &[2, 3, 5, 1]] {
        let paths: Vec<Concurrence> = lengths.iter().map(|&l| conc(1.0 - f64::from(l) * eps)).collect();
        let deficit = (1.0 - sequential_pump(&paths).unwrap().value()) / eps;
        assert!((deficit - fold_deficit(lengths)).abs() < 1e-3, "{lengths:?}: {deficit}");
    }
}

#[test]
fn closed_form_first_order_differs_from_fold() {
    // The closed form's leading deficit is l2 / 3, the fold's is
    // (4/81)(l0 + l1) + (2/9) l2; they coincide only on a measure-zero set.
    let eps = 1e-6;
    for (a, b, z) in [(1, 2, 2), (3, 5, 5), (2, 4, 8)] {
        let closed = (1.0 - c_k3(a, b, z, conc(1.0 - eps)).unwrap().value()) / eps;
        assert!((closed - f64::from(z) / 3.0).abs() < 1e-3);
        assert!((closed - fold_deficit(&[a, b, z])).abs() > 0.01);
    }
}

#[test]
fn closed_form_parts_example() {
    let (n, d) = c_k3_parts(1, 2, 2, 0.98);
    // Direct expansion at eps = 0.02 with f1 = 17, f2 = 38, f3 = 36, f4 = 4.
    let e: f64 = 0.02;
    let n_ref = 1.0 - 17.0 * e / 6.0 + 38.0 * e * e / 18.0 - 7.0 * 4.0 * e.powi(3) / 54.0;
    let d_ref = 1.0 - 13.0 * e / 6.0 + 36.0 * e * e / 18.0 - 4.0 * 4.0 * e.powi(3) / 27.0;
    assert!((n - n_ref).abs() < 1e-15 && (d - d_ref).abs() < 1e-15);
    assert!((n / d - 0.986_121_331_891_661_5).abs() < 1e-12);
}

#[test]
fn pump_of_perfect_pair_is_perfect() {
    assert_eq!(pump_concurrences(Concurrence::ONE, Concurrence::ONE).value(), 1.0);
}

/// Brute-force edge-disjoint path count via unit-capacity max flow.
fn max_flow(g: &NetworkGraph, s: NodeId, d: NodeId) -> usize {
    let n = g.node_count();
    let mut cap = vec![vec![0i32; n]; n];
    for e in g.edges() {
        cap[e.u.index()][e.v.index()] += 1;
        cap[e.v.index()][e.u.index()] += 1;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s.index()] = s.index();
        let mut queue = std::collections::VecDeque::from([s.index()]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if cap[u][v] > 0 && prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[d.index()] == usize::MAX {
            return flow;
        }
        let mut v = d.index();
        while v != s.index() {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

#[test]
fn greedy_paths_never_exceed_max_flow() {
    let g = NetworkGraph::from_pairs(
        TopologyKind::Rn,
        6,
        vec![(0, 1), (1, 5), (0, 2), (2, 3), (3, 5), (0, 4), (4, 3), (1, 2)],
    )
    .unwrap();
    let ps = edge_disjoint_paths(&g, NodeId(0), NodeId(5), usize::MAX);
    assert!(ps.is_edge_disjoint());
    assert!(ps.len() <= max_flow(&g, NodeId(0), NodeId(5)));
    assert_eq!(ps.lengths()[0], 2);
}
