use mepnet_core::analytic::{avg_spf, avg_spl, c_k3, c_k3_not_symmetric_check, lattice_classes};
use mepnet_core::strategy::order_paths;
use mepnet_core::{
    asymptotic_combined, assign_edge_concurrence, build_barabasi_albert, build_lattice, build_random,
    concurrence_from_noise, edge_disjoint_paths, noise_from_concurrence, pump_step, read_edge_list,
    run_mep, sequential_pump, shortest_path_length, swap_path, write_edge_list, Concurrence,
    EdgeDistribution, NodeId, NoiseParam, Strategy, TopologyKind,
};
use proptest::prelude::*;

const LATTICES: [TopologyKind; 3] = [TopologyKind::Tln, TopologyKind::Sln, TopologyKind::Hln];

fn conc(v: f64) -> Concurrence {
    Concurrence::new(v).unwrap()
}

fn noise(v: f64) -> NoiseParam {
    NoiseParam::new(v).unwrap()
}

fn lattice() -> impl proptest::strategy::Strategy<Value = TopologyKind> {
    prop::sample::select(LATTICES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn concurrence_round_trip(c in 1e-9..=1.0f64) {
        let back = concurrence_from_noise(noise_from_concurrence(conc(c))).value();
        prop_assert!((back - c).abs() < 1e-12);
    }

    #[test]
    fn pump_symmetric_exactly(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        prop_assert_eq!(pump_step(noise(a), noise(b)), pump_step(noise(b), noise(a)));
    }

    #[test]
    fn swap_order_invariant_and_monotone(
        qs in prop::collection::vec(0.0..=2.0 / 3.0f64, 1..8),
        i in any::<prop::sample::Index>(),
        bump in 0.0..=0.1f64,
    ) {
        let ps: Vec<NoiseParam> = qs.iter().map(|&q| noise(q)).collect();
        let base = swap_path(&ps).unwrap().value();
        let mut rev = ps.clone();
        rev.reverse();
        prop_assert!((swap_path(&rev).unwrap().value() - base).abs() < 1e-12);
        let mut worse = qs.clone();
        let j = i.index(worse.len());
        worse[j] = (worse[j] + bump).min(1.0);
        let worse: Vec<NoiseParam> = worse.iter().map(|&q| noise(q)).collect();
        prop_assert!(swap_path(&worse).unwrap().value() <= base + 1e-12);
    }

    #[test]
    fn single_path_sequential_pump_is_identity(c in 0.0..=1.0f64) {
        prop_assert_eq!(sequential_pump(&[conc(c)]).unwrap(), conc(c));
    }

    #[test]
    fn asymptotic_single_path(l in 1u32..50, delta in 0.0..=0.02f64) {
        let v = asymptotic_combined(1, l, delta).unwrap().value();
        prop_assert_eq!(v, (1.0 - f64::from(l) * delta).max(0.0));
    }

    #[test]
    fn c_k3_bounded_and_symmetric_on_equal_lengths(l in 1u32..12, c in 0.01..=1.0f64, m in 1u32..12, n in 1u32..12) {
        let v = c_k3(l, m, n, conc(c)).unwrap().value();
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!(!c_k3_not_symmetric_check(l, l, l, conc(c)).unwrap());
    }

    #[test]
    fn lattice_spl_dominates(t in lattice(), l0 in 1u32..=10, c in 0.97..=0.999f64) {
        prop_assert!(avg_spl(t, l0, conc(c)).unwrap().value() >= avg_spf(t, l0, conc(c)).unwrap().value());
    }

    #[test]
    fn lattice_weights_sum_to_one(t in lattice(), l0 in 1u32..=40) {
        let total: f64 = lattice_classes(t, l0).unwrap().iter().map(|k| k.weight).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_graph_paths_are_disjoint_and_sorted(seed in any::<u64>(), s in 0u32..300, d in 0u32..300, k in 1usize..8) {
        prop_assume!(s != d);
        let g = build_random(300, 1200, seed).unwrap();
        let ps = edge_disjoint_paths(&g, NodeId(s), NodeId(d), k);
        prop_assert!(ps.is_edge_disjoint());
        prop_assert!(ps.len() <= k);
        let lengths = ps.lengths();
        prop_assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
        if let Some(&first) = lengths.first() {
            prop_assert_eq!(first, shortest_path_length(&g, NodeId(s), NodeId(d)).unwrap());
        }
        for p in &ps.paths {
            prop_assert_eq!(p.nodes().first(), Some(&NodeId(s)));
            prop_assert_eq!(p.nodes().last(), Some(&NodeId(d)));
            for (w, &e) in p.nodes().windows(2).zip(p.edges()) {
                prop_assert_eq!(g.edge_between(w[0], w[1]), Some(e));
            }
        }
    }

    #[test]
    fn strategies_respect_cap_and_baseline(seed in any::<u64>(), k in 1usize..6) {
        let g = assign_edge_concurrence(
            build_barabasi_albert(400, 4, seed).unwrap(),
            &EdgeDistribution::from_bounds(0.99, 0.98, 0.97).unwrap(),
            seed,
        ).unwrap();
        let ps = edge_disjoint_paths(&g, NodeId(0), NodeId(399), usize::MAX);
        let base = run_mep(&ps, &Strategy::Baseline, k).unwrap();
        prop_assert_eq!(base.final_concurrence, ps.paths[0].concurrence());
        for s in [Strategy::Spf, Strategy::Spl] {
            let out = run_mep(&ps, &s, k).unwrap();
            prop_assert_eq!(out.paths_used, k.min(ps.len()));
            prop_assert_eq!(out.baseline_concurrence, base.final_concurrence);
        }
        let mut spf = order_paths(&ps, &Strategy::Spf, k).unwrap();
        let spl = order_paths(&ps, &Strategy::Spl, k).unwrap();
        let lengths: Vec<usize> = spf.iter().map(|&i| ps.paths[i].length()).collect();
        if lengths.windows(2).all(|w| w[0] < w[1]) {
            spf.reverse();
            prop_assert_eq!(spf, spl);
        }
    }

    #[test]
    fn edge_assignment_bounds_and_serialization(seed in any::<u64>(), t in prop::sample::select(TopologyKind::ALL.to_vec())) {
        let g = match t {
            TopologyKind::Rn => build_random(200, 600, seed).unwrap(),
            TopologyKind::Ban => build_barabasi_albert(200, 3, seed).unwrap(),
            lattice => build_lattice(lattice, 12, 12).unwrap(),
        };
        let dist = EdgeDistribution::from_bounds(0.99, 0.98, 0.97).unwrap();
        let g = assign_edge_concurrence(g, &dist, seed).unwrap();
        prop_assert!(g.edges().iter().all(|e| (0.97..=0.99).contains(&e.concurrence.value())));
        if let Some(full) = t.lattice_degree() {
            for v in g.nodes().filter(|&v| g.is_interior(v, 1)) {
                prop_assert_eq!(g.degree(v), full);
            }
        }
        let mut a = Vec::new();
        write_edge_list(&g, &mut a).unwrap();
        let again = assign_edge_concurrence(g.clone(), &dist, seed).unwrap();
        let mut b = Vec::new();
        write_edge_list(&again, &mut b).unwrap();
        prop_assert_eq!(&a, &b);
        let back = read_edge_list(a.as_slice()).unwrap();
        prop_assert_eq!(back.edge_count(), g.edge_count());
    }
}

#[test]
fn homogeneous_assignment_has_zero_variance() {
    let g = build_lattice(TopologyKind::Sln, 10, 10).unwrap();
    let g = assign_edge_concurrence(g, &EdgeDistribution::homogeneous(0.02).unwrap(), 3).unwrap();
    assert!(g.edges().iter().all(|e| e.concurrence.value() == 0.98));
}

/// Near c = 1 with three paths, shortest-last beats shortest-first: the final
/// step weighs the last path most.
#[test]
fn spl_beats_spf_near_unit_concurrence() {
    let eps = 1e-5;
    for lengths in [[1, 2, 2], [3, 5, 5], [2, 4, 8], [4, 4, 6]] {
        let paths = |ls: [u32; 3]| -> Vec<Concurrence> { ls.iter().map(|&l| conc(1.0 - f64::from(l) * eps)).collect() };
        let spf = sequential_pump(&paths(lengths)).unwrap().value();
        let mut rev = lengths;
        rev.reverse();
        let spl = sequential_pump(&paths(rev)).unwrap().value();
        assert!(spl >= spf, "{lengths:?}");
    }
}
