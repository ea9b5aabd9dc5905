use std::collections::BTreeSet;

use ecaemu_core::hierarchy::representative;
use ecaemu_core::*;
use proptest::prelude::*;

fn pairs(g: &HierarchyGraph) -> BTreeSet<(EcaRule, EcaRule)> {
    g.edges().map(|(&key, _)| key).collect()
}

#[test]
fn edges_grow_with_kmax_and_kmin_never_increases() {
    let small = compute_hierarchy(2, None).unwrap();
    let large = compute_hierarchy(3, None).unwrap();
    assert!(pairs(&small).is_subset(&pairs(&large)));
    for (key, e) in small.edges() {
        let f = large.edge(key.0, key.1).unwrap();
        assert!(f.kmin() <= e.kmin());
        assert_eq!(f.ks & 0b110, e.ks);
    }
}

#[test]
fn representatives_only_graph_matches_projection_of_full_graph() {
    let all: Vec<EcaRule> = EcaRule::all().collect();
    for kmax in 1..=3 {
        let reps = compute_hierarchy(kmax, None).unwrap();
        let full = compute_hierarchy(kmax, Some(&all)).unwrap();
        assert_eq!(reps.nodes(), full.nodes());
        let a: Vec<_> = reps.edges().map(|(k, e)| (*k, e.ks)).collect();
        let b: Vec<_> = full.edges().map(|(k, e)| (*k, e.ks)).collect();
        assert_eq!(a, b, "kmax {kmax}");
    }
}

#[test]
fn every_edge_witness_reverifies() {
    let g = compute_hierarchy(3, None).unwrap();
    for ((a, b), e) in g.edges() {
        assert_eq!((e.witness.emulator, e.witness.emulated), (*a, *b));
        assert_eq!(e.witness.k(), e.kmin());
        assert!(verify_witness(&e.witness, 30, 3, 50, 11).unwrap(), "{}", e.witness);
    }
}

#[test]
fn dual_rules_emulate_the_same_representatives() {
    for g in EcaRule::all().filter(|g| representative(*g) == *g && g.dual() != *g) {
        for k in 1..=4 {
            let of = |r: EcaRule| -> BTreeSet<EcaRule> {
                emulated_rules(r, k).unwrap().into_iter().map(|(f, _)| representative(f)).collect()
            };
            assert_eq!(of(g), of(g.dual()), "rule {g} k {k}");
        }
    }
}

fn reachability(g: &HierarchyGraph) -> BTreeSet<(EcaRule, EcaRule)> {
    let mut out = BTreeSet::new();
    for &a in g.nodes() {
        for &b in g.nodes() {
            if a != b && g.reaches(a, b) {
                out.insert((a, b));
            }
        }
    }
    out
}

fn random_graph() -> impl Strategy<Value = HierarchyGraph> {
    proptest::collection::vec((0u8..12, 0u8..12, 1usize..5), 0..40).prop_map(|raw| {
        let nodes: Vec<EcaRule> = (0..12).map(EcaRule::new).collect();
        let mut seen = BTreeSet::new();
        let edges: Vec<Edge> = raw
            .into_iter()
            .filter(|&(a, b, _)| seen.insert((a, b)))
            .map(|(a, b, k)| Edge {
                ks: 1 << k,
                witness: EmulationWitness::new(EcaRule::new(b), EcaRule::new(a), Encoding::identity()),
            })
            .collect();
        HierarchyGraph::from_parts(4, nodes, edges)
    })
}

proptest! {
    #[test]
    fn reduction_preserves_reachability_and_loops(g in random_graph()) {
        let red = g.transitive_reduction();
        prop_assert_eq!(red.nodes(), g.nodes());
        prop_assert_eq!(reachability(&red), reachability(&g));
        let loops = |h: &HierarchyGraph| h.edges().filter(|(k, _)| k.0 == k.1).count();
        prop_assert_eq!(loops(&red), loops(&g));
        prop_assert!(pairs(&red).is_subset(&pairs(&g)));
        // Idempotent.
        prop_assert_eq!(pairs(&red.transitive_reduction()), pairs(&red));
    }
}
