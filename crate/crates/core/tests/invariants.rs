use std::collections::{BTreeMap, BTreeSet};

use bcsquare::bctree::{bc_isomorphic, bc_tree};
use bcsquare::construct::{validate_cycle, validate_path};
use bcsquare::labelling::check_conditions;
use bcsquare::oracle::{has_ham_cycle, ham_path};
use bcsquare::{
    algorithm1, algorithm2, construct_ham_cycle, construct_ham_path, decompose, Edge, Graph, HcOutcome, VerdictClass,
    Vertex,
};
use proptest::prelude::*;

/// A random spanning tree on `0..n` plus a few extra edges.
fn connected(max_n: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(move |n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
        (parents, extra).prop_map(|(ps, ex)| {
            let mut g = Graph::new();
            for (v, p) in ps.into_iter().enumerate() {
                g.add_edge(p as Vertex, v as Vertex + 1).unwrap();
            }
            for (a, b) in ex {
                if a != b {
                    g.add_edge(a as Vertex, b as Vertex).unwrap();
                }
            }
            g
        })
    })
}

fn permuted(g: &Graph, keys: &[u32]) -> Graph {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut order: Vec<usize> = (0..vs.len()).collect();
    order.sort_by_key(|&i| (keys[i % keys.len()], i));
    let map: BTreeMap<Vertex, Vertex> = order.iter().enumerate().map(|(new, &old)| (vs[old], new as Vertex + 100)).collect();
    g.relabel(&map)
}

fn components_without(g: &Graph, v: Vertex) -> usize {
    let keep: BTreeSet<Vertex> = g.vertices().filter(|&w| w != v).collect();
    g.induced_subgraph(&keep).components().len()
}

/// Edges `e`, `f` lie in different blocks exactly when deleting some
/// vertex separates what remains of them.
fn separated(g: &Graph, e: Edge, f: Edge) -> bool {
    g.vertices().any(|v| {
        let keep: BTreeSet<Vertex> = g.vertices().filter(|&w| w != v).collect();
        let h = g.induced_subgraph(&keep);
        let a = [e.0, e.1].into_iter().find(|&x| x != v).unwrap();
        let b = [f.0, f.1].into_iter().find(|&x| x != v).unwrap();
        !h.reachable_from(a).contains(&b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_matches_distances(g in connected(10, 6)) {
        let sq = g.square();
        for v in g.vertices() {
            let dist = g.distances_from(v);
            for w in g.vertices().filter(|&w| w != v) {
                prop_assert_eq!(sq.has_edge(v, w), dist[&w] <= 2);
            }
        }
        prop_assert!(g.is_subgraph_of(&sq));
    }

    #[test]
    fn subtraction_identities(g in connected(9, 4)) {
        prop_assert!(g.subtract(&g).unwrap().is_empty());
        prop_assert_eq!(g.subtract(&Graph::new()).unwrap(), g.clone());
        let d = decompose(&g).unwrap();
        for b in &d.blocks {
            let rest = g.subtract(&b.graph()).unwrap();
            prop_assert!(rest.edges().all(|e| !b.edges.contains(&e)));
            prop_assert_eq!(rest.edge_count() + b.edges.len(), g.edge_count());
        }
    }

    #[test]
    fn edge_list_round_trip(g in connected(12, 8)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g.clone());
    }

    #[test]
    fn decomposition_matches_brute_force(g in connected(9, 5)) {
        let d = decompose(&g).unwrap();
        let cuts: BTreeSet<Vertex> = g.vertices().filter(|&v| components_without(&g, v) > 1).collect();
        prop_assert_eq!(&d.cutvertices, &cuts);

        let owner: BTreeMap<Edge, usize> =
            d.blocks.iter().enumerate().flat_map(|(i, b)| b.edges.iter().map(move |&e| (e, i))).collect();
        prop_assert_eq!(owner.len(), g.edge_count());
        let edges: Vec<Edge> = g.edges().collect();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                prop_assert_eq!(owner[&e] != owner[&f], separated(&g, e, f));
            }
        }
        for c in &cuts {
            let bridges = g.neighbors(*c).filter(|&w| {
                let mut h = g.clone();
                h.remove_edge(*c, w);
                !h.is_connected() && g.degree(*c) > 1 && g.degree(w) > 1
            }).count();
            prop_assert_eq!(d.bn(*c), bridges);
        }
        prop_assert!(bc_tree(&d).is_tree());
    }

    #[test]
    fn structure_survives_relabelling(g in connected(9, 4), keys in proptest::collection::vec(any::<u32>(), 9)) {
        let h = permuted(&g, &keys);
        prop_assert!(bc_isomorphic(&bc_tree(&decompose(&g).unwrap()), &bc_tree(&decompose(&h).unwrap())));
        prop_assert_eq!(algorithm1(&g).unwrap().class(), algorithm1(&h).unwrap().class());
        let hc = |x: &Graph| std::mem::discriminant(&algorithm2(x).unwrap().outcome);
        prop_assert_eq!(hc(&g), hc(&h));
    }

    #[test]
    fn hamiltonian_verdicts_hold(g in connected(9, 3)) {
        let v = algorithm1(&g).unwrap();
        let sq = g.square();
        match v.class() {
            VerdictClass::Hamiltonian => {
                let l = v.labelling().cloned().unwrap_or_default();
                if v.labelling().is_some() {
                    prop_assert!(check_conditions(&g, &l).unwrap().is_empty());
                }
                let w = construct_ham_cycle(&g, &l).unwrap();
                prop_assert_eq!(validate_cycle(&g, &w.vertices), Ok(()));
            }
            VerdictClass::NotHamiltonian => prop_assert!(!has_ham_cycle(&sq).unwrap()),
            VerdictClass::Risky(_) => {}
        }
    }

    #[test]
    fn connected_verdicts_hold(g in connected(8, 3)) {
        match algorithm2(&g).unwrap().outcome {
            HcOutcome::HamConnected => {
                let vs: Vec<Vertex> = g.vertices().collect();
                for (i, &x) in vs.iter().enumerate() {
                    for &y in &vs[i + 1..] {
                        let w = construct_ham_path(&g, x, y).unwrap();
                        prop_assert_eq!(validate_path(&g, &w.vertices, x, y), Ok(()));
                    }
                }
            }
            HcOutcome::NotHamConnected { bridge } => {
                prop_assert!(ham_path(&g.square(), bridge.0, bridge.1).unwrap().is_none());
            }
            HcOutcome::StructurallyRisky { .. } => {}
        }
    }
}
