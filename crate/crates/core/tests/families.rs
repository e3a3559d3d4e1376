use bcsquare::bctree::{bc_isomorphic, bc_tree};
use bcsquare::enumerate::glued_block_graphs;
use bcsquare::oracle::{has_ham_cycle, is_ham_connected};
use bcsquare::{
    algorithm1, algorithm2, construct_ham_cycle, counterexample_for, decompose, Graph, HcOutcome, Target,
    VerdictClass,
};

fn same_bc(a: &Graph, b: &Graph) -> bool {
    bc_isomorphic(&bc_tree(&decompose(a).unwrap()), &bc_tree(&decompose(b).unwrap()))
}

fn edges(g: &Graph) -> String {
    g.to_edge_list().replace('\n', " ")
}

#[test]
fn glued_graphs_up_to_ten_vertices() {
    let gs: Vec<Graph> = glued_block_graphs(10, 5).into_iter().filter(|g| g.vertex_count() >= 3).collect();
    let mut risky = 0;
    for g in &gs {
        let v = algorithm1(g).unwrap();
        let ham = has_ham_cycle(&g.square()).unwrap();
        match v.class() {
            VerdictClass::Hamiltonian => {
                assert!(ham, "{}", edges(g));
                construct_ham_cycle(g, &v.labelling().cloned().unwrap_or_default()).unwrap();
            }
            VerdictClass::NotHamiltonian => assert!(!ham, "{}", edges(g)),
            VerdictClass::Risky(c) => {
                risky += 1;
                let target = if c == 5 { Target::BlockSum } else { Target::VertexSum };
                let cx = counterexample_for(g, target).unwrap();
                assert!(same_bc(g, &cx.graph));
                assert!(!has_ham_cycle(&cx.graph.square()).unwrap(), "{}", edges(g));
            }
        }

        let hc = is_ham_connected(&g.square()).unwrap();
        match algorithm2(g).unwrap().outcome {
            HcOutcome::HamConnected => assert!(hc, "{}", edges(g)),
            HcOutcome::NotHamConnected { .. } => assert!(!hc, "{}", edges(g)),
            HcOutcome::StructurallyRisky { .. } => {
                let cx = counterexample_for(g, Target::HamConnected).unwrap();
                assert!(same_bc(g, &cx.graph));
                assert!(!is_ham_connected(&cx.graph.square()).unwrap(), "{}", edges(g));
            }
        }
    }
    assert_eq!(gs.len(), 3712);
    assert_eq!(risky, 10);
}
