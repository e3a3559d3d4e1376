//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bcsquare::bctree::{bc_isomorphic, bc_tree};
use bcsquare::caterpillar::longest_path_in_tree;
use bcsquare::construct::{check_caterpillar_cycle, validate_path};
use bcsquare::enumerate::{biconnected_graphs, caterpillars, corpus};
use bcsquare::oracle::{find_h5_violator, has_ham_cycle, is_ham_connected};
use bcsquare::{
    algorithm1, algorithm2, caterpillar_cycle, construct_ham_cycle, construct_ham_path, decompose, Figure, Graph,
    HcOutcome, Labelling, PropertyKind, Target, VerdictClass, Vertex,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn run(f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    Outcome { ok, detail, elapsed: start.elapsed() }
}

fn show(n: usize, name: &str, o: &Outcome) -> bool {
    let tag = if o.ok { "PASS" } else { "FAIL" };
    println!("{tag} [{n}] {name}: {} ({:.2?})", o.detail, o.elapsed);
    o.ok
}

fn note(failures: &mut Vec<String>, msg: String) {
    if failures.len() < 5 {
        failures.push(msg);
    }
}

fn summary(count: usize, what: &str, bad: usize, failures: &[String]) -> (bool, String) {
    if bad == 0 {
        (true, format!("{count} {what}, 0 violations"))
    } else {
        (false, format!("{count} {what}, {bad} violations; first: {}", failures.join(" | ")))
    }
}

fn soundness(gs: &[Graph], want: VerdictClass) -> (bool, String) {
    let (mut checked, mut bad, mut failures) = (0, 0, Vec::new());
    for g in gs {
        let v = algorithm1(g).expect("corpus graphs are valid input");
        if v.class() != want {
            continue;
        }
        checked += 1;
        let ham = has_ham_cycle(&g.square()).expect("corpus fits the oracle");
        if ham != (want == VerdictClass::Hamiltonian) {
            bad += 1;
            note(&mut failures, g.to_edge_list().replace('\n', " "));
        }
    }
    summary(checked, "verdicts checked", bad, &failures)
}

fn figures() -> (bool, String) {
    let limit = Duration::from_secs(5);
    let mut bad = Vec::new();
    for f in Figure::ALL {
        let start = Instant::now();
        let skeleton = f.skeleton();
        let ok = match f.counterexample() {
            Err(e) => Err(e.to_string()),
            Ok(cx) => {
                let same = bc_isomorphic(
                    &bc_tree(&decompose(&skeleton).unwrap()),
                    &bc_tree(&decompose(&cx.graph).unwrap()),
                );
                let sq = cx.graph.square();
                let fails = match f.target() {
                    Target::HamConnected => !is_ham_connected(&sq).unwrap(),
                    _ => !has_ham_cycle(&sq).unwrap(),
                };
                match (same, fails) {
                    (true, true) => Ok(()),
                    (false, _) => Err("bc-trees differ".into()),
                    (_, false) => Err("oracle found a witness".into()),
                }
            }
        };
        let t = start.elapsed();
        match ok {
            Ok(()) if t <= limit => {}
            Ok(()) => bad.push(format!("{f:?} took {t:.2?}")),
            Err(e) => bad.push(format!("{f:?}: {e}")),
        }
    }
    if bad.is_empty() {
        (true, format!("{}/{} instances certified", Figure::ALL.len(), Figure::ALL.len()))
    } else {
        (false, bad.join(" | "))
    }
}

fn property_suites() -> (bool, String) {
    let blocks: Vec<Graph> = (3..=7).flat_map(biconnected_graphs).collect();
    let suites: [(PropertyKind, usize); 5] = [
        (PropertyKind::H(4), 4),
        (PropertyKind::F4, 4),
        (PropertyKind::StrongF3, 3),
        (PropertyKind::StrongF3Ends, 3),
        (PropertyKind::TwoBlockCycle, 3),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (kind, min) in suites {
        let gs: Vec<&Graph> = blocks.iter().filter(|g| g.vertex_count() >= min).collect();
        let failing: Vec<&&Graph> = gs
            .iter()
            .filter(|g| !bcsquare::verify_property(kind, g).map(|c| c.holds).unwrap_or(false))
            .collect();
        ok &= failing.is_empty();
        parts.push(format!("{kind:?} {}/{}", gs.len() - failing.len(), gs.len()));
    }
    let larger: Vec<&Graph> = blocks.iter().filter(|g| g.vertex_count() > 4).collect();
    match find_h5_violator(larger) {
        Ok(Some((g, t))) => parts.push(format!("H5 fails on {} vertices at {t:?}", g.vertex_count())),
        _ => {
            ok = false;
            parts.push("no H5 violator found".into());
        }
    }
    (ok, parts.join(", "))
}

fn constructors(gs: &[Graph]) -> (bool, String) {
    let (mut cycles, mut paths, mut bad, mut failures) = (0, 0, 0, Vec::new());
    for g in gs {
        let v = algorithm1(g).unwrap();
        if v.class() == VerdictClass::Hamiltonian {
            cycles += 1;
            let l = v.labelling().cloned().unwrap_or_else(Labelling::new);
            if let Err(e) = construct_ham_cycle(g, &l) {
                bad += 1;
                note(&mut failures, format!("cycle on {}: {e}", g.to_edge_list().replace('\n', " ")));
            }
        }
        if algorithm2(g).unwrap().outcome == HcOutcome::HamConnected {
            let vs: Vec<Vertex> = g.vertices().collect();
            for (i, &x) in vs.iter().enumerate() {
                for &y in &vs[i + 1..] {
                    paths += 1;
                    let r = construct_ham_path(g, x, y)
                        .map_err(|e| e.to_string())
                        .and_then(|w| validate_path(g, &w.vertices, x, y));
                    if let Err(e) = r {
                        bad += 1;
                        note(&mut failures, format!("path {x}-{y} on {}: {e}", g.to_edge_list().replace('\n', " ")));
                    }
                }
            }
        }
    }
    summary(cycles + paths, &format!("constructions ({cycles} cycles, {paths} paths)"), bad, &failures)
}

fn caterpillar_spine_cycles() -> (bool, String) {
    let (mut count, mut bad, mut failures) = (0, 0, Vec::new());
    for n in 3..=10 {
        for t in caterpillars(n) {
            count += 1;
            let r = caterpillar_cycle(&t, &longest_path_in_tree(&t))
                .map_err(|e| e.to_string())
                .and_then(|c| check_caterpillar_cycle(&t, &c));
            if let Err(e) = r {
                bad += 1;
                note(&mut failures, format!("{}: {e}", t.to_edge_list().replace('\n', " ")));
            }
        }
    }
    summary(count, "caterpillars", bad, &failures)
}

fn block_chains(gs: &[Graph]) -> (bool, String) {
    let (mut count, mut bad, mut failures) = (0, 0, Vec::new());
    for g in gs {
        let d = decompose(g).unwrap();
        let t = bc_tree(&d);
        if t.adj.iter().any(|a| a.len() > 2) {
            continue;
        }
        count += 1;
        let inner_ok = (0..d.blocks.len()).filter(|&b| !d.is_endblock(b)).all(|b| d.blocks[b].is_two_block());
        let hc = algorithm2(g).unwrap().outcome == HcOutcome::HamConnected;
        if hc != inner_ok {
            bad += 1;
            note(&mut failures, g.to_edge_list().replace('\n', " "));
        }
    }
    summary(count, "block-chains", bad, &failures)
}

fn verdict_classes(g: &Graph) -> (VerdictClass, u8) {
    let hc = match algorithm2(g).unwrap().outcome {
        HcOutcome::HamConnected => 0,
        HcOutcome::NotHamConnected { .. } => 1,
        HcOutcome::StructurallyRisky { .. } => 2,
    };
    (algorithm1(g).unwrap().class(), hc)
}

fn relabelling(gs: &[Graph]) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut count, mut bad, mut failures) = (0, 0, Vec::new());
    for g in gs {
        let base = verdict_classes(g);
        let vs: Vec<Vertex> = g.vertices().collect();
        let mut ids: Vec<Vertex> = (0..40).collect();
        for _ in 0..20 {
            count += 1;
            ids.shuffle(&mut rng);
            let map: BTreeMap<Vertex, Vertex> = vs.iter().copied().zip(ids.iter().copied()).collect();
            let got = verdict_classes(&g.relabel(&map));
            if got != base {
                bad += 1;
                note(&mut failures, format!("{:?} vs {got:?} on {}", base, g.to_edge_list().replace('\n', " ")));
            }
        }
    }
    summary(count, "relabellings", bad, &failures)
}

fn main() -> ExitCode {
    let gs = corpus();
    println!("corpus: {} graphs", gs.len());
    let mut all = true;

    let c1 = run(|| soundness(&gs, VerdictClass::Hamiltonian));
    let c1 = Outcome { ok: c1.ok && c1.elapsed <= Duration::from_secs(60), ..c1 };
    all &= show(1, "positive soundness", &c1);
    all &= show(2, "negative soundness", &run(|| soundness(&gs, VerdictClass::NotHamiltonian)));
    all &= show(3, "counterexample certification", &run(figures));
    all &= show(4, "block property suites", &run(property_suites));
    all &= show(5, "constructor validity", &run(|| constructors(&gs)));
    all &= show(6, "caterpillar cycles", &run(caterpillar_spine_cycles));
    all &= show(7, "block-chains", &run(|| block_chains(&gs)));
    all &= show(8, "relabelling invariance", &run(|| relabelling(&gs)));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
