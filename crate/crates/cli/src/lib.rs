//! Command-line front end: argument types, command execution and report
//! rendering.

pub mod report;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use bcsquare::bctree::bc_tree;
use bcsquare::oracle::{find_ham_cycle, find_ham_path, EdgeConstrainedSearch, SearchOutcome};
use bcsquare::{
    algorithm1, algorithm2, construct_ham_cycle, construct_ham_path, counterexample_for, decompose, Edge, Error,
    Graph, HamOutcome, HamVerdict, HcOutcome, Target, VerdictClass, Vertex,
};

use report::{Certificate, InputSummary, RunReport, Verdict};

#[derive(Debug, Parser)]
#[command(name = "bcsquare", version, about = "Hamiltonicity of graph squares from block-cutvertex structure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write a Graphviz rendering to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the square of the graph as an edge list.
    Square { file: PathBuf },
    /// Blocks, cutvertices and the counters bn, k and cvn.
    Decompose { file: PathBuf },
    /// Decide whether the square is hamiltonian.
    CheckHam { file: PathBuf },
    /// Decide whether the square is hamiltonian connected.
    CheckHc { file: PathBuf },
    /// Build a hamiltonian cycle of the square.
    ConstructCycle { file: PathBuf },
    /// Build a hamiltonian path of the square between two vertices.
    ConstructPath {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
        pair: Vec<Vertex>,
    },
    /// Build a graph with the same block-cutvertex tree whose square fails.
    Counterexample {
        file: PathBuf,
        #[arg(long, value_enum)]
        condition: Condition,
    },
    /// Exhaustive search on the square.
    Oracle {
        #[arg(value_enum)]
        mode: OracleMode,
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<Vertex>>,
        /// Give up after this many search nodes per search.
        #[arg(long, value_name = "N")]
        node_budget: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    #[value(name = "4")]
    Four,
    #[value(name = "5")]
    Five,
    #[value(name = "6")]
    Six,
    #[value(name = "hc")]
    Hc,
}

impl Condition {
    fn target(self) -> Target {
        match self {
            Condition::Four => Target::BridgeCount,
            Condition::Five => Target::BlockSum,
            Condition::Six => Target::VertexSum,
            Condition::Hc => Target::HamConnected,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Cycle,
    Path,
    Hc,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Input(_) => 65,
            Failure::Internal(_) => 70,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub struct Output {
    pub report: RunReport,
    pub text: String,
    pub dot: Option<String>,
}

pub fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let g = Graph::parse(&text)?;
    if g.is_empty() {
        return Err(Failure::Input(format!("{}: no vertices", path.display())));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    Ok(g)
}

fn ham_verdict(v: &HamVerdict) -> Verdict {
    match v.class() {
        VerdictClass::Hamiltonian => Verdict::Positive,
        VerdictClass::NotHamiltonian => Verdict::Negative,
        VerdictClass::Risky(_) => Verdict::Risky,
    }
}

fn hc_verdict(o: &HcOutcome) -> Verdict {
    match o {
        HcOutcome::HamConnected => Verdict::Positive,
        HcOutcome::NotHamConnected { .. } => Verdict::Negative,
        HcOutcome::StructurallyRisky { .. } => Verdict::Risky,
    }
}

fn seq(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn ham_text(v: &HamVerdict) -> String {
    let mut out = format!("{}\n", v.summary());
    let labelling = match &v.outcome {
        HamOutcome::Hamiltonian { labelling, .. } => labelling.as_ref(),
        HamOutcome::StructurallyRisky { partial, .. } => Some(partial),
        HamOutcome::NotHamiltonian { .. } => None,
    };
    if let Some(l) = labelling.filter(|l| !l.m.is_empty()) {
        out.push_str("block  cutvertex  m\n");
        for (b, row) in &l.m {
            for (i, m) in row {
                let _ = writeln!(out, "{b:>5}  {i:>9}  {m}");
            }
        }
    }
    for s in &v.trace {
        let vals: Vec<String> = s.values.iter().map(|(i, m)| format!("m{i}={m}")).collect();
        let _ = writeln!(out, "case {}: block {} {}", format!("{:?}", s.case).to_lowercase(), s.block, vals.join(" "));
    }
    out
}

/// Runs one command. The caller prints the text or JSON and sets the exit code.
pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let start = Instant::now();
    let (name, file) = match &cli.command {
        Command::Square { file } => ("square", file),
        Command::Decompose { file } => ("decompose", file),
        Command::CheckHam { file } => ("check-ham", file),
        Command::CheckHc { file } => ("check-hc", file),
        Command::ConstructCycle { file } => ("construct-cycle", file),
        Command::ConstructPath { file, .. } => ("construct-path", file),
        Command::Counterexample { file, .. } => ("counterexample", file),
        Command::Oracle { file, .. } => ("oracle", file),
    };
    let g = read_graph(file)?;
    let d = decompose(&g)?;
    let mut r = RunReport {
        command: name.into(),
        input: InputSummary::of(&g, &d),
        verdict: Verdict::Positive,
        summary: String::new(),
        ham: None,
        hc: None,
        decomposition: None,
        witness: None,
        graph: None,
        certificate: None,
        elapsed_ms: 0.0,
    };
    let mut text = String::new();
    let mut dot = None;

    match &cli.command {
        Command::Square { .. } => {
            let sq = g.square();
            r.summary = format!("square has {} vertices and {} edges", sq.vertex_count(), sq.edge_count());
            text = sq.to_edge_list();
            let original: BTreeSet<Edge> = g.edges().collect();
            dot = Some(sq.to_dot(Some(&original)));
            r.graph = Some(sq);
        }
        Command::Decompose { .. } => {
            r.summary = format!("{} blocks, {} cutvertices", d.blocks.len(), d.cutvertices.len());
            let _ = writeln!(text, "{}", r.summary);
            for (b, block) in d.blocks.iter().enumerate() {
                let kind = if block.is_two_block() { "2-block" } else { "bridge" };
                let vs: Vec<Vertex> = block.vertices.iter().copied().collect();
                let _ = writeln!(text, "block {b} ({kind}, cvn {}): {}", d.cvn[b], seq(&vs));
            }
            if !d.cutvertices.is_empty() {
                text.push_str("cutvertex  bn  k\n");
                for &c in &d.cutvertices {
                    let _ = writeln!(text, "{c:>9}  {:>2}  {}", d.bn(c), d.k(c));
                }
            }
            let t = bc_tree(&d);
            let _ = writeln!(text, "bc-tree: {}", t.canonical_form());
            dot = Some(t.to_dot());
            r.decomposition = Some(d.clone());
        }
        Command::CheckHam { .. } => {
            let v = algorithm1(&g)?;
            r.verdict = ham_verdict(&v);
            r.summary = v.summary();
            text = ham_text(&v);
            dot = Some(bc_tree(&d).to_dot());
            r.ham = Some(v);
        }
        Command::CheckHc { .. } => {
            let v = algorithm2(&g)?;
            r.verdict = hc_verdict(&v.outcome);
            r.summary = v.summary();
            let _ = writeln!(text, "{}", r.summary);
            let _ = writeln!(text, "peeled blocks: {}", seq(&v.peel_trace.iter().map(|&b| b as Vertex).collect::<Vec<_>>()));
            dot = Some(bc_tree(&d).to_dot());
            r.hc = Some(v);
        }
        Command::ConstructCycle { .. } => {
            let v = algorithm1(&g)?;
            r.verdict = ham_verdict(&v);
            r.summary = v.summary();
            let _ = writeln!(text, "{}", r.summary);
            if r.verdict == Verdict::Positive {
                let w = construct_ham_cycle(&g, &v.labelling().cloned().unwrap_or_default())?;
                let _ = writeln!(text, "cycle: {}", seq(&w.vertices));
                let edges: BTreeSet<Edge> = w.edges().into_iter().collect();
                dot = Some(g.square().to_dot(Some(&edges)));
                r.witness = Some(w);
            }
            r.ham = Some(v);
        }
        Command::ConstructPath { pair, .. } => {
            let (x, y) = endpoints(&g, pair)?;
            let v = algorithm2(&g)?;
            r.verdict = hc_verdict(&v.outcome);
            r.summary = v.summary();
            let _ = writeln!(text, "{}", r.summary);
            if r.verdict == Verdict::Positive {
                let w = construct_ham_path(&g, x, y)?;
                let _ = writeln!(text, "path: {}", seq(&w.vertices));
                let edges: BTreeSet<Edge> = w.edges().into_iter().collect();
                dot = Some(g.square().to_dot(Some(&edges)));
                r.witness = Some(w);
            }
            r.hc = Some(v);
        }
        Command::Counterexample { condition, .. } => match counterexample_for(&g, condition.target()) {
            Err(Error::RecipeMismatch(m)) => {
                r.verdict = Verdict::Negative;
                r.summary = format!("no counterexample for this condition: {m}");
                let _ = writeln!(text, "{}", r.summary);
            }
            Err(e) => return Err(e.into()),
            Ok(cx) => {
                let original = bc_tree(&d).canonical_form();
                let produced = bc_tree(&decompose(&cx.graph)?).canonical_form();
                let cert = Certificate { isomorphic: original == produced, original, counterexample: produced };
                r.summary = format!(
                    "counterexample with {} vertices; block-cutvertex trees {}",
                    cx.graph.vertex_count(),
                    if cert.isomorphic { "isomorphic" } else { "differ" }
                );
                let _ = writeln!(text, "# {}", r.summary);
                let _ = writeln!(text, "# original bc-tree: {}", cert.original);
                let _ = writeln!(text, "# counterexample bc-tree: {}", cert.counterexample);
                text.push_str(&cx.graph.to_edge_list());
                dot = Some(cx.graph.to_dot(None));
                r.certificate = Some(cert);
                r.graph = Some(cx.graph);
            }
        },
        Command::Oracle { mode, pair, node_budget, .. } => {
            let sq = g.square();
            let outcome = match (mode, pair) {
                (OracleMode::Cycle, _) => {
                    let s = EdgeConstrainedSearch::cycle(&sq, &sq).with_budget(*node_budget);
                    (find_ham_cycle(&s)?, "hamiltonian cycle".to_string())
                }
                (OracleMode::Path, Some(p)) => {
                    let (x, y) = endpoints(&g, p)?;
                    let s = EdgeConstrainedSearch::path(&sq, &sq, x, y).with_budget(*node_budget);
                    (find_ham_path(&s)?, format!("hamiltonian {x}-{y} path"))
                }
                (OracleMode::Path, None) => return Err(Failure::Usage("oracle path needs --pair X Y".into())),
                (OracleMode::Hc, _) => oracle_hc(&sq, *node_budget)?,
            };
            r.verdict = match &outcome.0 {
                SearchOutcome::Found(_) => Verdict::Positive,
                SearchOutcome::Absent => Verdict::Negative,
                SearchOutcome::BudgetExceeded(_) => Verdict::Undetermined,
            };
            r.summary = match r.verdict {
                Verdict::Positive => format!("square has a {}", outcome.1),
                Verdict::Negative => format!("square has no {}", outcome.1),
                _ => format!("node budget exhausted while searching for a {}", outcome.1),
            };
            let _ = writeln!(text, "{}", r.summary);
            if let SearchOutcome::Found(w) = outcome.0 {
                let _ = writeln!(text, "witness: {}", seq(&w.vertices));
                let edges: BTreeSet<Edge> = w.edges().into_iter().collect();
                dot = Some(sq.to_dot(Some(&edges)));
                r.witness = Some(w);
            }
        }
    }
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(Output { report: r, text, dot })
}

fn endpoints(g: &Graph, pair: &[Vertex]) -> Result<(Vertex, Vertex), Failure> {
    let (x, y) = (pair[0], pair[1]);
    for v in [x, y] {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v).into());
        }
    }
    if x == y {
        return Err(Error::SameEndpoints(x).into());
    }
    Ok((x, y))
}

/// Every pair in turn; the first pair without a path decides. For a
/// positive answer the last path found is kept as the witness.
fn oracle_hc(sq: &Graph, budget: Option<u64>) -> Result<(SearchOutcome, String), Failure> {
    let vs: Vec<Vertex> = sq.vertices().collect();
    if vs.len() < 2 {
        return Err(Error::TooSmall { needed: 2, found: vs.len() }.into());
    }
    let mut last = None;
    let mut undecided = None;
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            match find_ham_path(&EdgeConstrainedSearch::path(sq, sq, x, y).with_budget(budget))? {
                SearchOutcome::Absent => {
                    return Ok((SearchOutcome::Absent, format!("hamiltonian {x}-{y} path")));
                }
                SearchOutcome::BudgetExceeded(b) => undecided = Some(b),
                found => last = Some(found),
            }
        }
    }
    let what = "hamiltonian path between every pair".to_string();
    if let Some(b) = undecided {
        Ok((SearchOutcome::BudgetExceeded(b), what))
    } else {
        Ok((last.expect("at least one pair"), what))
    }
}
