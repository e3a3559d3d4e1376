//! Labellings `m_i(B)` of (cutvertex, 2-block) pairs, the six conditions on
//! them, and the greedy labelling procedure that decides hamiltonicity of
//! the square.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caterpillar::compute_p0;
use crate::counterexample::{recipe_for_cond5, recipe_for_cond6, Cond5Case, SubstitutionRecipe};
use crate::decomposition::{decompose, BlockDecomposition, BlockId};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Values per 2-block, then per cutvertex. Missing entries read as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    pub m: BTreeMap<BlockId, BTreeMap<Vertex, u8>>,
}

impl Labelling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: Vertex, b: BlockId) -> u8 {
        self.m.get(&b).and_then(|row| row.get(&i)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: Vertex, b: BlockId, value: u8) {
        self.m.entry(b).or_default().insert(i, value);
    }

    pub fn block_sum(&self, b: BlockId) -> usize {
        self.m.get(&b).map_or(0, |row| row.values().map(|&v| v as usize).sum())
    }

    pub fn vertex_sum(&self, i: Vertex) -> usize {
        self.m.values().filter_map(|row| row.get(&i)).map(|&v| v as usize).sum()
    }

    /// The labelling with every entry of a 2-block at its cutvertices set
    /// to the given values, zero elsewhere.
    pub fn from_entries(entries: impl IntoIterator<Item = (Vertex, BlockId, u8)>) -> Self {
        let mut l = Self::new();
        for (i, b, v) in entries {
            l.set(i, b, v);
        }
        l
    }
}

/// Condition 6 at one cutvertex.
fn cond6_holds(d: &BlockDecomposition, l: &Labelling, i: Vertex) -> bool {
    l.vertex_sum(i) + 2 >= 2 * d.k(i) + d.bn(i)
}

/// The violated condition numbers (1 to 6), ascending.
pub fn check_conditions(g: &Graph, l: &Labelling) -> Result<Vec<u8>> {
    let d = decompose(g)?;
    check_conditions_with(&d, l)
}

pub fn check_conditions_with(d: &BlockDecomposition, l: &Labelling) -> Result<Vec<u8>> {
    let two: BTreeSet<BlockId> = d.two_blocks().collect();
    for (&b, row) in &l.m {
        if !two.contains(&b) {
            return Err(Error::Precondition(format!("block {b} is not a 2-block")));
        }
        if let Some(v) = row.keys().find(|v| !d.is_cutvertex(**v)) {
            return Err(Error::Precondition(format!("vertex {v} is not a cutvertex")));
        }
    }
    let mut violated = BTreeSet::new();
    for &b in &two {
        let mut any_two = false;
        for &i in &d.cutvertices {
            let m = l.get(i, b);
            let inside = d.blocks[b].contains(i);
            if m > 2 {
                violated.insert(1);
            }
            if (m == 0) == inside {
                violated.insert(2);
            }
            if inside && (m as usize) < d.bn(i) {
                violated.insert(3);
            }
            any_two |= m == 2;
        }
        let sum = l.block_sum(b);
        if sum > 4 || (any_two && sum > 3) {
            violated.insert(5);
        }
    }
    if d.bn.values().any(|&bn| bn > 2) {
        violated.insert(4);
    }
    if d.cutvertices.iter().any(|&i| !cond6_holds(d, l, i)) {
        violated.insert(6);
    }
    Ok(violated.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamReason {
    /// The graph is a caterpillar; no 2-blocks.
    Caterpillar,
    /// The graph is a single 2-block.
    SingleTwoBlock,
    /// A labelling satisfying all six conditions was built.
    Labelling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: Case,
    pub block: BlockId,
    pub values: Vec<(Vertex, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamOutcome {
    Hamiltonian {
        reason: HamReason,
        labelling: Option<Labelling>,
    },
    /// A cutvertex with at least three nontrivial bridges.
    NotHamiltonian { cutvertex: Vertex, bn: usize },
    /// The square of this graph may still be hamiltonian; the recipe
    /// builds a graph with an isomorphic block-cutvertex tree whose square
    /// is not.
    StructurallyRisky {
        condition: u8,
        case: Case,
        block: BlockId,
        cutvertex: Option<Vertex>,
        partial: Labelling,
        recipe: SubstitutionRecipe,
    },
}

/// Outcome without the evidence, for comparing runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictClass {
    Hamiltonian,
    NotHamiltonian,
    Risky(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamVerdict {
    pub outcome: HamOutcome,
    pub trace: Vec<TraceStep>,
}

impl HamVerdict {
    pub fn class(&self) -> VerdictClass {
        match &self.outcome {
            HamOutcome::Hamiltonian { .. } => VerdictClass::Hamiltonian,
            HamOutcome::NotHamiltonian { .. } => VerdictClass::NotHamiltonian,
            HamOutcome::StructurallyRisky { condition, .. } => VerdictClass::Risky(*condition),
        }
    }

    pub fn labelling(&self) -> Option<&Labelling> {
        match &self.outcome {
            HamOutcome::Hamiltonian { labelling, .. } => labelling.as_ref(),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match &self.outcome {
            HamOutcome::Hamiltonian { reason, .. } => match reason {
                HamReason::Caterpillar => "square is hamiltonian (the graph is a caterpillar)".into(),
                HamReason::SingleTwoBlock => "square is hamiltonian (the graph is a 2-block)".into(),
                HamReason::Labelling => "square is hamiltonian (labelling satisfies all conditions)".into(),
            },
            HamOutcome::NotHamiltonian { cutvertex, bn } => {
                format!("square is not hamiltonian: bn({cutvertex}) = {bn} >= 3")
            }
            HamOutcome::StructurallyRisky { condition, case, block, .. } => format!(
                "square may not be hamiltonian: condition {condition} fails (case {}, block {block}); \
                 a graph with the same block-cutvertex tree has a non-hamiltonian square",
                format!("{case:?}").to_lowercase()
            ),
        }
    }
}

/// Greedy labelling over 2-blocks peeled from the outside in.
pub fn algorithm1(g: &Graph) -> Result<HamVerdict> {
    if g.vertex_count() < 3 {
        return Err(Error::TooSmall { needed: 3, found: g.vertex_count() });
    }
    let d = decompose(g)?;
    let p0 = compute_p0(g, &d)?;
    if let Some((&i, &bn)) = d.bn.iter().find(|(_, &bn)| bn >= 3) {
        return Ok(HamVerdict { outcome: HamOutcome::NotHamiltonian { cutvertex: i, bn }, trace: vec![] });
    }
    if !p0.all_caterpillars() {
        return Err(Error::Internal("non-caterpillar component without a cutvertex of bn >= 3".into()));
    }
    let two: Vec<BlockId> = d.two_blocks().collect();
    if two.is_empty() {
        return Ok(hamiltonian(HamReason::Caterpillar, None, vec![]));
    }
    if d.blocks.len() == 1 {
        return Ok(hamiltonian(HamReason::SingleTwoBlock, None, vec![]));
    }

    let mut l = Labelling::new();
    let mut labelled: BTreeSet<BlockId> = BTreeSet::new();
    let mut trace = Vec::new();
    let fully_labelled = |labelled: &BTreeSet<BlockId>, i: Vertex| {
        d.two_blocks_containing(i).iter().all(|b| labelled.contains(b))
    };

    while labelled.len() < two.len() {
        let b = two
            .iter()
            .copied()
            .filter(|b| !labelled.contains(b))
            .find(|&b| {
                let shared = d.blocks[b]
                    .vertices
                    .iter()
                    .filter(|&&v| {
                        d.two_blocks_containing(v).iter().any(|&o| o != b && !labelled.contains(&o))
                    })
                    .count();
                shared <= 1
            })
            .ok_or_else(|| Error::Internal("no peelable 2-block".into()))?;
        let cs = d.cutvertices_in(b);
        let k = cs.len();
        let bn_two = |c: Vertex| d.bn(c) == 2;

        let risky5 = |case| {
            let recipe = recipe_for_cond5(&d, b, case)?;
            Ok::<_, Error>(risky(5, case_of(case), b, None, &l, recipe, &trace))
        };
        if k >= 5 {
            return risky5(Cond5Case::ManyCutvertices);
        }
        if k >= 3 && cs.iter().any(|&c| bn_two(c)) {
            return risky5(Cond5Case::SaturatedWithOthers);
        }
        if k == 2 && cs.iter().all(|&c| bn_two(c)) {
            return risky5(Cond5Case::TwoSaturated);
        }

        let (case, values): (Case, Vec<(Vertex, u8)>) = match k {
            0 => return Err(Error::Internal(format!("2-block {b} has no cutvertex"))),
            1 => (Case::D, vec![(cs[0], 2)]),
            2 => {
                let values = if bn_two(cs[0]) || bn_two(cs[1]) {
                    let (c1, c2) = if bn_two(cs[1]) { (cs[0], cs[1]) } else { (cs[1], cs[0]) };
                    vec![(c1, 1), (c2, 2)]
                } else {
                    let done = |c: Vertex| {
                        d.two_blocks_containing(c).iter().all(|&o| o == b || labelled.contains(&o))
                    };
                    let (c1, c2) = if done(cs[0]) { (cs[0], cs[1]) } else { (cs[1], cs[0]) };
                    l.set(c1, b, 1);
                    if cond6_holds(&d, &l, c1) {
                        vec![(c1, 1), (c2, 2)]
                    } else {
                        vec![(c1, 2), (c2, 1)]
                    }
                };
                (Case::E, values)
            }
            _ => (Case::F, cs.iter().map(|&c| (c, 1)).collect()),
        };
        for &(c, v) in &values {
            l.set(c, b, v);
        }
        labelled.insert(b);
        trace.push(TraceStep { case, block: b, values: values.clone() });

        for &(c, _) in &values {
            if fully_labelled(&labelled, c) && !cond6_holds(&d, &l, c) {
                let recipe = recipe_for_cond6(&d, &l, c)?;
                return Ok(risky(6, case, b, Some(c), &l, recipe, &trace));
            }
        }
    }

    let violated = check_conditions_with(&d, &l)?;
    if !violated.is_empty() {
        return Err(Error::Internal(format!("completed labelling violates {violated:?}")));
    }
    Ok(hamiltonian(HamReason::Labelling, Some(l), trace))
}

fn case_of(c: Cond5Case) -> Case {
    match c {
        Cond5Case::ManyCutvertices => Case::A,
        Cond5Case::SaturatedWithOthers => Case::B,
        Cond5Case::TwoSaturated => Case::C,
    }
}

fn hamiltonian(reason: HamReason, labelling: Option<Labelling>, trace: Vec<TraceStep>) -> HamVerdict {
    HamVerdict { outcome: HamOutcome::Hamiltonian { reason, labelling }, trace }
}

fn risky(
    condition: u8,
    case: Case,
    block: BlockId,
    cutvertex: Option<Vertex>,
    l: &Labelling,
    recipe: SubstitutionRecipe,
    trace: &[TraceStep],
) -> HamVerdict {
    HamVerdict {
        outcome: HamOutcome::StructurallyRisky { condition, case, block, cutvertex, partial: l.clone(), recipe },
        trace: trace.to_vec(),
    }
}
