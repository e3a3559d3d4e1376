//! Exhaustive ground truth: hamiltonian cycles and paths with prescribed
//! original-graph edges, by depth-first backtracking.
//!
//! Searches are certifiably exhaustive: `Absent` means no witness exists.
//! An optional node budget turns a long search into `BudgetExceeded`
//! rather than a false negative.

mod properties;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

pub use properties::{find_h5_violator, verify_property, PropertyCheck, PropertyKind};

/// A request for a hamiltonian cycle (or an `x`–`y` path when `endpoints` is
/// set) in `host`, subject to constraints phrased against `original`.
#[derive(Clone, Debug)]
pub struct EdgeConstrainedSearch<'a> {
    pub host: &'a Graph,
    /// Decides which host edges count as "edges of G". Usually the graph
    /// whose square is `host`.
    pub original: &'a Graph,
    pub required_edges: BTreeSet<Edge>,
    /// `(v, r)`: at least `r` cycle edges at `v` must be original edges.
    /// Edges are counted for one vertex only, so the edges satisfying
    /// different vertices are distinct.
    pub required_incidences: BTreeMap<Vertex, usize>,
    /// For each listed `z`, the witness must contain an edge `uv` with
    /// `u, v` both original neighbours of `z`.
    pub neighbor_pair_at: BTreeSet<Vertex>,
    pub endpoints: Option<(Vertex, Vertex)>,
    pub node_budget: Option<u64>,
}

impl<'a> EdgeConstrainedSearch<'a> {
    pub fn cycle(host: &'a Graph, original: &'a Graph) -> Self {
        EdgeConstrainedSearch {
            host,
            original,
            required_edges: BTreeSet::new(),
            required_incidences: BTreeMap::new(),
            neighbor_pair_at: BTreeSet::new(),
            endpoints: None,
            node_budget: None,
        }
    }

    pub fn path(host: &'a Graph, original: &'a Graph, x: Vertex, y: Vertex) -> Self {
        EdgeConstrainedSearch { endpoints: Some((x, y)), ..Self::cycle(host, original) }
    }

    pub fn require_edge(mut self, a: Vertex, b: Vertex) -> Self {
        self.required_edges.insert(Edge::new(a, b));
        self
    }

    pub fn require_incidence(mut self, v: Vertex, count: usize) -> Self {
        if count > 0 {
            *self.required_incidences.entry(v).or_default() += count;
        }
        self
    }

    pub fn require_neighbor_pair(mut self, z: Vertex) -> Self {
        self.neighbor_pair_at.insert(z);
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    fn is_unconstrained(&self) -> bool {
        self.required_edges.is_empty()
            && self.required_incidences.is_empty()
            && self.neighbor_pair_at.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    Cycle,
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
    /// Distinct original edges assigned to each vertex with a required incidence.
    pub designated: BTreeMap<Vertex, Vec<Edge>>,
    /// The edge found for each neighbour-pair constraint.
    pub neighbor_pairs: BTreeMap<Vertex, Edge>,
}

impl Witness {
    pub fn edges(&self) -> Vec<Edge> {
        witness_edges(self.kind, &self.vertices)
    }
}

fn witness_edges(kind: WitnessKind, seq: &[Vertex]) -> Vec<Edge> {
    let mut out: Vec<Edge> = seq.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    if kind == WitnessKind::Cycle && seq.len() > 2 {
        out.push(Edge::new(seq[seq.len() - 1], seq[0]));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Witness),
    Absent,
    /// Carries the budget that ran out.
    BudgetExceeded(u64),
}

impl SearchOutcome {
    pub fn witness(self) -> Option<Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    /// Converts to a definite answer, treating an exceeded budget as an error.
    pub fn definite(self) -> Result<Option<Witness>> {
        match self {
            SearchOutcome::Found(w) => Ok(Some(w)),
            SearchOutcome::Absent => Ok(None),
            SearchOutcome::BudgetExceeded(b) => Err(Error::BudgetExceeded(b)),
        }
    }
}

pub fn find_ham_cycle(s: &EdgeConstrainedSearch<'_>) -> Result<SearchOutcome> {
    if s.endpoints.is_some() {
        return Err(Error::Precondition("cycle search must not set endpoints".into()));
    }
    Searcher::new(s)?.run()
}

pub fn find_ham_path(s: &EdgeConstrainedSearch<'_>) -> Result<SearchOutcome> {
    if s.endpoints.is_none() {
        return Err(Error::Precondition("path search needs endpoints".into()));
    }
    Searcher::new(s)?.run()
}

/// Whether `host` itself has a hamiltonian cycle.
pub fn has_ham_cycle(host: &Graph) -> Result<bool> {
    Ok(find_ham_cycle(&EdgeConstrainedSearch::cycle(host, host))?.is_found())
}

/// A hamiltonian `x`–`y` path in `host`, if any.
pub fn ham_path(host: &Graph, x: Vertex, y: Vertex) -> Result<Option<Witness>> {
    find_ham_path(&EdgeConstrainedSearch::path(host, host, x, y))?.definite()
}

/// True iff every pair of distinct vertices of `host` is joined by a
/// hamiltonian path of `host`.
pub fn is_ham_connected(host: &Graph) -> Result<bool> {
    if host.vertex_count() < 2 {
        return Err(Error::TooSmall { needed: 2, found: host.vertex_count() });
    }
    Ok(first_unconnected_pair(host)?.is_none())
}

/// The first pair (ascending) with no hamiltonian path between its ends.
pub fn first_unconnected_pair(host: &Graph) -> Result<Option<(Vertex, Vertex)>> {
    let vs: Vec<Vertex> = host.vertices().collect();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            if ham_path(host, x, y)?.is_none() {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Independent structural check of a witness against the search request:
/// spanning, host-adjacent, correct endpoints, every constraint met. The
/// distinct-edge assignment is re-derived here by brute force.
pub fn validate_witness(s: &EdgeConstrainedSearch<'_>, w: &Witness) -> Result<(), String> {
    let seq = &w.vertices;
    let distinct: BTreeSet<Vertex> = seq.iter().copied().collect();
    if distinct.len() != seq.len() {
        return Err("a vertex repeats".into());
    }
    if distinct != s.host.vertices().collect() {
        return Err("witness does not span the host".into());
    }
    let kind = if s.endpoints.is_some() { WitnessKind::Path } else { WitnessKind::Cycle };
    if kind != w.kind {
        return Err("wrong witness kind".into());
    }
    if let Some((x, y)) = s.endpoints {
        if seq.first() != Some(&x) || seq.last() != Some(&y) {
            return Err(format!("path does not run from {x} to {y}"));
        }
    }
    let edges = witness_edges(kind, seq);
    if let Some(e) = edges.iter().find(|e| !s.host.has_edge(e.0, e.1)) {
        return Err(format!("{e} is not a host edge"));
    }
    let edge_set: BTreeSet<Edge> = edges.iter().copied().collect();
    if let Some(e) = s.required_edges.iter().find(|e| !edge_set.contains(e)) {
        return Err(format!("required edge {e} missing"));
    }
    let demands: Vec<(Vertex, usize)> = s.required_incidences.iter().map(|(&v, &r)| (v, r)).collect();
    let candidates: Vec<Vec<Edge>> = demands
        .iter()
        .map(|&(v, _)| {
            edges
                .iter()
                .copied()
                .filter(|e| e.contains(v) && s.original.has_edge(e.0, e.1))
                .collect()
        })
        .collect();
    if !assignable(&demands, &candidates, 0, &mut BTreeSet::new()) {
        return Err("required incidences cannot be met by distinct original edges".into());
    }
    for &z in &s.neighbor_pair_at {
        let ok = edges
            .iter()
            .any(|e| s.original.has_edge(e.0, z) && s.original.has_edge(e.1, z));
        if !ok {
            return Err(format!("no edge between two neighbours of {z}"));
        }
    }
    Ok(())
}

fn assignable(
    demands: &[(Vertex, usize)],
    candidates: &[Vec<Edge>],
    i: usize,
    used: &mut BTreeSet<Edge>,
) -> bool {
    if i == demands.len() {
        return true;
    }
    let free: Vec<Edge> = candidates[i].iter().copied().filter(|e| !used.contains(e)).collect();
    let need = demands[i].1;
    if free.len() < need {
        return false;
    }
    // at most two candidates per vertex, so enumerate subsets directly
    let subsets: Vec<Vec<Edge>> = match need {
        0 => vec![vec![]],
        1 => free.iter().map(|&e| vec![e]).collect(),
        _ => vec![free.clone()],
    };
    for pick in subsets {
        for &e in &pick {
            used.insert(e);
        }
        let ok = assignable(demands, candidates, i + 1, used);
        for e in &pick {
            used.remove(e);
        }
        if ok {
            return true;
        }
    }
    false
}

enum FailMemo {
    Off,
    Dense(Vec<u64>),
    Sparse(HashSet<(u64, u8)>),
}

impl FailMemo {
    fn new(n: usize, enabled: bool) -> Self {
        if !enabled {
            FailMemo::Off
        } else if n <= 20 {
            FailMemo::Dense(vec![0; ((1usize << n) * n).div_ceil(64)])
        } else {
            FailMemo::Sparse(HashSet::new())
        }
    }

    fn slot(n: usize, mask: u64, head: usize) -> usize {
        mask as usize * n + head
    }

    fn contains(&self, n: usize, mask: u64, head: usize) -> bool {
        match self {
            FailMemo::Off => false,
            FailMemo::Dense(bits) => {
                let i = Self::slot(n, mask, head);
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            FailMemo::Sparse(set) => set.contains(&(mask, head as u8)),
        }
    }

    fn insert(&mut self, n: usize, mask: u64, head: usize) {
        match self {
            FailMemo::Off => {}
            FailMemo::Dense(bits) => {
                let i = Self::slot(n, mask, head);
                bits[i / 64] |= 1 << (i % 64);
            }
            FailMemo::Sparse(set) => {
                set.insert((mask, head as u8));
            }
        }
    }
}

struct Searcher<'s, 'a> {
    req: &'s EdgeConstrainedSearch<'a>,
    ids: Vec<Vertex>,
    n: usize,
    host: Vec<u64>,
    orig: Vec<u64>,
    required: Vec<u64>,
    demand: Vec<usize>,
    start: usize,
    target: Option<usize>,
    path: Vec<usize>,
    nodes: u64,
    memo: FailMemo,
}

enum Step {
    Found(Witness),
    Fail,
    Budget,
}

impl<'s, 'a> Searcher<'s, 'a> {
    fn new(req: &'s EdgeConstrainedSearch<'a>) -> Result<Self> {
        let ids: Vec<Vertex> = req.host.vertices().collect();
        let n = ids.len();
        if n > 64 {
            return Err(Error::TooLarge(n));
        }
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let idx = |v: Vertex| index.get(&v).copied().ok_or(Error::UnknownVertex(v));
        let mask_of = |g: &Graph, v: Vertex| {
            g.neighbors(v)
                .filter_map(|w| index.get(&w))
                .fold(0u64, |m, &i| m | 1 << i)
        };
        let host: Vec<u64> = ids.iter().map(|&v| mask_of(req.host, v)).collect();
        let orig: Vec<u64> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| mask_of(req.original, v) & host[i])
            .collect();

        let mut required = vec![0u64; n];
        for e in &req.required_edges {
            let (a, b) = (idx(e.0)?, idx(e.1)?);
            if host[a] >> b & 1 == 0 {
                return Err(Error::EdgeNotInHost(e.0, e.1));
            }
            required[a] |= 1 << b;
            required[b] |= 1 << a;
        }
        let mut demand = vec![0usize; n];
        for (&v, &r) in &req.required_incidences {
            demand[idx(v)?] = r;
        }
        for &z in &req.neighbor_pair_at {
            if !req.original.contains_vertex(z) {
                return Err(Error::UnknownVertex(z));
            }
        }
        let (start, target) = match req.endpoints {
            Some((x, y)) => {
                if x == y {
                    return Err(Error::SameEndpoints(x));
                }
                (idx(x)?, Some(idx(y)?))
            }
            None => {
                // most constrained vertex first
                let s = (0..n).min_by_key(|&i| (host[i].count_ones(), i)).unwrap_or(0);
                (s, None)
            }
        };
        let memo = FailMemo::new(n, req.is_unconstrained());
        Ok(Searcher {
            req,
            ids,
            n,
            host,
            orig,
            required,
            demand,
            start,
            target,
            path: Vec::with_capacity(n),
            nodes: 0,
            memo,
        })
    }

    fn run(mut self) -> Result<SearchOutcome> {
        let n = self.n;
        let cycle = self.target.is_none();
        if cycle && n < 3 {
            return Ok(SearchOutcome::Absent);
        }
        // slot capacity per vertex: 2 on a cycle, 1 at a path end
        for v in 0..n {
            let cap = if !cycle && (v == self.start || Some(v) == self.target) { 1 } else { 2 };
            if self.required[v].count_ones() as usize > cap || self.demand[v] > cap {
                return Ok(SearchOutcome::Absent);
            }
        }
        self.path.push(self.start);
        Ok(match self.extend(1u64 << self.start) {
            Step::Found(w) => SearchOutcome::Found(w),
            Step::Fail => SearchOutcome::Absent,
            Step::Budget => SearchOutcome::BudgetExceeded(self.req.node_budget.unwrap_or(0)),
        })
    }

    /// Whether `v`, with its witness edges going to `nbrs`, can still satisfy
    /// its own local constraints.
    fn local_ok(&self, v: usize, nbrs: &[usize]) -> bool {
        let m = nbrs.iter().fold(0u64, |m, &w| m | 1 << w);
        self.required[v] & !m == 0 && (self.orig[v] & m).count_ones() as usize >= self.demand[v]
    }

    fn extend(&mut self, visited: u64) -> Step {
        self.nodes += 1;
        if self.req.node_budget.is_some_and(|b| self.nodes > b) {
            return Step::Budget;
        }
        let n = self.n;
        let head = *self.path.last().unwrap();
        let len = self.path.len();
        let prev = (len >= 2).then(|| self.path[len - 2]);

        if len == n {
            return self.complete(head, prev);
        }

        let cycle = self.target.is_none();
        let mut options = self.host[head] & !visited;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            if Some(w) == self.target && len != n - 1 {
                continue;
            }
            // head's edges are now final unless head is the cycle start
            let head_ok = match prev {
                Some(p) => self.local_ok(head, &[p, w]),
                None if cycle => true,
                None => self.local_ok(head, &[w]),
            };
            if !head_ok {
                continue;
            }
            let next_visited = visited | 1 << w;
            if self.memo.contains(n, next_visited, w) {
                continue;
            }
            if !self.degrees_ok(next_visited, w) {
                continue;
            }
            self.path.push(w);
            match self.extend(next_visited) {
                Step::Fail => {
                    self.path.pop();
                    self.memo.insert(n, next_visited, w);
                }
                other => return other,
            }
        }
        Step::Fail
    }

    /// Every unvisited vertex still needs enough reachable slots.
    fn degrees_ok(&self, visited: u64, head: usize) -> bool {
        let n = self.n;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let unvisited = all & !visited;
        let open = match self.target {
            None => unvisited | 1 << head | 1 << self.start,
            Some(_) => unvisited | 1 << head,
        };
        let mut rest = unvisited;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let need = if Some(u) == self.target { 1 } else { 2 };
            if ((self.host[u] & open & !(1 << u)).count_ones() as usize) < need {
                return false;
            }
        }
        true
    }

    fn complete(&mut self, head: usize, prev: Option<usize>) -> Step {
        let cycle = self.target.is_none();
        if cycle {
            if self.host[head] >> self.start & 1 == 0 {
                return Step::Fail;
            }
            let second = self.path[1];
            if !self.local_ok(head, &[prev.unwrap(), self.start])
                || !self.local_ok(self.start, &[second, head])
            {
                return Step::Fail;
            }
        } else if !self.local_ok(head, &[prev.unwrap()]) {
            return Step::Fail;
        }
        match self.finish() {
            Some(w) => Step::Found(w),
            None => Step::Fail,
        }
    }

    /// Global checks on a complete sequence: distinct-edge assignment and
    /// neighbour-pair edges.
    fn finish(&self) -> Option<Witness> {
        let kind = if self.target.is_none() { WitnessKind::Cycle } else { WitnessKind::Path };
        let seq: Vec<Vertex> = self.path.iter().map(|&i| self.ids[i]).collect();
        let edges = witness_edges(kind, &seq);

        let demands: Vec<(Vertex, usize)> =
            self.req.required_incidences.iter().map(|(&v, &r)| (v, r)).filter(|&(_, r)| r > 0).collect();
        let candidates: Vec<Vec<Edge>> = demands
            .iter()
            .map(|&(v, _)| {
                edges
                    .iter()
                    .copied()
                    .filter(|e| e.contains(v) && self.req.original.has_edge(e.0, e.1))
                    .collect()
            })
            .collect();
        let designated = assign(&demands, &candidates)?;

        let mut neighbor_pairs = BTreeMap::new();
        for &z in &self.req.neighbor_pair_at {
            let e = edges.iter().copied().find(|e| {
                self.req.original.has_edge(e.0, z) && self.req.original.has_edge(e.1, z)
            })?;
            neighbor_pairs.insert(z, e);
        }
        Some(Witness { kind, vertices: seq, designated, neighbor_pairs })
    }
}

/// A distinct-representative assignment, preferring earlier candidates.
fn assign(demands: &[(Vertex, usize)], candidates: &[Vec<Edge>]) -> Option<BTreeMap<Vertex, Vec<Edge>>> {
    fn go(
        demands: &[(Vertex, usize)],
        candidates: &[Vec<Edge>],
        i: usize,
        used: &mut Vec<Edge>,
        out: &mut BTreeMap<Vertex, Vec<Edge>>,
    ) -> bool {
        if i == demands.len() {
            return true;
        }
        let (v, need) = demands[i];
        let free: Vec<Edge> = candidates[i].iter().copied().filter(|e| !used.contains(e)).collect();
        if free.len() < need {
            return false;
        }
        let picks: Vec<Vec<Edge>> = if need == 1 {
            free.iter().map(|&e| vec![e]).collect()
        } else {
            vec![free[..need].to_vec()]
        };
        for pick in picks {
            used.extend(&pick);
            out.insert(v, pick.clone());
            if go(demands, candidates, i + 1, used, out) {
                return true;
            }
            used.truncate(used.len() - pick.len());
            out.remove(&v);
        }
        false
    }
    let mut out = BTreeMap::new();
    go(demands, candidates, 0, &mut Vec::new(), &mut out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn c4_with_one_required_edge() {
        let c4 = cycle(4);
        let s = EdgeConstrainedSearch::cycle(&c4, &c4).require_edge(0, 1);
        let w = find_ham_cycle(&s).unwrap().witness().unwrap();
        assert_eq!(w.vertices.len(), 4);
        validate_witness(&s, &w).unwrap();
    }

    #[test]
    fn three_required_edges_at_one_vertex_is_infeasible() {
        let k4 = complete(4);
        let s = EdgeConstrainedSearch::cycle(&k4, &k4)
            .require_edge(0, 1)
            .require_edge(0, 2)
            .require_edge(0, 3);
        assert_eq!(find_ham_cycle(&s).unwrap(), SearchOutcome::Absent);
    }

    #[test]
    fn k4_square_with_incidences() {
        let k4 = complete(4);
        let sq = k4.square();
        let s = EdgeConstrainedSearch::cycle(&sq, &k4).require_incidence(0, 2).require_incidence(1, 1);
        let w = find_ham_cycle(&s).unwrap().witness().unwrap();
        validate_witness(&s, &w).unwrap();
        assert_eq!(w.designated[&0].len(), 2);
        assert!(!w.designated[&0].contains(&w.designated[&1][0]));
    }

    #[test]
    fn k2_path() {
        let k2 = complete(2);
        let s = EdgeConstrainedSearch::path(&k2, &k2, 0, 1);
        let w = find_ham_path(&s).unwrap().witness().unwrap();
        assert_eq!(w.vertices, vec![0, 1]);
    }

    #[test]
    fn p4_square_has_no_path_between_bridge_ends() {
        let p4 = path(4);
        let sq = p4.square();
        assert!(ham_path(&sq, 1, 2).unwrap().is_none());
        assert!(ham_path(&sq, 0, 3).unwrap().is_some());
    }

    #[test]
    fn c5_square_f4_instance() {
        let c5 = cycle(5);
        let sq = c5.square();
        let s = EdgeConstrainedSearch::path(&sq, &c5, 0, 1).require_incidence(2, 1).require_incidence(3, 1);
        let w = find_ham_path(&s).unwrap().witness().unwrap();
        validate_witness(&s, &w).unwrap();
    }

    #[test]
    fn ham_connectedness() {
        assert!(is_ham_connected(&complete(3)).unwrap());
        assert!(!is_ham_connected(&path(4).square()).unwrap());
        assert_eq!(first_unconnected_pair(&path(4).square()).unwrap(), Some((1, 2)));
        assert!(is_ham_connected(&bowtie().square()).unwrap());
    }

    #[test]
    fn budget_is_reported_not_hidden() {
        let g = complete_bipartite(2, 5).square();
        let out = find_ham_cycle(&EdgeConstrainedSearch::cycle(&g, &g).with_budget(Some(1))).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExceeded(1));
    }

    #[test]
    fn search_errors() {
        let k3 = complete(3);
        assert_eq!(ham_path(&k3, 1, 1), Err(Error::SameEndpoints(1)));
        assert_eq!(ham_path(&k3, 1, 9), Err(Error::UnknownVertex(9)));
        let p3 = path(3);
        let s = EdgeConstrainedSearch::cycle(&p3, &p3).require_edge(0, 2);
        assert_eq!(find_ham_cycle(&s), Err(Error::EdgeNotInHost(0, 2)));
    }

    #[test]
    fn neighbor_pair_constraint() {
        let p3 = path(3);
        let sq = p3.square();
        let s = EdgeConstrainedSearch::cycle(&sq, &p3).require_neighbor_pair(1);
        let w = find_ham_cycle(&s).unwrap().witness().unwrap();
        assert_eq!(w.neighbor_pairs[&1], Edge(0, 2));
    }
}
