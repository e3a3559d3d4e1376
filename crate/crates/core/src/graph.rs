//! Undirected simple graphs, the edge-list wire format, DOT output, and the
//! squaring and subtraction operators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier. Identifiers need not be contiguous.
pub type Vertex = u32;

/// An unordered pair of distinct vertices, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(&self, v: Vertex) -> Vertex {
        debug_assert!(self.contains(v));
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// An undirected simple graph. Immutable in spirit: the algorithms in this
/// crate build new graphs instead of mutating their inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list. Panics on self-loops; use
    /// [`Graph::try_from_edges`] for untrusted input.
    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Self {
        Self::try_from_edges(edges).expect("self-loop in edge list")
    }

    pub fn try_from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Result<Self> {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop { vertex: a, line: None });
        }
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        let removed = self.adj.get_mut(&a).is_some_and(|n| n.remove(&b));
        if removed {
            self.adj.get_mut(&b).map(|n| n.remove(&a));
        }
        removed
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns {
                if let Some(n) = self.adj.get_mut(&u) {
                    n.remove(&v);
                }
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in ascending order, each reported once.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| Edge(u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    /// Connected components, each as an ascending vertex set, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let comp = self.reachable_from(s);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn reachable_from(&self, s: Vertex) -> BTreeSet<Vertex> {
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if comp.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(s) => self.reachable_from(s).len() == self.vertex_count(),
        }
    }

    /// BFS distances from `s` to every reachable vertex.
    pub fn distances_from(&self, s: Vertex) -> BTreeMap<Vertex, usize> {
        let mut dist = BTreeMap::from([(s, 0)]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for w in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if self.contains_vertex(v) {
                g.add_vertex(v);
                for w in self.neighbors(v).filter(|w| keep.contains(w)) {
                    g.adj.entry(v).or_default().insert(w);
                }
            }
        }
        g
    }

    /// The subgraph formed by the given edges and their endpoints.
    pub fn edge_subgraph<'a, I: IntoIterator<Item = &'a Edge>>(edges: I) -> Graph {
        let mut g = Graph::new();
        for e in edges {
            g.add_edge(e.0, e.1).expect("edges are loop-free");
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.contains_vertex(v))
            && self.edges().all(|e| other.has_edge(e.0, e.1))
    }

    /// Renames vertices through `map`. Vertices missing from `map` keep their id.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Graph {
        let f = |v: Vertex| map.get(&v).copied().unwrap_or(v);
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for e in self.edges() {
            g.add_edge(f(e.0), f(e.1)).expect("relabelling must be injective");
        }
        g
    }

    /// Disjoint union after shifting `other` so its ids start above ours.
    /// Returns the offset applied to `other`.
    pub fn append_disjoint(&mut self, other: &Graph) -> Vertex {
        let offset = self.max_vertex().map_or(0, |m| m + 1);
        for v in other.vertices() {
            self.add_vertex(v + offset);
        }
        for e in other.edges() {
            self.add_edge(e.0 + offset, e.1 + offset).expect("loop-free");
        }
        offset
    }

    /// The square: same vertices, `{u,v}` an edge iff their distance is 1 or 2.
    pub fn square(&self) -> Graph {
        let mut sq = self.clone();
        for v in self.vertices() {
            let ns: Vec<Vertex> = self.neighbors(v).collect();
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    sq.adj.get_mut(&a).unwrap().insert(b);
                    sq.adj.get_mut(&b).unwrap().insert(a);
                }
            }
        }
        sq
    }

    /// `self − h`: drop the edges of `h`, then drop every vertex of `h` whose
    /// degree in `h` equals its degree in `self`.
    pub fn subtract(&self, h: &Graph) -> Result<Graph> {
        if !h.is_subgraph_of(self) {
            return Err(Error::NotSubgraph);
        }
        let mut out = self.clone();
        for e in h.edges() {
            out.remove_edge(e.0, e.1);
        }
        for v in h.vertices() {
            if h.degree(v) == self.degree(v) {
                out.remove_vertex(v);
            }
        }
        Ok(out)
    }

    /// Parses the edge-list format: one `u v` pair per line, or a single
    /// integer for an isolated vertex. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_id = |s: &str| {
                s.parse::<Vertex>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{s}` is not a vertex identifier"),
                })
            };
            match fields.as_slice() {
                [v] => g.add_vertex(parse_id(v)?),
                [a, b] => {
                    let (a, b) = (parse_id(a)?, parse_id(b)?);
                    if a == b {
                        return Err(Error::SelfLoop { vertex: a, line: Some(line_no) });
                    }
                    g.add_edge(a, b)?;
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected one or two integers, found {}", fields.len()),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Serializes to the edge-list format. Isolated vertices get their own line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices().filter(|&v| self.degree(v) == 0) {
            let _ = writeln!(out, "{v}");
        }
        for e in self.edges() {
            let _ = writeln!(out, "{} {}", e.0, e.1);
        }
        out
    }

    /// Graphviz DOT text. Edges in `highlight` are drawn bold.
    pub fn to_dot(&self, highlight: Option<&BTreeSet<Edge>>) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v};");
        }
        for e in self.edges() {
            let bold = highlight.is_some_and(|h| h.contains(&e));
            if bold {
                let _ = writeln!(out, "  {} -- {} [style=bold, penwidth=3];", e.0, e.1);
            } else {
                let _ = writeln!(out, "  {} -- {};", e.0, e.1);
            }
        }
        out.push_str("}\n");
        out
    }
}

// Graph is not serde-aware; go through the edge list.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            vertices: Vec<Vertex>,
            edges: Vec<Edge>,
        }
        Wire { vertices: self.vertices().collect(), edges: self.edges().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            vertices: Vec<Vertex>,
            edges: Vec<Edge>,
        }
        let w = Wire::deserialize(d)?;
        let mut g = Graph::new();
        for v in w.vertices {
            g.add_vertex(v);
        }
        for e in w.edges {
            g.add_edge(e.0, e.1).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

/// Common small graphs used throughout tests, generators and docs.
pub mod named {
    use super::{Graph, Vertex};

    pub fn path(n: Vertex) -> Graph {
        let mut g = Graph::new();
        g.add_vertex(0);
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn cycle(n: Vertex) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    pub fn complete(n: Vertex) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(i);
            for j in 0..i {
                g.add_edge(j, i).unwrap();
            }
        }
        g
    }

    /// `K_{a,b}` with hubs `0..a` and the other side `a..a+b`.
    pub fn complete_bipartite(a: Vertex, b: Vertex) -> Graph {
        let mut g = Graph::new();
        for i in 0..a {
            for j in a..a + b {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    /// `K_{1,n}` centred at 0.
    pub fn star(n: Vertex) -> Graph {
        complete_bipartite(1, n)
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    }

    /// Centre 0 with `legs` paths of `len` edges each.
    pub fn spider(legs: Vertex, len: Vertex) -> Graph {
        let mut g = Graph::new();
        g.add_vertex(0);
        let mut next = 1;
        for _ in 0..legs {
            let mut prev = 0;
            for _ in 0..len {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn parse_path() {
        let g = Graph::parse("0 1\n1 2").unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn parse_collapses_duplicates() {
        let g = Graph::parse("0 1\n0 1\n1 0").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            Graph::parse("0 1\n0 0"),
            Err(Error::SelfLoop { vertex: 0, line: Some(2) })
        );
    }

    #[test]
    fn parse_reports_line_numbers() {
        match Graph::parse("0 1\n\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Graph::parse("1 2 3"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn parse_isolated_vertices_and_comments() {
        let g = Graph::parse("# header\n7\n0 1 # trailing\n").unwrap();
        assert_eq!(g.vertices().collect::<Vec<_>>(), vec![0, 1, 7]);
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn square_small_cases() {
        assert_eq!(complete(2).square(), complete(2));
        assert_eq!(path(3).square(), complete(3));
        assert_eq!(cycle(5).square(), complete(5));
        // C6: antipodal pairs stay non-adjacent.
        let sq = cycle(6).square();
        assert_eq!(sq.edge_count(), 12);
        assert!(!sq.has_edge(0, 3));
    }

    #[test]
    fn subtract_triangle_with_pendant() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3)]);
        let tri = cycle(3);
        let r = g.subtract(&tri).unwrap();
        assert_eq!(r, Graph::from_edges([(0, 3)]));
    }

    #[test]
    fn subtract_self_and_empty() {
        let g = bowtie();
        assert!(g.subtract(&g).unwrap().is_empty());
        assert_eq!(g.subtract(&Graph::new()).unwrap(), g);
    }

    #[test]
    fn subtract_bowtie_triangle() {
        let g = bowtie();
        let h = Graph::from_edges([(0, 1), (1, 2), (2, 0)]);
        assert_eq!(g.subtract(&h).unwrap(), Graph::from_edges([(0, 3), (3, 4), (4, 0)]));
    }

    #[test]
    fn subtract_requires_subgraph() {
        assert_eq!(path(3).subtract(&cycle(3)), Err(Error::NotSubgraph));
    }

    #[test]
    fn dot_output() {
        let dot = complete(2).to_dot(None);
        assert_eq!(dot, "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
        let hl = BTreeSet::from([Edge::new(1, 0)]);
        let dot = cycle(3).to_dot(Some(&hl));
        assert_eq!(dot.matches("bold").count(), 1);
        assert!(dot.contains("0 -- 1 [style=bold"));
    }

    #[test]
    fn edge_normalises() {
        assert_eq!(Edge::new(5, 2), Edge(2, 5));
        assert_eq!(Edge::new(5, 2).other(5), 2);
    }
}
