//! The forest `P₀` left after subtracting every 2-block, and caterpillar
//! recognition on its components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::construct::caterpillar_cycle;
use crate::decomposition::BlockDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P0Component {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
    pub is_tree: bool,
    pub is_caterpillar: bool,
    /// A longest path, stored for caterpillars with at least three vertices.
    pub longest_path: Option<Vec<Vertex>>,
}

impl P0Component {
    pub fn graph(&self) -> Graph {
        let mut g = Graph::edge_subgraph(&self.edges);
        for &v in &self.vertices {
            g.add_vertex(v);
        }
        g
    }

    /// A single edge, treated by the constructions as a trivial caterpillar.
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarAnalysis {
    pub p0: Graph,
    pub components: Vec<P0Component>,
}

impl CaterpillarAnalysis {
    pub fn all_caterpillars(&self) -> bool {
        self.components.iter().all(|c| c.is_caterpillar)
    }

    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(&v))
    }
}

/// `P₀ = G − ∪ B_t` over all 2-blocks, with each component classified.
pub fn compute_p0(g: &Graph, d: &BlockDecomposition) -> Result<CaterpillarAnalysis> {
    let union = Graph::edge_subgraph(d.two_blocks().flat_map(|b| d.blocks[b].edges.iter()));
    let p0 = g.subtract(&union)?;
    let components = p0
        .components()
        .into_iter()
        .map(|vs| {
            let sub = p0.induced_subgraph(&vs);
            let is_tree = sub.edge_count() + 1 == sub.vertex_count();
            let is_cat = is_tree && is_caterpillar(&sub);
            let longest_path = (is_cat && vs.len() >= 3).then(|| longest_path_in_tree(&sub));
            P0Component {
                edges: sub.edges().collect(),
                vertices: vs,
                is_tree,
                is_caterpillar: is_cat,
                longest_path,
            }
        })
        .collect();
    Ok(CaterpillarAnalysis { p0, components })
}

/// A tree is a caterpillar iff deleting its leaves leaves a path (possibly empty).
pub fn is_caterpillar(tree: &Graph) -> bool {
    let inner: BTreeSet<Vertex> = tree.vertices().filter(|&v| tree.degree(v) > 1).collect();
    let spine = tree.induced_subgraph(&inner);
    spine.is_connected() && spine.vertices().all(|v| spine.degree(v) <= 2)
}

/// Double BFS. Ties go to the smallest identifier; the path starts at its
/// smaller endpoint.
pub fn longest_path_in_tree(tree: &Graph) -> Vec<Vertex> {
    let Some(start) = tree.vertices().find(|&v| tree.degree(v) <= 1) else {
        return Vec::new();
    };
    let (a, _) = farthest(tree, start);
    let (b, parent) = farthest(tree, a);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[&cur];
        path.push(cur);
    }
    if path[0] > *path.last().unwrap() {
        path.reverse();
    }
    path
}

fn farthest(tree: &Graph, s: Vertex) -> (Vertex, BTreeMap<Vertex, Vertex>) {
    let mut dist = BTreeMap::from([(s, 0usize)]);
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in tree.neighbors(u) {
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let best = dist.values().copied().max().unwrap_or(0);
    let far = dist.iter().find(|(_, &d)| d == best).map(|(&v, _)| v).unwrap();
    (far, parent)
}

/// The edges a caterpillar cycle is required to carry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineEdges {
    pub end_edges: (Edge, Edge),
    /// For each internal spine vertex `x_j`, an edge `u_j v_j` of the cycle
    /// with both ends adjacent to `x_j`.
    pub pairs: Vec<(Vertex, Edge)>,
}

pub fn caterpillar_spine_edges(c: &CaterpillarAnalysis, component: usize) -> Result<SpineEdges> {
    let comp = c
        .components
        .get(component)
        .ok_or_else(|| Error::Precondition(format!("no component {component}")))?;
    if !comp.is_caterpillar {
        return Err(Error::NotCaterpillar);
    }
    let spine = comp
        .longest_path
        .as_ref()
        .ok_or(Error::TooSmall { needed: 3, found: comp.vertices.len() })?;
    let cyc = caterpillar_cycle(&comp.graph(), spine)?;
    Ok(SpineEdges { end_edges: cyc.end_edges, pairs: cyc.neighbor_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::graph::named::*;

    fn analyse(g: &Graph) -> CaterpillarAnalysis {
        compute_p0(g, &decompose(g).unwrap()).unwrap()
    }

    #[test]
    fn bowtie_has_empty_p0() {
        let a = analyse(&bowtie());
        assert!(a.p0.is_empty());
        assert!(a.components.is_empty());
    }

    #[test]
    fn path_is_its_own_p0() {
        let a = analyse(&path(4));
        assert_eq!(a.p0, path(4));
        assert_eq!(a.components.len(), 1);
        assert!(a.components[0].is_caterpillar);
        assert_eq!(a.components[0].longest_path, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn triangle_with_pendant_path() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]);
        let a = analyse(&g);
        assert_eq!(a.p0, Graph::from_edges([(0, 3), (3, 4)]));
        assert_eq!(a.components[0].longest_path, Some(vec![0, 3, 4]));
    }

    #[test]
    fn spider_is_not_a_caterpillar() {
        assert!(!is_caterpillar(&spider(3, 2)));
        assert!(is_caterpillar(&star(5)));
        assert!(is_caterpillar(&path(2)));
        assert!(is_caterpillar(&spider(2, 3)));
    }

    #[test]
    fn longest_path_ties_break_low() {
        assert_eq!(longest_path_in_tree(&star(3)), vec![1, 0, 2]);
    }

    #[test]
    fn spine_edges_of_short_path() {
        let a = analyse(&path(3));
        let s = caterpillar_spine_edges(&a, 0).unwrap();
        assert_eq!(s.end_edges, (Edge(0, 1), Edge(1, 2)));
        assert_eq!(s.pairs, vec![(1, Edge(0, 2))]);
    }

    #[test]
    fn spine_edges_of_claw() {
        let a = analyse(&star(3));
        let s = caterpillar_spine_edges(&a, 0).unwrap();
        assert_eq!(s.end_edges, (Edge(0, 1), Edge(0, 2)));
        let (centre, pair) = s.pairs[0];
        assert_eq!(centre, 0);
        assert!(pair.contains(3), "the third leaf must sit on the neighbour pair edge");
    }

    #[test]
    fn spine_edges_reject_small_components() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let a = analyse(&g);
        assert_eq!(a.components.len(), 1);
        assert!(a.components[0].is_trivial());
        assert!(matches!(caterpillar_spine_edges(&a, 0), Err(Error::TooSmall { .. })));
    }
}
