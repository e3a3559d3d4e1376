//! The block-cutvertex tree and a tag-preserving isomorphism test.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomposition::{BlockDecomposition, BlockId};
use crate::graph::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BcNode {
    Block { id: BlockId, two_block: bool },
    Cut(Vertex),
}

impl BcNode {
    fn tag(&self) -> char {
        match self {
            BcNode::Block { two_block: true, .. } => 'T',
            BcNode::Block { two_block: false, .. } => 'R',
            BcNode::Cut(_) => 'C',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcTree {
    pub nodes: Vec<BcNode>,
    pub adj: Vec<Vec<usize>>,
}

impl BcTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_tree(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        if self.edge_count() + 1 != self.node_count() {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Indices of leaf nodes (degree at most one).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.adj[i].len() <= 1).collect()
    }

    /// A string that is equal for two trees exactly when a tag-preserving
    /// isomorphism exists (AHU encoding rooted at the centre).
    pub fn canonical_form(&self) -> String {
        let n = self.nodes.len();
        if n == 0 {
            return String::new();
        }
        self.centres()
            .into_iter()
            .map(|c| self.encode(c, usize::MAX))
            .min()
            .unwrap()
    }

    fn centres(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &w in &self.adj[leaf] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    fn encode(&self, node: usize, parent: usize) -> String {
        let mut children: Vec<String> = self.adj[node]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.encode(w, node))
            .collect();
        children.sort();
        let mut s = String::new();
        let _ = write!(s, "({}", self.nodes[node].tag());
        for c in children {
            s.push_str(&c);
        }
        s.push(')');
        s
    }

    /// Graphviz rendering: boxes for blocks, circles for cutvertices.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bc {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = match node {
                BcNode::Block { id, two_block } => writeln!(
                    out,
                    "  n{i} [shape=box, label=\"B{id}{}\"];",
                    if *two_block { "" } else { " (bridge)" }
                ),
                BcNode::Cut(v) => writeln!(out, "  n{i} [shape=circle, label=\"{v}\"];"),
            };
        }
        for (i, ns) in self.adj.iter().enumerate() {
            for &j in ns.iter().filter(|&&j| j > i) {
                let _ = writeln!(out, "  n{i} -- n{j};");
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn bc_tree(d: &BlockDecomposition) -> BcTree {
    let mut nodes: Vec<BcNode> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(id, b)| BcNode::Block { id, two_block: b.is_two_block() })
        .collect();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &c in &d.cutvertices {
        let idx = nodes.len();
        nodes.push(BcNode::Cut(c));
        adj.push(Vec::new());
        for &b in &d.blocks_of[&c] {
            adj[idx].push(b);
            adj[b].push(idx);
        }
    }
    BcTree { nodes, adj }
}

pub fn bc_isomorphic(a: &BcTree, b: &BcTree) -> bool {
    a.node_count() == b.node_count() && a.canonical_form() == b.canonical_form()
}
