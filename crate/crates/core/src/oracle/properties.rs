//! Exhaustive checks of the hamiltonian properties of 2-blocks.

use serde::{Deserialize, Serialize};

use super::{find_ham_cycle, find_ham_path, EdgeConstrainedSearch, SearchOutcome};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropertyKind {
    /// A hamiltonian cycle of the square through distinct original edges
    /// at any `k` prescribed vertices.
    H(usize),
    /// For any `{x1, x2, x3, x4}`, an `x1`–`x2` hamiltonian path with
    /// distinct original edges at `x3` and `x4`.
    F4,
    /// For any `x1, x2, x3` and either end, an `x1`–`x2` hamiltonian path
    /// with distinct original edges at `x3` and at the chosen end.
    StrongF3,
    /// For any `x, y`, an `x`–`y` hamiltonian path with an original edge at
    /// `x` and either an original edge at `y` or an edge joining two
    /// neighbours of `y`.
    StrongF3Ends,
    /// For any `v, w`, a hamiltonian cycle whose edges at `v` are both
    /// original, plus one more original edge at `w`.
    TwoBlockCycle,
}

impl PropertyKind {
    fn min_order(self) -> usize {
        match self {
            PropertyKind::H(k) => k.max(3),
            PropertyKind::F4 => 4,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub holds: bool,
    /// The first tuple for which no witness exists.
    pub counterexample: Option<Vec<Vertex>>,
    pub tuples_checked: usize,
}

/// Quantifies the property over every vertex tuple of the 2-block `b`.
pub fn verify_property(kind: PropertyKind, b: &Graph) -> Result<PropertyCheck> {
    let d = decompose(b)?;
    if b.vertex_count() < 3 || d.blocks.len() != 1 {
        return Err(Error::NotTwoBlock);
    }
    if b.vertex_count() < kind.min_order() {
        return Err(Error::TooSmall { needed: kind.min_order(), found: b.vertex_count() });
    }
    let sq = b.square();
    let vs: Vec<Vertex> = b.vertices().collect();
    let mut checked = 0;
    for tuple in tuples(kind, &vs) {
        checked += 1;
        if !tuple_holds(kind, b, &sq, &tuple)? {
            return Ok(PropertyCheck { holds: false, counterexample: Some(tuple), tuples_checked: checked });
        }
    }
    Ok(PropertyCheck { holds: true, counterexample: None, tuples_checked: checked })
}

/// The first graph in `candidates` with more than four vertices that is a
/// 2-block lacking the five-vertex property.
pub fn find_h5_violator<'g>(candidates: impl IntoIterator<Item = &'g Graph>) -> Result<Option<(Graph, Vec<Vertex>)>> {
    for g in candidates {
        if g.vertex_count() <= 4 || verify_property(PropertyKind::H(5), g).is_err() {
            continue;
        }
        let check = verify_property(PropertyKind::H(5), g)?;
        if let Some(t) = check.counterexample {
            return Ok(Some((g.clone(), t)));
        }
    }
    Ok(None)
}

fn tuples(kind: PropertyKind, vs: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = vs.len();
    let mut out = Vec::new();
    match kind {
        PropertyKind::H(k) => {
            let mut idx: Vec<usize> = (0..k).collect();
            if k > n {
                return out;
            }
            loop {
                out.push(idx.iter().map(|&i| vs[i]).collect());
                let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { break };
                idx[p] += 1;
                for q in p + 1..k {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        PropertyKind::F4 => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in 0..n {
                        for d in c + 1..n {
                            if [c, d].iter().all(|&t| t != a && t != b) {
                                out.push(vec![vs[a], vs[b], vs[c], vs[d]]);
                            }
                        }
                    }
                }
            }
        }
        PropertyKind::StrongF3 => {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && b != c && a != c {
                            out.push(vec![vs[a], vs[b], vs[c]]);
                        }
                    }
                }
            }
        }
        PropertyKind::StrongF3Ends | PropertyKind::TwoBlockCycle => {
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        out.push(vec![vs[a], vs[b]]);
                    }
                }
            }
        }
    }
    out
}

fn tuple_holds(kind: PropertyKind, b: &Graph, sq: &Graph, t: &[Vertex]) -> Result<bool> {
    let found = |o: SearchOutcome| match o {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::Absent => Ok(false),
        SearchOutcome::BudgetExceeded(_) => Err(Error::Internal("unbounded search hit a budget".into())),
    };
    match kind {
        PropertyKind::H(_) => {
            let s = t.iter().fold(EdgeConstrainedSearch::cycle(sq, b), |s, &v| s.require_incidence(v, 1));
            found(find_ham_cycle(&s)?)
        }
        PropertyKind::F4 => {
            let s = EdgeConstrainedSearch::path(sq, b, t[0], t[1])
                .require_incidence(t[2], 1)
                .require_incidence(t[3], 1);
            found(find_ham_path(&s)?)
        }
        PropertyKind::StrongF3 => {
            let s = EdgeConstrainedSearch::path(sq, b, t[0], t[1])
                .require_incidence(t[2], 1)
                .require_incidence(t[0], 1);
            found(find_ham_path(&s)?)
        }
        PropertyKind::StrongF3Ends => {
            let base = EdgeConstrainedSearch::path(sq, b, t[0], t[1]).require_incidence(t[0], 1);
            if found(find_ham_path(&base.clone().require_incidence(t[1], 1))?)? {
                return Ok(true);
            }
            found(find_ham_path(&base.require_neighbor_pair(t[1]))?)
        }
        PropertyKind::TwoBlockCycle => {
            let s = EdgeConstrainedSearch::cycle(sq, b).require_incidence(t[0], 2).require_incidence(t[1], 1);
            found(find_ham_cycle(&s)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn k4_has_h4() {
        let r = verify_property(PropertyKind::H(4), &complete(4)).unwrap();
        assert!(r.holds);
        assert_eq!(r.tuples_checked, 1);
    }

    #[test]
    fn triangle_strong_f3() {
        assert!(verify_property(PropertyKind::StrongF3, &cycle(3)).unwrap().holds);
    }

    #[test]
    fn c5_f4() {
        let r = verify_property(PropertyKind::F4, &cycle(5)).unwrap();
        assert!(r.holds);
        assert_eq!(r.tuples_checked, 30);
    }

    #[test]
    fn k23_lacks_h5() {
        let r = verify_property(PropertyKind::H(5), &complete_bipartite(2, 3)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample.unwrap().len(), 5);
    }

    #[test]
    fn rejects_non_blocks() {
        assert_eq!(verify_property(PropertyKind::F4, &path(4)), Err(Error::NotTwoBlock));
        assert!(matches!(verify_property(PropertyKind::F4, &cycle(3)), Err(Error::TooSmall { .. })));
    }
}
