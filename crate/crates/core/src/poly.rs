//! Polynomial deciders for unary alphabets and order-0 graphs.

use std::collections::BTreeSet;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::graph::{PairedDbGraph, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unary-alphabet decider called on an alphabet of size {0}")]
    NotUnary(usize),
    #[error("order-0 decider called on a graph of order {0}")]
    NotOrderZero(usize),
}

/// Digraph on the alphabet with an arc `(x, y)` for every order-0 edge
/// bilabelled `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharDigraph {
    pub node_count: usize,
    pub arcs: BTreeSet<(Symbol, Symbol)>,
}

impl CharDigraph {
    pub fn new(node_count: usize, arcs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        let arcs: BTreeSet<_> = arcs.into_iter().collect();
        debug_assert!(arcs
            .iter()
            .all(|(x, y)| x.index() < node_count && y.index() < node_count));
        CharDigraph { node_count, arcs }
    }

    /// Strongly connected component id of every node.
    fn components(&self) -> Vec<usize> {
        let mut pg: DiGraph<(), ()> = DiGraph::new();
        for _ in 0..self.node_count {
            pg.add_node(());
        }
        for &(x, y) in &self.arcs {
            pg.add_edge(NodeIndex::new(x.index()), NodeIndex::new(y.index()), ());
        }
        let mut id = vec![0; self.node_count];
        for (c, members) in kosaraju_scc(&pg).into_iter().enumerate() {
            for m in members {
                id[m.index()] = c;
            }
        }
        id
    }

    pub fn has_cycle(&self) -> bool {
        let comp = self.components();
        let mut size = vec![0usize; self.node_count];
        for &c in &comp {
            size[c] += 1;
        }
        self.arcs
            .iter()
            .any(|&(x, y)| x == y || (comp[x.index()] == comp[y.index()] && size[comp[x.index()]] > 1))
    }
}

/// Decides both variants when the alphabet has a single symbol: the graph
/// has at most one vertex and one edge, and every cycle is sound.
pub fn solve_unary_alphabet(g: &PairedDbGraph, _shift: usize, _covering: bool) -> Result<bool, PolyError> {
    if g.alphabet().len() != 1 {
        return Err(PolyError::NotUnary(g.alphabet().len()));
    }
    Ok(g.edge_count() > 0)
}

pub fn project_k0(g: &PairedDbGraph) -> Result<CharDigraph, PolyError> {
    if g.k() != 0 {
        return Err(PolyError::NotOrderZero(g.k()));
    }
    let arcs = (0..g.edge_count()).map(|e| g.emission(e));
    Ok(CharDigraph::new(g.alphabet().len(), arcs))
}

/// Minimum number of closed walks covering every arc: `None` when some arc
/// lies on no cycle, otherwise the number of components carrying an arc.
pub fn min_closed_walk_cover_count(h: &CharDigraph) -> Option<usize> {
    let comp = h.components();
    let mut bearing = BTreeSet::new();
    for &(x, y) in &h.arcs {
        if comp[x.index()] != comp[y.index()] {
            return None;
        }
        bearing.insert(comp[x.index()]);
    }
    Some(bearing.len())
}

/// Order-0 decider.
///
/// A sound cycle interleaves `gcd(n, d)` closed walks of the character
/// digraph, so a sound cycle exists iff that digraph has a cycle, and a
/// covering one exists iff at most `d` closed walks cover every arc. With
/// `d = 0` each step must read the same character twice, i.e. use a loop.
pub fn solve_k0(g: &PairedDbGraph, shift: usize, covering: bool) -> Result<bool, PolyError> {
    let h = project_k0(g)?;
    if shift == 0 {
        let loops = h.arcs.iter().filter(|(x, y)| x == y).count();
        return Ok(if covering {
            loops > 0 && loops == h.arcs.len()
        } else {
            loops > 0
        });
    }
    if !covering {
        return Ok(h.has_cycle());
    }
    Ok(matches!(min_closed_walk_cover_count(&h), Some(c) if c >= 1 && c <= shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Alphabet, Bilabel};

    fn k0(tokens: &str, labels: &[(&str, &str)]) -> PairedDbGraph {
        let a = Alphabet::new(tokens.split_whitespace()).unwrap();
        let mut g = PairedDbGraph::new(0, a.clone());
        g.add_vertex("o", Bilabel::new(vec![], vec![]).unwrap()).unwrap();
        for (x, y) in labels {
            g.add_labeled_edge("o", "o", a.bilabel(&[x], &[y]).unwrap()).unwrap();
        }
        g
    }

    fn sym(i: u32) -> Symbol {
        Symbol(i)
    }

    #[test]
    fn unary_alphabet() {
        let a = Alphabet::new(["a"]).unwrap();
        let mut g = PairedDbGraph::new(2, a.clone());
        assert!(!solve_unary_alphabet(&g, 3, false).unwrap());
        g.add_vertex("v", a.bilabel(&["a", "a"], &["a", "a"]).unwrap()).unwrap();
        assert!(!solve_unary_alphabet(&g, 3, true).unwrap());
        g.add_edge("v", "v").unwrap();
        assert!(solve_unary_alphabet(&g, 3, false).unwrap());
        assert!(solve_unary_alphabet(&g, 3, true).unwrap());

        let binary = PairedDbGraph::new(1, Alphabet::new(["a", "b"]).unwrap());
        assert_eq!(solve_unary_alphabet(&binary, 1, false), Err(PolyError::NotUnary(2)));
    }

    #[test]
    fn projection() {
        let g = k0("x y", &[("x", "y"), ("y", "x")]);
        let h = project_k0(&g).unwrap();
        assert_eq!(h.arcs, BTreeSet::from([(sym(0), sym(1)), (sym(1), sym(0))]));
        assert!(project_k0(&k0("x y", &[])).unwrap().arcs.is_empty());

        let all = k0("x y", &[("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")]);
        assert_eq!(project_k0(&all).unwrap().arcs.len(), 4);

        let order_one = PairedDbGraph::new(1, Alphabet::new(["x"]).unwrap());
        assert_eq!(project_k0(&order_one), Err(PolyError::NotOrderZero(1)));
    }

    #[test]
    fn digon_covering() {
        let g = k0("x y", &[("x", "y"), ("y", "x")]);
        assert!(solve_k0(&g, 1, true).unwrap());
        assert!(solve_k0(&g, 1, false).unwrap());
        assert!(!solve_k0(&g, 0, false).unwrap());
    }

    #[test]
    fn two_loops_need_two_walks() {
        let g = k0("x y", &[("x", "x"), ("y", "y")]);
        assert!(!solve_k0(&g, 1, true).unwrap());
        assert!(solve_k0(&g, 2, true).unwrap());
        assert!(solve_k0(&g, 0, true).unwrap());
    }

    #[test]
    fn arcless_has_no_cycle() {
        let g = k0("x y", &[]);
        for d in 0..4 {
            assert!(!solve_k0(&g, d, false).unwrap());
            assert!(!solve_k0(&g, d, true).unwrap());
        }
    }

    #[test]
    fn large_alphabets_are_fast() {
        let start = std::time::Instant::now();
        for seed in 0..20 {
            let (g, d) = crate::gen::random_k0_instance(50, 6, seed);
            solve_k0(&g, d, false).unwrap();
            solve_k0(&g, d, true).unwrap();
        }
        assert!(start.elapsed() < std::time::Duration::from_secs(5));
    }

    #[test]
    fn cover_counts() {
        let digon = CharDigraph::new(2, [(sym(0), sym(1)), (sym(1), sym(0))]);
        assert_eq!(min_closed_walk_cover_count(&digon), Some(1));
        let path = CharDigraph::new(2, [(sym(0), sym(1))]);
        assert_eq!(min_closed_walk_cover_count(&path), None);
        let two = CharDigraph::new(
            4,
            [(sym(0), sym(1)), (sym(1), sym(0)), (sym(2), sym(3)), (sym(3), sym(2))],
        );
        assert_eq!(min_closed_walk_cover_count(&two), Some(2));
    }
}
