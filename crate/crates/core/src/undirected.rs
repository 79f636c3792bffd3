//! Simple undirected graphs and hamiltonian cycles over them.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UndirectedError {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("hamiltonian cycle must list every vertex exactly once")]
    NotPermutation,
    #[error("consecutive cycle vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, UndirectedError> {
        let mut g = UndirectedGraph {
            n,
            edges: BTreeSet::new(),
            adjacency: vec![BTreeSet::new(); n + 1],
        };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), UndirectedError> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(UndirectedError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(UndirectedError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(smaller, larger)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Self {
        let edges = (1..=n).map(|u| (u, u % n + 1));
        Self::new(n, edges).expect("cycle graph")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|u| (u, u + 1))).expect("path graph")
    }

    /// Two triangles sharing vertex 3.
    pub fn bowtie() -> Self {
        Self::new(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]).expect("bowtie")
    }

    /// `K_{1,3}` with centre 1.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).expect("star")
    }

    /// Checks that `order` is a hamiltonian path of this graph.
    pub fn is_ham_path(&self, order: &[usize]) -> bool {
        let mut seen = vec![false; self.n + 1];
        order.len() == self.n
            && order.iter().all(|&v| {
                let fresh = v >= 1 && v <= self.n && !seen[v];
                if fresh {
                    seen[v] = true;
                }
                fresh
            })
            && order.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// A hamiltonian cycle, stored as the vertex order along the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamCycle {
    order: Vec<usize>,
}

impl HamCycle {
    pub fn new(g: &UndirectedGraph, order: Vec<usize>) -> Result<Self, UndirectedError> {
        let mut seen = vec![false; g.n() + 1];
        for &v in &order {
            if v == 0 || v > g.n() {
                return Err(UndirectedError::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(UndirectedError::NotPermutation);
            }
        }
        if order.len() != g.n() {
            return Err(UndirectedError::NotPermutation);
        }
        let n = order.len();
        for i in 0..n {
            let (u, v) = (order[i], order[(i + 1) % n]);
            if n > 1 && !g.has_edge(u, v) {
                return Err(UndirectedError::NotAdjacent(u, v));
            }
        }
        Ok(HamCycle { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(UndirectedGraph::complete(4).edge_count(), 6);
        assert_eq!(UndirectedGraph::cycle(5).edge_count(), 5);
        assert_eq!(UndirectedGraph::bowtie().edge_count(), 6);
        assert_eq!(UndirectedGraph::star(3).degree(1), 3);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            UndirectedGraph::new(3, [(1, 4)]),
            Err(UndirectedError::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(UndirectedGraph::new(3, [(2, 2)]), Err(UndirectedError::SelfLoop(2)));
    }

    #[test]
    fn ham_cycle_validation() {
        let c4 = UndirectedGraph::cycle(4);
        assert!(HamCycle::new(&c4, vec![1, 2, 3, 4]).is_ok());
        assert_eq!(
            HamCycle::new(&c4, vec![1, 3, 2, 4]),
            Err(UndirectedError::NotAdjacent(1, 3))
        );
        assert_eq!(HamCycle::new(&c4, vec![1, 2, 3]), Err(UndirectedError::NotPermutation));
        assert_eq!(
            HamCycle::new(&c4, vec![1, 2, 2, 4]),
            Err(UndirectedError::NotPermutation)
        );
    }
}
