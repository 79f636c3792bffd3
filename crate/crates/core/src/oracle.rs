//! Brute-force ground truth.
//!
//! Everything here works straight from the definitions of spelling and
//! shift matching and never touches the state-graph solver.

use std::collections::HashSet;

use crate::graph::{is_sound, CycleWitness, PairedDbGraph, Symbol};
use crate::poly::CharDigraph;
use crate::undirected::UndirectedGraph;

struct Enumerator<'g> {
    g: &'g PairedDbGraph,
    shift: usize,
    /// Position of each vertex in id order.
    rank: Vec<usize>,
    emissions: Vec<(Symbol, Symbol)>,
    edges: Vec<usize>,
    firsts: Vec<Symbol>,
    seconds: Vec<Symbol>,
    reached_depth: bool,
}

impl<'g> Enumerator<'g> {
    fn new(g: &'g PairedDbGraph, shift: usize) -> Self {
        let mut by_id: Vec<usize> = (0..g.vertex_count()).collect();
        by_id.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));
        let mut rank = vec![0; g.vertex_count()];
        for (r, &v) in by_id.iter().enumerate() {
            rank[v] = r;
        }
        Enumerator {
            g,
            shift,
            rank,
            emissions: (0..g.edge_count()).map(|e| g.emission(e)).collect(),
            edges: Vec::new(),
            firsts: Vec::new(),
            seconds: Vec::new(),
            reached_depth: false,
        }
    }

    /// Visits every closed walk of exactly `len` steps that is listed in its
    /// canonical rotation and spells a sound pair. Stops once `visit`
    /// returns `true`.
    fn closed_walks(&mut self, len: usize, visit: &mut dyn FnMut(CycleWitness) -> bool) -> bool {
        self.reached_depth = false;
        let mut starts: Vec<usize> = (0..self.g.vertex_count()).collect();
        starts.sort_by_key(|&v| self.rank[v]);
        for start in starts {
            if self.extend(start, start, len, visit) {
                return true;
            }
        }
        false
    }

    fn extend(&mut self, start: usize, at: usize, len: usize, visit: &mut dyn FnMut(CycleWitness) -> bool) -> bool {
        let g = self.g;
        if self.edges.len() == len {
            self.reached_depth = true;
            if at != start || !self.is_canonical() {
                return false;
            }
            let walk = g.walk_from_edges(start, &self.edges, true);
            if is_sound(g, &walk, self.shift).expect("enumerated walk is valid") {
                return visit(CycleWitness::new(walk, self.shift));
            }
            return false;
        }
        for &e in g.out_edges(at) {
            let to = g.edge(e).to;
            if self.rank[to] < self.rank[start] {
                continue;
            }
            let (s, t) = self.emissions[e];
            let m = self.firsts.len();
            // the spelled strings of every rotation must match linearly
            let partner = match self.shift {
                0 => Some(t),
                d if m >= d => Some(self.seconds[m - d]),
                _ => None,
            };
            if partner.is_some_and(|p| p != s) {
                continue;
            }
            self.edges.push(e);
            self.firsts.push(s);
            self.seconds.push(t);
            let stop = self.extend(start, to, len, visit);
            self.edges.pop();
            self.firsts.pop();
            self.seconds.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn step_key(&self, i: usize) -> (usize, usize) {
        let e = self.edges[i];
        (self.rank[self.g.edge(e).from], e)
    }

    fn is_canonical(&self) -> bool {
        let n = self.edges.len();
        (1..n).all(|r| {
            for i in 0..n {
                let (a, b) = (self.step_key(i), self.step_key((i + r) % n));
                if a != b {
                    return a < b;
                }
            }
            true
        })
    }
}

/// All sound closed walks of at most `max_len` steps, one per rotation class,
/// shortest first. A class is represented by its rotation with the smallest
/// sequence of (tail vertex id, edge index) steps, which keeps parallel
/// order-0 loops apart.
pub fn enumerate_sound_cycles(g: &PairedDbGraph, shift: usize, max_len: usize) -> Vec<CycleWitness> {
    let mut found = Vec::new();
    let mut en = Enumerator::new(g, shift);
    for len in 1..=max_len {
        en.closed_walks(len, &mut |w| {
            found.push(w);
            false
        });
        if !en.reached_depth {
            break;
        }
    }
    found
}

/// Shortest sound closed walk of at most `max_len` steps, by iterative deepening.
pub fn find_sound_cycle(g: &PairedDbGraph, shift: usize, max_len: usize) -> Option<CycleWitness> {
    let mut en = Enumerator::new(g, shift);
    for len in 1..=max_len {
        let mut hit = None;
        en.closed_walks(len, &mut |w| {
            hit = Some(w);
            true
        });
        if hit.is_some() {
            return hit;
        }
        // no walk of this length passes the prefix test, hence none longer does
        if !en.reached_depth {
            return None;
        }
    }
    None
}

/// Minimum number of closed walks of at most `max_len` arcs each that
/// together cover every arc, if at most `max_walks` suffice.
///
/// Supports up to 64 arcs.
pub fn brute_cover_count(h: &CharDigraph, max_walks: usize, max_len: usize) -> Option<usize> {
    let arcs: Vec<(Symbol, Symbol)> = h.arcs.iter().copied().collect();
    assert!(arcs.len() <= 64, "brute_cover_count supports at most 64 arcs");
    let full: u64 = if arcs.len() == 64 {
        u64::MAX
    } else {
        (1u64 << arcs.len()) - 1
    };
    if full == 0 {
        return Some(0);
    }
    let mut walk_masks: HashSet<u64> = HashSet::new();
    for start in 0..h.node_count {
        let mut seen: HashSet<(usize, u64)> = HashSet::new();
        let mut layer = vec![(start, 0u64)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for &(at, mask) in &layer {
                for (i, &(x, y)) in arcs.iter().enumerate() {
                    if x.index() != at {
                        continue;
                    }
                    let state = (y.index(), mask | 1 << i);
                    if y.index() == start {
                        walk_masks.insert(state.1);
                    }
                    if seen.insert(state) {
                        next.push(state);
                    }
                }
            }
            layer = next;
        }
    }
    let mut reached: HashSet<u64> = HashSet::from([0]);
    for count in 1..=max_walks {
        let mut next = reached.clone();
        for &m in &reached {
            for &w in &walk_masks {
                next.insert(m | w);
            }
        }
        if next.contains(&full) {
            return Some(count);
        }
        if next.len() == reached.len() {
            return None;
        }
        reached = next;
    }
    None
}

fn ham_search(g: &UndirectedGraph, order: &mut Vec<usize>, used: &mut [bool], closed: bool) -> bool {
    if order.len() == g.n() {
        return !closed || g.n() == 1 || g.has_edge(order[0], *order.last().unwrap());
    }
    let last = *order.last().unwrap();
    let next: Vec<usize> = g.neighbors(last).filter(|&v| !used[v]).collect();
    for v in next {
        used[v] = true;
        order.push(v);
        if ham_search(g, order, used, closed) {
            return true;
        }
        order.pop();
        used[v] = false;
    }
    false
}

/// Exhaustive backtracking search for a hamiltonian cycle (vertex order).
pub fn find_ham_cycle(g: &UndirectedGraph) -> Option<Vec<usize>> {
    if g.n() == 0 || g.n() == 2 {
        return None;
    }
    let mut used = vec![false; g.n() + 1];
    used[1] = true;
    let mut order = vec![1];
    ham_search(g, &mut order, &mut used, true).then_some(order)
}

/// Exhaustive backtracking search for a hamiltonian path.
pub fn find_ham_path(g: &UndirectedGraph) -> Option<Vec<usize>> {
    for start in 1..=g.n() {
        let mut used = vec![false; g.n() + 1];
        used[start] = true;
        let mut order = vec![start];
        if ham_search(g, &mut order, &mut used, false) {
            return Some(order);
        }
    }
    None
}
