//! Exact sound-cycle deciders built on a product state graph.
//!
//! A state pairs a vertex with the second-component characters emitted by
//! the last `d` steps, oldest first. Taking an edge whose emission is
//! `(s, t)` is allowed only when `s` equals the oldest window character; the
//! window then drops that character and appends `t`. Closed walks in the
//! state graph project onto exactly the sound cycles of the graph.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::graph::{validate_graph, CycleWitness, PairedDbGraph, Symbol, ValidationReport};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("invalid graph:\n{0}")]
    InvalidGraph(ValidationReport),
    #[error("state graph exceeds the cap of {limit} states")]
    ResourceExceeded { limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Cap on materialized states. Seed-search entries are charged against
    /// the same number, separately.
    pub max_states: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateNode {
    pub vertex: usize,
    pub window: Box<[Symbol]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateArc {
    pub from: usize,
    pub to: usize,
    /// Graph edge the arc projects onto.
    pub edge: usize,
}

#[derive(Clone, Debug)]
pub struct StateGraph {
    pub shift: usize,
    pub nodes: Vec<StateNode>,
    pub arcs: Vec<StateArc>,
    out: Vec<Vec<usize>>,
    /// Component id per node; components are numbered in discovery order of
    /// their smallest node.
    pub component: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl StateGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_arcs(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Components that carry at least one closed walk.
    pub fn cyclic_components(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(move |&c| {
            let members = &self.components[c];
            members.len() > 1 || self.out[members[0]].iter().any(|&a| self.arcs[a].to == members[0])
        })
    }

    /// Shortest arc path from `from` to `to` that stays inside one component.
    fn path_within(&self, from: usize, to: usize) -> Vec<usize> {
        if from == to {
            return Vec::new();
        }
        let comp = self.component[from];
        let mut via: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        'search: while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let y = self.arcs[a].to;
                if self.component[y] != comp || y == from || via.contains_key(&y) {
                    continue;
                }
                via.insert(y, a);
                if y == to {
                    break 'search;
                }
                queue.push_back(y);
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let a = via[&cur];
            path.push(a);
            cur = self.arcs[a].from;
        }
        path.reverse();
        path
    }

    /// Shortest closed arc walk through `node`, which must lie in a cyclic component.
    fn cycle_through(&self, node: usize) -> Vec<usize> {
        let comp = self.component[node];
        if let Some(&a) = self.out[node].iter().find(|&&a| self.arcs[a].to == node) {
            return vec![a];
        }
        self.out[node]
            .iter()
            .filter(|&&a| self.component[self.arcs[a].to] == comp)
            .map(|&a| {
                let mut walk = vec![a];
                walk.extend(self.path_within(self.arcs[a].to, node));
                walk
            })
            .min_by_key(Vec::len)
            .expect("node lies on a cycle")
    }

    fn witness(&self, g: &PairedDbGraph, start: usize, arcs: &[usize]) -> CycleWitness {
        let edges: Vec<usize> = arcs.iter().map(|&a| self.arcs[a].edge).collect();
        let walk = g.walk_from_edges(self.nodes[start].vertex, &edges, true);
        CycleWitness::new(walk, self.shift)
    }
}

/// Per-edge emission table: `(s, t)` for every edge, plus the edges bucketed
/// by their `t` character.
struct Emissions {
    pairs: Vec<(Symbol, Symbol)>,
    by_t: HashMap<Symbol, Vec<usize>>,
}

impl Emissions {
    fn new(g: &PairedDbGraph) -> Self {
        let pairs: Vec<(Symbol, Symbol)> = (0..g.edge_count()).map(|e| g.emission(e)).collect();
        let mut by_t: HashMap<Symbol, Vec<usize>> = HashMap::new();
        for (e, &(_, t)) in pairs.iter().enumerate() {
            by_t.entry(t).or_default().push(e);
        }
        Emissions { pairs, by_t }
    }
}

/// Countdown shared by the seed searches.
struct Budget {
    left: usize,
    limit: usize,
}

impl Budget {
    fn charge(&mut self) -> Result<(), SolverError> {
        self.left = self
            .left
            .checked_sub(1)
            .ok_or(SolverError::ResourceExceeded { limit: self.limit })?;
        Ok(())
    }
}

/// Windows `w` at `v` that can occur on a closed sound walk: `w` must be both
/// the second components of some `d`-step walk ending at `v` and the first
/// components of some `d`-step walk leaving `v`. Every state on a state-graph
/// cycle satisfies both conditions. Every frontier entry is charged to
/// `budget`, which is shared across all vertices.
fn seed_windows(
    g: &PairedDbGraph,
    em: &Emissions,
    d: usize,
    v: usize,
    budget: &mut Budget,
) -> Result<Vec<Box<[Symbol]>>, SolverError> {
    if d == 0 {
        return Ok(vec![Box::from([])]);
    }
    // (tip of the backward walk, tip of the forward walk, window so far)
    let mut frontier: HashSet<(usize, usize, Vec<Symbol>)> = HashSet::new();
    for &fe in g.out_edges(v) {
        let s = em.pairs[fe].0;
        for &be in em.by_t.get(&s).into_iter().flatten() {
            frontier.insert((g.edge(be).to, g.edge(fe).to, vec![s]));
        }
    }
    for _ in 1..d {
        let mut next = HashSet::new();
        for (a, b, window) in frontier {
            for &fe in g.out_edges(b) {
                let s = em.pairs[fe].0;
                for &be in g.out_edges(a) {
                    if em.pairs[be].1 == s {
                        let mut w = window.clone();
                        w.push(s);
                        if next.insert((g.edge(be).to, g.edge(fe).to, w)) {
                            budget.charge()?;
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let mut windows: Vec<Box<[Symbol]>> = frontier
        .into_iter()
        .filter(|(a, _, _)| *a == v)
        .map(|(_, _, w)| w.into_boxed_slice())
        .collect();
    windows.sort();
    windows.dedup();
    Ok(windows)
}

/// Builds the state graph for shift `d`, keeping only states reachable from
/// windows that can lie on a closed sound walk.
pub fn build_state_graph(g: &PairedDbGraph, d: usize, config: &SolverConfig) -> Result<StateGraph, SolverError> {
    let report = validate_graph(g);
    if !report.is_valid() {
        return Err(SolverError::InvalidGraph(report));
    }
    let em = Emissions::new(g);
    let mut index: HashMap<StateNode, usize> = HashMap::new();
    let mut nodes: Vec<StateNode> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |node: StateNode, nodes: &mut Vec<StateNode>, queue: &mut VecDeque<usize>| {
        if let Some(&i) = index.get(&node) {
            return Ok(i);
        }
        if nodes.len() >= config.max_states {
            return Err(SolverError::ResourceExceeded {
                limit: config.max_states,
            });
        }
        let i = nodes.len();
        index.insert(node.clone(), i);
        nodes.push(node);
        queue.push_back(i);
        Ok(i)
    };

    let mut budget = Budget {
        left: config.max_states,
        limit: config.max_states,
    };
    for v in 0..g.vertex_count() {
        for window in seed_windows(g, &em, d, v, &mut budget)? {
            intern(StateNode { vertex: v, window }, &mut nodes, &mut queue)?;
        }
    }

    let mut arcs = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let StateNode { vertex, window } = nodes[x].clone();
        for &e in g.out_edges(vertex) {
            let (s, t) = em.pairs[e];
            let next = if d == 0 {
                if s != t {
                    continue;
                }
                Box::from([])
            } else {
                if s != window[0] {
                    continue;
                }
                let mut w = Vec::with_capacity(d);
                w.extend_from_slice(&window[1..]);
                w.push(t);
                w.into_boxed_slice()
            };
            let y = intern(
                StateNode {
                    vertex: g.edge(e).to,
                    window: next,
                },
                &mut nodes,
                &mut queue,
            )?;
            if out.len() <= x {
                out.resize(x + 1, Vec::new());
            }
            out[x].push(arcs.len());
            arcs.push(StateArc {
                from: x,
                to: y,
                edge: e,
            });
        }
    }
    out.resize(nodes.len(), Vec::new());

    let (component, components) = strongly_connected(nodes.len(), &arcs);
    Ok(StateGraph {
        shift: d,
        nodes,
        arcs,
        out,
        component,
        components,
    })
}

fn strongly_connected(n: usize, arcs: &[StateArc]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(n, arcs.len());
    for _ in 0..n {
        pg.add_node(());
    }
    for a in arcs {
        pg.add_edge(NodeIndex::new(a.from), NodeIndex::new(a.to), ());
    }
    let mut components: Vec<Vec<usize>> = kosaraju_scc(&pg)
        .into_iter()
        .map(|c| {
            let mut members: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
            members.sort_unstable();
            members
        })
        .collect();
    components.sort_unstable_by_key(|c| c[0]);
    let mut component = vec![0; n];
    for (id, members) in components.iter().enumerate() {
        for &m in members {
            component[m] = id;
        }
    }
    (component, components)
}

/// Returns a sound cycle for shift `d` if one exists.
pub fn exists_sound_cycle(
    g: &PairedDbGraph,
    d: usize,
    config: &SolverConfig,
) -> Result<Option<CycleWitness>, SolverError> {
    let sg = build_state_graph(g, d, config)?;
    Ok(sound_cycle_in(g, &sg))
}

pub fn sound_cycle_in(g: &PairedDbGraph, sg: &StateGraph) -> Option<CycleWitness> {
    let comp = sg.cyclic_components().next()?;
    let start = sg.components[comp][0];
    Some(sg.witness(g, start, &sg.cycle_through(start)))
}

/// Returns a sound cycle that traverses every edge, if one exists.
///
/// A closed walk inside one strongly connected component of the state graph
/// can take every arc of that component, so such a cycle exists iff the arcs
/// internal to some component project onto the whole edge set.
pub fn exists_covering_sound_cycle(
    g: &PairedDbGraph,
    d: usize,
    config: &SolverConfig,
) -> Result<Option<CycleWitness>, SolverError> {
    let sg = build_state_graph(g, d, config)?;
    Ok(covering_cycle_in(g, &sg))
}

pub fn covering_cycle_in(g: &PairedDbGraph, sg: &StateGraph) -> Option<CycleWitness> {
    if g.edge_count() == 0 {
        return None;
    }
    let cyclic: Vec<usize> = sg.cyclic_components().collect();
    for comp in cyclic {
        // first internal arc per graph edge
        let mut representative: Vec<Option<usize>> = vec![None; g.edge_count()];
        for &x in &sg.components[comp] {
            for &a in &sg.out[x] {
                let arc = sg.arcs[a];
                if sg.component[arc.to] == comp && representative[arc.edge].is_none() {
                    representative[arc.edge] = Some(a);
                }
            }
        }
        if representative.iter().any(Option::is_none) {
            continue;
        }
        let start = sg.components[comp][0];
        let mut covered = vec![false; g.edge_count()];
        let mut walk: Vec<usize> = Vec::new();
        let mut current = start;
        let take = |arcs: Vec<usize>, walk: &mut Vec<usize>, covered: &mut Vec<bool>| {
            for a in arcs {
                covered[sg.arcs[a].edge] = true;
                walk.push(a);
            }
        };
        for (e, rep) in representative.iter().enumerate() {
            if covered[e] {
                continue;
            }
            let a = rep.expect("checked above");
            let mut step = sg.path_within(current, sg.arcs[a].from);
            step.push(a);
            current = sg.arcs[a].to;
            take(step, &mut walk, &mut covered);
        }
        take(sg.path_within(current, start), &mut walk, &mut covered);
        return Some(sg.witness(g, start, &walk));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_covering, is_sound, Alphabet, Bilabel};

    fn graph(k: usize, tokens: &str, vs: &[(&str, &str, &str)], es: &[(&str, &str)]) -> PairedDbGraph {
        let a = Alphabet::new(tokens.split_whitespace()).unwrap();
        let mut g = PairedDbGraph::new(k, a.clone());
        for &(id, f, s) in vs {
            let split = |x: &str| x.chars().map(|c| c.to_string()).collect::<Vec<_>>();
            g.add_vertex(id, a.bilabel(&split(f), &split(s)).unwrap()).unwrap();
        }
        for &(u, v) in es {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    fn digon() -> PairedDbGraph {
        graph(1, "a b", &[("x", "a", "b"), ("y", "b", "a")], &[("x", "y"), ("y", "x")])
    }

    #[test]
    fn single_loop_state_graph() {
        let g = graph(1, "a", &[("v", "a", "a")], &[("v", "v")]);
        let sg = build_state_graph(&g, 1, &SolverConfig::default()).unwrap();
        assert_eq!(sg.node_count(), 1);
        assert_eq!(sg.arc_count(), 1);
        let w = covering_cycle_in(&g, &sg).unwrap();
        assert_eq!(w.walk.vertices, vec!["v"]);
    }

    #[test]
    fn digon_state_graph_is_one_cycle() {
        let g = digon();
        let sg = build_state_graph(&g, 1, &SolverConfig::default()).unwrap();
        assert_eq!(sg.node_count(), 2);
        assert_eq!(sg.arc_count(), 2);
        assert_eq!(sg.cyclic_components().count(), 1);
        let w = sound_cycle_in(&g, &sg).unwrap();
        assert_eq!(w.len(), 2);
        assert!(is_sound(&g, &w.walk, 1).unwrap());
    }

    #[test]
    fn digon_has_no_zero_shift_cycle() {
        let g = digon();
        assert_eq!(exists_sound_cycle(&g, 0, &SolverConfig::default()).unwrap(), None);
    }

    #[test]
    fn disjoint_loops_have_no_covering_cycle() {
        let g = graph(1, "a b", &[("x", "a", "a"), ("y", "b", "b")], &[("x", "x"), ("y", "y")]);
        let cfg = SolverConfig::default();
        assert!(exists_sound_cycle(&g, 1, &cfg).unwrap().is_some());
        assert_eq!(exists_covering_sound_cycle(&g, 1, &cfg).unwrap(), None);
    }

    #[test]
    fn covering_witness_is_sound_and_covering() {
        // two loops joined by a digon; covering forces both aa and bb, so
        // period 2 is impossible while xxyy works at shift 4
        let g = graph(
            1,
            "a b",
            &[("x", "a", "a"), ("y", "b", "b")],
            &[("x", "x"), ("y", "y"), ("x", "y"), ("y", "x")],
        );
        let cfg = SolverConfig::default();
        assert_eq!(exists_covering_sound_cycle(&g, 2, &cfg).unwrap(), None);
        let w = exists_covering_sound_cycle(&g, 4, &cfg).unwrap().unwrap();
        assert!(is_sound(&g, &w.walk, 4).unwrap());
        assert!(is_covering(&g, &w.walk).unwrap());
    }

    #[test]
    fn invalid_graph_rejected() {
        let g = graph(1, "a b", &[("x", "a", "b"), ("y", "a", "b")], &[]);
        assert!(matches!(
            exists_sound_cycle(&g, 1, &SolverConfig::default()),
            Err(SolverError::InvalidGraph(_))
        ));
    }

    #[test]
    fn cap_is_reported_not_answered() {
        let g = digon();
        assert_eq!(
            exists_sound_cycle(&g, 1, &SolverConfig { max_states: 1 }),
            Err(SolverError::ResourceExceeded { limit: 1 })
        );
    }

    #[test]
    fn order_zero_uses_edge_labels() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let mut g = PairedDbGraph::new(0, a.clone());
        g.add_vertex("o", Bilabel::new(vec![], vec![]).unwrap()).unwrap();
        g.add_labeled_edge("o", "o", a.bilabel(&["x"], &["y"]).unwrap())
            .unwrap();
        g.add_labeled_edge("o", "o", a.bilabel(&["y"], &["x"]).unwrap())
            .unwrap();
        let cfg = SolverConfig::default();
        let w = exists_covering_sound_cycle(&g, 1, &cfg).unwrap().unwrap();
        assert!(is_sound(&g, &w.walk, 1).unwrap());
        assert!(is_covering(&g, &w.walk).unwrap());
        assert_eq!(exists_sound_cycle(&g, 0, &cfg).unwrap(), None);
    }

    #[test]
    fn witnesses_are_deterministic() {
        let g = digon();
        let cfg = SolverConfig::default();
        let a = exists_covering_sound_cycle(&g, 3, &cfg).unwrap();
        let b = exists_covering_sound_cycle(&g, 3, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
