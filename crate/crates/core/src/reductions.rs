//! Hardness constructions: hamiltonian-cycle instances are turned into
//! paired de Bruijn graphs whose sound cycles mirror hamiltonian paths, then
//! optionally lifted to a larger order or re-encoded over a binary alphabet.
//!
//! Naming is structured so that generated instances stay traceable:
//! separators `s{i}`, block vertices `v{i}_{j}` / `v{i}_{j}'` / `v{i}_{j}''`,
//! lifted chains `L:{id}#{m}` and binary edge paths `B:e{idx}#{offset}`.

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use thiserror::Error;

use crate::graph::{validate_graph, Alphabet, Bilabel, CycleWitness, PairedDbGraph, Walk};
use crate::undirected::{HamCycle, UndirectedError, UndirectedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("construction needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error(transparent)]
    Undirected(#[from] UndirectedError),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("third vertex {0} must differ from both edge endpoints")]
    ThirdVertexOnEdge(usize),
    #[error("source graph must have order 1, got {0}")]
    NotOrderOne(usize),
    #[error("source graph is invalid:\n{0}")]
    InvalidSource(crate::graph::ValidationReport),
    #[error("lifted order must be at least 1")]
    ZeroOrder,
    #[error("padding token `{0}` already belongs to the alphabet")]
    PaddingCollision(String),
    #[error("binary encoding needs an alphabet of at least 2 symbols, got {0}")]
    AlphabetTooSmall(usize),
    #[error("window at offset {offset} of edge {edge} repeats a window from offset {other}")]
    UndesiredOverlap { edge: usize, offset: usize, other: usize },
    #[error("trace `{0}` does not transport walks")]
    NotWalkTrace(String),
    #[error("witness shift {found} does not match the reduction input shift {expected}")]
    ShiftMismatch { expected: usize, found: usize },
    #[error("trace has no image for `{0}`")]
    MissingImage(String),
}

/// Maps a source instance onto the instance a reduction produced.
///
/// `vertex_map` sends each source vertex to its target vertices (a chain for
/// lifting). `edge_map` sends each source edge to target vertex paths; for the
/// walk-transporting stages it holds one path that starts at the last image
/// of the tail and ends at the first image of the head.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub stage: String,
    pub vertex_map: IndexMap<String, Vec<String>>,
    pub edge_map: IndexMap<(String, String), Vec<Vec<String>>>,
    pub shift_in: Option<usize>,
    pub shift_out: Option<usize>,
}

impl ReductionTrace {
    fn new(stage: &str) -> Self {
        ReductionTrace {
            stage: stage.to_string(),
            ..Default::default()
        }
    }

    /// Transports a closed walk of the source through a lift or binarize trace.
    pub fn map_cycle(&self, witness: &CycleWitness) -> Result<CycleWitness, ReductionError> {
        let (Some(shift_in), Some(shift_out)) = (self.shift_in, self.shift_out) else {
            return Err(ReductionError::NotWalkTrace(self.stage.clone()));
        };
        if !matches!(self.stage.as_str(), "lift" | "binarize") {
            return Err(ReductionError::NotWalkTrace(self.stage.clone()));
        }
        if witness.shift != shift_in {
            return Err(ReductionError::ShiftMismatch {
                expected: shift_in,
                found: witness.shift,
            });
        }
        let vs = &witness.walk.vertices;
        let mut image = Vec::new();
        for i in 0..vs.len() {
            let (x, y) = (&vs[i], &vs[(i + 1) % vs.len()]);
            let chain = self
                .vertex_map
                .get(x)
                .ok_or_else(|| ReductionError::MissingImage(x.clone()))?;
            let path = self
                .edge_map
                .get(&(x.clone(), y.clone()))
                .and_then(|paths| paths.first())
                .ok_or_else(|| ReductionError::MissingImage(format!("{x} -> {y}")))?;
            image.extend_from_slice(&chain[..chain.len() - 1]);
            image.extend_from_slice(&path[..path.len() - 1]);
        }
        Ok(CycleWitness::new(Walk::closed(image), shift_out))
    }
}

fn vname(i: usize) -> String {
    format!("v{i}")
}

/// Builds the graph in which a hamiltonian cycle exists iff one existed in
/// `g`, and a hamiltonian path exists only if `g` had a hamiltonian cycle.
///
/// Vertex 1 is split into `a1` and `b1`, the result is copied twice, and the
/// copies are joined through the new vertices `a2` and `b2`. Numbering of the
/// output: `a1 = 1`, the first copy of `v_m` is `m`, `b1 = n + 1`, the second
/// copy of the whole block is shifted by `n + 1` (so `a3 = n + 2` and
/// `b3 = 2n + 2`), `a2 = 2n + 3`, `b2 = 2n + 4`.
pub fn hc_to_promise(g: &UndirectedGraph) -> Result<(UndirectedGraph, ReductionTrace), ReductionError> {
    let n = g.n();
    if n < 3 {
        return Err(ReductionError::TooFewVertices(n));
    }
    let (b1, a3, b3, a2, b2) = (n + 1, n + 2, 2 * n + 2, 2 * n + 3, 2 * n + 4);
    let mut out = UndirectedGraph::new(2 * n + 4, [])?;
    let mut trace = ReductionTrace::new("promise");
    for m in 1..=n {
        let mut images = vec![vname(m), vname(m + n + 1)];
        if m == 1 {
            images.extend([vname(b1), vname(b3)]);
        }
        trace.vertex_map.insert(vname(m), images);
    }
    for (x, y) in g.edges() {
        let mut copies = Vec::new();
        for offset in [0, n + 1] {
            copies.push((x + offset, y + offset));
            if x == 1 {
                copies.push((b1 + offset, y + offset));
            }
        }
        for &(p, q) in &copies {
            out.add_edge(p, q)?;
        }
        trace.edge_map.insert(
            (vname(x), vname(y)),
            copies.iter().map(|&(p, q)| vec![vname(p), vname(q)]).collect(),
        );
    }
    for (p, q) in [(1, a2), (a2, a3), (b1, b2), (b2, b3)] {
        out.add_edge(p, q)?;
    }
    Ok((out, trace))
}

/// Hamiltonian cycle of [`hc_to_promise`]`(g)` built from one of `g`:
/// `a1`, the cycle through the first copy, `b1`, `b2`, `b3`, the cycle back
/// through the second copy, `a3`, `a2`.
pub fn promote_hc_witness(g: &UndirectedGraph, cycle: &HamCycle) -> Result<HamCycle, ReductionError> {
    let n = g.n();
    if n < 3 {
        return Err(ReductionError::TooFewVertices(n));
    }
    let cycle = HamCycle::new(g, cycle.order().to_vec())?;
    let start = cycle
        .order()
        .iter()
        .position(|&v| v == 1)
        .expect("cycle covers vertex 1");
    let mut rotated = cycle.order().to_vec();
    rotated.rotate_left(start);
    let (b1, a3, b3, a2, b2) = (n + 1, n + 2, 2 * n + 2, 2 * n + 3, 2 * n + 4);
    let mut order = rotated.clone();
    order.extend([b1, b2, b3]);
    order.extend(rotated[1..].iter().rev().map(|&v| v + n + 1));
    order.extend([a3, a2]);
    let (promise, _) = hc_to_promise(g)?;
    Ok(HamCycle::new(&promise, order)?)
}

/// Numbers the cycle so that `u` precedes `v`; returns the numbering and the
/// 1-based positions of `u` and `v`.
fn orient(cycle: &HamCycle, u: usize, v: usize) -> (Vec<usize>, usize, usize) {
    let pos = |order: &[usize], x: usize| order.iter().position(|&y| y == x).expect("vertex on cycle") + 1;
    let mut order = cycle.order().to_vec();
    if pos(&order, u) > pos(&order, v) {
        order.reverse();
    }
    let (i, j) = (pos(&order, u), pos(&order, v));
    (order, i, j)
}

fn check_cycle(g: &UndirectedGraph, cycle: &HamCycle) -> Result<(), ReductionError> {
    HamCycle::new(g, cycle.order().to_vec())?;
    Ok(())
}

fn check_vertex(g: &UndirectedGraph, v: usize) -> Result<(), ReductionError> {
    if v == 0 || v > g.n() {
        return Err(ReductionError::UnknownVertex(v));
    }
    Ok(())
}

fn check_edge(g: &UndirectedGraph, u: usize, v: usize) -> Result<(), ReductionError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if !g.has_edge(u, v) {
        return Err(ReductionError::NotAnEdge(u, v));
    }
    Ok(())
}

/// Hamiltonian path starting at `v`: the cycle read from `v`.
pub fn ham_path_with_endpoint(g: &UndirectedGraph, cycle: &HamCycle, v: usize) -> Result<Vec<usize>, ReductionError> {
    check_cycle(g, cycle)?;
    check_vertex(g, v)?;
    let mut order = cycle.order().to_vec();
    let start = order.iter().position(|&x| x == v).expect("vertex on cycle");
    order.rotate_left(start);
    Ok(order)
}

/// Hamiltonian path that takes the edge `{u, v}` from `u` to `v`.
pub fn ham_path_through_edge(
    g: &UndirectedGraph,
    cycle: &HamCycle,
    u: usize,
    v: usize,
) -> Result<Vec<usize>, ReductionError> {
    check_cycle(g, cycle)?;
    check_edge(g, u, v)?;
    let (order, i, j) = orient(cycle, u, v);
    Ok(through_edge(&order, i, j))
}

/// `v_{j+1} .. v_n, v_1 .. v_i, v_j, v_{j-1} .. v_{i+1}` (1-based).
fn through_edge(order: &[usize], i: usize, j: usize) -> Vec<usize> {
    let n = order.len();
    let at = |m: usize| order[m - 1];
    let mut path: Vec<usize> = (j + 1..=n).map(at).collect();
    path.extend((1..=i).map(at));
    path.extend((i + 1..=j).rev().map(at));
    path
}

/// Hamiltonian path that takes `{u, v}` from `u` to `v` and has `v` between
/// `u` and `w`.
pub fn ham_path_ordered(
    g: &UndirectedGraph,
    cycle: &HamCycle,
    u: usize,
    v: usize,
    w: usize,
) -> Result<Vec<usize>, ReductionError> {
    check_cycle(g, cycle)?;
    check_edge(g, u, v)?;
    check_vertex(g, w)?;
    if w == u || w == v {
        return Err(ReductionError::ThirdVertexOnEdge(w));
    }
    let (order, i, j) = orient(cycle, u, v);
    let k = order.iter().position(|&x| x == w).expect("vertex on cycle") + 1;
    if i < k && k < j {
        return Ok(through_edge(&order, i, j));
    }
    // v_{j-1} .. v_i, v_j .. v_n, v_1 .. v_{i-1}
    let n = order.len();
    let at = |m: usize| order[m - 1];
    let mut path: Vec<usize> = (i..j).rev().map(at).collect();
    path.extend((j..=n).map(at));
    path.extend((1..i).map(at));
    Ok(path)
}

/// Token and vertex naming for the block construction over `n` vertices.
struct Blocks {
    n: usize,
}

impl Blocks {
    fn count(&self) -> usize {
        2 * self.n + 2
    }

    fn pivot(i: usize) -> usize {
        i / 2
    }

    fn t(&self, i: usize) -> String {
        format!("t{}", (i - 1) % self.count() + 1)
    }

    fn c(i: usize, j: usize) -> String {
        format!("c{i}_{j}")
    }

    fn c1(i: usize, j: usize) -> String {
        format!("c{i}_{j}'")
    }

    fn c2(i: usize, j: usize) -> String {
        format!("c{i}_{j}''")
    }

    fn s(&self, i: usize) -> String {
        format!("s{}", (i - 1) % self.count() + 1)
    }

    fn v(i: usize, j: usize) -> String {
        format!("v{i}_{j}")
    }

    fn v1(i: usize, j: usize) -> String {
        format!("v{i}_{j}'")
    }

    fn v2(i: usize, j: usize) -> String {
        format!("v{i}_{j}''")
    }

    fn alphabet(&self) -> Alphabet {
        let n = self.n;
        let mut tokens: Vec<String> = (1..=self.count()).map(|i| self.t(i)).collect();
        tokens.push("u".into());
        for i in 2..=self.count() {
            if i % 2 == 0 {
                tokens.extend((1..=n).map(|j| Self::c(i, j)));
            } else {
                let p = Self::pivot(i);
                tokens.extend((1..=n).filter(|&j| j != p).map(|j| Self::c(i, j)));
                tokens.push(Self::c1(i, p));
                tokens.extend((1..=n).filter(|&j| j != p).map(|j| Self::c2(i, j)));
            }
        }
        Alphabet::new(tokens).expect("distinct tokens")
    }

    /// Vertex ids of block `i` with their bilabel tokens, in insertion order.
    fn block_vertices(&self, i: usize) -> Vec<(String, String, String)> {
        let n = self.n;
        let last = self.count();
        if i == 1 {
            return (1..=n).map(|j| (Self::v(1, j), "u".into(), Self::c(2, j))).collect();
        }
        if i == last {
            return (1..=n)
                .map(|j| (Self::v(last, j), Self::c(last, j), "u".into()))
                .collect();
        }
        let p = Self::pivot(i);
        let others = || (1..=n).filter(move |&j| j != p);
        let mut out: Vec<(String, String, String)> = others()
            .map(|j| (Self::v(i, j), Self::c(i, j), Self::c(i + 1, j)))
            .collect();
        if i.is_multiple_of(2) {
            out.push((Self::v1(i, p), Self::c(i, p), Self::c1(i + 1, p)));
            out.extend(others().map(|j| (Self::v2(i, j), Self::c(i, j), Self::c2(i + 1, j))));
        } else {
            out.push((Self::v1(i, p), Self::c1(i, p), Self::c(i + 1, p)));
            out.extend(others().map(|j| (Self::v2(i, j), Self::c2(i, j), Self::c(i + 1, j))));
        }
        out
    }

    /// One trip around the block circle following the hamiltonian path `p`.
    fn pass(&self, p: &[usize]) -> Vec<String> {
        let last = self.count();
        let mut ids = vec![self.s(1)];
        ids.extend(p.iter().map(|&j| Self::v(1, j)));
        for i in 2..last {
            let q = Self::pivot(i);
            let r = p.iter().position(|&j| j == q).expect("path covers pivot");
            ids.push(self.s(i));
            ids.extend(p[..r].iter().map(|&j| Self::v(i, j)));
            ids.push(Self::v1(i, q));
            ids.extend(p[r + 1..].iter().map(|&j| Self::v2(i, j)));
        }
        ids.push(self.s(last));
        ids.extend(p.iter().map(|&j| Self::v(last, j)));
        ids
    }
}

/// Builds the order-1 block graph for `g` and returns it with its shift `n + 1`.
pub fn promise_to_pdbg(g: &UndirectedGraph) -> Result<(PairedDbGraph, usize, ReductionTrace), ReductionError> {
    let n = g.n();
    if n < 3 {
        return Err(ReductionError::TooFewVertices(n));
    }
    let blocks = Blocks { n };
    let last = blocks.count();
    let alphabet = blocks.alphabet();
    let mut pdbg = PairedDbGraph::new(1, alphabet.clone());
    let mut trace = ReductionTrace::new("pdbg");
    for j in 1..=n {
        trace.vertex_map.insert(vname(j), Vec::new());
    }

    for i in 1..=last {
        let label = alphabet
            .bilabel(&[blocks.t(i)], &[blocks.t(i + 1)])
            .expect("separator tokens");
        pdbg.add_vertex(blocks.s(i), label).expect("fresh id");
        for (id, first, second) in blocks.block_vertices(i) {
            let label = alphabet.bilabel(&[first], &[second]).expect("block tokens");
            let j: usize = id
                .trim_end_matches('\'')
                .rsplit('_')
                .next()
                .and_then(|x| x.parse().ok())
                .expect("structured id");
            trace.vertex_map[&vname(j)].push(id.clone());
            pdbg.add_vertex(id, label).expect("fresh id");
        }
    }

    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut add = |pdbg: &mut PairedDbGraph, from: String, to: String| -> Option<Vec<String>> {
        if !seen.insert((from.clone(), to.clone())) {
            return None;
        }
        pdbg.add_edge(&from, &to).expect("endpoints exist");
        Some(vec![from, to])
    };

    for j in 1..=n {
        add(&mut pdbg, blocks.s(1), Blocks::v(1, j));
        add(&mut pdbg, Blocks::v(1, j), blocks.s(2));
        add(&mut pdbg, blocks.s(last), Blocks::v(last, j));
        add(&mut pdbg, Blocks::v(last, j), blocks.s(1));
    }
    for i in 2..last {
        let p = Blocks::pivot(i);
        for j in (1..=n).filter(|&j| j != p) {
            add(&mut pdbg, blocks.s(i), Blocks::v(i, j));
            add(&mut pdbg, Blocks::v2(i, j), blocks.s(i + 1));
        }
        add(&mut pdbg, blocks.s(i), Blocks::v1(i, p));
        add(&mut pdbg, Blocks::v1(i, p), blocks.s(i + 1));
    }
    for (a, b) in g.edges() {
        let mut realized = Vec::new();
        for (i, j) in [(a, b), (b, a)] {
            let pairs = [
                (Blocks::v(1, i), Blocks::v(1, j)),
                (Blocks::v(last, i), Blocks::v(last, j)),
                (Blocks::v(2 * j, i), Blocks::v1(2 * j, j)),
                (Blocks::v(2 * j + 1, i), Blocks::v1(2 * j + 1, j)),
                (Blocks::v1(2 * i, i), Blocks::v2(2 * i, j)),
                (Blocks::v1(2 * i + 1, i), Blocks::v2(2 * i + 1, j)),
            ];
            for (from, to) in pairs {
                realized.extend(add(&mut pdbg, from, to));
            }
            for r in 2..last {
                let p = Blocks::pivot(r);
                if i != p && j != p {
                    realized.extend(add(&mut pdbg, Blocks::v(r, i), Blocks::v(r, j)));
                    realized.extend(add(&mut pdbg, Blocks::v2(r, i), Blocks::v2(r, j)));
                }
            }
        }
        trace.edge_map.insert((vname(a), vname(b)), realized);
    }
    let shift = n + 1;
    trace.shift_out = Some(shift);
    Ok((pdbg, shift, trace))
}

/// Hamiltonian paths whose passes together take every edge of the block
/// graph: the cycle itself, then paths for every endpoint, every edge and
/// every edge with a third vertex, each also read backwards. Duplicates are
/// dropped.
fn covering_paths(g: &UndirectedGraph, cycle: &HamCycle) -> Result<Vec<Vec<usize>>, ReductionError> {
    let n = g.n();
    let mut paths = vec![cycle.order().to_vec()];
    for v in 1..=n {
        paths.push(ham_path_with_endpoint(g, cycle, v)?);
    }
    let oriented: Vec<(usize, usize)> = g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    for &(u, v) in &oriented {
        paths.push(ham_path_through_edge(g, cycle, u, v)?);
    }
    for &(u, v) in &oriented {
        for w in (1..=n).filter(|&w| w != u && w != v) {
            paths.push(ham_path_ordered(g, cycle, u, v, w)?);
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, p) in paths.into_iter().enumerate() {
        let variants = if i == 0 {
            vec![p]
        } else {
            let mut r = p.clone();
            r.reverse();
            vec![p, r]
        };
        for q in variants {
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// A covering sound cycle of [`promise_to_pdbg`]`(g)` built from a
/// hamiltonian cycle of `g`, one pass per hamiltonian path, joined at `s1`.
pub fn build_witness_cycle(g: &UndirectedGraph, cycle: &HamCycle) -> Result<CycleWitness, ReductionError> {
    let n = g.n();
    if n < 3 {
        return Err(ReductionError::TooFewVertices(n));
    }
    check_cycle(g, cycle)?;
    let blocks = Blocks { n };
    let ids: Vec<String> = covering_paths(g, cycle)?.iter().flat_map(|p| blocks.pass(p)).collect();
    Ok(CycleWitness::new(Walk::closed(ids), n + 1))
}

/// [`hc_to_promise`] followed by [`promise_to_pdbg`].
pub fn pipeline(g: &UndirectedGraph) -> Result<(PairedDbGraph, usize, ReductionTrace), ReductionError> {
    let (promise, _) = hc_to_promise(g)?;
    promise_to_pdbg(&promise)
}

/// Covering sound cycle of [`pipeline`]`(g)` from a hamiltonian cycle of `g`.
pub fn pipeline_witness(g: &UndirectedGraph, cycle: &HamCycle) -> Result<CycleWitness, ReductionError> {
    let (promise, _) = hc_to_promise(g)?;
    build_witness_cycle(&promise, &promote_hc_witness(g, cycle)?)
}

fn require_order_one(g: &PairedDbGraph) -> Result<(), ReductionError> {
    if g.k() != 1 {
        return Err(ReductionError::NotOrderOne(g.k()));
    }
    let report = validate_graph(g);
    if !report.is_valid() {
        return Err(ReductionError::InvalidSource(report));
    }
    Ok(())
}

pub const PADDING_TOKEN: &str = "f";

/// Lifts an order-1 graph to order `order`: each vertex `(a, b)` becomes the
/// chain `(f^{k-1}a, f^{k-1}b) .. (af^{k-1}, bf^{k-1})` and each edge joins
/// the end of one chain to the start of the next. The shift scales by `order`.
pub fn lift_k(
    g: &PairedDbGraph,
    shift: usize,
    order: usize,
) -> Result<(PairedDbGraph, usize, ReductionTrace), ReductionError> {
    require_order_one(g)?;
    if order < 1 {
        return Err(ReductionError::ZeroOrder);
    }
    if g.alphabet().contains(PADDING_TOKEN) {
        return Err(ReductionError::PaddingCollision(PADDING_TOKEN.into()));
    }
    let mut alphabet = g.alphabet().clone();
    let f = alphabet.push(PADDING_TOKEN).expect("fresh padding token");
    let mut out = PairedDbGraph::new(order, alphabet);
    let mut trace = ReductionTrace::new("lift");
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(g.vertex_count());

    for (id, label) in g.vertices() {
        let (a, b) = (label.first()[0], label.second()[0]);
        let mut chain = Vec::with_capacity(order);
        let mut names = Vec::with_capacity(order);
        for m in 0..order {
            let pad = |x| {
                let mut s = vec![f; order - 1 - m];
                s.push(x);
                s.extend(std::iter::repeat_n(f, m));
                s
            };
            let name = format!("L:{id}#{}", m + 1);
            let label = Bilabel::new(pad(a), pad(b)).expect("equal lengths");
            chain.push(out.add_vertex(name.clone(), label).expect("fresh id"));
            names.push(name);
        }
        for w in chain.windows(2) {
            out.add_edge_at(w[0], w[1], None).expect("chain endpoints");
        }
        trace.vertex_map.insert(id.to_string(), names);
        chains.push(chain);
    }
    for edge in g.edges() {
        let (from, to) = (chains[edge.from][order - 1], chains[edge.to][0]);
        out.add_edge_at(from, to, None).expect("chain endpoints");
        trace.edge_map.insert(
            (g.vertex_id(edge.from).to_string(), g.vertex_id(edge.to).to_string()),
            vec![vec![out.vertex_id(from).to_string(), out.vertex_id(to).to_string()]],
        );
    }
    let shift_out = order * shift;
    trace.shift_in = Some(shift);
    trace.shift_out = Some(shift_out);
    Ok((out, shift_out, trace))
}

/// Bits per symbol: the smallest `l >= 1` with `2^l >= size`.
pub fn code_width(alphabet_size: usize) -> usize {
    let mut l = 1;
    while (1usize << l) < alphabet_size {
        l += 1;
    }
    l
}

/// Encoding of symbol `index`: its `width`-bit index, most significant bit
/// first, with every `0` written as `01` and every `1` as `10`.
pub fn encode_symbol(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|bit| if index >> bit & 1 == 1 { "10" } else { "01" })
        .collect()
}

/// Re-encodes an order-1 graph over `{0, 1}` at order `4l + 5`.
///
/// A vertex `(a, b)` becomes `(E(a), E(b))` with `E(x) = enc(x) 01110 enc(x)`,
/// and an edge becomes the path of `4l + 9` intermediate vertices spelling
/// `E(a) 10001 E(b)` alongside `E(c) 10001 E(d)`. Windows that only see the
/// tail (or head) vertex are shared by all edges leaving (entering) it. The
/// shift scales by the `4l + 10` steps each source step expands to.
pub fn binarize(g: &PairedDbGraph, shift: usize) -> Result<(PairedDbGraph, usize, ReductionTrace), ReductionError> {
    require_order_one(g)?;
    let sigma = g.alphabet().len();
    if sigma < 2 {
        return Err(ReductionError::AlphabetTooSmall(sigma));
    }
    let l = code_width(sigma);
    let order = 4 * l + 5;
    let steps = 4 * l + 10;
    let alphabet = Alphabet::new(["0", "1"]).expect("binary alphabet");
    let bits = |s: &str| -> Vec<crate::graph::Symbol> {
        s.chars()
            .map(|c| alphabet.symbol(&c.to_string()).expect("binary digit"))
            .collect()
    };
    let expand = |sym: crate::graph::Symbol| {
        let e = encode_symbol(sym.index(), l);
        format!("{e}01110{e}")
    };

    let mut out = PairedDbGraph::new(order, alphabet.clone());
    let mut trace = ReductionTrace::new("binarize");
    // bilabel -> (vertex, offset along its edge path; 0 for vertex images)
    let mut placed: HashMap<Bilabel, (usize, usize)> = HashMap::new();
    let mut images = Vec::with_capacity(g.vertex_count());
    for (id, label) in g.vertices() {
        let bl =
            Bilabel::new(bits(&expand(label.first()[0])), bits(&expand(label.second()[0]))).expect("equal lengths");
        let name = format!("B:{id}");
        let v = out.add_vertex(name.clone(), bl.clone()).expect("fresh id");
        placed.insert(bl, (v, 0));
        trace.vertex_map.insert(id.to_string(), vec![name]);
        images.push(v);
    }

    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    for (ei, edge) in g.edges().iter().enumerate() {
        let (x, y) = (g.vertex_label(edge.from), g.vertex_label(edge.to));
        let first = bits(&format!("{}10001{}", expand(x.first()[0]), expand(y.first()[0])));
        let second = bits(&format!("{}10001{}", expand(x.second()[0]), expand(y.second()[0])));
        let mut path = vec![images[edge.from]];
        for offset in 1..steps {
            let bl = Bilabel::new(
                first[offset..offset + order].to_vec(),
                second[offset..offset + order].to_vec(),
            )
            .expect("equal lengths");
            let v = match placed.get(&bl) {
                Some(&(v, other)) if other == offset => v,
                Some(&(_, other)) => {
                    return Err(ReductionError::UndesiredOverlap {
                        edge: ei,
                        offset,
                        other,
                    });
                }
                None => {
                    let v = out
                        .add_vertex(format!("B:e{}#{offset}", ei + 1), bl.clone())
                        .expect("fresh id");
                    placed.insert(bl, (v, offset));
                    v
                }
            };
            path.push(v);
        }
        path.push(images[edge.to]);
        for w in path.windows(2) {
            if seen_edges.insert((w[0], w[1])) {
                out.add_edge_at(w[0], w[1], None).expect("path endpoints");
            }
        }
        trace.edge_map.insert(
            (g.vertex_id(edge.from).to_string(), g.vertex_id(edge.to).to_string()),
            vec![path.iter().map(|&v| out.vertex_id(v).to_string()).collect()],
        );
    }
    let shift_out = steps * shift;
    trace.shift_in = Some(shift);
    trace.shift_out = Some(shift_out);
    Ok((out, shift_out, trace))
}
