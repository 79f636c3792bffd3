//! Paired de Bruijn graphs and the soundness semantics of walks on them.
//!
//! A graph of order `k` carries a bilabel (a pair of length-`k` strings)
//! on every vertex. Edge bilabels have length `k + 1` and are derived from
//! the endpoints; at `k = 0` every vertex label is empty, so edges carry
//! their length-1 bilabel explicitly.

use std::collections::HashMap;
use std::fmt;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

/// Index of a token inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate alphabet token `{0}`")]
    DuplicateToken(String),
    #[error("alphabet tokens must be non-empty")]
    EmptyToken,
    #[error("token `{0}` is not in the alphabet")]
    UnknownToken(String),
    #[error("bilabel components differ in length ({first} vs {second})")]
    UnevenBilabel { first: usize, second: usize },
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("edges of an order-0 graph need an explicit bilabel")]
    MissingEdgeLabel,
    #[error("explicit edge bilabels are only stored for order-0 graphs")]
    UnexpectedEdgeLabel,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk is empty")]
    Empty,
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("no edge from `{from}` to `{to}`")]
    MissingEdge { from: String, to: String },
    #[error("walk carries {found} edge bilabels, expected {expected}")]
    EdgeLabelCount { expected: usize, found: usize },
    #[error("covering is only defined for closed walks")]
    NotClosed,
    #[error("shift {shift} exceeds linear spelling length {len}")]
    ShiftTooLarge { shift: usize, len: usize },
}

/// Finite ordered set of tokens. Iteration follows insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    tokens: IndexSet<String>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for token in tokens {
            alphabet.push(token)?;
        }
        Ok(alphabet)
    }

    pub fn push(&mut self, token: impl Into<String>) -> Result<Symbol, GraphError> {
        let token = token.into();
        if token.is_empty() {
            return Err(GraphError::EmptyToken);
        }
        if self.tokens.contains(&token) {
            return Err(GraphError::DuplicateToken(token));
        }
        let (index, _) = self.tokens.insert_full(token);
        Ok(Symbol(index as u32))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.tokens.contains(token)
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.tokens.get_index_of(token).map(|i| Symbol(i as u32))
    }

    pub fn token(&self, symbol: Symbol) -> &str {
        &self.tokens[symbol.index()]
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.tokens.len() as u32).map(Symbol)
    }

    pub fn label<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<Symbol>, GraphError> {
        tokens
            .iter()
            .map(|t| {
                self.symbol(t.as_ref())
                    .ok_or_else(|| GraphError::UnknownToken(t.as_ref().to_string()))
            })
            .collect()
    }

    pub fn bilabel<S: AsRef<str>>(&self, first: &[S], second: &[S]) -> Result<Bilabel, GraphError> {
        Bilabel::new(self.label(first)?, self.label(second)?)
    }

    /// Renders a string of symbols as its tokens joined by `sep`.
    pub fn render(&self, symbols: &[Symbol], sep: &str) -> String {
        symbols.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
    }
}

/// Ordered pair of equal-length strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bilabel {
    first: Vec<Symbol>,
    second: Vec<Symbol>,
}

impl Bilabel {
    pub fn new(first: Vec<Symbol>, second: Vec<Symbol>) -> Result<Self, GraphError> {
        if first.len() != second.len() {
            return Err(GraphError::UnevenBilabel {
                first: first.len(),
                second: second.len(),
            });
        }
        Ok(Bilabel { first, second })
    }

    pub fn first(&self) -> &[Symbol] {
        &self.first
    }

    pub fn second(&self) -> &[Symbol] {
        &self.second
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Present exactly when the graph has order 0.
    pub label: Option<Bilabel>,
}

/// A paired de Bruijn graph of order `k`.
///
/// Construction only rejects structural mistakes (unknown endpoints, duplicate
/// ids). The label invariants are checked by [`validate_graph`] so that a
/// malformed instance can be inspected and reported in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedDbGraph {
    k: usize,
    alphabet: Alphabet,
    vertices: IndexMap<String, Bilabel>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<usize>>,
}

impl PairedDbGraph {
    pub fn new(k: usize, alphabet: Alphabet) -> Self {
        PairedDbGraph {
            k,
            alphabet,
            vertices: IndexMap::new(),
            edges: Vec::new(),
            out_edges: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, label: Bilabel) -> Result<usize, GraphError> {
        let id = id.into();
        if self.vertices.contains_key(&id) {
            return Err(GraphError::DuplicateVertexId(id));
        }
        let (index, _) = self.vertices.insert_full(id, label);
        self.out_edges.push(Vec::new());
        Ok(index)
    }

    pub fn add_edge(&mut self, from: &str, to: &str) -> Result<usize, GraphError> {
        let (from, to) = (self.require(from)?, self.require(to)?);
        self.add_edge_at(from, to, None)
    }

    pub fn add_labeled_edge(&mut self, from: &str, to: &str, label: Bilabel) -> Result<usize, GraphError> {
        let (from, to) = (self.require(from)?, self.require(to)?);
        self.add_edge_at(from, to, Some(label))
    }

    /// Index-based variant of [`Self::add_edge`]; `label` must be given iff `k == 0`.
    pub fn add_edge_at(&mut self, from: usize, to: usize, label: Option<Bilabel>) -> Result<usize, GraphError> {
        for v in [from, to] {
            if v >= self.vertices.len() {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
        }
        match (self.k, &label) {
            (0, None) => return Err(GraphError::MissingEdgeLabel),
            (k, Some(_)) if k > 0 => return Err(GraphError::UnexpectedEdgeLabel),
            _ => {}
        }
        let index = self.edges.len();
        self.edges.push(Edge { from, to, label });
        self.out_edges[from].push(index);
        Ok(index)
    }

    fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.get_index_of(id)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        self.vertices.get_index(v).expect("vertex index in range").0
    }

    pub fn vertex_label(&self, v: usize) -> &Bilabel {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&str, &Bilabel)> {
        self.vertices.iter().map(|(id, l)| (id.as_str(), l))
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// The `k + 1` bilabel of an edge: stored at `k = 0`, otherwise the first
    /// endpoint's label extended by the last symbols of the second endpoint.
    pub fn edge_bilabel(&self, e: usize) -> Bilabel {
        let edge = &self.edges[e];
        if let Some(label) = &edge.label {
            return label.clone();
        }
        let (u, v) = (self.vertex_label(edge.from), self.vertex_label(edge.to));
        let extend = |a: &[Symbol], b: &[Symbol]| {
            let mut s = a.to_vec();
            s.extend(b.last().copied());
            s
        };
        Bilabel {
            first: extend(&u.first, &v.first),
            second: extend(&u.second, &v.second),
        }
    }

    /// The pair of characters a walk appends to its cyclic spelling when it
    /// takes edge `e`: the leading characters of the target's bilabel, or the
    /// explicit edge bilabel at `k = 0`.
    pub fn emission(&self, e: usize) -> (Symbol, Symbol) {
        let edge = &self.edges[e];
        match &edge.label {
            Some(label) => (label.first[0], label.second[0]),
            None => {
                let target = self.vertex_label(edge.to);
                (target.first[0], target.second[0])
            }
        }
    }

    fn find_edge(&self, from: usize, to: usize, label: Option<&Bilabel>) -> Option<usize> {
        self.out_edges[from].iter().copied().find(|&e| {
            let edge = &self.edges[e];
            edge.to == to && (label.is_none() || edge.label.as_ref() == label)
        })
    }

    /// Maps a walk onto vertex and edge indices.
    pub fn resolve(&self, walk: &Walk) -> Result<ResolvedWalk, WalkError> {
        if walk.vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        let vertices = walk
            .vertices
            .iter()
            .map(|id| self.index_of(id).ok_or_else(|| WalkError::UnknownVertex(id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let n = vertices.len();
        let steps = if walk.closed { n } else { n - 1 };
        let expected_labels = if self.k == 0 { steps } else { 0 };
        if walk.edge_labels.len() != expected_labels {
            return Err(WalkError::EdgeLabelCount {
                expected: expected_labels,
                found: walk.edge_labels.len(),
            });
        }
        let mut edges = Vec::with_capacity(steps);
        for i in 0..steps {
            let (from, to) = (vertices[i], vertices[(i + 1) % n]);
            let label = walk.edge_labels.get(i);
            let e = self.find_edge(from, to, label).ok_or_else(|| WalkError::MissingEdge {
                from: walk.vertices[i].clone(),
                to: walk.vertices[(i + 1) % n].clone(),
            })?;
            edges.push(e);
        }
        Ok(ResolvedWalk {
            vertices,
            edges,
            closed: walk.closed,
        })
    }

    /// Builds the user-facing walk for a sequence of edge indices.
    pub fn walk_from_edges(&self, start: usize, edges: &[usize], closed: bool) -> Walk {
        let mut vertices = vec![self.vertex_id(start).to_string()];
        let mut current = start;
        for &e in edges {
            debug_assert_eq!(self.edges[e].from, current);
            current = self.edges[e].to;
            vertices.push(self.vertex_id(current).to_string());
        }
        if closed {
            debug_assert_eq!(current, start);
            vertices.pop();
        }
        let edge_labels = if self.k == 0 {
            edges
                .iter()
                .map(|&e| self.edges[e].label.clone().expect("order-0 edge label"))
                .collect()
        } else {
            Vec::new()
        };
        Walk {
            vertices,
            edge_labels,
            closed,
        }
    }
}

/// A walk given by vertex ids.
///
/// For a closed walk the step from the last vertex back to the first is
/// implied. At order 0 all edges are loops on the single vertex, so the
/// walk also lists the bilabel of every edge it takes, in step order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub vertices: Vec<String>,
    pub edge_labels: Vec<Bilabel>,
    pub closed: bool,
}

impl Walk {
    pub fn open<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        Walk {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edge_labels: Vec::new(),
            closed: false,
        }
    }

    pub fn closed<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        Walk {
            closed: true,
            ..Walk::open(vertices)
        }
    }

    pub fn with_edge_labels(mut self, labels: Vec<Bilabel>) -> Self {
        self.edge_labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Rotates a closed walk so that it starts at its `r`-th vertex.
    pub fn rotated(&self, r: usize) -> Walk {
        let mut w = self.clone();
        if !w.vertices.is_empty() {
            let r = r % w.vertices.len();
            w.vertices.rotate_left(r);
            if !w.edge_labels.is_empty() {
                w.edge_labels.rotate_left(r);
            }
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedWalk {
    pub vertices: Vec<usize>,
    /// Edge `i` leads from `vertices[i]` to `vertices[i + 1]` (cyclically when closed).
    pub edges: Vec<usize>,
    pub closed: bool,
}

/// A closed walk together with the shift it is claimed to be sound for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleWitness {
    pub walk: Walk,
    pub shift: usize,
}

impl CycleWitness {
    pub fn new(walk: Walk, shift: usize) -> Self {
        debug_assert!(walk.closed);
        CycleWitness { walk, shift }
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

/// The pair of strings spelled by a walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpelledPair {
    pub first: Vec<Symbol>,
    pub second: Vec<Symbol>,
    pub cyclic: bool,
}

impl SpelledPair {
    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LabelLength {
        vertex: String,
        expected: usize,
        found: usize,
    },
    ForeignSymbol {
        vertex: String,
    },
    EdgeLabelLength {
        from: String,
        to: String,
        found: usize,
    },
    ForeignEdgeSymbol {
        from: String,
        to: String,
    },
    OverlapMismatch {
        from: String,
        to: String,
    },
    DuplicateVertexBilabel {
        first: String,
        second: String,
    },
    DuplicateEdgeBilabel {
        first: (String, String),
        second: (String, String),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LabelLength {
                vertex,
                expected,
                found,
            } => write!(f, "vertex `{vertex}`: bilabel length {found}, expected {expected}"),
            Violation::ForeignSymbol { vertex } => {
                write!(f, "vertex `{vertex}`: symbol outside the alphabet")
            }
            Violation::EdgeLabelLength { from, to, found } => write!(
                f,
                "edge `{from}` -> `{to}`: explicit bilabel length {found}, expected 1"
            ),
            Violation::ForeignEdgeSymbol { from, to } => {
                write!(f, "edge `{from}` -> `{to}`: symbol outside the alphabet")
            }
            Violation::OverlapMismatch { from, to } => {
                write!(f, "edge `{from}` -> `{to}`: endpoint bilabels do not overlap")
            }
            Violation::DuplicateVertexBilabel { first, second } => {
                write!(f, "duplicate vertex bilabel on `{first}` and `{second}`")
            }
            Violation::DuplicateEdgeBilabel { first, second } => write!(
                f,
                "duplicate edge bilabel on `{}` -> `{}` and `{}` -> `{}`",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_graph(g: &PairedDbGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let sigma = g.alphabet.len();
    let foreign = |s: &[Symbol]| s.iter().any(|x| x.index() >= sigma);

    let mut well_formed = vec![true; g.vertex_count()];
    for (v, (id, label)) in g.vertices.iter().enumerate() {
        if label.len() != g.k {
            violations.push(Violation::LabelLength {
                vertex: id.clone(),
                expected: g.k,
                found: label.len(),
            });
            well_formed[v] = false;
        }
        if foreign(&label.first) || foreign(&label.second) {
            violations.push(Violation::ForeignSymbol { vertex: id.clone() });
        }
    }

    let mut seen: HashMap<&Bilabel, usize> = HashMap::new();
    for (v, label) in g.vertices.values().enumerate() {
        if let Some(&u) = seen.get(label) {
            violations.push(Violation::DuplicateVertexBilabel {
                first: g.vertex_id(u).to_string(),
                second: g.vertex_id(v).to_string(),
            });
        } else {
            seen.insert(label, v);
        }
    }

    let ends = |e: &Edge| (g.vertex_id(e.from).to_string(), g.vertex_id(e.to).to_string());
    let mut edge_labels: HashMap<Bilabel, usize> = HashMap::new();
    for (i, edge) in g.edges.iter().enumerate() {
        if !(well_formed[edge.from] && well_formed[edge.to]) {
            continue;
        }
        if let Some(label) = &edge.label {
            if label.len() != 1 {
                let (from, to) = ends(edge);
                violations.push(Violation::EdgeLabelLength {
                    from,
                    to,
                    found: label.len(),
                });
                continue;
            }
            if foreign(&label.first) || foreign(&label.second) {
                let (from, to) = ends(edge);
                violations.push(Violation::ForeignEdgeSymbol { from, to });
            }
        } else {
            let (u, v) = (g.vertex_label(edge.from), g.vertex_label(edge.to));
            let k = g.k;
            if u.first[1..] != v.first[..k - 1] || u.second[1..] != v.second[..k - 1] {
                let (from, to) = ends(edge);
                violations.push(Violation::OverlapMismatch { from, to });
                continue;
            }
        }
        let label = g.edge_bilabel(i);
        if let Some(&j) = edge_labels.get(&label) {
            violations.push(Violation::DuplicateEdgeBilabel {
                first: ends(&g.edges[j]),
                second: ends(edge),
            });
        } else {
            edge_labels.insert(label, i);
        }
    }
    ValidationReport { violations }
}

/// Spells the pair of strings of a walk.
///
/// A closed walk of `n` vertices spells cyclic strings of length `n` whose
/// `i`-th characters lead the bilabel of vertex `i` (of edge `i` at order
/// 0). An open walk spells strings of length `n + k - 1`.
pub fn spell(g: &PairedDbGraph, walk: &Walk) -> Result<SpelledPair, WalkError> {
    let resolved = g.resolve(walk)?;
    Ok(spell_resolved(g, &resolved))
}

pub fn spell_resolved(g: &PairedDbGraph, walk: &ResolvedWalk) -> SpelledPair {
    let (mut first, mut second) = (Vec::new(), Vec::new());
    if g.k == 0 {
        for &e in &walk.edges {
            let (s, t) = g.emission(e);
            first.push(s);
            second.push(t);
        }
    } else {
        for &v in &walk.vertices {
            let label = g.vertex_label(v);
            first.push(label.first[0]);
            second.push(label.second[0]);
        }
        if !walk.closed {
            let last = g.vertex_label(*walk.vertices.last().expect("non-empty walk"));
            first.extend_from_slice(&last.first[1..]);
            second.extend_from_slice(&last.second[1..]);
        }
    }
    SpelledPair {
        first,
        second,
        cyclic: walk.closed,
    }
}

/// Whether the second string equals the first shifted left by `shift`.
///
/// Cyclic pairs reduce the shift modulo their length.
pub fn matches_with_shift(pair: &SpelledPair, shift: usize) -> Result<bool, WalkError> {
    let n = pair.len();
    let (s, t) = (&pair.first, &pair.second);
    if pair.cyclic {
        if n == 0 {
            return Ok(true);
        }
        let d = shift % n;
        Ok((0..n).all(|i| s[(i + d) % n] == t[i]))
    } else {
        if shift > n {
            return Err(WalkError::ShiftTooLarge { shift, len: n });
        }
        Ok((0..n - shift).all(|i| s[i + shift] == t[i]))
    }
}

pub fn is_sound(g: &PairedDbGraph, walk: &Walk, shift: usize) -> Result<bool, WalkError> {
    matches_with_shift(&spell(g, walk)?, shift)
}

pub fn is_covering(g: &PairedDbGraph, walk: &Walk) -> Result<bool, WalkError> {
    if !walk.closed {
        return Err(WalkError::NotClosed);
    }
    let resolved = g.resolve(walk)?;
    let mut used = vec![false; g.edge_count()];
    for &e in &resolved.edges {
        used[e] = true;
    }
    Ok(used.into_iter().all(|u| u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(tokens: &str) -> Alphabet {
        Alphabet::new(tokens.split_whitespace()).unwrap()
    }

    fn bl(a: &Alphabet, first: &str, second: &str) -> Bilabel {
        let split = |s: &str| s.chars().map(|c| c.to_string()).collect::<Vec<_>>();
        a.bilabel(&split(first), &split(second)).unwrap()
    }

    fn build(k: usize, a: &Alphabet, vs: &[(&str, &str, &str)], es: &[(&str, &str)]) -> PairedDbGraph {
        let mut g = PairedDbGraph::new(k, a.clone());
        for &(id, f, s) in vs {
            g.add_vertex(id, bl(a, f, s)).unwrap();
        }
        for &(u, v) in es {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn single_loop_is_valid() {
        let a = alpha("a");
        let g = build(1, &a, &[("v", "a", "a")], &[("v", "v")]);
        assert!(validate_graph(&g).is_valid());
    }

    #[test]
    fn duplicate_vertex_bilabel_reported() {
        let a = alpha("a b");
        let g = build(1, &a, &[("x", "a", "b"), ("y", "a", "b")], &[]);
        let report = validate_graph(&g);
        assert_eq!(
            report.violations,
            vec![Violation::DuplicateVertexBilabel {
                first: "x".into(),
                second: "y".into()
            }]
        );
        assert!(report.to_string().contains("duplicate vertex bilabel"));
    }

    #[test]
    fn order_one_edge_bilabel_is_concatenation() {
        let a = alpha("a b");
        let g = build(1, &a, &[("x", "a", "a"), ("y", "b", "b")], &[("x", "y")]);
        assert!(validate_graph(&g).is_valid());
        assert_eq!(g.edge_bilabel(0), bl(&a, "ab", "ab"));
    }

    #[test]
    fn overlap_mismatch_and_length_reported() {
        let a = alpha("a b c");
        let mut g = build(2, &a, &[("x", "ab", "aa"), ("y", "cc", "aa")], &[("x", "y")]);
        g.add_vertex("z", bl(&a, "a", "a")).unwrap();
        let report = validate_graph(&g);
        assert!(report.violations.contains(&Violation::OverlapMismatch {
            from: "x".into(),
            to: "y".into()
        }));
        assert!(report.violations.contains(&Violation::LabelLength {
            vertex: "z".into(),
            expected: 2,
            found: 1
        }));
    }

    #[test]
    fn duplicate_edge_detected_at_order_zero() {
        let a = alpha("x y");
        let mut g = PairedDbGraph::new(0, a.clone());
        g.add_vertex("o", bl(&a, "", "")).unwrap();
        g.add_labeled_edge("o", "o", bl(&a, "x", "y")).unwrap();
        g.add_labeled_edge("o", "o", bl(&a, "x", "y")).unwrap();
        assert!(matches!(
            validate_graph(&g).violations[..],
            [Violation::DuplicateEdgeBilabel { .. }]
        ));
        assert_eq!(g.add_edge("o", "o"), Err(GraphError::MissingEdgeLabel));
    }

    #[test]
    fn empty_graph_is_valid() {
        let g = PairedDbGraph::new(3, Alphabet::default());
        assert!(validate_graph(&g).is_valid());
    }

    #[test]
    fn spelling_at_order_one_concatenates_labels() {
        let a = alpha("a b c x y z");
        let g = build(
            1,
            &a,
            &[("p", "a", "x"), ("q", "b", "y"), ("r", "c", "z")],
            &[("p", "q"), ("q", "r")],
        );
        let pair = spell(&g, &Walk::open(["p", "q", "r"])).unwrap();
        assert_eq!(a.render(&pair.first, ""), "abc");
        assert_eq!(a.render(&pair.second, ""), "xyz");
        assert!(!pair.cyclic);
    }

    #[test]
    fn spelling_at_order_two_overlaps() {
        let a = alpha("a b c x y z");
        let g = build(2, &a, &[("u", "ab", "xy"), ("v", "bc", "yz")], &[("u", "v")]);
        assert!(validate_graph(&g).is_valid());
        let pair = spell(&g, &Walk::open(["u", "v"])).unwrap();
        assert_eq!(a.render(&pair.first, ""), "abc");
        assert_eq!(a.render(&pair.second, ""), "xyz");
        assert_eq!(pair.len(), 2 + 2 - 1);
    }

    #[test]
    fn spelling_rejects_missing_edge() {
        let a = alpha("a b");
        let g = build(1, &a, &[("p", "a", "b"), ("q", "b", "a")], &[("p", "q")]);
        assert_eq!(
            spell(&g, &Walk::closed(["p", "q"])),
            Err(WalkError::MissingEdge {
                from: "q".into(),
                to: "p".into()
            })
        );
    }

    fn pair(a: &Alphabet, s: &str, t: &str, cyclic: bool) -> SpelledPair {
        let b = bl(a, s, t);
        SpelledPair {
            first: b.first().to_vec(),
            second: b.second().to_vec(),
            cyclic,
        }
    }

    #[test]
    fn linear_match_leaves_tail_free() {
        let a = alpha("x y z w q r");
        assert!(matches_with_shift(&pair(&a, "xyzw", "zwqr", false), 2).unwrap());
        assert!(!matches_with_shift(&pair(&a, "xyzw", "zwqr", false), 1).unwrap());
        assert!(matches_with_shift(&pair(&a, "xyzw", "zwqr", false), 4).unwrap());
        assert_eq!(
            matches_with_shift(&pair(&a, "xyzw", "zwqr", false), 5),
            Err(WalkError::ShiftTooLarge { shift: 5, len: 4 })
        );
    }

    #[test]
    fn cyclic_match_wraps() {
        let a = alpha("a b");
        assert!(matches_with_shift(&pair(&a, "abab", "abab", true), 2).unwrap());
        assert!(matches_with_shift(&pair(&a, "ab", "ba", true), 1).unwrap());
        assert!(!matches_with_shift(&pair(&a, "ab", "ba", true), 0).unwrap());
        // shifts beyond the length are taken modulo the length
        assert!(matches_with_shift(&pair(&a, "ab", "ba", true), 3).unwrap());
        assert!(!matches_with_shift(&pair(&a, "ab", "ba", true), 4).unwrap());
    }

    #[test]
    fn zero_shift_is_equality() {
        let a = alpha("a b");
        for cyclic in [false, true] {
            assert!(matches_with_shift(&pair(&a, "abba", "abba", cyclic), 0).unwrap());
            assert!(!matches_with_shift(&pair(&a, "abba", "abab", cyclic), 0).unwrap());
        }
    }

    #[test]
    fn digon_is_sound_for_shift_one() {
        let a = alpha("a b");
        let g = build(1, &a, &[("x", "a", "b"), ("y", "b", "a")], &[("x", "y"), ("y", "x")]);
        let w = Walk::closed(["x", "y"]);
        assert!(is_sound(&g, &w, 1).unwrap());
        assert!(!is_sound(&g, &w, 0).unwrap());
        assert!(is_covering(&g, &w).unwrap());
    }

    #[test]
    fn covering_requires_every_edge() {
        let a = alpha("a b");
        let g = build(
            1,
            &a,
            &[("x", "a", "a"), ("y", "b", "b")],
            &[("x", "y"), ("y", "x"), ("x", "x")],
        );
        assert!(!is_covering(&g, &Walk::closed(["x", "y"])).unwrap());
        assert!(is_covering(&g, &Walk::closed(["x", "x", "y"])).unwrap());
        assert_eq!(is_covering(&g, &Walk::open(["x", "y"])), Err(WalkError::NotClosed));

        let single = build(1, &a, &[("v", "a", "a")], &[("v", "v")]);
        assert!(is_covering(&single, &Walk::closed(["v"])).unwrap());
    }

    #[test]
    fn order_zero_walks_carry_edge_labels() {
        let a = alpha("x y");
        let mut g = PairedDbGraph::new(0, a.clone());
        g.add_vertex("o", bl(&a, "", "")).unwrap();
        g.add_labeled_edge("o", "o", bl(&a, "x", "y")).unwrap();
        g.add_labeled_edge("o", "o", bl(&a, "y", "x")).unwrap();
        let w = Walk::closed(["o", "o"]).with_edge_labels(vec![bl(&a, "x", "y"), bl(&a, "y", "x")]);
        let p = spell(&g, &w).unwrap();
        assert_eq!(a.render(&p.first, ""), "xy");
        assert!(is_sound(&g, &w, 1).unwrap());
        assert!(is_covering(&g, &w).unwrap());
        assert!(matches!(
            g.resolve(&Walk::closed(["o"])),
            Err(WalkError::EdgeLabelCount { expected: 1, found: 0 })
        ));
    }
}
