//! Line-oriented text formats for instances, undirected graphs, hamiltonian
//! cycles, cycle witnesses and reduction traces, plus DOT export.
//!
//! Every file opens with a `<kind> 1` header line. Blank lines and lines
//! whose first non-blank character is `#` are ignored. Fields are separated
//! by whitespace, so tokens and vertex ids may not contain whitespace. A
//! label is written as its tokens joined by `,` (tokens therefore exclude
//! `,`), and the empty label of an order-0 graph is written `_`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Alphabet, Bilabel, CycleWitness, GraphError, PairedDbGraph, Walk};
use crate::reductions::ReductionTrace;
use crate::undirected::{HamCycle, UndirectedError, UndirectedGraph};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("missing `{0}` line")]
    MissingField(&'static str),
    #[error("token `{0}` cannot be written: tokens must be non-empty and free of whitespace and `,`")]
    BadToken(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// A graph together with the shift it is posed with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: PairedDbGraph,
    pub shift: usize,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// (1-based line number, keyword, remaining fields)
    type Item = (usize, &'a str, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.inner.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let keyword = fields.next().expect("non-empty line");
            return Some((i + 1, keyword, fields.collect()));
        }
        None
    }
}

fn expect_header(lines: &mut Lines<'_>, kind: &'static str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, k, rest)) if k == kind && rest == [FORMAT_VERSION] => Ok(()),
        Some((line, k, rest)) if k == kind => Err(syntax(line, format!("unsupported version {}", rest.join(" ")))),
        _ => Err(FormatError::MissingHeader(kind)),
    }
}

fn parse_usize(line: usize, field: &str) -> Result<usize, FormatError> {
    field
        .parse()
        .map_err(|_| syntax(line, format!("`{field}` is not a non-negative integer")))
}

fn arity(line: usize, keyword: &str, fields: &[&str], allowed: &[usize]) -> Result<(), FormatError> {
    if allowed.contains(&fields.len()) {
        Ok(())
    } else {
        Err(syntax(
            line,
            format!("`{keyword}` takes {allowed:?} fields, got {}", fields.len()),
        ))
    }
}

/// `d <decimal>` or `d unary <1...1>`; `d unary` alone is zero.
fn parse_shift(line: usize, fields: &[&str]) -> Result<usize, FormatError> {
    match fields {
        ["unary"] => Ok(0),
        [value] => parse_usize(line, value),
        ["unary", ones] if ones.chars().all(|c| c == '1') => Ok(ones.len()),
        ["unary", other] => Err(syntax(line, format!("`{other}` is not a unary number"))),
        _ => Err(syntax(line, "`d` takes a decimal or `unary 1...1`")),
    }
}

fn check_token(token: &str) -> Result<(), FormatError> {
    if token.is_empty() || token == "_" || token.contains(',') || token.chars().any(char::is_whitespace) {
        return Err(FormatError::BadToken(token.to_string()));
    }
    Ok(())
}

fn write_label(out: &mut String, alphabet: &Alphabet, label: &[crate::graph::Symbol]) {
    if label.is_empty() {
        out.push('_');
    } else {
        out.push_str(&alphabet.render(label, ","));
    }
}

fn parse_label(line: usize, alphabet: &Alphabet, field: &str) -> Result<Vec<crate::graph::Symbol>, FormatError> {
    if field == "_" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = field.split(',').collect();
    alphabet.label(&tokens).map_err(|e| syntax(line, e.to_string()))
}

fn parse_bilabel(line: usize, alphabet: &Alphabet, first: &str, second: &str) -> Result<Bilabel, FormatError> {
    Bilabel::new(
        parse_label(line, alphabet, first)?,
        parse_label(line, alphabet, second)?,
    )
    .map_err(|e| syntax(line, e.to_string()))
}

pub fn write_instance(instance: &Instance) -> Result<String, FormatError> {
    let g = &instance.graph;
    let a = g.alphabet();
    for token in a.tokens() {
        check_token(token)?;
    }
    for (id, _) in g.vertices() {
        check_token(id)?;
    }
    let mut out = String::new();
    writeln!(out, "pdbg-instance {FORMAT_VERSION}").unwrap();
    writeln!(out, "k {}", g.k()).unwrap();
    writeln!(out, "d {}", instance.shift).unwrap();
    let tokens: Vec<&str> = a.tokens().collect();
    writeln!(out, "alphabet {}", tokens.join(" ")).unwrap();
    for (id, label) in g.vertices() {
        write!(out, "vertex {id} ").unwrap();
        write_label(&mut out, a, label.first());
        out.push(' ');
        write_label(&mut out, a, label.second());
        out.push('\n');
    }
    for edge in g.edges() {
        write!(out, "edge {} {}", g.vertex_id(edge.from), g.vertex_id(edge.to)).unwrap();
        if let Some(label) = &edge.label {
            out.push(' ');
            write_label(&mut out, a, label.first());
            out.push(' ');
            write_label(&mut out, a, label.second());
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "pdbg-instance")?;
    let (mut k, mut shift, mut graph) = (None, None, None::<PairedDbGraph>);
    for (line, keyword, fields) in lines {
        match keyword {
            "k" => {
                arity(line, keyword, &fields, &[1])?;
                k = Some(parse_usize(line, fields[0])?);
            }
            "d" => shift = Some(parse_shift(line, &fields)?),
            "alphabet" => {
                let k = k.ok_or(FormatError::MissingField("k"))?;
                let alphabet = Alphabet::new(fields.iter().copied()).map_err(|e| syntax(line, e.to_string()))?;
                graph = Some(PairedDbGraph::new(k, alphabet));
            }
            "vertex" => {
                arity(line, keyword, &fields, &[3])?;
                let g = graph.as_mut().ok_or(FormatError::MissingField("alphabet"))?;
                let label = parse_bilabel(line, g.alphabet(), fields[1], fields[2])?;
                g.add_vertex(fields[0], label)
                    .map_err(|e| syntax(line, e.to_string()))?;
            }
            "edge" => {
                arity(line, keyword, &fields, &[2, 4])?;
                let g = graph.as_mut().ok_or(FormatError::MissingField("alphabet"))?;
                let result: Result<usize, GraphError> = if fields.len() == 4 {
                    let label = parse_bilabel(line, g.alphabet(), fields[2], fields[3])?;
                    g.add_labeled_edge(fields[0], fields[1], label)
                } else {
                    g.add_edge(fields[0], fields[1])
                };
                result.map_err(|e| syntax(line, e.to_string()))?;
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(Instance {
        graph: graph.ok_or(FormatError::MissingField("alphabet"))?,
        shift: shift.ok_or(FormatError::MissingField("d"))?,
    })
}

pub fn write_ugraph(g: &UndirectedGraph) -> String {
    let mut out = format!("ugraph {FORMAT_VERSION}\nn {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

pub fn parse_ugraph(text: &str) -> Result<UndirectedGraph, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "ugraph")?;
    let mut graph: Option<UndirectedGraph> = None;
    let wrap = |line: usize, e: UndirectedError| syntax(line, e.to_string());
    for (line, keyword, fields) in lines {
        match keyword {
            "n" => {
                arity(line, keyword, &fields, &[1])?;
                graph = Some(UndirectedGraph::new(parse_usize(line, fields[0])?, []).map_err(|e| wrap(line, e))?);
            }
            "edge" => {
                arity(line, keyword, &fields, &[2])?;
                let g = graph.as_mut().ok_or(FormatError::MissingField("n"))?;
                let (u, v) = (parse_usize(line, fields[0])?, parse_usize(line, fields[1])?);
                if g.has_edge(u, v) {
                    return Err(syntax(line, format!("repeated edge {{{u}, {v}}}")));
                }
                g.add_edge(u, v).map_err(|e| wrap(line, e))?;
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    graph.ok_or(FormatError::MissingField("n"))
}

pub fn write_hamcycle(c: &HamCycle) -> String {
    let order: Vec<String> = c.order().iter().map(usize::to_string).collect();
    format!("hamcycle {FORMAT_VERSION}\norder {}\n", order.join(" "))
}

/// Parses a hamiltonian cycle and checks it against `g`.
pub fn parse_hamcycle(text: &str, g: &UndirectedGraph) -> Result<HamCycle, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "hamcycle")?;
    let mut order = None;
    for (line, keyword, fields) in lines {
        match keyword {
            "order" => {
                let parsed = fields
                    .iter()
                    .map(|f| parse_usize(line, f))
                    .collect::<Result<Vec<_>, _>>()?;
                order = Some((line, parsed));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (line, order) = order.ok_or(FormatError::MissingField("order"))?;
    HamCycle::new(g, order).map_err(|e| syntax(line, e.to_string()))
}

/// Cycle witness. Order-0 graphs need the edge bilabel of every step, so the
/// alphabet is required to write or read those.
pub fn write_cycle(w: &CycleWitness, alphabet: &Alphabet) -> String {
    let mut out = format!("cycle {FORMAT_VERSION}\nd {}\n", w.shift);
    for chunk in w.walk.vertices.chunks(16) {
        writeln!(out, "walk {}", chunk.join(" ")).unwrap();
    }
    for label in &w.walk.edge_labels {
        out.push_str("label ");
        write_label(&mut out, alphabet, label.first());
        out.push(' ');
        write_label(&mut out, alphabet, label.second());
        out.push('\n');
    }
    out
}

pub fn parse_cycle(text: &str, alphabet: &Alphabet) -> Result<CycleWitness, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, "cycle")?;
    let (mut shift, mut vertices, mut labels) = (None, Vec::new(), Vec::new());
    for (line, keyword, fields) in lines {
        match keyword {
            "d" => shift = Some(parse_shift(line, &fields)?),
            "walk" => vertices.extend(fields.iter().map(|s| s.to_string())),
            "label" => {
                arity(line, keyword, &fields, &[2])?;
                labels.push(parse_bilabel(line, alphabet, fields[0], fields[1])?);
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(CycleWitness::new(
        Walk::closed(vertices).with_edge_labels(labels),
        shift.ok_or(FormatError::MissingField("d"))?,
    ))
}

pub fn write_traces(traces: &[ReductionTrace]) -> String {
    let mut out = String::new();
    for t in traces {
        writeln!(out, "trace {FORMAT_VERSION}\nstage {}", t.stage).unwrap();
        if let Some(d) = t.shift_in {
            writeln!(out, "shift-in {d}").unwrap();
        }
        if let Some(d) = t.shift_out {
            writeln!(out, "shift-out {d}").unwrap();
        }
        for (source, targets) in &t.vertex_map {
            writeln!(out, "map {source} {}", targets.join(" ")).unwrap();
        }
        for ((from, to), paths) in &t.edge_map {
            for path in paths {
                writeln!(out, "edge {from} {to} {}", path.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn parse_traces(text: &str) -> Result<Vec<ReductionTrace>, FormatError> {
    let mut traces: Vec<ReductionTrace> = Vec::new();
    for (line, keyword, fields) in Lines::new(text) {
        if keyword == "trace" {
            if fields != [FORMAT_VERSION] {
                return Err(syntax(line, "unsupported trace version"));
            }
            traces.push(ReductionTrace::default());
            continue;
        }
        let t = traces.last_mut().ok_or(FormatError::MissingHeader("trace"))?;
        match keyword {
            "stage" => {
                arity(line, keyword, &fields, &[1])?;
                t.stage = fields[0].to_string();
            }
            "shift-in" => {
                arity(line, keyword, &fields, &[1])?;
                t.shift_in = Some(parse_usize(line, fields[0])?);
            }
            "shift-out" => {
                arity(line, keyword, &fields, &[1])?;
                t.shift_out = Some(parse_usize(line, fields[0])?);
            }
            "map" if !fields.is_empty() => {
                t.vertex_map.insert(
                    fields[0].to_string(),
                    fields[1..].iter().map(|s| s.to_string()).collect(),
                );
            }
            "edge" if fields.len() >= 2 => {
                let key = (fields[0].to_string(), fields[1].to_string());
                let path = fields[2..].iter().map(|s| s.to_string()).collect();
                t.edge_map.entry(key).or_default().push(path);
            }
            other => return Err(syntax(line, format!("malformed `{other}` line"))),
        }
    }
    if traces.is_empty() {
        return Err(FormatError::MissingHeader("trace"));
    }
    Ok(traces)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering with bilabels as vertex labels (and as edge labels at order 0).
pub fn to_dot(g: &PairedDbGraph) -> String {
    let a = g.alphabet();
    let render = |s: &[crate::graph::Symbol]| {
        if s.is_empty() {
            "ε".to_string()
        } else {
            a.render(s, " ")
        }
    };
    let mut out = String::from("digraph pdbg {\n");
    for (id, label) in g.vertices() {
        writeln!(
            out,
            "  \"{}\" [label=\"{}\\n({}, {})\"];",
            dot_escape(id),
            dot_escape(id),
            dot_escape(&render(label.first())),
            dot_escape(&render(label.second()))
        )
        .unwrap();
    }
    for edge in g.edges() {
        write!(
            out,
            "  \"{}\" -> \"{}\"",
            dot_escape(g.vertex_id(edge.from)),
            dot_escape(g.vertex_id(edge.to))
        )
        .unwrap();
        if let Some(label) = &edge.label {
            write!(
                out,
                " [label=\"({}, {})\"]",
                dot_escape(&render(label.first())),
                dot_escape(&render(label.second()))
            )
            .unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
pdbg-instance 1
# a digon
k 1
d unary 1
alphabet a b
vertex x a b
vertex y b a
edge x y
edge y x
";

    #[test]
    fn parses_sample() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(inst.shift, 1);
        assert_eq!(inst.graph.vertex_count(), 2);
        assert_eq!(inst.graph.edge_count(), 2);
        let text = write_instance(&inst).unwrap();
        assert!(text.contains("d 1\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn unary_and_decimal_agree() {
        let decimal = SAMPLE.replace("d unary 1", "d 1");
        assert_eq!(parse_instance(&decimal).unwrap(), parse_instance(SAMPLE).unwrap());
        let zero = SAMPLE.replace("d unary 1", "d unary");
        assert_eq!(parse_instance(&zero).unwrap().shift, 0);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = SAMPLE.replace("edge y x", "edge y z");
        assert!(matches!(parse_instance(&bad), Err(FormatError::Syntax { line: 9, .. })));
        let bad = SAMPLE.replace("vertex x a b", "vertex x a q");
        assert!(matches!(parse_instance(&bad), Err(FormatError::Syntax { line: 6, .. })));
        assert_eq!(
            parse_instance("k 1\n"),
            Err(FormatError::MissingHeader("pdbg-instance"))
        );
        assert_eq!(
            parse_instance("pdbg-instance 1\nk 1\nalphabet a\n"),
            Err(FormatError::MissingField("d"))
        );
    }

    #[test]
    fn order_zero_round_trip() {
        let text = "pdbg-instance 1\nk 0\nd 2\nalphabet x y\nvertex o _ _\nedge o o x y\nedge o o y x\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst).unwrap(), text);
        let w = parse_cycle("cycle 1\nd 1\nwalk o o\nlabel x y\nlabel y x\n", inst.graph.alphabet()).unwrap();
        assert_eq!(w.walk.edge_labels.len(), 2);
        assert_eq!(
            parse_cycle(&write_cycle(&w, inst.graph.alphabet()), inst.graph.alphabet()).unwrap(),
            w
        );
    }

    #[test]
    fn ugraph_and_hamcycle() {
        let g = UndirectedGraph::complete(3);
        let text = write_ugraph(&g);
        assert_eq!(text, "ugraph 1\nn 3\nedge 1 2\nedge 1 3\nedge 2 3\n");
        assert_eq!(parse_ugraph(&text).unwrap(), g);
        assert!(parse_ugraph("ugraph 1\nn 3\nedge 1 1\n").is_err());
        assert!(parse_ugraph("ugraph 1\nn 3\nedge 1 4\n").is_err());
        let c = HamCycle::new(&g, vec![1, 2, 3]).unwrap();
        assert_eq!(parse_hamcycle(&write_hamcycle(&c), &g).unwrap(), c);
        assert!(parse_hamcycle("hamcycle 1\norder 1 2\n", &g).is_err());
    }

    #[test]
    fn traces_round_trip() {
        let mut t = ReductionTrace {
            stage: "lift".into(),
            shift_in: Some(1),
            shift_out: Some(2),
            ..Default::default()
        };
        t.vertex_map.insert("x".into(), vec!["L:x#1".into(), "L:x#2".into()]);
        t.edge_map
            .insert(("x".into(), "x".into()), vec![vec!["L:x#2".into(), "L:x#1".into()]]);
        let text = write_traces(&[t.clone(), t.clone()]);
        assert_eq!(parse_traces(&text).unwrap(), vec![t.clone(), t]);
    }

    #[test]
    fn rejects_unwritable_tokens() {
        let a = Alphabet::new(["a,b"]).unwrap();
        let inst = Instance {
            graph: PairedDbGraph::new(1, a),
            shift: 0,
        };
        assert_eq!(write_instance(&inst), Err(FormatError::BadToken("a,b".into())));
    }

    #[test]
    fn dot_lists_bilabels() {
        let inst = parse_instance(SAMPLE).unwrap();
        let dot = to_dot(&inst.graph);
        assert!(dot.contains("\"x\" [label=\"x\\n(a, b)\"];"));
        assert!(dot.contains("\"x\" -> \"y\";"));
    }
}
