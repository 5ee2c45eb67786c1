//! Graph files: a plain edge list, or a small subset of DOT.
//!
//! Edge list:
//!
//! ```text
//! # comment
//! 3
//! 0 1
//! 1 2
//! ```
//!
//! DOT: `digraph [name] { 0 -> 1 -> 2; 3; }` with integer node names. The
//! vertex count is one more than the largest node mentioned.

use std::fmt::Write as _;
use std::path::Path;

use entrank_core::{Digraph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {error}")]
    Graph { line: usize, error: GraphError },
    #[error("empty graph file")]
    Empty,
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    let cut = [line.find('#'), line.find("//")].into_iter().flatten().min();
    cut.map_or(line, |i| &line[..i]).trim()
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(FormatError::Empty)?;
    let n: usize = header
        .parse()
        .map_err(|_| syntax(first, format!("expected a vertex count, found `{header}`")))?;
    let mut g = Digraph::new(n).map_err(|error| FormatError::Graph { line: first, error })?;
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(syntax(line, format!("expected `u v`, found `{l}`")));
        };
        let vertex = |s: &str| s.parse::<usize>().map_err(|_| syntax(line, format!("bad vertex `{s}`")));
        g.add_edge(vertex(u)?, vertex(v)?)
            .map_err(|error| FormatError::Graph { line, error })?;
    }
    Ok(g)
}

pub fn parse_dot(text: &str) -> Result<Digraph, FormatError> {
    let body: String = text
        .lines()
        .map(strip_comment)
        .collect::<Vec<_>>()
        .join("\n");
    let line_of = |offset: usize| body[..offset].matches('\n').count() + 1;
    let open = body.find('{').ok_or_else(|| syntax(1, "expected `{`"))?;
    let head: Vec<&str> = body[..open].split_whitespace().collect();
    if head.first() != Some(&"digraph") || head.len() > 2 {
        return Err(syntax(1, "expected `digraph [name] {`"));
    }
    let close = body.rfind('}').ok_or_else(|| syntax(line_of(body.len()), "expected `}`"))?;
    if !body[close + 1..].trim().is_empty() {
        return Err(syntax(line_of(close), "text after `}`"));
    }

    let mut edges = Vec::new();
    let mut n = 0usize;
    let mut offset = open + 1;
    for stmt in body[open + 1..close].split([';', '\n']) {
        let line = line_of(offset);
        offset += stmt.len() + 1;
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let mut chain = Vec::new();
        for node in stmt.split("->") {
            let node = node.trim();
            let v: usize = node
                .parse()
                .map_err(|_| syntax(line, format!("expected an integer node, found `{node}`")))?;
            n = n.max(v + 1);
            chain.push(v);
        }
        edges.extend(chain.windows(2).map(|w| (line, w[0], w[1])));
    }
    let mut g = Digraph::new(n).map_err(|error| FormatError::Graph { line: 1, error })?;
    for (line, u, v) in edges {
        g.add_edge(u, v).map_err(|error| FormatError::Graph { line, error })?;
    }
    Ok(g)
}

/// DOT when the text starts with `digraph`, edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Digraph, FormatError> {
    let first = text.lines().map(strip_comment).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with("digraph") => parse_dot(text),
        _ => parse_edge_list(text),
    }
}

pub fn read_graph(path: &Path) -> Result<Digraph, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|error| FormatError::Io {
        path: path.display().to_string(),
        error,
    })?;
    parse_graph(&text)
}

pub fn to_edge_list(g: &Digraph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph {\n");
    for v in g.vertices() {
        if g.successors(v).is_empty() && g.predecessors(v).is_empty() {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -> {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
