//! Text formats for graphs: JSON (via serde), a plain edge list, and DOT.
//!
//! Edge-list format: one `u v` pair per line; a vertex with no edges is
//! declared with `vertex u`. Blank lines and `#` comments are ignored.
//! Vertices are numbered in order of first appearance.

use std::fmt::Write as _;

use super::{Digraph, Graph};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    let ensure = |g: &mut Graph, l: &str| -> Result<usize> {
        match g.index_of(l) {
            Some(i) => Ok(i),
            None => g.add_vertex(l),
        }
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["vertex", v] => {
                ensure(&mut g, v)?;
            }
            [u, v] => {
                let a = ensure(&mut g, u)?;
                let b = ensure(&mut g, v)?;
                g.add_edge(a, b)?;
            }
            _ => {
                return Err(Error::Parse(format!("line {}: expected `u v` or `vertex u`", lineno + 1)));
            }
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(s, "vertex {}", g.label(v)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    s
}

/// Reads either JSON (`{"vertices": .., "edges": ..}`) or the edge-list
/// format, chosen by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        parse_edge_list(text)
    }
}

fn quote(l: &str) -> String {
    format!("\"{}\"", l.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {} {{\n", quote(name));
    for v in 0..g.n() {
        writeln!(s, "  {};", quote(g.label(v))).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(s, "  {} -- {};", quote(g.label(u)), quote(g.label(v))).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn digraph_to_dot(d: &Digraph, name: &str) -> String {
    let mut s = format!("digraph {} {{\n", quote(name));
    for v in 0..d.n() {
        writeln!(s, "  {};", quote(d.label(v))).unwrap();
    }
    for (u, v) in d.arcs() {
        writeln!(s, "  {} -> {};", quote(d.label(u)), quote(d.label(v))).unwrap();
    }
    s.push_str("}\n");
    s
}
