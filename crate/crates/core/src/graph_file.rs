//! Line-oriented text format for weighted graphs.
//!
//! ```text
//! # comment
//! v a w=2 g=0
//! v b w=3
//! e a b m=1
//! ```
//!
//! `g=` defaults to 0 and `m=` to 1. Vertices keep the order of their
//! `v` lines.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let id = tokens.next().ok_or_else(|| err("vertex line needs an id".into()))?;
                let (mut weight, mut genus) = (None, 0);
                for tok in tokens {
                    match tok.split_once('=') {
                        Some(("w", v)) => weight = Some(number(v, "w", line)?),
                        Some(("g", v)) => genus = number(v, "g", line)?,
                        _ => return Err(err(format!("unexpected token {tok:?}"))),
                    }
                }
                let weight = weight.ok_or_else(|| err(format!("vertex {id} needs w=")))?;
                g.add_vertex(id, weight, genus).map_err(|e| err(e.to_string()))?;
            }
            Some("e") => {
                let a = tokens.next().ok_or_else(|| err("edge line needs two endpoints".into()))?;
                let b = tokens.next().ok_or_else(|| err("edge line needs two endpoints".into()))?;
                let mut m = 1;
                for tok in tokens {
                    match tok.split_once('=') {
                        Some(("m", v)) => m = number(v, "m", line)?,
                        _ => return Err(err(format!("unexpected token {tok:?}"))),
                    }
                }
                for end in [a, b] {
                    if g.index_of(end).is_none() {
                        return Err(err(format!("edge endpoint {end} is not a declared vertex")));
                    }
                }
                g.add_edge(a, b, m).map_err(|e| err(e.to_string()))?;
            }
            Some(other) => return Err(err(format!("unknown record type {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    Ok(g)
}

fn number(text: &str, key: &str, line: usize) -> Result<u32> {
    text.parse().map_err(|_| Error::Parse { line, message: format!("{key}= expects a nonnegative integer, got {text:?}") })
}

/// Every field is written out, so the output parses back to an equal graph.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "v {} w={} g={}", v.id, v.weight, v.genus).expect("write to String");
    }
    for (i, j, m) in g.edges() {
        writeln!(out, "e {} {} m={}", g.vertex(i).id, g.vertex(j).id, m).expect("write to String");
    }
    out
}
