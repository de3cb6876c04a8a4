//! Edge-list text format.
//!
//! ```text
//! # comment
//! v a          optional vertex declaration (needed for isolated vertices)
//! e a b -      edge between a and b with sign + or -
//! ```
//!
//! Vertex ids follow order of first appearance. Edge ids follow line order.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

pub fn parse_edge_list(text: &str) -> Result<SignedGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut edges = Vec::new();

    let mut intern = |name: &str, names: &mut Vec<String>| -> u32 {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() as u32 - 1
        })
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        let Some(&(col, head)) = tokens.first() else {
            continue;
        };
        let err = |column: usize, message: String| Error::Parse {
            line: lineno + 1,
            column,
            message,
        };
        match head {
            "v" => {
                if tokens.len() != 2 {
                    return Err(err(col, format!("expected `v <name>`, found {} fields", tokens.len())));
                }
                intern(tokens[1].1, &mut names);
            }
            "e" => {
                if tokens.len() != 4 {
                    return Err(err(
                        col,
                        format!("expected `e <u> <v> <+|->`, found {} fields", tokens.len()),
                    ));
                }
                let sign = match tokens[3].1 {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    other => {
                        return Err(err(tokens[3].0, format!("sign must be `+` or `-`, found `{other}`")))
                    }
                };
                let u = intern(tokens[1].1, &mut names);
                let v = intern(tokens[2].1, &mut names);
                edges.push((u, v, sign));
            }
            other => return Err(err(col, format!("unknown record `{other}`"))),
        }
    }
    SignedGraph::with_names(names, edges)
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Writes every vertex declaration followed by every edge, so that
/// `parse_edge_list(&write_edge_list(g)) == g`.
pub fn write_edge_list(g: &SignedGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "v {}", g.name(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "e {} {} {}",
            g.name(e.u),
            g.name(e.v),
            e.sign.symbol()
        );
    }
    out
}
