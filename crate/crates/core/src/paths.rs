//! Composable paths in the graph. A path `e_1 .. e_n` applies `e_1`
//! first; composability means the source of each edge is the range of
//! the one before it. For the modeled algebra classes composable paths
//! are exactly the admissible ones, so the CLI reports them as
//! "composable paths".

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{ColoredDigraph, Edge};

/// Enumeration refuses path lengths above this guard.
pub const MAX_PATH_LEN: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("empty edge sequence")]
    EmptySequence,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("max path length {requested} above the guard {limit}")]
    LengthGuard { requested: usize, limit: usize },
}

/// A composable edge sequence with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub edges: Vec<String>,
    pub source: String,
    pub range: String,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Text form: `path <edge> <edge> ...` in application order.
    pub fn render(&self) -> String {
        let mut out = String::from("path");
        for edge in &self.edges {
            out.push(' ');
            out.push_str(edge);
        }
        out.push('\n');
        out
    }
}

/// True when the sequence is composable in application order.
pub fn is_admissible(g: &ColoredDigraph, edge_names: &[String]) -> Result<bool, PathError> {
    if edge_names.is_empty() {
        return Err(PathError::EmptySequence);
    }
    let edges: Vec<&Edge> = edge_names
        .iter()
        .map(|name| {
            g.edge(name)
                .ok_or_else(|| PathError::UnknownEdge(name.clone()))
        })
        .collect::<Result<_, _>>()?;
    Ok(edges
        .windows(2)
        .all(|pair| pair[1].source == pair[0].range))
}

/// All composable paths from `from` to `to` of length `1..=max_len`, in
/// lexicographic order of their edge-name sequences.
pub fn admissible_paths(
    g: &ColoredDigraph,
    from: &str,
    to: &str,
    max_len: usize,
) -> Result<Vec<Path>, PathError> {
    for vertex in [from, to] {
        if !g.contains_vertex(vertex) {
            return Err(PathError::UnknownVertex(vertex.to_string()));
        }
    }
    if max_len > MAX_PATH_LEN {
        return Err(PathError::LengthGuard {
            requested: max_len,
            limit: MAX_PATH_LEN,
        });
    }

    let mut by_source: BTreeMap<&str, Vec<&Edge>> = BTreeMap::new();
    for edge in g.edges() {
        by_source.entry(edge.source.as_str()).or_default().push(edge);
    }

    let mut found = Vec::new();
    let mut stack: Vec<&Edge> = Vec::new();
    extend(
        &by_source,
        from,
        to,
        max_len,
        &mut stack,
        &mut found,
    );
    found.sort();
    Ok(found)
}

fn extend<'g>(
    by_source: &BTreeMap<&str, Vec<&'g Edge>>,
    at: &str,
    to: &str,
    max_len: usize,
    stack: &mut Vec<&'g Edge>,
    found: &mut Vec<Path>,
) {
    if stack.len() == max_len {
        return;
    }
    let Some(candidates) = by_source.get(at) else {
        return;
    };
    for edge in candidates {
        stack.push(edge);
        if edge.range == to {
            found.push(Path {
                edges: stack.iter().map(|e| e.name.clone()).collect(),
                source: stack[0].source.clone(),
                range: edge.range.clone(),
            });
        }
        extend(by_source, &edge.range, to, max_len, stack, found);
        stack.pop();
    }
}
