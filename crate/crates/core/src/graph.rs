//! Edge-colored directed multigraphs: validation, the text file format,
//! and elementary counting invariants.
//!
//! A graph is immutable once validated. Vertices and edges are kept sorted
//! by name, so two graphs with the same content compare equal and
//! serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::parse::{content_lines, ParseError};

/// Operator-algebra class attached to a graph. The class selects the
/// coloring semantics used downstream; `Plain` claims none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraClass {
    Tensor,
    Semicrossed,
    Colored,
    Plain,
}

impl AlgebraClass {
    pub fn token(self) -> &'static str {
        match self {
            AlgebraClass::Tensor => "tensor",
            AlgebraClass::Semicrossed => "semicrossed",
            AlgebraClass::Colored => "colored",
            AlgebraClass::Plain => "plain",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "tensor" => Some(AlgebraClass::Tensor),
            "semicrossed" => Some(AlgebraClass::Semicrossed),
            "colored" => Some(AlgebraClass::Colored),
            "plain" => Some(AlgebraClass::Plain),
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A directed edge `source -> range` carrying a positive color.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub name: String,
    pub source: String,
    pub range: String,
    pub color: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid name {0:?}: names are non-empty ASCII tokens without whitespace")]
    InvalidName(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(String),
    #[error("unknown vertex {vertex:?} in edge {edge:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {0:?} has color 0; colors are positive integers")]
    NonPositiveColor(String),
}

pub(crate) fn valid_token(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_graphic())
}

/// A finite directed multigraph with named vertices, named colored edges,
/// and an algebra class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    algebra_class: AlgebraClass,
}

impl ColoredDigraph {
    /// Validates and normalizes: vertex and edge names must be distinct
    /// tokens, edge endpoints must exist, colors must be positive.
    pub fn new(
        mut vertices: Vec<String>,
        mut edges: Vec<Edge>,
        algebra_class: AlgebraClass,
    ) -> Result<Self, GraphError> {
        for name in &vertices {
            if !valid_token(name) {
                return Err(GraphError::InvalidName(name.clone()));
            }
        }
        vertices.sort();
        if let Some(pair) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(pair[0].clone()));
        }
        for edge in &edges {
            if !valid_token(&edge.name) {
                return Err(GraphError::InvalidName(edge.name.clone()));
            }
            for end in [&edge.source, &edge.range] {
                if vertices.binary_search(end).is_err() {
                    return Err(GraphError::UnknownVertex {
                        edge: edge.name.clone(),
                        vertex: end.clone(),
                    });
                }
            }
            if edge.color == 0 {
                return Err(GraphError::NonPositiveColor(edge.name.clone()));
            }
        }
        edges.sort();
        if let Some(pair) = edges.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(GraphError::DuplicateEdge(pair[0].name.clone()));
        }
        Ok(Self {
            vertices,
            edges,
            algebra_class,
        })
    }

    /// Vertex names in sorted order.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges sorted by name.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn algebra_class(&self) -> AlgebraClass {
        self.algebra_class
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, name: &str) -> bool {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).is_ok()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn edge(&self, name: &str) -> Option<&Edge> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn edge_names(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.name.as_str())
    }

    /// Same graph with edge colors replaced; edges absent from `colors`
    /// keep their color.
    pub fn recolored(&self, colors: &BTreeMap<String, u32>) -> Result<Self, GraphError> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                name: e.name.clone(),
                source: e.source.clone(),
                range: e.range.clone(),
                color: colors.get(&e.name).copied().unwrap_or(e.color),
            })
            .collect();
        Self::new(self.vertices.clone(), edges, self.algebra_class)
    }

    /// Edge counts per ordered `(range, source)` vertex pair.
    pub fn multiplicity(&self) -> MultiplicityTable {
        let mut counts = BTreeMap::new();
        for edge in &self.edges {
            *counts
                .entry((edge.range.clone(), edge.source.clone()))
                .or_insert(0usize) += 1;
        }
        MultiplicityTable { counts }
    }

    /// Finite graphs are always vertex-pair finite; the payload is the
    /// largest multiplicity entry. Edge-freeness of the algebra follows.
    pub fn is_vertex_pair_finite(&self) -> (bool, usize) {
        (true, self.multiplicity().max())
    }

    /// Per-vertex `(out-degree, in-degree)` pairs, sorted.
    pub fn degree_profile(&self) -> Vec<(usize, usize)> {
        let mut out_deg: BTreeMap<&str, usize> = BTreeMap::new();
        let mut in_deg: BTreeMap<&str, usize> = BTreeMap::new();
        for edge in &self.edges {
            *out_deg.entry(edge.source.as_str()).or_insert(0) += 1;
            *in_deg.entry(edge.range.as_str()).or_insert(0) += 1;
        }
        let mut profile: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .map(|v| {
                (
                    out_deg.get(v.as_str()).copied().unwrap_or(0),
                    in_deg.get(v.as_str()).copied().unwrap_or(0),
                )
            })
            .collect();
        profile.sort();
        profile
    }

    /// Deterministic text form: header, vertices line, one line per edge,
    /// all sorted, LF-terminated.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("graph ");
        out.push_str(self.algebra_class.token());
        out.push('\n');
        out.push_str("vertices");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        for e in &self.edges {
            out.push_str("edge ");
            out.push_str(&e.name);
            out.push(' ');
            out.push_str(&e.source);
            out.push(' ');
            out.push_str(&e.range);
            out.push(' ');
            out.push_str(&e.color.to_string());
            out.push('\n');
        }
        out
    }
}

/// Edge counts keyed by ordered `(range, source)` pair; absent pairs
/// count zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    counts: BTreeMap<(String, String), usize>,
}

impl MultiplicityTable {
    pub fn count(&self, range: &str, source: &str) -> usize {
        self.counts
            .get(&(range.to_string(), source.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((&str, &str), usize)> {
        self.counts
            .iter()
            .map(|((r, s), &n)| ((r.as_str(), s.as_str()), n))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn max(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Nonzero entries, sorted; a relabeling-invariant profile.
    pub fn sorted_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = self.counts.values().copied().collect();
        profile.sort();
        profile
    }
}

/// Parses the graph file format:
///
/// ```text
/// graph <tensor|semicrossed|colored|plain>
/// vertices <v1> <v2> ...
/// edge <name> <source> <range> <color>
/// ```
pub fn parse_graph(text: &str) -> Result<ColoredDigraph, ParseError> {
    let mut lines = content_lines(text);

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty file: expected `graph <class>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "graph" {
        return Err(ParseError::new(
            header_line,
            "malformed header: expected `graph <tensor|semicrossed|colored|plain>`",
        ));
    }
    let algebra_class = AlgebraClass::from_token(fields[1]).ok_or_else(|| {
        ParseError::new(
            header_line,
            format!("unknown algebra class {:?}", fields[1]),
        )
    })?;

    let (vertices_line, vertex_record) = lines
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing `vertices` line"))?;
    let mut vertex_fields = vertex_record.split_whitespace();
    if vertex_fields.next() != Some("vertices") {
        return Err(ParseError::new(
            vertices_line,
            "malformed line: expected `vertices <v1> <v2> ...`",
        ));
    }
    let mut vertices = Vec::new();
    let mut seen_vertices = BTreeSet::new();
    for name in vertex_fields {
        if !valid_token(name) {
            return Err(ParseError::new(
                vertices_line,
                GraphError::InvalidName(name.to_string()),
            ));
        }
        if !seen_vertices.insert(name) {
            return Err(ParseError::new(
                vertices_line,
                GraphError::DuplicateVertex(name.to_string()),
            ));
        }
        vertices.push(name.to_string());
    }

    let mut edges = Vec::new();
    let mut seen_edges = BTreeSet::new();
    for (line_no, record) in lines {
        let fields: Vec<&str> = record.split_whitespace().collect();
        if fields[0] != "edge" {
            return Err(ParseError::new(
                line_no,
                format!("malformed line: unknown record {:?}", fields[0]),
            ));
        }
        if fields.len() != 5 {
            return Err(ParseError::new(
                line_no,
                "malformed line: expected `edge <name> <source> <range> <color>`",
            ));
        }
        let (name, source, range, color_token) = (fields[1], fields[2], fields[3], fields[4]);
        if !valid_token(name) {
            return Err(ParseError::new(
                line_no,
                GraphError::InvalidName(name.to_string()),
            ));
        }
        if !seen_edges.insert(name.to_string()) {
            return Err(ParseError::new(
                line_no,
                GraphError::DuplicateEdge(name.to_string()),
            ));
        }
        for end in [source, range] {
            if !seen_vertices.contains(end) {
                return Err(ParseError::new(
                    line_no,
                    GraphError::UnknownVertex {
                        edge: name.to_string(),
                        vertex: end.to_string(),
                    },
                ));
            }
        }
        let color: u32 = color_token.parse().map_err(|_| {
            ParseError::new(
                line_no,
                format!("malformed line: color {:?} is not an integer", color_token),
            )
        })?;
        if color == 0 {
            return Err(ParseError::new(
                line_no,
                GraphError::NonPositiveColor(name.to_string()),
            ));
        }
        edges.push(Edge {
            name: name.to_string(),
            source: source.to_string(),
            range: range.to_string(),
            color,
        });
    }

    ColoredDigraph::new(vertices, edges, algebra_class)
        .map_err(|e| ParseError::new(0, e))
}
