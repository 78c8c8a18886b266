//! Finite multivariable dynamical systems and their graph construction:
//! one edge per (map, point), with source the point, range its image, and
//! color the 1-based index of the generating map.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{valid_token, AlgebraClass, ColoredDigraph, Edge};
use crate::parse::{content_lines, ParseError};
use crate::partition::EdgePartition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("invalid name {0:?}: names are non-empty ASCII tokens without whitespace")]
    InvalidName(String),
    #[error("point {0:?} listed twice")]
    DuplicatePoint(String),
    #[error("duplicate map name {0:?}")]
    DuplicateMapName(String),
    #[error("map {map:?} is not total: no image for point {point:?}")]
    MapNotTotal { map: String, point: String },
    #[error("map {map:?} maps point {point:?} twice")]
    RepeatedMapPoint { map: String, point: String },
    #[error("map {map:?} references unknown point {point:?}")]
    UnknownPoint { map: String, point: String },
    #[error("system class must be tensor or semicrossed, found {0:?}")]
    BadClass(String),
}

/// A named total self-map of the point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    name: String,
    images: BTreeMap<String, String>,
}

impl PointMap {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn image(&self, point: &str) -> Option<&str> {
        self.images.get(point).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.images.iter().map(|(p, q)| (p.as_str(), q.as_str()))
    }

    /// The set of values the map attains.
    pub fn image_set(&self) -> Vec<&str> {
        let mut values: Vec<&str> = self.images.values().map(String::as_str).collect();
        values.sort();
        values.dedup();
        values
    }
}

/// A finite point set plus an ordered list of total self-maps, tagged
/// with the algebra class of the operator algebra it presents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSystem {
    algebra_class: AlgebraClass,
    points: Vec<String>,
    maps: Vec<PointMap>,
}

impl DynamicalSystem {
    /// Validates the system: distinct point and map names, every map
    /// total and single-valued with images inside the point set. Maps
    /// need not be injective or surjective.
    pub fn new(
        algebra_class: AlgebraClass,
        points: Vec<String>,
        maps: Vec<(String, BTreeMap<String, String>)>,
    ) -> Result<Self, SystemError> {
        if !matches!(
            algebra_class,
            AlgebraClass::Tensor | AlgebraClass::Semicrossed
        ) {
            return Err(SystemError::BadClass(algebra_class.token().to_string()));
        }
        for point in &points {
            if !valid_token(point) {
                return Err(SystemError::InvalidName(point.clone()));
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        if let Some(pair) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(SystemError::DuplicatePoint(pair[0].clone()));
        }

        let mut validated = Vec::with_capacity(maps.len());
        let mut seen_names: Vec<&str> = Vec::new();
        for (name, images) in &maps {
            if !valid_token(name) {
                return Err(SystemError::InvalidName(name.clone()));
            }
            if seen_names.contains(&name.as_str()) {
                return Err(SystemError::DuplicateMapName(name.clone()));
            }
            seen_names.push(name);
            for (point, image) in images {
                for end in [point, image] {
                    if sorted.binary_search(end).is_err() {
                        return Err(SystemError::UnknownPoint {
                            map: name.clone(),
                            point: end.clone(),
                        });
                    }
                }
            }
            for point in &points {
                if !images.contains_key(point) {
                    return Err(SystemError::MapNotTotal {
                        map: name.clone(),
                        point: point.clone(),
                    });
                }
            }
            validated.push(PointMap {
                name: name.clone(),
                images: images.clone(),
            });
        }

        Ok(Self {
            algebra_class,
            points,
            maps: validated,
        })
    }

    pub fn algebra_class(&self) -> AlgebraClass {
        self.algebra_class
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn maps(&self) -> &[PointMap] {
        &self.maps
    }
}

/// The graph of a system together with its canonical generator
/// partition: one class per map, one edge per point in each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedGraph {
    graph: ColoredDigraph,
    canonical_partition: EdgePartition,
}

impl GeneratedGraph {
    pub fn graph(&self) -> &ColoredDigraph {
        &self.graph
    }

    pub fn canonical_partition(&self) -> &EdgePartition {
        &self.canonical_partition
    }

    pub fn into_parts(self) -> (ColoredDigraph, EdgePartition) {
        (self.graph, self.canonical_partition)
    }
}

/// Builds the graph of a system: for map `i` and point `x` an edge named
/// `<mapname>@<point>` with source `x`, range the image of `x`, and
/// color `i` (1-based).
pub fn build_graph(sys: &DynamicalSystem) -> GeneratedGraph {
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    for (index, map) in sys.maps().iter().enumerate() {
        let mut class = Vec::new();
        for point in sys.points() {
            let name = format!("{}@{}", map.name(), point);
            edges.push(Edge {
                name: name.clone(),
                source: point.clone(),
                range: map.image(point).expect("validated map is total").to_string(),
                color: (index + 1) as u32,
            });
            class.push(name);
        }
        if !class.is_empty() {
            classes.push(class);
        }
    }
    let graph = ColoredDigraph::new(sys.points().to_vec(), edges, sys.algebra_class())
        .expect("a validated system builds a valid graph");
    let canonical_partition =
        EdgePartition::new(classes).expect("generator classes partition the edge set");
    GeneratedGraph {
        graph,
        canonical_partition,
    }
}

/// Parses the system file format:
///
/// ```text
/// system <tensor|semicrossed>
/// points <p1> <p2> ...
/// map <name> <x1>-><y1> <x2>-><y2> ...
/// ```
pub fn parse_system(text: &str) -> Result<DynamicalSystem, ParseError> {
    let mut lines = content_lines(text);

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "empty file: expected `system <class>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "system" {
        return Err(ParseError::new(
            header_line,
            "malformed header: expected `system <tensor|semicrossed>`",
        ));
    }
    let algebra_class = match AlgebraClass::from_token(fields[1]) {
        Some(class @ (AlgebraClass::Tensor | AlgebraClass::Semicrossed)) => class,
        _ => {
            return Err(ParseError::new(
                header_line,
                SystemError::BadClass(fields[1].to_string()),
            ))
        }
    };

    let (points_line, point_record) = lines
        .next()
        .ok_or_else(|| ParseError::new(header_line, "missing `points` line"))?;
    let mut point_fields = point_record.split_whitespace();
    if point_fields.next() != Some("points") {
        return Err(ParseError::new(
            points_line,
            "malformed line: expected `points <p1> <p2> ...`",
        ));
    }
    let mut points = Vec::new();
    for name in point_fields {
        if !valid_token(name) {
            return Err(ParseError::new(
                points_line,
                SystemError::InvalidName(name.to_string()),
            ));
        }
        if points.iter().any(|p| p == name) {
            return Err(ParseError::new(
                points_line,
                SystemError::DuplicatePoint(name.to_string()),
            ));
        }
        points.push(name.to_string());
    }

    let mut maps: Vec<(String, BTreeMap<String, String>)> = Vec::new();
    for (line_no, record) in lines {
        let fields: Vec<&str> = record.split_whitespace().collect();
        if fields[0] != "map" {
            return Err(ParseError::new(
                line_no,
                format!("malformed line: unknown record {:?}", fields[0]),
            ));
        }
        if fields.len() < 2 {
            return Err(ParseError::new(
                line_no,
                "malformed line: expected `map <name> <x>-><y> ...`",
            ));
        }
        let name = fields[1];
        if !valid_token(name) {
            return Err(ParseError::new(
                line_no,
                SystemError::InvalidName(name.to_string()),
            ));
        }
        if maps.iter().any(|(n, _)| n == name) {
            return Err(ParseError::new(
                line_no,
                SystemError::DuplicateMapName(name.to_string()),
            ));
        }
        let mut images = BTreeMap::new();
        for entry in &fields[2..] {
            let (from, to) = entry.split_once("->").ok_or_else(|| {
                ParseError::new(
                    line_no,
                    format!("malformed map entry {:?}: expected `<x>-><y>`", entry),
                )
            })?;
            if from.is_empty() || to.is_empty() {
                return Err(ParseError::new(
                    line_no,
                    format!("malformed map entry {:?}: expected `<x>-><y>`", entry),
                ));
            }
            for end in [from, to] {
                if !points.iter().any(|p| p == end) {
                    return Err(ParseError::new(
                        line_no,
                        SystemError::UnknownPoint {
                            map: name.to_string(),
                            point: end.to_string(),
                        },
                    ));
                }
            }
            if images.insert(from.to_string(), to.to_string()).is_some() {
                return Err(ParseError::new(
                    line_no,
                    SystemError::RepeatedMapPoint {
                        map: name.to_string(),
                        point: from.to_string(),
                    },
                ));
            }
        }
        for point in &points {
            if !images.contains_key(point) {
                return Err(ParseError::new(
                    line_no,
                    SystemError::MapNotTotal {
                        map: name.to_string(),
                        point: point.clone(),
                    },
                ));
            }
        }
        maps.push((name.to_string(), images));
    }

    DynamicalSystem::new(algebra_class, points, maps).map_err(|e| ParseError::new(0, e))
}
