//! Conflict relations on partition classes and coloring functions: which
//! classes must receive distinct colors, exact minimal colorings, the
//! 1-colorability criterion, and the order on colorings.
//!
//! The conflict rule is fixed by the algebra class: tensor-class graphs
//! never conflict, semicrossed-class graphs conflict whenever two classes
//! contain edges with a common range, and colored-class graphs conflict
//! when such edges also carry different colors. Plain graphs claim no
//! coloring semantics.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{AlgebraClass, ColoredDigraph};
use crate::partition::{is_topological, EdgePartition, PartitionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring semantics undefined for plain graphs")]
    PlainGraph,
    #[error("partition is not topological for this graph")]
    NotTopological,
    #[error("{0}")]
    Partition(#[from] PartitionError),
    #[error("coloring is missing class {0:?}")]
    MissingClass(String),
    #[error("colorings are over different class sets")]
    MismatchedClasses,
    #[error("duplicate class {0:?}")]
    DuplicateClass(String),
    #[error("conflict node index {0} out of range")]
    BadConflictIndex(usize),
    #[error("a class cannot conflict with itself")]
    SelfConflict,
    #[error("color 0 assigned to class {0:?}; colors are positive integers")]
    NonPositiveColor(String),
}

/// Undirected graph on partition classes; an edge means the two classes
/// must receive distinct colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    nodes: Vec<String>,
    conflicts: BTreeSet<(usize, usize)>,
}

impl ConflictGraph {
    /// Builds a conflict graph from class identifiers and index pairs.
    pub fn new(
        nodes: Vec<String>,
        conflicts: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ColoringError> {
        let mut seen = BTreeSet::new();
        for node in &nodes {
            if !seen.insert(node.clone()) {
                return Err(ColoringError::DuplicateClass(node.clone()));
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in conflicts {
            if a == b {
                return Err(ColoringError::SelfConflict);
            }
            for index in [a, b] {
                if index >= nodes.len() {
                    return Err(ColoringError::BadConflictIndex(index));
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            nodes,
            conflicts: set,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn conflict_count(&self) -> usize {
        self.conflicts.len()
    }

    pub fn has_conflicts(&self) -> bool {
        !self.conflicts.is_empty()
    }

    pub fn conflict_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.conflicts.iter().copied()
    }

    /// Conflicting class-identifier pairs, each ordered, in sorted order.
    pub fn conflict_pairs(&self) -> Vec<(&str, &str)> {
        self.conflicts
            .iter()
            .map(|&(i, j)| (self.nodes[i].as_str(), self.nodes[j].as_str()))
            .collect()
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for &(i, j) in &self.conflicts {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        adj
    }
}

/// A total assignment of positive colors to partition classes, keyed by
/// class identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringFunction {
    assignment: BTreeMap<String, u32>,
}

impl ColoringFunction {
    pub fn new(assignment: BTreeMap<String, u32>) -> Result<Self, ColoringError> {
        for (class, &color) in &assignment {
            if color == 0 {
                return Err(ColoringError::NonPositiveColor(class.clone()));
            }
        }
        Ok(Self { assignment })
    }

    pub fn constant<I, S>(classes: I, color: u32) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(classes.into_iter().map(|c| (c.into(), color)).collect())
    }

    pub fn get(&self, class: &str) -> Option<u32> {
        self.assignment.get(class).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.assignment.iter().map(|(c, &v)| (c.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn values_sorted(&self) -> Vec<u32> {
        let mut values: Vec<u32> = self.assignment.values().copied().collect();
        values.sort_unstable();
        values
    }

    /// Text form: `color <class-id> <color>` lines in class order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (class, color) in &self.assignment {
            out.push_str("color ");
            out.push_str(class);
            out.push(' ');
            out.push_str(&color.to_string());
            out.push('\n');
        }
        out
    }
}

/// Builds the conflict relation of a topological partition under the
/// graph's algebra-class rule.
pub fn conflict_relation(
    g: &ColoredDigraph,
    p: &EdgePartition,
) -> Result<ConflictGraph, ColoringError> {
    if g.algebra_class() == AlgebraClass::Plain {
        return Err(ColoringError::PlainGraph);
    }
    if !is_topological(g, p)? {
        return Err(ColoringError::NotTopological);
    }
    let nodes: Vec<String> = p.class_ids().iter().map(|s| s.to_string()).collect();

    // Colors attained per range vertex, for each class.
    let range_colors: Vec<BTreeMap<&str, BTreeSet<u32>>> = p
        .classes()
        .iter()
        .map(|class| {
            let mut by_range: BTreeMap<&str, BTreeSet<u32>> = BTreeMap::new();
            for name in class {
                let edge = g.edge(name).expect("partition validated against graph");
                by_range
                    .entry(edge.range.as_str())
                    .or_default()
                    .insert(edge.color);
            }
            by_range
        })
        .collect();

    let mut conflicts = BTreeSet::new();
    for i in 0..range_colors.len() {
        for j in (i + 1)..range_colors.len() {
            let fires = match g.algebra_class() {
                AlgebraClass::Tensor => false,
                AlgebraClass::Semicrossed => range_colors[i]
                    .keys()
                    .any(|range| range_colors[j].contains_key(range)),
                AlgebraClass::Colored => range_colors[i].iter().any(|(range, colors_i)| {
                    range_colors[j].get(range).is_some_and(|colors_j| {
                        // Some pair of colors across the two classes differs.
                        colors_i.union(colors_j).count() >= 2
                    })
                }),
                AlgebraClass::Plain => unreachable!("rejected above"),
            };
            if fires {
                conflicts.insert((i, j));
            }
        }
    }
    Ok(ConflictGraph { nodes, conflicts })
}

/// True when `f` separates every conflicting pair.
pub fn is_valid_coloring(
    cg: &ConflictGraph,
    f: &ColoringFunction,
) -> Result<bool, ColoringError> {
    let values = node_values(cg, f)?;
    Ok(cg
        .conflicts
        .iter()
        .all(|&(i, j)| values[i] != values[j]))
}

fn node_values(cg: &ConflictGraph, f: &ColoringFunction) -> Result<Vec<u32>, ColoringError> {
    cg.nodes
        .iter()
        .map(|node| {
            f.get(node)
                .ok_or_else(|| ColoringError::MissingClass(node.clone()))
        })
        .collect()
}

/// Exact chromatic number of the conflict graph plus the
/// lexicographically least witness (by class order) using colors `1..=k`.
///
/// Branch and bound: a greedy clique gives the lower bound, greedy
/// sequential coloring the upper bound, and a backtracking search with
/// palette symmetry breaking decides each candidate count.
pub fn minimal_coloring(cg: &ConflictGraph) -> (usize, ColoringFunction) {
    let n = cg.node_count();
    if n == 0 {
        return (
            0,
            ColoringFunction::new(BTreeMap::new()).expect("empty coloring is valid"),
        );
    }
    let adj = cg.adjacency();

    let lower = greedy_clique_size(&adj).max(1);
    let upper = greedy_coloring_count(&adj);

    let mut count = lower;
    while count < upper {
        if colorable_with(&adj, count) {
            break;
        }
        count += 1;
    }

    let witness =
        lex_least_coloring(&adj, count).expect("graph is colorable with its chromatic number");
    let assignment: BTreeMap<String, u32> = cg
        .nodes
        .iter()
        .zip(&witness)
        .map(|(node, &color)| (node.clone(), color))
        .collect();
    (
        count,
        ColoringFunction::new(assignment).expect("witness colors are positive"),
    )
}

fn greedy_clique_size(adj: &[BTreeSet<usize>]) -> usize {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[v].contains(&u)) {
            clique.push(v);
        }
    }
    clique.len()
}

fn greedy_coloring_count(adj: &[BTreeSet<usize>]) -> usize {
    let n = adj.len();
    let mut colors = vec![0u32; n];
    let mut max = 0;
    for v in 0..n {
        let used: BTreeSet<u32> = adj[v].iter().map(|&u| colors[u]).collect();
        let mut color = 1;
        while used.contains(&color) {
            color += 1;
        }
        colors[v] = color;
        max = max.max(color as usize);
    }
    max
}

fn colorable_with(adj: &[BTreeSet<usize>], k: usize) -> bool {
    fn recurse(adj: &[BTreeSet<usize>], k: usize, colors: &mut Vec<u32>, next: usize) -> bool {
        if next == adj.len() {
            return true;
        }
        let max_used = colors[..next].iter().copied().max().unwrap_or(0);
        let limit = (max_used + 1).min(k as u32);
        for color in 1..=limit {
            if adj[next].iter().all(|&u| u >= next || colors[u] != color) {
                colors[next] = color;
                if recurse(adj, k, colors, next + 1) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0u32; adj.len()];
    recurse(adj, k, &mut colors, 0)
}

fn lex_least_coloring(adj: &[BTreeSet<usize>], k: usize) -> Option<Vec<u32>> {
    fn recurse(adj: &[BTreeSet<usize>], k: usize, colors: &mut Vec<u32>, next: usize) -> bool {
        if next == adj.len() {
            return true;
        }
        for color in 1..=(k as u32) {
            if adj[next].iter().all(|&u| u >= next || colors[u] != color) {
                colors[next] = color;
                if recurse(adj, k, colors, next + 1) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0u32; adj.len()];
    recurse(adj, k, &mut colors, 0).then_some(colors)
}

/// The final criterion: no conflicts at all, equivalently a minimal
/// coloring with one color.
pub fn is_one_colorable(g: &ColoredDigraph, p: &EdgePartition) -> Result<bool, ColoringError> {
    Ok(!conflict_relation(g, p)?.has_conflicts())
}

/// Order on colorings over the same classes: `f <= g` when some
/// permutation of the class positions dominates `f` by `g`; decided by
/// comparing sorted value lists pointwise.
pub fn coloring_leq(f: &ColoringFunction, g: &ColoringFunction) -> Result<bool, ColoringError> {
    let f_classes: Vec<&str> = f.iter().map(|(c, _)| c).collect();
    let g_classes: Vec<&str> = g.iter().map(|(c, _)| c).collect();
    if f_classes != g_classes {
        return Err(ColoringError::MismatchedClasses);
    }
    let f_values = f.values_sorted();
    let g_values = g.values_sorted();
    Ok(f_values
        .iter()
        .zip(&g_values)
        .all(|(fv, gv)| fv <= gv))
}

/// Maximality ignores the algebra class: every pair of distinct classes
/// containing edges with a common range must receive distinct colors.
pub fn is_maximal_coloring(
    g: &ColoredDigraph,
    p: &EdgePartition,
    f: &ColoringFunction,
) -> Result<bool, ColoringError> {
    if !is_topological(g, p)? {
        return Err(ColoringError::NotTopological);
    }
    let ids = p.class_ids();
    let values: Vec<u32> = ids
        .iter()
        .map(|id| {
            f.get(id)
                .ok_or_else(|| ColoringError::MissingClass(id.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let ranges: Vec<BTreeSet<&str>> = p
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|name| g.edge(name).expect("partition validated").range.as_str())
                .collect()
        })
        .collect();
    for i in 0..ranges.len() {
        for j in (i + 1)..ranges.len() {
            let common_range = ranges[i].intersection(&ranges[j]).next().is_some();
            if common_range && values[i] == values[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
