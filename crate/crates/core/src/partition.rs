//! Topological partitions of an edge set: validation, exhaustive
//! enumeration, the refinement order, and its Hasse diagram.
//!
//! A partition is topological when every class is source-injective; over
//! finite discrete vertex spaces that is the whole condition. Under the
//! refinement order the discrete (all-singletons) partition is the
//! largest element and the one-class partition, when admissible, the
//! smallest.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::ColoredDigraph;
use crate::parse::{content_lines, ParseError};

/// Default cap on the edge count for exhaustive partition enumeration;
/// Bell(10) = 115975.
pub const DEFAULT_PARTITION_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition class is empty")]
    EmptyClass,
    #[error("edge {0:?} appears in more than one class")]
    DuplicateEdge(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edge {0:?} is not covered by the partition")]
    MissingEdge(String),
    #[error("partitions are over different edge sets")]
    MismatchedEdgeSets,
    #[error(
        "graph has {edges} edges, above the enumeration cap {cap}; raise it with --max-partition-edges"
    )]
    CapExceeded { edges: usize, cap: usize },
}

/// A partition of an edge-name set into non-empty classes, normalized:
/// each class sorted, classes ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePartition {
    classes: Vec<Vec<String>>,
}

impl EdgePartition {
    /// Normalizes and rejects empty classes and repeated edge names.
    pub fn new(classes: Vec<Vec<String>>) -> Result<Self, PartitionError> {
        let mut normalized: Vec<Vec<String>> = Vec::with_capacity(classes.len());
        let mut seen = BTreeSet::new();
        for class in classes {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass);
            }
            for name in &class {
                if !seen.insert(name.clone()) {
                    return Err(PartitionError::DuplicateEdge(name.clone()));
                }
            }
            let mut class = class;
            class.sort();
            normalized.push(class);
        }
        normalized.sort();
        Ok(Self {
            classes: normalized,
        })
    }

    /// The all-singletons partition; the maximum of the refinement order.
    pub fn discrete<I, S>(edge_names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let classes = edge_names
            .into_iter()
            .map(|name| vec![name.into()])
            .collect();
        Self::new(classes).expect("singleton classes are valid")
    }

    /// The one-class partition (empty for an empty edge set).
    pub fn coarse<I, S>(edge_names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let class: Vec<String> = edge_names.into_iter().map(Into::into).collect();
        let classes = if class.is_empty() { vec![] } else { vec![class] };
        Self::new(classes).expect("a single class is valid")
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Class identifiers: the least edge name of each class, in class
    /// order.
    pub fn class_ids(&self) -> Vec<&str> {
        self.classes
            .iter()
            .map(|class| class[0].as_str())
            .collect()
    }

    pub fn class_index_of(&self, edge_name: &str) -> Option<usize> {
        self.classes
            .iter()
            .position(|class| class.binary_search_by(|e| e.as_str().cmp(edge_name)).is_ok())
    }

    pub fn edge_names(&self) -> BTreeSet<&str> {
        self.classes
            .iter()
            .flat_map(|class| class.iter().map(String::as_str))
            .collect()
    }

    /// Text form: one `class <edge> <edge> ...` line per class,
    /// normalized order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            out.push_str("class");
            for name in class {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form produced by `render`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut classes = Vec::new();
        let mut line_of: BTreeMap<String, usize> = BTreeMap::new();
        for (line_no, record) in content_lines(text) {
            let fields: Vec<&str> = record.split_whitespace().collect();
            if fields[0] != "class" {
                return Err(ParseError::new(
                    line_no,
                    format!("malformed line: unknown record {:?}", fields[0]),
                ));
            }
            if fields.len() < 2 {
                return Err(ParseError::new(line_no, PartitionError::EmptyClass));
            }
            let mut class = Vec::new();
            for name in &fields[1..] {
                if line_of.insert(name.to_string(), line_no).is_some() {
                    return Err(ParseError::new(
                        line_no,
                        PartitionError::DuplicateEdge(name.to_string()),
                    ));
                }
                class.push(name.to_string());
            }
            classes.push(class);
        }
        Self::new(classes).map_err(|e| ParseError::new(0, e))
    }
}

/// Decides whether `p` is a topological partition of `g`'s edge set:
/// exact coverage plus pairwise-distinct sources within each class.
/// Unknown, duplicated, and missing edges are errors, not `false`.
pub fn is_topological(g: &ColoredDigraph, p: &EdgePartition) -> Result<bool, PartitionError> {
    for class in p.classes() {
        for name in class {
            if g.edge(name).is_none() {
                return Err(PartitionError::UnknownEdge(name.clone()));
            }
        }
    }
    if p.edge_count() != g.edge_count() {
        let covered = p.edge_names();
        let missing = g
            .edge_names()
            .find(|name| !covered.contains(name))
            .expect("fewer covered names than edges implies one is missing");
        return Err(PartitionError::MissingEdge(missing.to_string()));
    }
    Ok(p.classes().iter().all(|class| {
        let mut sources = BTreeSet::new();
        class
            .iter()
            .all(|name| sources.insert(&g.edge(name).expect("checked above").source))
    }))
}

/// Enumerates every topological partition of `g`'s edges, in
/// restricted-growth-string order over the name-sorted edge list.
pub fn enumerate_topological_partitions(
    g: &ColoredDigraph,
    cap: usize,
) -> Result<Vec<EdgePartition>, PartitionError> {
    let edge_count = g.edge_count();
    if edge_count > cap {
        return Err(PartitionError::CapExceeded {
            edges: edge_count,
            cap,
        });
    }
    let names: Vec<&str> = g.edge_names().collect();
    let sources: Vec<&str> = g.edges().iter().map(|e| e.source.as_str()).collect();

    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_sources: Vec<BTreeSet<&str>> = Vec::new();

    fn recurse<'a>(
        index: usize,
        names: &[&str],
        sources: &[&'a str],
        blocks: &mut Vec<Vec<usize>>,
        block_sources: &mut Vec<BTreeSet<&'a str>>,
        out: &mut Vec<EdgePartition>,
    ) {
        if index == names.len() {
            let classes: Vec<Vec<String>> = blocks
                .iter()
                .map(|block| block.iter().map(|&i| names[i].to_string()).collect())
                .collect();
            out.push(EdgePartition::new(classes).expect("blocks partition the edge set"));
            return;
        }
        let source = sources[index];
        for block in 0..blocks.len() {
            // Source-injectivity within a class prunes the branch early.
            if block_sources[block].contains(source) {
                continue;
            }
            blocks[block].push(index);
            block_sources[block].insert(source);
            recurse(index + 1, names, sources, blocks, block_sources, out);
            block_sources[block].remove(source);
            blocks[block].pop();
        }
        blocks.push(vec![index]);
        block_sources.push(BTreeSet::from([source]));
        recurse(index + 1, names, sources, blocks, block_sources, out);
        block_sources.pop();
        blocks.pop();
    }

    recurse(0, &names, &sources, &mut blocks, &mut block_sources, &mut out);
    Ok(out)
}

/// Edge position -> class index, over a fixed edge-name indexing.
fn block_vector(p: &EdgePartition, edge_index: &BTreeMap<&str, usize>) -> Vec<usize> {
    let mut blocks = vec![0usize; edge_index.len()];
    for (class_index, class) in p.classes().iter().enumerate() {
        for name in class {
            blocks[edge_index[name.as_str()]] = class_index;
        }
    }
    blocks
}

/// True when `finer` refines `coarser`: every block of `finer` maps into
/// a single block of `coarser`.
fn refines_into(coarser: &[usize], finer: &[usize], finer_class_count: usize) -> bool {
    let mut image: Vec<Option<usize>> = vec![None; finer_class_count];
    for (edge, &block) in finer.iter().enumerate() {
        match image[block] {
            None => image[block] = Some(coarser[edge]),
            Some(target) if target == coarser[edge] => {}
            _ => return false,
        }
    }
    true
}

/// The refinement order: `p1 <= p2` when every class of `p2` is contained
/// in a class of `p1`, so `p2` refines `p1`.
pub fn partition_leq(p1: &EdgePartition, p2: &EdgePartition) -> Result<bool, PartitionError> {
    if p1.edge_names() != p2.edge_names() {
        return Err(PartitionError::MismatchedEdgeSets);
    }
    let edge_index: BTreeMap<&str, usize> = p1
        .edge_names()
        .into_iter()
        .enumerate()
        .map(|(i, name)| (name, i))
        .collect();
    Ok(refines_into(
        &block_vector(p1, &edge_index),
        &block_vector(p2, &edge_index),
        p2.class_count(),
    ))
}

/// Strict-less rows of the whole list as bitsets, sharing the pairwise
/// refinement core with `partition_leq`.
fn strict_less_rows(ps: &[EdgePartition]) -> Result<Vec<Vec<u64>>, PartitionError> {
    let n = ps.len();
    let words = n.div_ceil(64);
    if n == 0 {
        return Ok(Vec::new());
    }
    let reference = ps[0].edge_names();
    let edge_index: BTreeMap<&str, usize> = reference
        .iter()
        .enumerate()
        .map(|(i, &name)| (name, i))
        .collect();
    for p in &ps[1..] {
        if p.edge_names() != reference {
            return Err(PartitionError::MismatchedEdgeSets);
        }
    }
    let blocks: Vec<Vec<usize>> = ps.iter().map(|p| block_vector(p, &edge_index)).collect();
    let counts: Vec<usize> = ps.iter().map(EdgePartition::class_count).collect();

    let mut rows = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in 0..n {
            // Strictly finer partitions have strictly more classes.
            if counts[i] < counts[j] && refines_into(&blocks[i], &blocks[j], counts[j]) {
                rows[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    Ok(rows)
}

/// Minimal and maximal elements of a list of partitions under the
/// refinement order, as indices into the list.
pub fn poset_extremes(ps: &[EdgePartition]) -> Result<(Vec<usize>, Vec<usize>), PartitionError> {
    let less = strict_less_rows(ps)?;
    let n = ps.len();
    let mut minimal = Vec::new();
    let mut maximal = Vec::new();
    for (i, row) in less.iter().enumerate() {
        let has_smaller = (0..n).any(|j| less[j][i / 64] >> (i % 64) & 1 == 1);
        let has_larger = row.iter().any(|&word| word != 0);
        if !has_smaller {
            minimal.push(i);
        }
        if !has_larger {
            maximal.push(i);
        }
    }
    Ok((minimal, maximal))
}

/// Covering pairs `(i, j)` with `ps[i] < ps[j]` and nothing strictly
/// between: the Hasse diagram of the refinement order.
pub fn hasse_edges(ps: &[EdgePartition]) -> Result<Vec<(usize, usize)>, PartitionError> {
    let less = strict_less_rows(ps)?;
    let n = ps.len();
    let words = n.div_ceil(64);
    // Transposed copy: column j as a bitset over i.
    let mut above = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in 0..n {
            if less[i][j / 64] >> (j % 64) & 1 == 1 {
                above[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut covers = Vec::new();
    for (i, row) in less.iter().enumerate() {
        for j in 0..n {
            if row[j / 64] >> (j % 64) & 1 == 0 {
                continue;
            }
            // i < j is a cover when nothing sits strictly between.
            let between = row
                .iter()
                .zip(&above[j])
                .any(|(&below, &over)| below & over != 0);
            if !between {
                covers.push((i, j));
            }
        }
    }
    Ok(covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    const THREE_LOOPS: &str = "\
graph semicrossed
vertices 0 1 2
edge id@0 0 0 1
edge id@1 1 1 1
edge id@2 2 2 1
";

    const TWO_PARALLEL: &str = "\
graph plain
vertices a b
edge e1 a b 1
edge e2 a b 1
";

    fn partition(classes: &[&[&str]]) -> EdgePartition {
        EdgePartition::new(
            classes
                .iter()
                .map(|class| class.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn normalizes_class_order() {
        let p = partition(&[&["z", "m"], &["a"]]);
        assert_eq!(p.classes(), &[vec!["a".to_string()], vec!["m".to_string(), "z".to_string()]]);
        assert_eq!(p.class_ids(), vec!["a", "m"]);
    }

    #[test]
    fn rejects_duplicate_edges() {
        let err = EdgePartition::new(vec![vec!["a".into()], vec!["a".into()]]).unwrap_err();
        assert_eq!(err, PartitionError::DuplicateEdge("a".into()));
    }

    #[test]
    fn any_partition_of_distinct_source_loops_is_topological() {
        let g = parse_graph(THREE_LOOPS).unwrap();
        for p in enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap() {
            assert_eq!(is_topological(&g, &p), Ok(true));
        }
        let coarse = EdgePartition::coarse(g.edge_names());
        assert_eq!(is_topological(&g, &coarse), Ok(true));
    }

    #[test]
    fn canonical_generator_partition_is_topological() {
        let sys = crate::dynamics::parse_system(
            "system semicrossed\npoints 1 2 3 4\nmap f 1->2 2->3 3->3 4->3\nmap g 1->2 2->4 3->4 4->4\n",
        )
        .unwrap();
        let built = crate::dynamics::build_graph(&sys);
        assert_eq!(
            is_topological(built.graph(), built.canonical_partition()),
            Ok(true)
        );
    }

    #[test]
    fn source_clash_is_not_topological() {
        let g = parse_graph(TWO_PARALLEL).unwrap();
        let clash = partition(&[&["e1", "e2"]]);
        assert_eq!(is_topological(&g, &clash), Ok(false));
    }

    #[test]
    fn unknown_duplicate_and_missing_edges_are_distinct_errors() {
        let g = parse_graph(TWO_PARALLEL).unwrap();
        assert_eq!(
            is_topological(&g, &partition(&[&["e1"], &["zz"]])),
            Err(PartitionError::UnknownEdge("zz".into()))
        );
        assert_eq!(
            is_topological(&g, &partition(&[&["e1"]])),
            Err(PartitionError::MissingEdge("e2".into()))
        );
        assert_eq!(
            EdgePartition::new(vec![vec!["e1".into(), "e1".into()]]).unwrap_err(),
            PartitionError::DuplicateEdge("e1".into())
        );
    }

    #[test]
    fn three_loops_have_five_topological_partitions() {
        // Bell(3) = 5 and every set partition passes.
        let g = parse_graph(THREE_LOOPS).unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(ps.len(), 5);
    }

    #[test]
    fn parallel_edges_leave_only_the_discrete_partition() {
        let g = parse_graph(TWO_PARALLEL).unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(ps, vec![EdgePartition::discrete(g.edge_names())]);
    }

    #[test]
    fn empty_edge_set_has_the_empty_partition() {
        let g = parse_graph("graph plain\nvertices a\n").unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].classes().is_empty());
    }

    #[test]
    fn cap_is_enforced_and_names_the_flag() {
        let sys = crate::dynamics::parse_system(
            "system semicrossed\npoints 1 2 3 4 5 6\nmap f 1->1 2->2 3->3 4->4 5->5 6->6\nmap g 1->1 2->2 3->3 4->4 5->5 6->6\n",
        )
        .unwrap();
        let built = crate::dynamics::build_graph(&sys);
        let err = enumerate_topological_partitions(built.graph(), 10).unwrap_err();
        assert_eq!(err, PartitionError::CapExceeded { edges: 12, cap: 10 });
        assert!(err.to_string().contains("--max-partition-edges"));
    }

    #[test]
    fn singletons_refine_everything() {
        let p1 = partition(&[&["a", "b", "c"]]);
        let p2 = partition(&[&["a"], &["b"], &["c"]]);
        assert_eq!(partition_leq(&p1, &p2), Ok(true));
        assert_eq!(partition_leq(&p2, &p1), Ok(false));
    }

    #[test]
    fn leq_is_reflexive() {
        let p = partition(&[&["a", "b"], &["c"]]);
        assert_eq!(partition_leq(&p, &p), Ok(true));
    }

    #[test]
    fn crossing_partitions_are_incomparable() {
        let p1 = partition(&[&["a", "b"], &["c"]]);
        let p2 = partition(&[&["a", "c"], &["b"]]);
        assert_eq!(partition_leq(&p1, &p2), Ok(false));
        assert_eq!(partition_leq(&p2, &p1), Ok(false));
    }

    #[test]
    fn leq_rejects_mismatched_edge_sets() {
        let p1 = partition(&[&["a"]]);
        let p2 = partition(&[&["b"]]);
        assert_eq!(
            partition_leq(&p1, &p2),
            Err(PartitionError::MismatchedEdgeSets)
        );
    }

    #[test]
    fn extremes_of_the_three_loop_poset() {
        let g = parse_graph(THREE_LOOPS).unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        let (minimal, maximal) = poset_extremes(&ps).unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(maximal.len(), 1);
        assert_eq!(ps[minimal[0]], EdgePartition::coarse(g.edge_names()));
        assert_eq!(ps[maximal[0]], EdgePartition::discrete(g.edge_names()));
    }

    #[test]
    fn single_partition_is_both_extremes() {
        let ps = vec![partition(&[&["a"]])];
        let (minimal, maximal) = poset_extremes(&ps).unwrap();
        assert_eq!(minimal, vec![0]);
        assert_eq!(maximal, vec![0]);
        assert_eq!(hasse_edges(&ps).unwrap(), vec![]);
    }

    #[test]
    fn discrete_partition_is_sole_extreme_for_parallel_edges() {
        let g = parse_graph(TWO_PARALLEL).unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        let (minimal, maximal) = poset_extremes(&ps).unwrap();
        assert_eq!(minimal, vec![0]);
        assert_eq!(maximal, vec![0]);
    }

    #[test]
    fn hasse_diagram_of_the_three_loop_poset() {
        // Brute-force transitive reduction of the 5-element partition
        // poset gives 6 covering pairs: coarse below the three two-class
        // partitions, each below discrete.
        let g = parse_graph(THREE_LOOPS).unwrap();
        let ps = enumerate_topological_partitions(&g, DEFAULT_PARTITION_CAP).unwrap();
        let covers = hasse_edges(&ps).unwrap();
        assert_eq!(covers.len(), 6);
        let coarse = ps
            .iter()
            .position(|p| p.class_count() == 1)
            .unwrap();
        let discrete = ps
            .iter()
            .position(|p| p.class_count() == 3)
            .unwrap();
        assert_eq!(covers.iter().filter(|&&(i, _)| i == coarse).count(), 3);
        assert_eq!(covers.iter().filter(|&&(_, j)| j == discrete).count(), 3);
        assert!(!covers.contains(&(coarse, discrete)));
    }

    #[test]
    fn hasse_of_a_chain_is_the_chain() {
        let p1 = partition(&[&["a", "b", "c"]]);
        let p2 = partition(&[&["a", "b"], &["c"]]);
        let p3 = partition(&[&["a"], &["b"], &["c"]]);
        let covers = hasse_edges(&[p1, p2, p3]).unwrap();
        assert_eq!(covers, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn render_and_parse_round_trip() {
        let p = partition(&[&["f@1", "f@2"], &["g@1"]]);
        assert_eq!(p.render(), "class f@1 f@2\nclass g@1\n");
        assert_eq!(EdgePartition::parse(&p.render()).unwrap(), p);
    }
}
