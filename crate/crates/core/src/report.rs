//! The invariant report and the compare pipeline.
//!
//! A report lists, in fixed order, every invariant the tool computes for
//! one algebra presentation. Compare walks the same invariants across
//! two presentations and names the first one that differs.
//!
//! The colored canonical form follows the algebra class: tensor-class
//! graphs erase their colors (their generators impose no separation),
//! semicrossed-class graphs are recolored by the minimal coloring of the
//! active partition, and colored-class graphs keep their palette as
//! given. Plain graphs carry colors as data with no semantics, so their
//! coloring fields are omitted.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canon::{self, CanonicalForm, Equivalence, InvariantKind, IsoVerdict};
use crate::coloring::{self, ColoringError};
use crate::graph::{AlgebraClass, ColoredDigraph};
use crate::partition::{self, EdgePartition, PartitionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("{0}")]
    Coloring(#[from] ColoringError),
    #[error("{0}")]
    Partition(#[from] PartitionError),
}

/// Ordered key/value invariant listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    fields: Vec<(&'static str, String)>,
}

impl InvariantReport {
    pub fn fields(&self) -> &[(&'static str, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(name, _)| *name == key)
            .map(|(_, value)| value.as_str())
    }

    /// `key: value` lines in fixed field order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.fields {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(value);
            out.push('\n');
        }
        out
    }
}

/// The default partition when none is supplied: the canonical generator
/// partition for built systems is passed by the caller; raw graphs fall
/// back to the discrete partition.
pub fn default_partition(g: &ColoredDigraph) -> EdgePartition {
    EdgePartition::discrete(g.edge_names())
}

/// The graph whose colored canonical form represents the algebra: as-is
/// for colored and plain classes, recolored by the lexicographically
/// least minimal coloring of the active partition for tensor and
/// semicrossed classes.
pub fn semantic_recoloring(
    g: &ColoredDigraph,
    p: &EdgePartition,
) -> Result<ColoredDigraph, ReportError> {
    match g.algebra_class() {
        AlgebraClass::Plain | AlgebraClass::Colored => Ok(g.clone()),
        AlgebraClass::Tensor | AlgebraClass::Semicrossed => {
            let conflict_graph = coloring::conflict_relation(g, p)?;
            let (_, witness) = coloring::minimal_coloring(&conflict_graph);
            let mut colors: BTreeMap<String, u32> = BTreeMap::new();
            for class in p.classes() {
                let class_color = witness
                    .get(&class[0])
                    .expect("witness covers every class");
                for edge in class {
                    colors.insert(edge.clone(), class_color);
                }
            }
            Ok(g.recolored(&colors).expect("recoloring keeps the graph valid"))
        }
    }
}

/// Canonical form of the class-semantic colored graph.
pub fn semantic_colored_form(
    g: &ColoredDigraph,
    p: &EdgePartition,
) -> Result<CanonicalForm, ReportError> {
    Ok(canon::canonical_form(&semantic_recoloring(g, p)?, true))
}

/// Builds the invariant report for a graph over the active partition.
/// `cap` bounds partition enumeration; above it the count is omitted.
pub fn build_report(
    g: &ColoredDigraph,
    p: &EdgePartition,
    cap: usize,
) -> Result<InvariantReport, ReportError> {
    let mut fields: Vec<(&'static str, String)> = Vec::new();
    fields.push(("algebra_class", g.algebra_class().token().to_string()));
    fields.push(("vertex_count", g.vertex_count().to_string()));
    fields.push(("edge_count", g.edge_count().to_string()));
    let (edge_free, max_multiplicity) = g.is_vertex_pair_finite();
    fields.push(("multiplicity_max", max_multiplicity.to_string()));
    fields.push(("edge_free", edge_free.to_string()));
    fields.push((
        "canonical_hash_plain",
        format!("{:016x}", canon::canonical_form(g, false).hash),
    ));
    fields.push((
        "canonical_hash_colored",
        format!("{:016x}", semantic_colored_form(g, p)?.hash),
    ));
    if g.algebra_class() != AlgebraClass::Plain {
        let conflict_graph = coloring::conflict_relation(g, p)?;
        let (count, _) = coloring::minimal_coloring(&conflict_graph);
        fields.push(("minimal_color_count", count.to_string()));
        fields.push((
            "one_colorable",
            (!conflict_graph.has_conflicts()).to_string(),
        ));
    }
    if g.edge_count() <= cap {
        let partitions = partition::enumerate_topological_partitions(g, cap)?;
        fields.push(("topological_partition_count", partitions.len().to_string()));
    }
    Ok(InvariantReport { fields })
}

/// Compare verdict: equivalence with a witness, or the first differing
/// invariant with both values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareOutcome {
    Equivalent(Equivalence),
    Distinguished {
        invariant: String,
        left: String,
        right: String,
    },
}

impl CompareOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, CompareOutcome::Equivalent(_))
    }

    /// The distinguishing invariant's name, if any.
    pub fn distinguished_at(&self) -> Option<&str> {
        match self {
            CompareOutcome::Equivalent(_) => None,
            CompareOutcome::Distinguished { invariant, .. } => Some(invariant),
        }
    }
}

fn stage_one_name(kind: InvariantKind) -> &'static str {
    match kind {
        InvariantKind::CanonicalHash => "canonical_hash_plain",
        other => other.name(),
    }
}

/// Compares two presentations invariant by invariant: vertex count, edge
/// count, degree profile, multiplicity profile, plain canonical hash,
/// then (unless colors are ignored) minimal color count, 1-colorability,
/// and the colored canonical hash under each side's class semantics.
pub fn compare_graphs(
    g1: &ColoredDigraph,
    p1: &EdgePartition,
    g2: &ColoredDigraph,
    p2: &EdgePartition,
    ignore_colors: bool,
) -> Result<CompareOutcome, ReportError> {
    let plain = canon::are_equivalent(g1, g2, false);
    let plain_witness = match plain {
        IsoVerdict::Distinguished {
            invariant,
            left,
            right,
        } => {
            return Ok(CompareOutcome::Distinguished {
                invariant: stage_one_name(invariant).to_string(),
                left,
                right,
            })
        }
        IsoVerdict::Equivalent(witness) => witness,
    };
    if ignore_colors {
        return Ok(CompareOutcome::Equivalent(plain_witness));
    }

    let both_have_semantics = g1.algebra_class() != AlgebraClass::Plain
        && g2.algebra_class() != AlgebraClass::Plain;
    if both_have_semantics {
        let cg1 = coloring::conflict_relation(g1, p1)?;
        let cg2 = coloring::conflict_relation(g2, p2)?;
        let (count1, _) = coloring::minimal_coloring(&cg1);
        let (count2, _) = coloring::minimal_coloring(&cg2);
        if count1 != count2 {
            return Ok(CompareOutcome::Distinguished {
                invariant: "minimal_color_count".to_string(),
                left: count1.to_string(),
                right: count2.to_string(),
            });
        }
        let one1 = !cg1.has_conflicts();
        let one2 = !cg2.has_conflicts();
        if one1 != one2 {
            return Ok(CompareOutcome::Distinguished {
                invariant: "one_colorable".to_string(),
                left: one1.to_string(),
                right: one2.to_string(),
            });
        }
    }

    let sem1 = semantic_recoloring(g1, p1)?;
    let sem2 = semantic_recoloring(g2, p2)?;
    match canon::are_equivalent(&sem1, &sem2, true) {
        IsoVerdict::Equivalent(witness) => Ok(CompareOutcome::Equivalent(witness)),
        IsoVerdict::Distinguished { left, right, .. } => Ok(CompareOutcome::Distinguished {
            invariant: "canonical_hash_colored".to_string(),
            left,
            right,
        }),
    }
}
