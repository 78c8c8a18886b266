//! Canonical labeling, hashing, and equivalence decisions for colored
//! digraphs, up to vertex relabeling and injective recoloring of the
//! palette.
//!
//! Canonicalization runs iterated partition refinement over in/out
//! multiset signatures, then backtracks over the non-singleton cells
//! (individualize and refine), serializing every leaf labeling and
//! keeping the lexicographically least text. Candidate serializations
//! renumber colors by first appearance in canonical edge order, and the
//! whole search is repeated for every ordering of the palette, so the
//! result is invariant under injective recolorings as well as vertex
//! relabelings.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{ColoredDigraph, Edge};
use crate::hash::fnv1a_64;

/// Exhaustive isomorphism search refuses graphs above this many vertices.
pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("graph has {vertices} vertices, above the brute-force limit {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Canonical relabeled serialization plus its 64-bit FNV-1a hash.
/// Vertices are renamed `v1..vk`, edges `e1..em`, colors renumbered by
/// first appearance in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub canonical_text: String,
    pub hash: u64,
}

/// An explicit equivalence witness. `color_map` is empty when colors
/// were ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Equivalence {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
    pub color_map: BTreeMap<u32, u32>,
}

/// The fixed order in which invariants are compared; the first
/// difference names the distinguishing invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    VertexCount,
    EdgeCount,
    DegreeProfile,
    MultiplicityProfile,
    CanonicalHash,
}

impl InvariantKind {
    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::VertexCount => "vertex_count",
            InvariantKind::EdgeCount => "edge_count",
            InvariantKind::DegreeProfile => "degree_profile",
            InvariantKind::MultiplicityProfile => "multiplicity_profile",
            InvariantKind::CanonicalHash => "canonical_hash",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Equivalent(Equivalence),
    Distinguished {
        invariant: InvariantKind,
        left: String,
        right: String,
    },
}

impl IsoVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, IsoVerdict::Equivalent(_))
    }
}

/// Canonical labeling data: the winning text plus the maps that produced
/// it, used to assemble explicit witnesses.
#[derive(Debug, Clone)]
pub(crate) struct CanonicalLabeling {
    pub text: String,
    pub hash: u64,
    /// Original vertex index (in sorted vertex order) to canonical position.
    pub vertex_position: Vec<usize>,
    /// Original edge index (in sorted edge order) to canonical position.
    pub edge_position: Vec<usize>,
    /// Original color to canonical color; empty when colors are ignored.
    pub color_map: BTreeMap<u32, u32>,
}

/// Computes the canonical form. With `respect_colors` false the palette
/// is erased before canonicalization.
pub fn canonical_form(g: &ColoredDigraph, respect_colors: bool) -> CanonicalForm {
    let labeling = canonical_labeling(g, respect_colors);
    CanonicalForm {
        canonical_text: labeling.text,
        hash: labeling.hash,
    }
}

struct SearchGraph {
    n: usize,
    /// (source index, range index, ranked color, original edge index)
    edges: Vec<(usize, usize, u32, usize)>,
    out_adj: Vec<Vec<(u32, usize)>>,
    in_adj: Vec<Vec<(u32, usize)>>,
}

impl SearchGraph {
    fn new(g: &ColoredDigraph, rank: &BTreeMap<u32, u32>) -> Self {
        let n = g.vertex_count();
        let mut edges = Vec::with_capacity(g.edge_count());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (index, edge) in g.edges().iter().enumerate() {
            let s = g.vertex_index(&edge.source).expect("validated edge");
            let r = g.vertex_index(&edge.range).expect("validated edge");
            let color = rank.get(&edge.color).copied().unwrap_or(1);
            edges.push((s, r, color, index));
            out_adj[s].push((color, r));
            in_adj[r].push((color, s));
        }
        Self {
            n,
            edges,
            out_adj,
            in_adj,
        }
    }

    /// Refines the vertex partition to a fixpoint of the signature map
    /// `v -> (class(v), out multiset, in multiset)`.
    fn refine(&self, classes: &mut Vec<usize>) {
        type Signature = (usize, Vec<(u32, usize)>, Vec<(u32, usize)>);
        loop {
            let before = class_count(classes);
            let signatures: Vec<Signature> = (0..self.n)
                .map(|v| {
                    let mut out: Vec<(u32, usize)> = self.out_adj[v]
                        .iter()
                        .map(|&(c, t)| (c, classes[t]))
                        .collect();
                    out.sort_unstable();
                    let mut inc: Vec<(u32, usize)> = self.in_adj[v]
                        .iter()
                        .map(|&(c, s)| (c, classes[s]))
                        .collect();
                    inc.sort_unstable();
                    (classes[v], out, inc)
                })
                .collect();
            *classes = normalize_keys(&signatures);
            if class_count(classes) == before {
                return;
            }
        }
    }

    /// True when swapping the two vertices leaves the edge multiset
    /// fixed. Such a swap also preserves every vertex partition in
    /// which the two share a cell.
    fn transposition_is_automorphism(&self, u: usize, v: usize) -> bool {
        let swap = |x: usize| {
            if x == u {
                v
            } else if x == v {
                u
            } else {
                x
            }
        };
        let mut original: Vec<(usize, usize, u32)> =
            self.edges.iter().map(|&(s, r, c, _)| (s, r, c)).collect();
        let mut swapped: Vec<(usize, usize, u32)> = self
            .edges
            .iter()
            .map(|&(s, r, c, _)| (swap(s), swap(r), c))
            .collect();
        original.sort_unstable();
        swapped.sort_unstable();
        original == swapped
    }

    fn individualize(&self, classes: &mut Vec<usize>, vertex: usize) {
        let keys: Vec<(usize, u8)> = classes
            .iter()
            .enumerate()
            .map(|(v, &class)| (class, u8::from(v != vertex)))
            .collect();
        *classes = normalize_keys(&keys);
        self.refine(classes);
    }

    /// Explores all leaf labelings, keeping the least candidate. A
    /// branch vertex is skipped when a transposition automorphism maps
    /// it to an already-explored cellmate: the skipped subtree's
    /// serializations duplicate explored ones, so the minimum is
    /// unchanged and symmetric graphs stay tractable.
    fn explore(&self, classes: Vec<usize>, best: &mut Option<Candidate>) {
        if let Some(cell) = first_non_singleton(&classes) {
            let mut explored: Vec<usize> = Vec::new();
            for v in 0..self.n {
                if classes[v] == cell {
                    if explored
                        .iter()
                        .any(|&u| self.transposition_is_automorphism(u, v))
                    {
                        continue;
                    }
                    explored.push(v);
                    let mut child = classes.clone();
                    self.individualize(&mut child, v);
                    self.explore(child, best);
                }
            }
        } else {
            let candidate = self.serialize_leaf(&classes);
            if best
                .as_ref()
                .is_none_or(|current| candidate.text < current.text)
            {
                *best = Some(candidate);
            }
        }
    }

    fn serialize_leaf(&self, positions: &[usize]) -> Candidate {
        let mut canonical_edges: Vec<(usize, usize, u32, usize)> = self
            .edges
            .iter()
            .map(|&(s, r, c, index)| (positions[s], positions[r], c, index))
            .collect();
        canonical_edges.sort_unstable();

        let mut renumber: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next_color = 0u32;
        let mut text = String::from("graph plain\nvertices");
        for position in 1..=self.n {
            text.push_str(&format!(" v{position}"));
        }
        text.push('\n');
        let mut edge_position = vec![0usize; canonical_edges.len()];
        for (slot, &(s, r, color, original)) in canonical_edges.iter().enumerate() {
            let canonical_color = *renumber.entry(color).or_insert_with(|| {
                next_color += 1;
                next_color
            });
            text.push_str(&format!(
                "edge e{} v{} v{} {}\n",
                slot + 1,
                s + 1,
                r + 1,
                canonical_color
            ));
            edge_position[original] = slot;
        }
        Candidate {
            text,
            vertex_position: positions.to_vec(),
            edge_position,
            rank_renumber: renumber,
        }
    }
}

struct Candidate {
    text: String,
    vertex_position: Vec<usize>,
    edge_position: Vec<usize>,
    /// Ranked color -> canonical color (first appearance order).
    rank_renumber: BTreeMap<u32, u32>,
}

fn class_count(classes: &[usize]) -> usize {
    let mut distinct: Vec<usize> = classes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len()
}

fn first_non_singleton(classes: &[usize]) -> Option<usize> {
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &class in classes {
        *sizes.entry(class).or_insert(0) += 1;
    }
    sizes
        .into_iter()
        .find(|&(_, size)| size > 1)
        .map(|(class, _)| class)
}

/// Maps each key to the index of its value among the sorted distinct
/// keys; the partition refines any partition the keys' first components
/// encode.
fn normalize_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|key| sorted.binary_search(key).expect("key came from the list"))
        .collect()
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (index, item) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(index);
        for mut tail in permutations(&rest) {
            tail.insert(0, item.clone());
            out.push(tail);
        }
    }
    out
}

pub(crate) fn canonical_labeling(g: &ColoredDigraph, respect_colors: bool) -> CanonicalLabeling {
    let palette: Vec<u32> = if respect_colors {
        let mut colors: Vec<u32> = g.edges().iter().map(|e| e.color).collect();
        colors.sort_unstable();
        colors.dedup();
        colors
    } else {
        Vec::new()
    };

    let orderings: Vec<Vec<u32>> = if palette.is_empty() {
        vec![vec![]]
    } else {
        permutations(&palette)
    };

    let mut best: Option<(Candidate, BTreeMap<u32, u32>)> = None;
    for ordering in orderings {
        // Rank 1..=c by palette position; erased palettes rank all 1.
        let rank: BTreeMap<u32, u32> = ordering
            .iter()
            .enumerate()
            .map(|(position, &color)| (color, (position + 1) as u32))
            .collect();
        let search = SearchGraph::new(g, &rank);
        let mut classes = vec![0usize; search.n];
        search.refine(&mut classes);
        let mut candidate = None;
        search.explore(classes, &mut candidate);
        let candidate = candidate.expect("search always reaches a leaf");
        if best
            .as_ref()
            .is_none_or(|(current, _)| candidate.text < current.text)
        {
            best = Some((candidate, rank));
        }
    }

    let (winner, rank) = best.expect("at least one palette ordering");
    let color_map: BTreeMap<u32, u32> = if respect_colors {
        rank.iter()
            .filter_map(|(&original, ranked)| {
                winner
                    .rank_renumber
                    .get(ranked)
                    .map(|&canonical| (original, canonical))
            })
            .collect()
    } else {
        BTreeMap::new()
    };
    let hash = fnv1a_64(&winner.text);
    CanonicalLabeling {
        text: winner.text,
        hash,
        vertex_position: winner.vertex_position,
        edge_position: winner.edge_position,
        color_map,
    }
}

/// Decides equivalence by comparing invariants in the fixed order:
/// vertex count, edge count, sorted degree profile, sorted multiplicity
/// profile, canonical form. Equivalent graphs come with an explicit
/// witness.
pub fn are_equivalent(
    g1: &ColoredDigraph,
    g2: &ColoredDigraph,
    respect_colors: bool,
) -> IsoVerdict {
    if g1.vertex_count() != g2.vertex_count() {
        return IsoVerdict::Distinguished {
            invariant: InvariantKind::VertexCount,
            left: g1.vertex_count().to_string(),
            right: g2.vertex_count().to_string(),
        };
    }
    if g1.edge_count() != g2.edge_count() {
        return IsoVerdict::Distinguished {
            invariant: InvariantKind::EdgeCount,
            left: g1.edge_count().to_string(),
            right: g2.edge_count().to_string(),
        };
    }
    let (d1, d2) = (g1.degree_profile(), g2.degree_profile());
    if d1 != d2 {
        return IsoVerdict::Distinguished {
            invariant: InvariantKind::DegreeProfile,
            left: format!("{d1:?}"),
            right: format!("{d2:?}"),
        };
    }
    let (m1, m2) = (
        g1.multiplicity().sorted_profile(),
        g2.multiplicity().sorted_profile(),
    );
    if m1 != m2 {
        return IsoVerdict::Distinguished {
            invariant: InvariantKind::MultiplicityProfile,
            left: format!("{m1:?}"),
            right: format!("{m2:?}"),
        };
    }
    let l1 = canonical_labeling(g1, respect_colors);
    let l2 = canonical_labeling(g2, respect_colors);
    if l1.text != l2.text {
        return IsoVerdict::Distinguished {
            invariant: InvariantKind::CanonicalHash,
            left: format!("{:016x}", l1.hash),
            right: format!("{:016x}", l2.hash),
        };
    }
    IsoVerdict::Equivalent(equivalence_from_labelings(g1, &l1, g2, &l2))
}

pub(crate) fn equivalence_from_labelings(
    g1: &ColoredDigraph,
    l1: &CanonicalLabeling,
    g2: &ColoredDigraph,
    l2: &CanonicalLabeling,
) -> Equivalence {
    let mut vertex_at = vec![usize::MAX; g2.vertex_count()];
    for (index, &position) in l2.vertex_position.iter().enumerate() {
        vertex_at[position] = index;
    }
    let vertex_map: BTreeMap<String, String> = g1
        .vertices()
        .iter()
        .enumerate()
        .map(|(index, name)| {
            let target = vertex_at[l1.vertex_position[index]];
            (name.clone(), g2.vertices()[target].clone())
        })
        .collect();

    let mut edge_at = vec![usize::MAX; g2.edge_count()];
    for (index, &position) in l2.edge_position.iter().enumerate() {
        edge_at[position] = index;
    }
    let edge_map: BTreeMap<String, String> = g1
        .edges()
        .iter()
        .enumerate()
        .map(|(index, edge)| {
            let target = edge_at[l1.edge_position[index]];
            (edge.name.clone(), g2.edges()[target].name.clone())
        })
        .collect();

    let canonical_to_g2: BTreeMap<u32, u32> =
        l2.color_map.iter().map(|(&c, &canon)| (canon, c)).collect();
    let color_map: BTreeMap<u32, u32> = l1
        .color_map
        .iter()
        .map(|(&c1, canon)| (c1, canonical_to_g2[canon]))
        .collect();

    Equivalence {
        vertex_map,
        edge_map,
        color_map,
    }
}

/// Checks that a witness maps `g1` edge-exactly onto `g2`.
pub fn verify_equivalence(
    g1: &ColoredDigraph,
    g2: &ColoredDigraph,
    witness: &Equivalence,
    respect_colors: bool,
) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    // Vertex bijection.
    let mut seen_vertices = std::collections::BTreeSet::new();
    for vertex in g1.vertices() {
        match witness.vertex_map.get(vertex) {
            Some(image) if g2.contains_vertex(image) && seen_vertices.insert(image) => {}
            _ => return false,
        }
    }
    // Injective palette map.
    let mut seen_colors = std::collections::BTreeSet::new();
    if respect_colors {
        for color in witness.color_map.values() {
            if !seen_colors.insert(color) {
                return false;
            }
        }
    }
    // Edge bijection commuting with endpoints and colors.
    let mut seen_edges = std::collections::BTreeSet::new();
    for edge in g1.edges() {
        let Some(image_name) = witness.edge_map.get(&edge.name) else {
            return false;
        };
        if !seen_edges.insert(image_name) {
            return false;
        }
        let Some(image) = g2.edge(image_name) else {
            return false;
        };
        if witness.vertex_map.get(&edge.source) != Some(&image.source)
            || witness.vertex_map.get(&edge.range) != Some(&image.range)
        {
            return false;
        }
        if respect_colors && witness.color_map.get(&edge.color) != Some(&image.color) {
            return false;
        }
    }
    true
}

/// Exhaustive search over vertex bijections and palette injections; the
/// test oracle for `are_equivalent`.
pub fn brute_force_iso(
    g1: &ColoredDigraph,
    g2: &ColoredDigraph,
    respect_colors: bool,
) -> Result<Option<Equivalence>, CanonError> {
    for g in [g1, g2] {
        if g.vertex_count() > BRUTE_FORCE_VERTEX_LIMIT {
            return Err(CanonError::TooLarge {
                vertices: g.vertex_count(),
                limit: BRUTE_FORCE_VERTEX_LIMIT,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let n = g1.vertex_count();

    let palette = |g: &ColoredDigraph| -> Vec<u32> {
        let mut colors: Vec<u32> = g.edges().iter().map(|e| e.color).collect();
        colors.sort_unstable();
        colors.dedup();
        colors
    };
    let colors1 = palette(g1);
    let colors2 = palette(g2);
    if respect_colors && colors1.len() != colors2.len() {
        return Ok(None);
    }
    let palette_maps: Vec<BTreeMap<u32, u32>> = if respect_colors {
        permutations(&colors2)
            .into_iter()
            .map(|ordering| colors1.iter().copied().zip(ordering).collect())
            .collect()
    } else {
        vec![BTreeMap::new()]
    };

    // Edges of g2 grouped by (source, range), sorted by (color, name).
    let mut groups2: BTreeMap<(&str, &str), Vec<&Edge>> = BTreeMap::new();
    for edge in g2.edges() {
        groups2
            .entry((edge.source.as_str(), edge.range.as_str()))
            .or_default()
            .push(edge);
    }
    for group in groups2.values_mut() {
        group.sort_by_key(|e| (e.color, e.name.as_str()));
    }

    for assignment in permutations(&(0..n).collect::<Vec<usize>>()) {
        // g1 vertex i maps to g2 vertex assignment[i].
        let image = |vertex: &str| -> &str {
            let index = g1.vertex_index(vertex).expect("validated vertex");
            g2.vertices()[assignment[index]].as_str()
        };
        let mut groups1: BTreeMap<(&str, &str), Vec<&Edge>> = BTreeMap::new();
        for edge in g1.edges() {
            groups1
                .entry((image(&edge.source), image(&edge.range)))
                .or_default()
                .push(edge);
        }
        if groups1.len() != groups2.len()
            || groups1
                .iter()
                .any(|(key, group)| groups2.get(key).map(Vec::len) != Some(group.len()))
        {
            continue;
        }
        for palette_map in &palette_maps {
            let matches = groups1.iter().all(|(key, group)| {
                if !respect_colors {
                    return true;
                }
                let mut mapped: Vec<u32> = group.iter().map(|e| palette_map[&e.color]).collect();
                mapped.sort_unstable();
                let target: Vec<u32> = groups2[key].iter().map(|e| e.color).collect();
                mapped == target
            });
            if !matches {
                continue;
            }
            let vertex_map: BTreeMap<String, String> = g1
                .vertices()
                .iter()
                .map(|v| (v.clone(), image(v).to_string()))
                .collect();
            let mut edge_map = BTreeMap::new();
            for (key, group) in &groups1 {
                let mut left: Vec<&&Edge> = group.iter().collect();
                if respect_colors {
                    left.sort_by_key(|e| (palette_map[&e.color], e.name.as_str()));
                } else {
                    left.sort_by_key(|e| e.name.as_str());
                }
                for (l, r) in left.iter().zip(&groups2[key]) {
                    edge_map.insert(l.name.clone(), r.name.clone());
                }
            }
            return Ok(Some(Equivalence {
                vertex_map,
                edge_map,
                color_map: palette_map.clone(),
            }));
        }
    }
    Ok(None)
}
