//! Fixed-seed corpus generation and brute-force oracles for the
//! acceptance suite. The oracles deliberately avoid every library code
//! path they are checking.

use std::collections::BTreeMap;

use graphinv::coloring::ConflictGraph;
use graphinv::dynamics::DynamicalSystem;
use graphinv::graph::{AlgebraClass, ColoredDigraph, Edge};

/// SplitMix64: tiny, deterministic, identical on every platform.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn chance(&mut self, numerator: usize, denominator: usize) -> bool {
        self.below(denominator) < numerator
    }
}

pub fn random_class(rng: &mut SplitMix64) -> AlgebraClass {
    match rng.below(4) {
        0 => AlgebraClass::Tensor,
        1 => AlgebraClass::Semicrossed,
        2 => AlgebraClass::Colored,
        _ => AlgebraClass::Plain,
    }
}

pub fn random_graph(
    rng: &mut SplitMix64,
    max_vertices: usize,
    max_edges: usize,
    max_color: u32,
) -> ColoredDigraph {
    let n = 1 + rng.below(max_vertices);
    let m = rng.below(max_edges + 1);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<Edge> = (0..m)
        .map(|k| Edge {
            name: format!("e{k}"),
            source: vertices[rng.below(n)].clone(),
            range: vertices[rng.below(n)].clone(),
            color: 1 + rng.below(max_color as usize) as u32,
        })
        .collect();
    ColoredDigraph::new(vertices, edges, random_class(rng)).unwrap()
}

pub fn random_system(
    rng: &mut SplitMix64,
    class: AlgebraClass,
    max_points: usize,
    max_maps: usize,
) -> DynamicalSystem {
    let n = 1 + rng.below(max_points);
    let map_count = 1 + rng.below(max_maps);
    let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let maps = (0..map_count)
        .map(|k| {
            let images: BTreeMap<String, String> = points
                .iter()
                .map(|p| (p.clone(), points[rng.below(n)].clone()))
                .collect();
            (format!("m{k}"), images)
        })
        .collect();
    DynamicalSystem::new(class, points, maps).unwrap()
}

/// A random permutation of the vertex names, applied to the graph; the
/// returned map sends old names to new ones.
pub fn random_relabeling(
    rng: &mut SplitMix64,
    g: &ColoredDigraph,
) -> (ColoredDigraph, BTreeMap<String, String>) {
    let mut images: Vec<String> = g.vertices().to_vec();
    for i in (1..images.len()).rev() {
        images.swap(i, rng.below(i + 1));
    }
    let map: BTreeMap<String, String> = g
        .vertices()
        .iter()
        .cloned()
        .zip(images.iter().cloned())
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            name: e.name.clone(),
            source: map[&e.source].clone(),
            range: map[&e.range].clone(),
            color: e.color,
        })
        .collect();
    let relabeled = ColoredDigraph::new(images, edges, g.algebra_class()).unwrap();
    (relabeled, map)
}

pub fn random_conflict_graph(
    rng: &mut SplitMix64,
    max_nodes: usize,
) -> (ConflictGraph, usize, Vec<(usize, usize)>) {
    let n = 1 + rng.below(max_nodes);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.chance(2, 5) {
                pairs.push((i, j));
            }
        }
    }
    let nodes: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let cg = ConflictGraph::new(nodes, pairs.iter().copied()).unwrap();
    (cg, n, pairs)
}

/// Every set partition of `0..n`, restricted growth order, no pruning.
pub fn all_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn recurse(
        index: usize,
        n: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if index == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(index);
            recurse(index + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![index]);
        recurse(index + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    recurse(0, n, &mut Vec::new(), &mut out);
    out
}

/// Independent source-injectivity test over index blocks.
pub fn blocks_are_source_injective(g: &ColoredDigraph, blocks: &[Vec<usize>]) -> bool {
    let sources: Vec<&str> = g.edges().iter().map(|e| e.source.as_str()).collect();
    blocks.iter().all(|block| {
        let mut seen: Vec<&str> = Vec::new();
        block.iter().all(|&i| {
            if seen.contains(&sources[i]) {
                false
            } else {
                seen.push(sources[i]);
                true
            }
        })
    })
}

/// Chromatic number by exhaustive assignment search, smallest color
/// count first. No clique bounds, no greedy seeding, no symmetry
/// breaking.
pub fn brute_chromatic(nodes: usize, conflicts: &[(usize, usize)]) -> usize {
    if nodes == 0 {
        return 0;
    }
    fn assignable(
        nodes: usize,
        conflicts: &[(usize, usize)],
        k: usize,
        colors: &mut Vec<usize>,
    ) -> bool {
        if colors.len() == nodes {
            return true;
        }
        let next = colors.len();
        for color in 1..=k {
            let clash = conflicts.iter().any(|&(a, b)| {
                (a == next && b < next && colors[b] == color)
                    || (b == next && a < next && colors[a] == color)
            });
            if !clash {
                colors.push(color);
                if assignable(nodes, conflicts, k, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=nodes)
        .find(|&k| assignable(nodes, conflicts, k, &mut Vec::new()))
        .expect("n colors always suffice")
}

/// Coloring order by explicit search over index permutations.
pub fn brute_coloring_leq(f: &[u32], g: &[u32]) -> bool {
    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &item) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, item);
                out.push(tail);
            }
        }
        out
    }
    let indices: Vec<usize> = (0..f.len()).collect();
    permutations(&indices)
        .into_iter()
        .any(|sigma| (0..f.len()).all(|i| f[i] <= g[sigma[i]]))
}

/// Composable path count by enumerating raw edge sequences of each
/// length up to `max_len`.
pub fn brute_path_count(g: &ColoredDigraph, from: &str, to: &str, max_len: usize) -> usize {
    fn recurse(
        edges: &[Edge],
        from: &str,
        to: &str,
        max_len: usize,
        sequence: &mut Vec<usize>,
        count: &mut usize,
    ) {
        if !sequence.is_empty() {
            let composable = sequence
                .windows(2)
                .all(|w| edges[w[1]].source == edges[w[0]].range);
            if composable
                && edges[sequence[0]].source == from
                && edges[*sequence.last().unwrap()].range == to
            {
                *count += 1;
            }
        }
        if sequence.len() == max_len {
            return;
        }
        for i in 0..edges.len() {
            sequence.push(i);
            recurse(edges, from, to, max_len, sequence, count);
            sequence.pop();
        }
    }
    let mut count = 0;
    recurse(g.edges(), from, to, max_len, &mut Vec::new(), &mut count);
    count
}
