//! Graphviz DOT export with a fixed edge palette for deterministic
//! visual diffing.

use graphinv::graph::ColoredDigraph;

const PALETTE: [&str; 12] = [
    "black", "red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta", "olive",
    "navy", "teal",
];

fn edge_color(color: u32) -> String {
    if (1..=12).contains(&color) {
        PALETTE[(color - 1) as usize].to_string()
    } else {
        format!("/spectral11/{}", color % 11 + 1)
    }
}

pub fn render(g: &ColoredDigraph) -> String {
    let mut out = String::from("digraph G {\n");
    for vertex in g.vertices() {
        out.push_str(&format!("  \"{vertex}\";\n"));
    }
    for edge in g.edges() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\" color=\"{}\"];\n",
            edge.source,
            edge.range,
            edge.name,
            edge_color(edge.color)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphinv::graph::parse_graph;

    #[test]
    fn palette_maps_low_colors_by_name() {
        assert_eq!(edge_color(1), "black");
        assert_eq!(edge_color(2), "red");
        assert_eq!(edge_color(12), "teal");
    }

    #[test]
    fn high_colors_fall_back_to_spectral() {
        assert_eq!(edge_color(13), "/spectral11/3");
        assert_eq!(edge_color(22), "/spectral11/1");
    }

    #[test]
    fn renders_vertices_then_edges() {
        let g = parse_graph("graph plain\nvertices a b\nedge e a b 2\n").unwrap();
        assert_eq!(
            render(&g),
            "digraph G {\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\" [label=\"e\" color=\"red\"];\n}\n"
        );
    }
}
