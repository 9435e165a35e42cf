//! DOT export. Vertices in the same companion class share a fill color;
//! callers may additionally mark vertices (doubled outline), which the
//! transition-graph export uses for the `∅` and `S` states.

use crate::graph::{Digraph, OneOutGraph};

const PALETTE: [&str; 12] = [
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
    "#e31a1c", "#ff7f00", "#6a3d9a", "#b15928",
];

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn digraph_to_dot(graph: &Digraph, labels: &[String], marked: &[usize]) -> String {
    let classes = graph.out_family().companion_partition();
    let mut out = String::from("digraph g {\n");
    for v in 0..graph.num_vertices() {
        let class = classes.class_of(v).expect("in range");
        let color = PALETTE[class % PALETTE.len()];
        let peripheries = if marked.contains(&v) { 2 } else { 1 };
        out.push_str(&format!(
            "  {} [style=filled, fillcolor={}, peripheries={}];\n",
            quote(&labels[v]),
            quote(color),
            peripheries
        ));
    }
    for (u, v) in graph.edges() {
        out.push_str(&format!("  {} -> {};\n", quote(&labels[u]), quote(&labels[v])));
    }
    out.push_str("}\n");
    out
}

pub fn one_out_to_dot(graph: &OneOutGraph, labels: &[String], marked: &[usize]) -> String {
    digraph_to_dot(&graph.to_digraph(), labels, marked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_nodes_edges_and_markers() {
        let g = Digraph::from_edges(2, &[(0, 1), (1, 1)]).unwrap();
        let labels = vec!["{}".to_string(), "{1}".to_string()];
        let dot = digraph_to_dot(&g, &labels, &[0]);
        assert!(dot.starts_with("digraph g {"));
        assert!(dot.contains("\"{}\" -> \"{1}\";"));
        assert!(dot.contains("peripheries=2"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
