//! Graphviz DOT rendering of a comaximal graph.
//!
//! One node per vertex, labeled with the kind prefix and the RREF basis
//! rows, filled with the kind's display color; isolated vertices are
//! always black. One undirected edge per adjacent pair.

use std::fmt::Write as _;

use crate::graph::{ComaximalGraph, VertexKind};

fn kind_color(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::Plane => "red",
        VertexKind::Line | VertexKind::SplitLine => "blue",
        VertexKind::NilpotentLine => "green",
        VertexKind::NonsplitLine => "black",
        VertexKind::Other => "gray",
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Render the graph as a Graphviz `graph` document.
pub fn to_dot(g: &ComaximalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(g.name())).unwrap();
    writeln!(out, "  node [style=filled fontname=\"monospace\"];").unwrap();
    for i in 0..g.n() {
        let color = if g.is_isolated(i) {
            "black"
        } else {
            kind_color(g.kind(i))
        };
        let fontcolor = if color == "black" { "white" } else { "black" };
        writeln!(
            out,
            "  v{i} [label=\"{}\" fillcolor=\"{color}\" fontcolor=\"{fontcolor}\"];",
            escape(&g.label(i)),
        )
        .unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  v{u} -- v{v};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_default, FamilyId};
    use crate::enumerate::enumerate_subalgebras;
    use crate::field::Field;

    fn graph_for(id: FamilyId, q: u64) -> ComaximalGraph {
        let field = Field::new(q, 1, None).unwrap();
        let cat = build_default(id, &field).unwrap();
        let inv = enumerate_subalgebras(&cat.algebra);
        ComaximalGraph::build(&cat.algebra, &inv)
    }

    #[test]
    fn renders_nodes_edges_and_palette() {
        let mut g = graph_for(FamilyId::Sl2, 3);
        g.refine_sl2_kinds().unwrap();
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph \"sl2(F_3)\" {\n"));
        assert!(dot.trim_end().ends_with('}'));
        // One node line per vertex, one edge line per edge.
        assert_eq!(dot.matches("[label=").count(), g.n(), "node count in DOT");
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
        // Kind palette: Borel red, nilpotent green, split blue,
        // nonsplit black with white text.
        assert!(dot.contains("label=\"B[1 0 0; 0 0 1]\" fillcolor=\"red\""));
        assert!(dot.contains("label=\"N[1 0 0]\" fillcolor=\"green\""));
        assert!(dot.contains("fillcolor=\"blue\""));
        assert!(dot.contains("fillcolor=\"black\" fontcolor=\"white\""));
        assert!(!dot.contains("fillcolor=\"gray\""));
    }

    #[test]
    fn isolated_vertices_are_black_regardless_of_kind() {
        let g = graph_for(FamilyId::Heisenberg3, 2);
        let dot = to_dot(&g);
        let isolated = g.isolated_vertices();
        assert_eq!(isolated.len(), 1);
        let z = isolated[0];
        let needle = format!(
            "v{z} [label=\"{}\" fillcolor=\"black\" fontcolor=\"white\"];",
            g.label(z)
        );
        assert!(dot.contains(&needle), "missing {needle:?} in:\n{dot}");
        // Unrefined lines are generic blue; planes red.
        assert!(dot.contains("fillcolor=\"blue\""));
        assert!(dot.contains("fillcolor=\"red\""));
    }

    #[test]
    fn edge_endpoints_match_adjacency() {
        let g = graph_for(FamilyId::Solvable2B, 2);
        let dot = to_dot(&g);
        for (u, v) in g.edges() {
            assert!(dot.contains(&format!("  v{u} -- v{v};\n")));
        }
    }
}
