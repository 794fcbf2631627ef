//! Graph exports: dreadnaut input for nauty, and Graphviz DOT.

use crate::graph::{ColoredGraph, Origin};

/// dreadnaut commands: size, adjacency (each edge listed once, from its
/// lower endpoint; loops as the vertex itself), colour partition, and `x`.
pub fn write_dreadnaut(graph: &ColoredGraph) -> String {
    let n = graph.num_vertices();
    let mut out = format!("n={n} g\n");
    for v in 0..n {
        let higher: Vec<String> = graph
            .neighbors(v)
            .iter()
            .filter(|&&u| u >= v)
            .map(|u| u.to_string())
            .collect();
        if higher.is_empty() {
            out.push_str(&format!("{v}: ;\n"));
        } else {
            out.push_str(&format!("{v}: {};\n", higher.join(" ")));
        }
    }
    out.push_str(".\n");
    let cells: Vec<String> = graph
        .colour_classes()
        .iter()
        .map(|cell| {
            cell.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    out.push_str(&format!("f=[{}]\nx\n", cells.join("|")));
    out
}

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
];

/// Human-readable vertex names for DOT labels.
pub struct DotNames<'a> {
    pub variables: &'a [&'a str],
    pub constraints: &'a [&'a str],
}

fn vertex_label(graph: &ColoredGraph, v: usize, names: &DotNames) -> String {
    let Some(info) = graph.meta().vertices.get(v) else {
        return format!("v{v}");
    };
    let base = match info.origin {
        Origin::Objective => "obj".to_string(),
        Origin::Constraint(k) => names
            .constraints
            .get(k)
            .map_or(format!("c{}", k + 1), |s| s.to_string()),
        Origin::Constant => "const".to_string(),
        Origin::Variable(i) => names
            .variables
            .get(i)
            .map_or(format!("x{}", i + 1), |s| s.to_string()),
        Origin::Operator => "op".to_string(),
        Origin::Coefficient => "coef".to_string(),
    };
    format!("{base} L{}", info.layer)
}

/// Undirected graph written as a DOT digraph with `dir=none` edges; fill
/// colour by colour class, label by origin and layer.
pub fn write_dot(graph: &ColoredGraph, names: &DotNames) -> String {
    let mut out = String::from("digraph g {\n  node [style=filled];\n  edge [dir=none];\n");
    for v in 0..graph.num_vertices() {
        let colour = graph.colour(v);
        out.push_str(&format!(
            "  v{v} [label=\"{}\", fillcolor=\"{}\", class={colour}];\n",
            vertex_label(graph, v, names),
            PALETTE[colour as usize % PALETTE.len()]
        ));
    }
    for (u, v) in graph.edges() {
        out.push_str(&format!("  v{u} -> v{v};\n"));
    }
    out.push_str("}\n");
    out
}
