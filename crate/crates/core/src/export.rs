//! Graph serialisation: undirected DOT and a versioned JSON document.

use serde::Serialize;

use crate::graph::{component_report, OrthGraph};

/// JSON schema carried by every exported document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
struct GraphDocument<'a> {
    schema: u32,
    group: Option<&'a str>,
    vertices: Vec<&'a [usize]>,
    edges: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

/// `{schema, group, vertices, edges, components}` with edges `i < j`
/// in lexicographic order.
pub fn graph_to_json(g: &OrthGraph) -> String {
    let doc = GraphDocument {
        schema: SCHEMA_VERSION,
        group: g.group().map(|gr| gr.name()),
        vertices: g.vertices().iter().map(|v| v.images()).collect(),
        edges: g.edges(),
        components: component_report(g).components,
    };
    serde_json::to_string_pretty(&doc).expect("graph document serialises")
}

/// Undirected DOT; vertex labels are the enumeration index, optionally
/// followed by the cycle notation.
pub fn graph_to_dot(g: &OrthGraph, cycle_labels: bool) -> String {
    let mut out = String::from("graph orthomorphisms {\n");
    for (i, v) in g.vertices().iter().enumerate() {
        if cycle_labels {
            out.push_str(&format!("  {i} [label=\"{i}: {}\"];\n", v.cycle_notation()));
        } else {
            out.push_str(&format!("  {i};\n"));
        }
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("  {i} -- {j};\n"));
    }
    out.push_str("}\n");
    out
}
