//! DOT renderings of complexes, labeled trees, and cellular maps.

use twocover_core::io::{ComplexJson, MapJson};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Digraph of the 1-skeleton with one labeled arc per edge. Tree files
/// additionally show the (gamma, delta) pair and vertex colors.
pub fn complex_dot(json: &ComplexJson) -> String {
    let mut out = String::from("digraph {\n");
    let mut vertices = json.vertices.clone();
    vertices.sort();
    for v in &vertices {
        let color = json.colors.as_ref().and_then(|c| c.get(v));
        match color {
            Some(c) => out.push_str(&format!(
                "  {} [label={}, fillcolor={}, style=filled, fontcolor={}];\n",
                quote(v),
                quote(v),
                quote(c),
                if c == "black" { "white" } else { "black" }
            )),
            None => out.push_str(&format!("  {};\n", quote(v))),
        }
    }
    let mut edges = json.edges.clone();
    edges.sort_by(|a, b| a.name.cmp(&b.name));
    for e in &edges {
        let label = match json.labels.as_ref().and_then(|l| l.get(&e.name)) {
            Some(l) => format!("{} ({},{})", e.name, l.gamma, l.delta),
            None => e.name.clone(),
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&e.tail),
            quote(&e.head),
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

/// Digraph of the map's source, each arc labeled `edge -> image`.
pub fn map_dot(json: &MapJson) -> String {
    use twocover_core::io::ComplexOrPath;
    let source = match &json.source {
        ComplexOrPath::Inline(c) => (**c).clone(),
        ComplexOrPath::Path(p) => {
            // a path-only map renders just the combinatorial data we have
            ComplexJson {
                vertices: vec![format!("source: {p}")],
                edges: Vec::new(),
                cells: Vec::new(),
                colors: None,
                labels: None,
                complete: None,
                interior: None,
            }
        }
    };
    let mut out = String::from("digraph {\n");
    let mut vertices = source.vertices.clone();
    vertices.sort();
    let interior: Vec<String> = json.interior.clone().unwrap_or_default();
    for v in &vertices {
        if interior.contains(v) {
            out.push_str(&format!("  {} [shape=doublecircle];\n", quote(v)));
        } else {
            out.push_str(&format!("  {};\n", quote(v)));
        }
    }
    let mut edges = source.edges.clone();
    edges.sort_by(|a, b| a.name.cmp(&b.name));
    for e in &edges {
        let label = match json.edge_map.get(&e.name) {
            Some(image) => format!("{} -> {}", e.name, image),
            None => e.name.clone(),
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&e.tail),
            quote(&e.head),
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}
