use std::fmt::Write;

use super::Diagram;

/// Graphviz rendering: one node per atom, and one subgraph per block that
/// chains the block's atoms in declaration order.
///
/// Output depends only on atom and block order, so equal diagrams render
/// byte-identically.
pub fn to_dot(diagram: &Diagram) -> String {
    let mut out = String::from("graph greechie {\n");
    out.push_str("  node [shape=circle, style=filled, fillcolor=white];\n");
    out.push_str("  edge [penwidth=2];\n");
    for atom in diagram.atoms() {
        let _ = writeln!(out, "  {};", quote(&atom.id));
    }
    for block in diagram.blocks() {
        let chain: Vec<String> = diagram.block_ids(block).into_iter().map(quote).collect();
        let _ = writeln!(
            out,
            "  subgraph {} {{\n    label={};\n    {};\n  }}",
            quote(&format!("block_{}", block.label())),
            quote(block.label()),
            chain.join(" -- ")
        );
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            q.push('\\');
        }
        q.push(ch);
    }
    q.push('"');
    q
}
