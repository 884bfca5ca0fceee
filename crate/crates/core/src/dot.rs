//! Graphviz output for quivers and AR quivers.

use std::fmt::Write;

use crate::oracle::ArQuiver;
use crate::quiver::BoundQuiverAlgebra;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The quiver, with each zero relation listed in the graph label.
pub fn quiver_dot(alg: &BoundQuiverAlgebra) -> String {
    let q = alg.quiver();
    let mut out = String::from("digraph quiver {\n  rankdir=LR;\n");
    for v in q.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "  {} -> {} [label={}];", a.source, a.target, quote(&a.id)).unwrap();
    }
    if !alg.relations().is_empty() {
        let rels: Vec<String> = alg.relations().generators().iter().map(|g| q.render_path(g)).collect();
        writeln!(out, "  label={};", quote(&format!("zero: {}", rels.join(", ")))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The AR quiver: nodes labelled by string and dimension vector, irreducible
/// maps as solid edges, the translate as dashed edges from `Z` to `τZ`
/// with each translate pair placed on the same rank.
pub fn ar_dot(ar: &ArQuiver) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n  node [shape=box];\n");
    for (k, node) in ar.nodes.iter().enumerate() {
        let dims: Vec<String> = node.module.dims().iter().map(usize::to_string).collect();
        let mut label = format!("{}\\n({})", node.label, dims.join(","));
        if let Some(i) = node.projective_of {
            write!(label, "\\nP({i})").unwrap();
        }
        if let Some(i) = node.injective_of {
            write!(label, "\\nI({i})").unwrap();
        }
        writeln!(out, "  n{k} [label=\"{label}\"];").unwrap();
    }
    for a in &ar.arrows {
        writeln!(out, "  n{} -> n{};", a.source, a.target).unwrap();
    }
    for s in &ar.sequences {
        writeln!(out, "  n{} -> n{} [style=dashed, constraint=false];", s.right, s.left).unwrap();
        writeln!(out, "  {{ rank=same; n{}; n{}; }}", s.left, s.right).unwrap();
    }
    out.push_str("}\n");
    out
}
