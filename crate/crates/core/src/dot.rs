//! Graphviz DOT export.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::catho::FinCategory;
use crate::precubical::{CellRef, PreCubicalSet};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices as nodes and one directed edge per 1-cell. Edges listed in
/// `highlight` are drawn bold and red.
pub fn complex_to_dot(k: &PreCubicalSet, highlight: &[String]) -> String {
    let marked: HashSet<&str> = highlight.iter().map(String::as_str).collect();
    let mut out = String::from("digraph complex {\n  rankdir=LR;\n");
    for v in k.vertices() {
        let label = k.label(&CellRef::vertex(v)).unwrap_or(v);
        let _ = writeln!(out, "  {} [label={}];", quote(v), quote(label));
    }
    for (id, e) in k.edges() {
        let style = if marked.contains(id) { ", color=red, penwidth=2" } else { "" };
        let _ = writeln!(out, "  {} -> {} [label={}{}];", quote(&e.src), quote(&e.tgt), quote(id), style);
    }
    out.push_str("}\n");
    out
}

/// Objects as nodes and non-identity arrows as edges.
pub fn category_to_dot(c: &FinCategory) -> String {
    let mut out = String::from("digraph category {\n");
    for o in c.objects() {
        let _ = writeln!(out, "  {};", quote(o));
    }
    for (i, a) in c.arrows().iter().enumerate() {
        if !c.is_identity(i) {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&c.objects()[a.src]),
                quote(&c.objects()[a.tgt]),
                quote(&a.id)
            );
        }
    }
    out.push_str("}\n");
    out
}
