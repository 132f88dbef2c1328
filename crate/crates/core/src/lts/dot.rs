use std::fmt::Write;

use super::{Level, Provenance, SymbolicLts};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn node_line(out: &mut String, indent: &str, name: &str, pred: &str, empty: bool) {
    let label = quote(&format!("{name}\n{pred}"));
    let _ = write!(out, "{indent}{} [label={label}", quote(name));
    if empty {
        out.push_str(", style=filled, fillcolor=lightgrey");
    }
    out.push_str("];\n");
}

/// Graphviz rendering. Abstract states become clusters holding their
/// sub-states; unproven (default) transitions are dashed.
pub fn emit_dot(l: &SymbolicLts) -> String {
    let mut out = format!("digraph {} {{\n", quote(&l.name));
    out.push_str("  compound=true;\n  node [shape=box, style=rounded];\n");

    for (cluster, a) in l
        .states
        .iter()
        .filter(|s| s.level == Level::Abstract)
        .enumerate()
    {
        let _ = writeln!(out, "  subgraph cluster_{cluster} {{");
        let _ = writeln!(
            out,
            "    label={};",
            quote(&format!("{}\n{}", a.name, a.predicate))
        );
        if a.empty {
            out.push_str("    style=filled;\n    fillcolor=lightgrey;\n");
        }
        for c in l
            .states
            .iter()
            .filter(|c| c.parent.as_deref() == Some(&a.name))
        {
            node_line(&mut out, "    ", &c.name, &c.predicate.to_string(), c.empty);
        }
        out.push_str("  }\n");
    }
    for s in l
        .states
        .iter()
        .filter(|s| s.level == Level::Concrete && s.parent.is_none())
    {
        node_line(&mut out, "  ", &s.name, &s.predicate.to_string(), s.empty);
    }

    if !l.initial.is_empty() {
        out.push_str("  __init [shape=point, label=\"\"];\n");
        for i in &l.initial {
            let _ = write!(out, "  __init -> {}", quote(&i.state));
            if i.condition != crate::logic::Pred::True {
                let _ = write!(out, " [label={}]", quote(&format!("[{}]", i.condition)));
            }
            out.push_str(";\n");
        }
    }
    for t in &l.transitions {
        let _ = write!(
            out,
            "  {} -> {} [label={}",
            quote(&t.src),
            quote(&t.dst),
            quote(&t.label())
        );
        if t.provenance == Provenance::Default {
            out.push_str(", style=dashed");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}
