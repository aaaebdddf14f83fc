//! Graphviz export.

use std::fmt::Write;

use crate::matcher::TaskAlignment;
use crate::petri::PetriNet;

/// Which side of an alignment the exported net is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignmentSide {
    Business,
    Reference,
}

/// Optional alignment overlay: matched transitions get a score annotation.
#[derive(Debug, Clone, Copy)]
pub struct Highlight<'a> {
    pub alignment: &'a TaskAlignment,
    pub side: AlignmentSide,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders `net` as a DOT digraph. Output depends only on the net (and the
/// highlight), never on hash order.
pub fn export_dot(net: &PetriNet, highlight: Option<Highlight<'_>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(net.name()));
    out.push_str("  rankdir=LR;\n");
    for p in net.places() {
        let _ = writeln!(
            out,
            "  {} [shape=circle, label=\"\", xlabel={}];",
            quote(p.as_str()),
            quote(p.as_str())
        );
    }
    for (t, label) in net.transitions() {
        let mut attrs = format!("shape=box, label={}", quote(label));
        if net.is_silent(t.as_str()) {
            attrs.push_str(", style=filled, fillcolor=black, fontcolor=white");
        }
        if let Some(h) = highlight {
            let pair = match h.side {
                AlignmentSide::Business => h.alignment.reference_for(t.as_str()),
                AlignmentSide::Reference => h.alignment.business_for(t.as_str()),
            };
            if let Some(pair) = pair {
                let other = match h.side {
                    AlignmentSide::Business => &pair.reference,
                    AlignmentSide::Reference => &pair.business,
                };
                let note = format!("{} {:.3}", other, pair.score);
                let _ = write!(attrs, ", color=blue, penwidth=2, xlabel={}", quote(&note));
            }
        }
        let _ = writeln!(out, "  {} [{}];", quote(t.as_str()), attrs);
    }
    for arc in net.arcs() {
        let (from, to) = arc.endpoints();
        let _ = writeln!(out, "  {} -> {};", quote(from), quote(to));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::AlignedPair;
    use crate::petri::TransitionId;

    fn net() -> PetriNet {
        let mut net = PetriNet::new("n");
        net.add_place("i").unwrap();
        net.add_place("o").unwrap();
        net.add_transition("t0", "Say \"hi\"").unwrap();
        net.add_transition("t1", "τ:skip").unwrap();
        net.add_arc("i", "t0").unwrap();
        net.add_arc("t0", "o").unwrap();
        net.add_arc("i", "t1").unwrap();
        net.add_arc("t1", "o").unwrap();
        net
    }

    #[test]
    fn shapes_and_escaping() {
        let dot = export_dot(&net(), None);
        assert!(dot.starts_with("digraph \"n\" {"));
        assert!(dot.contains("\"i\" [shape=circle"));
        assert!(dot.contains("label=\"Say \\\"hi\\\"\""));
        assert!(dot.contains("\"t1\" [shape=box, label=\"τ:skip\", style=filled"));
        assert!(dot.contains("\"i\" -> \"t0\";"));
        assert_eq!(dot, export_dot(&net(), None));
    }

    #[test]
    fn matched_transitions_are_annotated_once() {
        let alignment = TaskAlignment {
            pairs: vec![AlignedPair {
                business: TransitionId::from("t0"),
                reference: TransitionId::from("r5"),
                score: 0.98765,
            }],
            unmatched_business: vec![],
            unmatched_reference: vec![],
            threshold: 0.7,
        };
        let dot = export_dot(
            &net(),
            Some(Highlight {
                alignment: &alignment,
                side: AlignmentSide::Business,
            }),
        );
        assert_eq!(dot.matches("xlabel=\"r5 0.988\"").count(), 1);
        let dot = export_dot(
            &net(),
            Some(Highlight {
                alignment: &alignment,
                side: AlignmentSide::Reference,
            }),
        );
        assert!(!dot.contains("0.988"));
    }
}
