//! Graphviz export.

use std::fmt::Write;

use num_traits::Zero;

use crate::events::Event;
use crate::interventions::InterventionResult;
use crate::tree::{format_prob, CausalSpace};

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

/// Renders the tree as a DOT digraph with fractions on the edges.
///
/// With an intervention, critical bifurcations get a thick outline, edges
/// whose probability changed show `old -> new`, and edges set to zero are
/// dashed. Leaves inside `highlight` are filled.
pub fn to_dot(space: &CausalSpace, intervention: Option<&InterventionResult>, highlight: Option<&Event>) -> String {
    let tree = space.tree();
    let mut out = String::from("digraph ctree {\n  node [shape=ellipse];\n");
    for id in tree.node_ids() {
        let node = tree.node(id);
        let mut attrs = Vec::new();
        if node.is_leaf() {
            let labels: Vec<&str> = node.leaf_outcomes().iter().map(|&o| tree.outcome_label(o)).collect();
            attrs.push(format!(
                "label={}",
                quote(&format!("{}\n{}", node.name(), labels.join(" ")))
            ));
            attrs.push("shape=box".into());
            if highlight.is_some_and(|e| node.outcomes().iter().all(|&o| e.contains(o))) {
                attrs.push("style=filled".into());
                attrs.push("fillcolor=lightgrey".into());
            }
        } else {
            attrs.push(format!("label={}", quote(node.name())));
        }
        if intervention.is_some_and(|r| r.critical.contains(&id)) {
            attrs.push("penwidth=3".into());
        }
        writeln!(out, "  {} [{}];", quote(node.name()), attrs.join(", ")).unwrap();
    }
    for id in tree.node_ids() {
        let Some(parent) = tree.node(id).parent() else {
            continue;
        };
        let old = space.edge(id);
        let mut attrs = Vec::new();
        match intervention.map(|r| r.space.edge(id)) {
            Some(new) if new != old => {
                attrs.push(format!(
                    "label={}",
                    quote(&format!("{} -> {}", format_prob(old), format_prob(new)))
                ));
                if new.is_zero() {
                    attrs.push("style=dashed".into());
                }
            }
            _ => attrs.push(format!("label={}", quote(&format_prob(old)))),
        }
        writeln!(
            out,
            "  {} -> {} [{}];",
            quote(tree.name(parent)),
            quote(tree.name(id)),
            attrs.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::interventions::intervene;

    /// Checks the subset of DOT this module emits: a single digraph whose
    /// statements are quoted node or edge declarations with attribute lists.
    fn is_valid_dot(text: &str) -> bool {
        let mut lines = text.lines();
        if lines.next() != Some("digraph ctree {") {
            return false;
        }
        let body: Vec<&str> = lines.collect();
        let Some((last, stmts)) = body.split_last() else {
            return false;
        };
        *last == "}"
            && stmts.iter().all(|s| {
                let s = s.trim();
                if s == "node [shape=ellipse];" {
                    return true;
                }
                let Some(s) = s.strip_suffix("];") else {
                    return false;
                };
                let Some((head, attrs)) = s.split_once(" [") else {
                    return false;
                };
                let quoted = |x: &str| x.len() >= 2 && x.starts_with('"') && x.ends_with('"');
                let head_ok = match head.split_once(" -> ") {
                    Some((a, b)) => quoted(a) && quoted(b),
                    None => quoted(head),
                };
                head_ok && attrs.matches('"').count() % 2 == 0 && !attrs.contains('{') && !attrs.contains('}')
            })
    }

    #[test]
    fn plain_urn() {
        let doc = corpus::load(corpus::URN);
        let dot = to_dot(&doc.space, None, None);
        assert!(is_valid_dot(&dot));
        assert_eq!(
            dot.lines()
                .filter(|l| l.contains(" [label=") && !l.contains("->"))
                .count(),
            15
        );
        assert!(!dot.contains("penwidth") && !dot.contains("dashed") && !dot.contains("filled"));
        assert!(dot.contains("  \"S0\" -> \"S1\" [label=\"1/2\"];\n"));
    }

    #[test]
    fn barometer_intervention() {
        let doc = corpus::load(corpus::BAROMETER);
        let low = doc.event("low").unwrap();
        let r = intervene(&doc.space, low).unwrap();
        let dot = to_dot(&doc.space, Some(&r), Some(low));
        assert!(is_valid_dot(&dot));
        let thick: Vec<_> = dot.lines().filter(|l| l.contains("penwidth=3")).collect();
        assert_eq!(thick.len(), 3);
        for n in ["\"S2\"", "\"S3\"", "\"S4\""] {
            assert!(thick.iter().any(|l| l.trim_start().starts_with(n)));
        }
        let dashed: Vec<_> = dot
            .lines()
            .filter(|l| l.contains("dashed"))
            .map(|l| l.trim().split(" [").next().unwrap())
            .collect();
        assert_eq!(dashed, ["\"S3\" -> \"S8\"", "\"S4\" -> \"S10\"", "\"S2\" -> \"S6\""]);
        assert!(dot.contains("\"S3\" -> \"S7\" [label=\"3/4 -> 1/1\"]"));
        assert_eq!(dot.matches("filled").count(), 4);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
    }
}
