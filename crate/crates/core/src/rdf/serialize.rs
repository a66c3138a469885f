use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::graph::Graph;
use super::term::{escape_string, BlankNode, Term};
use crate::vocab;

fn valid_local(local: &str) -> bool {
    let mut chars = local.chars().peekable();
    let Some(first) = chars.next() else {
        return true;
    };
    if !(first.is_ascii_alphanumeric() || first == '_' || (!first.is_ascii() && first.is_alphanumeric())) {
        return false;
    }
    if local.ends_with('.') {
        return false;
    }
    local
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.') || (!c.is_ascii() && c.is_alphanumeric()))
}

fn valid_blank_label(label: &str) -> bool {
    !label.is_empty()
        && !label.ends_with('.')
        && label
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

struct Renderer<'g> {
    /// (namespace, prefix), longest namespace first.
    namespaces: Vec<(&'g str, &'g str)>,
    blank_labels: BTreeMap<BlankNode, String>,
}

impl<'g> Renderer<'g> {
    fn new(graph: &'g Graph) -> Self {
        let mut namespaces: Vec<(&str, &str)> = graph
            .prefixes()
            .iter()
            .map(|(p, ns)| (ns.as_str(), p.as_str()))
            .collect();
        namespaces.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1.cmp(b.1)));

        let mut blanks = BTreeSet::new();
        for t in graph.iter() {
            for term in [t.subject(), t.object()] {
                if let Term::Blank(b) = term {
                    blanks.insert(b.clone());
                }
            }
        }
        // Keep a node's own label when it is valid and not shared with a node
        // from another scope; otherwise mint b0, b1, ...
        let mut label_count: BTreeMap<&str, usize> = BTreeMap::new();
        for b in &blanks {
            *label_count.entry(b.label()).or_default() += 1;
        }
        let mut taken: HashSet<String> = blanks
            .iter()
            .filter(|b| label_count[b.label()] == 1 && valid_blank_label(b.label()))
            .map(|b| b.label().to_string())
            .collect();
        let mut next = 0usize;
        let mut blank_labels = BTreeMap::new();
        for b in &blanks {
            let label = if label_count[b.label()] == 1 && valid_blank_label(b.label()) {
                b.label().to_string()
            } else {
                loop {
                    let candidate = format!("b{next}");
                    next += 1;
                    if taken.insert(candidate.clone()) {
                        break candidate;
                    }
                }
            };
            blank_labels.insert(b.clone(), label);
        }
        Renderer {
            namespaces,
            blank_labels,
        }
    }

    fn iri(&self, iri: &str, out: &mut String) {
        for (ns, prefix) in &self.namespaces {
            if let Some(local) = iri.strip_prefix(ns) {
                if valid_local(local) {
                    out.push_str(prefix);
                    out.push(':');
                    out.push_str(local);
                    return;
                }
            }
        }
        out.push('<');
        out.push_str(iri);
        out.push('>');
    }

    fn term(&self, term: &Term, out: &mut String) {
        match term {
            Term::Iri(iri) => self.iri(iri.as_str(), out),
            Term::Blank(b) => {
                out.push_str("_:");
                out.push_str(&self.blank_labels[b]);
            }
            Term::Literal(lit) => {
                out.push('"');
                escape_string(out, lit.lexical());
                out.push('"');
                if let Some(lang) = lit.language() {
                    out.push('@');
                    out.push_str(lang);
                } else if lit.datatype() != vocab::XSD_STRING {
                    out.push_str("^^");
                    self.iri(lit.datatype(), out);
                }
            }
        }
    }
}

/// Writes the graph as Turtle: sorted `@prefix` lines, then one statement
/// per line in (subject, predicate, object) order.
///
/// Output is byte-stable for a given graph and reparses to an isomorphic one.
pub fn serialize_turtle(graph: &Graph) -> String {
    let renderer = Renderer::new(graph);
    let mut out = String::new();
    for (prefix, ns) in graph.prefixes() {
        out.push_str("@prefix ");
        out.push_str(prefix);
        out.push_str(": <");
        out.push_str(ns);
        out.push_str("> .\n");
    }
    if !graph.is_empty() && !graph.prefixes().is_empty() {
        out.push('\n');
    }
    for t in graph.sorted() {
        renderer.term(t.subject(), &mut out);
        out.push(' ');
        renderer.term(t.predicate(), &mut out);
        out.push(' ');
        renderer.term(t.object(), &mut out);
        out.push_str(" .\n");
    }
    out
}
