//! RDF terms, an indexed in-memory graph, and a Turtle subset reader/writer.

mod graph;
mod iso;
mod serialize;
mod term;
mod turtle;

pub use graph::Graph;
pub use serialize::serialize_turtle;
pub use term::{fresh_scope, BlankNode, Iri, Literal, Term, TermError, Triple};
pub use turtle::{parse_turtle, ParseError, ParseErrorKind};

/// Union of two graphs; see [`Graph::merge`].
pub fn merge_graphs(a: &Graph, b: &Graph) -> Graph {
    a.merge(b)
}
