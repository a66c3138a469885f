use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI is empty")]
    EmptyIri,
    #[error("relative IRI <{0}> (only absolute IRIs are accepted)")]
    RelativeIri(String),
    #[error("IRI <{0}> contains a forbidden character")]
    InvalidIriChar(String),
    #[error("literal subject is not allowed: {0}")]
    LiteralSubject(String),
    #[error("predicate must be an IRI, got {0}")]
    NonIriPredicate(String),
}

/// Returns true when `s` starts with a URI scheme followed by `:`.
pub(crate) fn has_scheme(s: &str) -> bool {
    let Some(colon) = s.find(':') else {
        return false;
    };
    let scheme = &s[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

fn forbidden_iri_char(c: char) -> bool {
    matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') || c <= ' '
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: &str) -> Result<Self, TermError> {
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if value.chars().any(forbidden_iri_char) {
            return Err(TermError::InvalidIriChar(value.to_string()));
        }
        if !has_scheme(value) {
            return Err(TermError::RelativeIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

static NEXT_SCOPE: AtomicU64 = AtomicU64::new(1);

/// Allocates a fresh blank-node scope. Every parsed document gets its own,
/// so equal labels from different documents denote different nodes.
pub fn fresh_scope() -> u64 {
    NEXT_SCOPE.fetch_add(1, Ordering::Relaxed)
}

/// A blank node: a document-local label plus the scope it was minted in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode {
    label: Arc<str>,
    scope: u64,
}

impl BlankNode {
    pub fn new(label: &str, scope: u64) -> Self {
        BlankNode {
            label: Arc::from(label),
            scope,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scope(&self) -> u64 {
        self.scope
    }
}

/// A literal. Plain literals carry `xsd:string`; language-tagged ones carry
/// `rdf:langString` and the tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Arc<str>,
    language: Option<Arc<str>>,
}

impl Literal {
    pub fn plain(lexical: &str) -> Self {
        Literal {
            lexical: Arc::from(lexical),
            datatype: Arc::from(vocab::XSD_STRING),
            language: None,
        }
    }

    pub fn typed(lexical: &str, datatype: &Iri) -> Self {
        Literal {
            lexical: Arc::from(lexical),
            datatype: datatype.0.clone(),
            language: None,
        }
    }

    pub fn lang_tagged(lexical: &str, language: &str) -> Self {
        Literal {
            lexical: Arc::from(lexical),
            datatype: Arc::from(vocab::RDF_LANG_STRING),
            language: Some(Arc::from(language)),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    /// Builds an IRI term from a trusted constant. Use [`Iri::new`] for
    /// untrusted input.
    pub fn iri(value: &str) -> Self {
        debug_assert!(Iri::new(value).is_ok(), "invalid IRI constant {value}");
        Term::Iri(Iri(Arc::from(value)))
    }

    pub fn blank(label: &str) -> Self {
        Term::Blank(BlankNode::new(label, 0))
    }

    pub fn literal(lexical: &str) -> Self {
        Term::Literal(Literal::plain(lexical))
    }

    pub fn typed_literal(lexical: &str, datatype: &str) -> Self {
        Term::Literal(Literal {
            lexical: Arc::from(lexical),
            datatype: Arc::from(datatype),
            language: None,
        })
    }

    pub fn integer(value: i64) -> Self {
        Term::typed_literal(&value.to_string(), vocab::XSD_INTEGER)
    }

    pub fn boolean(value: bool) -> Self {
        Term::typed_literal(if value { "true" } else { "false" }, vocab::XSD_BOOLEAN)
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri.as_str()),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// The lexical form of a literal, or the IRI string / blank label.
    pub fn value(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Blank(b) => b.label(),
            Term::Literal(l) => l.lexical(),
        }
    }
}

pub(crate) fn escape_string(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

/// N-Triples rendering. Blank nodes print their document label only; use
/// the Turtle serializer when labels from several documents must stay apart.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{}>", iri.as_str()),
            Term::Blank(b) => write!(f, "_:{}", b.label),
            Term::Literal(l) => {
                let mut s = String::from("\"");
                escape_string(&mut s, l.lexical());
                s.push('"');
                if let Some(lang) = l.language() {
                    s.push('@');
                    s.push_str(lang);
                } else if l.datatype() != vocab::XSD_STRING {
                    s.push_str("^^<");
                    s.push_str(l.datatype());
                    s.push('>');
                }
                f.write_str(&s)
            }
        }
    }
}

/// JSON form: IRIs as bare strings, everything else in N-Triples syntax.
impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Term::Iri(iri) => serializer.serialize_str(iri.as_str()),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        if subject.is_literal() {
            return Err(TermError::LiteralSubject(subject.to_string()));
        }
        if !predicate.is_iri() {
            return Err(TermError::NonIriPredicate(predicate.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn has_blank(&self) -> bool {
        self.subject.is_blank() || self.object.is_blank()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
