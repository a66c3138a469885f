//! Parser for the Turtle subset used by recurrent-series datasets.
//!
//! Supported: `@prefix` / `PREFIX`, prefixed names, absolute `<IRI>`s, the
//! `a` keyword, string literals (short and long, both quote styles) with
//! `^^datatype` or `@lang`, bare integer/decimal/double/boolean literals,
//! `_:label` blank nodes, `;` predicate lists, `,` object lists and `#`
//! comments. N-Triples is a subset of this grammar.
//!
//! Not supported: `@base`, collections `( ... )`, anonymous `[ ... ]` nodes.

use std::collections::HashMap;

use thiserror::Error;

use super::graph::Graph;
use super::term::{fresh_scope, has_scheme, BlankNode, Iri, Literal, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("unknown prefix '{0}:'")]
    UnknownPrefix(String),
    #[error("relative IRI <{0}>")]
    RelativeIri(String),
    #[error("invalid IRI <{0}>")]
    InvalidIri(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("invalid escape sequence: {0}")]
    InvalidEscape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Parses a Turtle document into a new graph. Blank nodes get a fresh scope.
pub fn parse_turtle(text: &str) -> Result<Graph, ParseError> {
    Parser::new(text).parse_document()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    graph: Graph,
    prefixes: HashMap<String, String>,
    scope: u64,
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic() || (!c.is_ascii() && c.is_alphanumeric())
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c) || c.is_ascii_digit() || c == '-' || c == '\u{b7}'
}

/// Characters that may follow `\` inside a local name.
fn is_local_escape(c: char) -> bool {
    "_~.-!$&'()*+,;=/?#@%".contains(c)
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            graph: Graph::new(),
            prefixes: HashMap::new(),
            scope: fresh_scope(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn starts_with_keyword_ci(&self, kw: &str) -> bool {
        let n = kw.chars().count();
        kw.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i).is_some_and(|x| x.eq_ignore_ascii_case(&c)))
            && !self.peek_at(n).is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self.chars[self.pos..]
                    .iter()
                    .take_while(|c| !c.is_whitespace())
                    .take(20)
                    .collect();
                format!("'{tok}'")
            }
        }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        self.error(ParseErrorKind::Syntax {
            expected: expected.to_string(),
            found: self.found(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char, what: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(what))
        }
    }

    fn parse_document(mut self) -> Result<Graph, ParseError> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else { break };
            if c == '@' {
                self.directive_at()?;
            } else if self.starts_with_keyword_ci("PREFIX") {
                self.sparql_prefix()?;
            } else if self.starts_with_keyword_ci("BASE") {
                return Err(self.error(ParseErrorKind::Unsupported("BASE".into())));
            } else {
                self.triples()?;
                self.expect('.', "'.' after statement")?;
            }
        }
        Ok(self.graph)
    }

    fn directive_at(&mut self) -> Result<(), ParseError> {
        if self.starts_with("@prefix") {
            for _ in 0.."@prefix".len() {
                self.bump();
            }
            self.prefix_body()?;
            self.expect('.', "'.' after @prefix")
        } else if self.starts_with("@base") {
            Err(self.error(ParseErrorKind::Unsupported("@base".into())))
        } else {
            Err(self.syntax("'@prefix'"))
        }
    }

    fn sparql_prefix(&mut self) -> Result<(), ParseError> {
        for _ in 0.."PREFIX".len() {
            self.bump();
        }
        self.prefix_body()
    }

    fn prefix_body(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let name = self.pname_ns()?;
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.syntax("namespace IRI"));
        }
        let ns = self.iriref()?;
        self.prefixes.insert(name.clone(), ns.as_str().to_string());
        self.graph.add_prefix(&name, ns.as_str());
        Ok(())
    }

    /// `prefix:` with a possibly empty prefix.
    fn pname_ns(&mut self) -> Result<String, ParseError> {
        let mut name = String::new();
        if let Some(c) = self.peek() {
            if is_pn_chars_base(c) {
                name.push(c);
                self.bump();
                while let Some(c) = self.peek() {
                    if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == '.')) {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        if self.peek() != Some(':') {
            return Err(self.syntax("prefix name followed by ':'"));
        }
        self.bump();
        Ok(name)
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_node(),
            Some('[') => Err(self.error(ParseErrorKind::Unsupported("anonymous blank node '['".into()))),
            Some('(') => Err(self.error(ParseErrorKind::Unsupported("collection '('".into()))),
            Some(c) if is_pn_chars_base(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            _ => Err(self.syntax("subject (IRI or blank node)")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            // trailing ';' before '.'
            if self.peek() == Some('.') {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some('a') && !self.peek_at(1).is_some_and(|c| is_pn_chars(c) || c == ':' || c == '.') {
            self.bump();
            return Ok(Term::iri(vocab::RDF_TYPE));
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some(c) if is_pn_chars_base(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            _ => Err(self.syntax("predicate")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            let object = self.object()?;
            let triple =
                Triple::new(subject.clone(), predicate.clone(), object).map_err(|e| self.syntax(&e.to_string()))?;
            self.graph.insert(triple);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_node(),
            Some('"') | Some('\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => self.numeric_literal(),
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.numeric_literal(),
            Some('[') => Err(self.error(ParseErrorKind::Unsupported("anonymous blank node '['".into()))),
            Some('(') => Err(self.error(ParseErrorKind::Unsupported("collection '('".into()))),
            Some(_) if self.starts_with_keyword_ci("true") && self.starts_with("true") => {
                for _ in 0..4 {
                    self.bump();
                }
                Ok(Term::boolean(true))
            }
            Some(_) if self.starts_with_keyword_ci("false") && self.starts_with("false") => {
                for _ in 0..5 {
                    self.bump();
                }
                Ok(Term::boolean(false))
            }
            Some(c) if is_pn_chars_base(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            _ => Err(self.syntax("object (IRI, blank node or literal)")),
        }
    }

    fn iriref(&mut self) -> Result<Iri, ParseError> {
        let (line, column) = (self.line, self.column);
        self.bump(); // '<'
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.syntax("'>' closing IRI")),
                Some('>') => break,
                Some('\\') => match self.bump() {
                    Some('u') => s.push(self.hex_escape(4)?),
                    Some('U') => s.push(self.hex_escape(8)?),
                    other => {
                        return Err(self.error(ParseErrorKind::InvalidEscape(format!(
                            "\\{}",
                            other.map(String::from).unwrap_or_default()
                        ))))
                    }
                },
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(ParseErrorKind::InvalidIri(s)));
                }
                Some(c) => s.push(c),
            }
        }
        let at = |kind| ParseError { line, column, kind };
        if !has_scheme(&s) {
            return Err(at(ParseErrorKind::RelativeIri(s)));
        }
        Iri::new(&s).map_err(|_| at(ParseErrorKind::InvalidIri(s.clone())))
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char, ParseError> {
        let mut hex = String::new();
        for _ in 0..digits {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => hex.push(c),
                _ => return Err(self.error(ParseErrorKind::InvalidEscape(format!("\\u{hex}")))),
            }
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error(ParseErrorKind::InvalidEscape(format!("\\u{hex}"))))
    }

    fn prefixed_name(&mut self) -> Result<Iri, ParseError> {
        let (line, column) = (self.line, self.column);
        let prefix = self.pname_ns()?;
        let local = self.local_name()?;
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::UnknownPrefix(prefix),
            });
        };
        let full = format!("{ns}{local}");
        Iri::new(&full).map_err(|_| ParseError {
            line,
            column,
            kind: ParseErrorKind::InvalidIri(full.clone()),
        })
    }

    fn local_name(&mut self) -> Result<String, ParseError> {
        let mut out = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok_here = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\'
            } else {
                is_pn_chars(c) || c == ':' || c == '%' || c == '\\' || c == '.'
            };
            if !ok_here {
                break;
            }
            match c {
                '.' => {
                    // a dot may not end a local name
                    let next = self.peek_at(1);
                    if !next.is_some_and(|n| is_pn_chars(n) || n == ':' || n == '%' || n == '\\' || n == '.') {
                        break;
                    }
                    // "a.." followed by a non-name char: stop before the dots
                    let mut k = 1;
                    while self.peek_at(k) == Some('.') {
                        k += 1;
                    }
                    if !self
                        .peek_at(k)
                        .is_some_and(|n| is_pn_chars(n) || n == ':' || n == '%' || n == '\\')
                    {
                        break;
                    }
                    self.bump();
                    out.push('.');
                }
                '%' => {
                    self.bump();
                    out.push('%');
                    for _ in 0..2 {
                        match self.bump() {
                            Some(h) if h.is_ascii_hexdigit() => out.push(h),
                            _ => return Err(self.syntax("two hex digits after '%'")),
                        }
                    }
                }
                '\\' => {
                    self.bump();
                    match self.bump() {
                        Some(e) if is_local_escape(e) => out.push(e),
                        other => {
                            return Err(self.error(ParseErrorKind::InvalidEscape(format!(
                                "\\{}",
                                other.map(String::from).unwrap_or_default()
                            ))))
                        }
                    }
                }
                c => {
                    self.bump();
                    out.push(c);
                }
            }
            first = false;
        }
        Ok(out)
    }

    fn blank_node(&mut self) -> Result<Term, ParseError> {
        self.bump();
        self.bump();
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return Err(self.syntax("blank node label")),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(is_pn_chars)) {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(Term::Blank(BlankNode::new(&label, self.scope)))
    }

    fn rdf_literal(&mut self) -> Result<Term, ParseError> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || (c == '-' && !tag.is_empty()) {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if tag.is_empty() || !tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    return Err(self.syntax("language tag"));
                }
                Ok(Term::Literal(Literal::lang_tagged(&lexical, &tag)))
            }
            Some('^') if self.peek_at(1) == Some('^') => {
                self.bump();
                self.bump();
                let dt = match self.peek() {
                    Some('<') => self.iriref()?,
                    Some(c) if is_pn_chars_base(c) || c == ':' => self.prefixed_name()?,
                    _ => return Err(self.syntax("datatype IRI")),
                };
                Ok(Term::Literal(Literal::typed(&lexical, &dt)))
            }
            _ => Ok(Term::literal(&lexical)),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut out = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.syntax("closing quote"));
            };
            if c == quote {
                if !long {
                    return Ok(out);
                }
                if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                    self.bump();
                    self.bump();
                    // up to two extra quotes belong to the content
                    while self.peek() == Some(quote) {
                        out.push(quote);
                        self.bump();
                    }
                    return Ok(out);
                }
                out.push(c);
                continue;
            }
            match c {
                '\\' => {
                    let e = self.bump();
                    match e {
                        Some('t') => out.push('\t'),
                        Some('b') => out.push('\u{8}'),
                        Some('n') => out.push('\n'),
                        Some('r') => out.push('\r'),
                        Some('f') => out.push('\u{c}'),
                        Some('"') => out.push('"'),
                        Some('\'') => out.push('\''),
                        Some('\\') => out.push('\\'),
                        Some('u') => out.push(self.hex_escape(4)?),
                        Some('U') => out.push(self.hex_escape(8)?),
                        other => {
                            return Err(self.error(ParseErrorKind::InvalidEscape(format!(
                                "\\{}",
                                other.map(String::from).unwrap_or_default()
                            ))))
                        }
                    }
                }
                '\n' | '\r' if !long => return Err(self.syntax("closing quote before end of line")),
                c => out.push(c),
            }
        }
    }

    fn numeric_literal(&mut self) -> Result<Term, ParseError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut datatype = vocab::XSD_INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            s.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
            }
            datatype = vocab::XSD_DECIMAL;
        } else if int_digits == 0 {
            return Err(self.syntax("number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            s.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                s.push(c);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return Err(self.syntax("exponent digits"));
            }
            datatype = vocab::XSD_DOUBLE;
        }
        Ok(Term::typed_literal(&s, datatype))
    }
}
