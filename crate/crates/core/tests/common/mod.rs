#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recurrence_core::rdf::{BlankNode, Graph, Term, Triple};
use recurrence_core::vocab;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ex(local: &str) -> Term {
    Term::iri(&format!("http://example.org/{local}"))
}

pub fn t(s: &Term, p: &str, o: &Term) -> Triple {
    Triple::new(s.clone(), Term::iri(p), o.clone()).unwrap()
}

const LINK_PREDICATES: &[&str] = &[
    vocab::RSS_HAS_MEMBER_SITUATION,
    vocab::RSS_IS_SITUATION_MEMBER_OF,
    vocab::RSS_HAS_NEXT_SITUATION,
    vocab::RSS_HAS_PREVIOUS_SITUATION,
    vocab::RSS_HAS_IMMEDIATE_NEXT_SITUATION,
    vocab::RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION,
    vocab::OWL_SAME_AS,
    vocab::RSS_HAS_TIME_PERIOD,
    vocab::RSS_HAS_ESTIMATED_TIME_PERIOD,
    vocab::RSS_HAS_MEASURED_TIME_PERIOD,
    vocab::RSS_HAS_TIME_PERIOD_BEFORE_NEXT_SITUATION,
    vocab::RSS_HAS_UNIFYING_FACTOR,
    vocab::RSS_INVOLVES_UNIFYING_FACTOR,
];

const CLASSES: &[&str] = &[
    vocab::RSS_RECURRENT_SITUATION_SERIES,
    vocab::RSS_SITUATION,
    vocab::RSS_UNIFYING_FACTOR,
    vocab::RSS_UNIFYING_SITUATION,
    vocab::DUL_DESCRIPTION,
];

/// Up to `max_triples` triples over ten IRIs and the pattern's link
/// predicates and classes. Dense enough that memberships, cross-series
/// links and sameAs chains collide often.
pub fn random_pattern_graph(rng: &mut ChaCha8Rng, max_triples: usize) -> Graph {
    let nodes: Vec<Term> = (0..10).map(|i| ex(&format!("n{i}"))).collect();
    let n = rng.random_range(0..=max_triples);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = nodes.choose(rng).unwrap();
        if rng.random_bool(0.2) {
            g.insert(t(s, vocab::RDF_TYPE, &Term::iri(CLASSES.choose(rng).unwrap())));
        } else {
            let p = LINK_PREDICATES.choose(rng).unwrap();
            g.insert(t(s, p, nodes.choose(rng).unwrap()));
        }
    }
    g
}

const LEXICAL_PIECES: &[&str] = &[
    "plain",
    "",
    " ",
    "\"quoted\"",
    "back\\slash",
    "line\nbreak",
    "tab\there",
    "caf\u{e9}",
    "\u{20ac}",
    "\u{1F426}",
    "'single'",
    "\"\"\"",
    "a#b",
    "<not-an-iri>",
    "x@y",
    "\r",
    "\u{1}",
];

fn random_iri(rng: &mut ChaCha8Rng) -> Term {
    let locals = [
        "a",
        "b",
        "node-1",
        "2017-present",
        "1year",
        "with.dot",
        "x_y",
        "p%20q",
        "ends.",
        "a/b",
        "q?x=1",
    ];
    let bases = [
        "http://example.org/",
        "http://example.org/ns#",
        "urn:x:",
        "http://other.test/path/",
    ];
    let base = bases.choose(rng).unwrap();
    let local = locals.choose(rng).unwrap();
    Term::iri(&format!("{base}{local}"))
}

fn random_literal(rng: &mut ChaCha8Rng) -> Term {
    let lex: String = (0..rng.random_range(0..3))
        .map(|_| *LEXICAL_PIECES.choose(rng).unwrap())
        .collect();
    match rng.random_range(0..7) {
        0 => Term::literal(&lex),
        1 => Term::Literal(recurrence_core::rdf::Literal::lang_tagged(
            &lex,
            ["en", "it", "en-GB"].choose(rng).unwrap(),
        )),
        2 => Term::integer(rng.random_range(-1000..1000)),
        3 => Term::typed_literal(
            &format!("{}.{}", rng.random_range(0..100), rng.random_range(0..100)),
            vocab::XSD_DECIMAL,
        ),
        4 => Term::boolean(rng.random_bool(0.5)),
        5 => Term::typed_literal("2019-03-01", vocab::XSD_DATE),
        _ => Term::typed_literal(&lex, "http://example.org/dt#custom"),
    }
}

/// Graphs from the supported Turtle subset: IRIs that do and do not fit a
/// prefixed name, blank nodes, and literals with escapes, language tags and
/// datatypes.
pub fn random_turtle_graph(rng: &mut ChaCha8Rng, max_triples: usize) -> Graph {
    let scope = recurrence_core::rdf::fresh_scope();
    let blank = |rng: &mut ChaCha8Rng| Term::Blank(BlankNode::new(&format!("b{}", rng.random_range(0..4)), scope));
    let mut g = Graph::new();
    g.add_prefix("ex", "http://example.org/");
    g.add_prefix("exns", "http://example.org/ns#");
    g.add_prefix("rss", vocab::RSS_NS);
    let n = rng.random_range(0..=max_triples);
    for _ in 0..n {
        let s = if rng.random_bool(0.3) {
            blank(rng)
        } else {
            random_iri(rng)
        };
        let p = if rng.random_bool(0.2) {
            Term::iri(vocab::RDF_TYPE)
        } else {
            random_iri(rng)
        };
        let o = match rng.random_range(0..3) {
            0 => random_iri(rng),
            1 => blank(rng),
            _ => random_literal(rng),
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

fn scan(g: &Graph, s: &Term, p: &str, o: &Term) -> bool {
    let p = Term::iri(p);
    g.iter()
        .any(|x| x.subject() == s && x.predicate() == &p && x.object() == o)
}

/// `owl:sameAs+` from `a` to `b`, by breadth-first search over raw triples.
pub fn same_as_plus(g: &Graph, a: &Term, b: &Term) -> bool {
    let same_as = Term::iri(vocab::OWL_SAME_AS);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(x) = queue.pop_front() {
        for tr in g.iter().filter(|tr| tr.predicate() == &same_as && tr.subject() == &x) {
            let y = tr.object().clone();
            if &y == b {
                return true;
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// Every `(rss1, rss2, sit1, sit2)` tuple over the graph's terms, kept when
/// both memberships hold, `sit1` precedes `sit2` (either link direction),
/// the series differ and are not `owl:sameAs+`-connected.
pub fn brute_force_inconsistency(g: &Graph) -> BTreeSet<(Term, Term)> {
    let mut terms: Vec<Term> = g.terms().into_iter().cloned().collect();
    terms.sort();
    let member = |r: &Term, s: &Term| scan(g, r, vocab::RSS_HAS_MEMBER_SITUATION, s);
    let series: Vec<&Term> = terms.iter().filter(|r| terms.iter().any(|s| member(r, s))).collect();
    let sits: Vec<&Term> = terms.iter().filter(|s| terms.iter().any(|r| member(r, s))).collect();
    let mut out = BTreeSet::new();
    for r1 in &series {
        for r2 in &series {
            if r1 == r2 || same_as_plus(g, r1, r2) {
                continue;
            }
            for s1 in &sits {
                for s2 in &sits {
                    if s1 == s2 || !member(r1, s1) || !member(r2, s2) {
                        continue;
                    }
                    if scan(g, s1, vocab::RSS_HAS_NEXT_SITUATION, s2)
                        || scan(g, s2, vocab::RSS_HAS_PREVIOUS_SITUATION, s1)
                    {
                        out.insert(((*r1).clone(), (*r2).clone()));
                    }
                }
            }
        }
    }
    out
}

/// Counts day steps from `a` to `b` by walking the calendar one day at a
/// time with hand-written month lengths.
pub fn calendar_days(a: (i32, u32, u32), b: (i32, u32, u32)) -> i64 {
    fn leap(y: i32) -> bool {
        (y % 4 == 0 && y % 100 != 0) || y % 400 == 0
    }
    fn month_len(y: i32, m: u32) -> u32 {
        match m {
            1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
            4 | 6 | 9 | 11 => 30,
            _ if leap(y) => 29,
            _ => 28,
        }
    }
    let (mut y, mut m, mut d) = a;
    let mut n = 0;
    while (y, m, d) < b {
        d += 1;
        if d > month_len(y, m) {
            d = 1;
            m += 1;
            if m > 12 {
                m = 1;
                y += 1;
            }
        }
        n += 1;
    }
    n
}
