//! Forward chaining of the pattern's entailment rules to a fixpoint.
//!
//! | Rule | Body                                                   | Head                                       |
//! |------|--------------------------------------------------------|--------------------------------------------|
//! | R1   | `x a rss:RecurrentSituationSeries`                     | `x a dul:Collection`, `x a rss:Situation`  |
//! | R2   | `x a rss:Situation`                                    | `x a d0:Eventuality`                       |
//! | R3   | `x rss:hasMemberSituation y`                           | `y rss:isSituationMemberOf x`              |
//! | R3'  | `y rss:isSituationMemberOf x`                          | `x rss:hasMemberSituation y`               |
//! | R4   | `x rss:hasNextSituation y`                             | `y rss:hasPreviousSituation x`             |
//! | R4'  | `x rss:hasPreviousSituation y`                         | `y rss:hasNextSituation x`                 |
//! | R5   | `x rss:hasImmediateNextSituation y`                    | `x rss:hasNextSituation y`                 |
//! | R5'  | `x rss:hasImmediatePreviousSituation y`                | `x rss:hasPreviousSituation y`             |
//! | R6   | `x rss:hasEstimatedTimePeriod t`                       | `x rss:hasTimePeriod t`                    |
//! | R6'  | `x rss:hasMeasuredTimePeriod t`                        | `x rss:hasTimePeriod t`                    |
//! | R7   | `x rss:hasMemberSituation y`, `y rss:hasTimePeriodBeforeNextSituation t` | `x rss:hasTimePeriod t`  |
//! | R8   | `x a rss:UnifyingFactor`                               | `x a dul:Concept`                          |
//! | R9   | `x owl:sameAs y`                                       | `y owl:sameAs x`                           |
//! | R9'  | `x owl:sameAs y`, `y owl:sameAs z`                     | `x owl:sameAs z`                           |

use std::collections::{BTreeSet, HashMap};

use crate::rdf::{Graph, Term, Triple};
use crate::vocab::{self, term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Var(&'static str),
    Const(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub id: &'static str,
    pub body: Vec<TriplePattern>,
    pub head: Vec<TriplePattern>,
}

impl Rule {
    /// Every variable of the head is bound by the body.
    pub fn is_safe(&self) -> bool {
        let body_vars: BTreeSet<&str> = self.body.iter().flat_map(TriplePattern::vars).collect();
        self.head
            .iter()
            .flat_map(TriplePattern::vars)
            .all(|v| body_vars.contains(v))
    }
}

impl TriplePattern {
    fn vars(&self) -> impl Iterator<Item = &'static str> + '_ {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|s| match s {
                Slot::Var(v) => Some(*v),
                Slot::Const(_) => None,
            })
    }
}

fn v(name: &'static str) -> Slot {
    Slot::Var(name)
}

fn c(iri: &'static str) -> Slot {
    Slot::Const(term(iri))
}

fn tp(s: Slot, p: Slot, o: Slot) -> TriplePattern {
    TriplePattern {
        subject: s,
        predicate: p,
        object: o,
    }
}

fn inverse(id: &'static str, from: &'static str, to: &'static str) -> Rule {
    Rule {
        id,
        body: vec![tp(v("x"), c(from), v("y"))],
        head: vec![tp(v("y"), c(to), v("x"))],
    }
}

fn sub_property(id: &'static str, sub: &'static str, sup: &'static str) -> Rule {
    Rule {
        id,
        body: vec![tp(v("x"), c(sub), v("y"))],
        head: vec![tp(v("x"), c(sup), v("y"))],
    }
}

/// The static rule set materialized by [`materialize`].
pub fn pattern_rules() -> Vec<Rule> {
    use vocab::*;
    vec![
        Rule {
            id: "R1",
            body: vec![tp(v("x"), c(RDF_TYPE), c(RSS_RECURRENT_SITUATION_SERIES))],
            head: vec![
                tp(v("x"), c(RDF_TYPE), c(DUL_COLLECTION)),
                tp(v("x"), c(RDF_TYPE), c(RSS_SITUATION)),
            ],
        },
        Rule {
            id: "R2",
            body: vec![tp(v("x"), c(RDF_TYPE), c(RSS_SITUATION))],
            head: vec![tp(v("x"), c(RDF_TYPE), c(D0_EVENTUALITY))],
        },
        inverse("R3", RSS_HAS_MEMBER_SITUATION, RSS_IS_SITUATION_MEMBER_OF),
        inverse("R3'", RSS_IS_SITUATION_MEMBER_OF, RSS_HAS_MEMBER_SITUATION),
        inverse("R4", RSS_HAS_NEXT_SITUATION, RSS_HAS_PREVIOUS_SITUATION),
        inverse("R4'", RSS_HAS_PREVIOUS_SITUATION, RSS_HAS_NEXT_SITUATION),
        sub_property("R5", RSS_HAS_IMMEDIATE_NEXT_SITUATION, RSS_HAS_NEXT_SITUATION),
        sub_property("R5'", RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION, RSS_HAS_PREVIOUS_SITUATION),
        sub_property("R6", RSS_HAS_ESTIMATED_TIME_PERIOD, RSS_HAS_TIME_PERIOD),
        sub_property("R6'", RSS_HAS_MEASURED_TIME_PERIOD, RSS_HAS_TIME_PERIOD),
        Rule {
            id: "R7",
            body: vec![
                tp(v("x"), c(RSS_HAS_MEMBER_SITUATION), v("y")),
                tp(v("y"), c(RSS_HAS_TIME_PERIOD_BEFORE_NEXT_SITUATION), v("t")),
            ],
            head: vec![tp(v("x"), c(RSS_HAS_TIME_PERIOD), v("t"))],
        },
        Rule {
            id: "R8",
            body: vec![tp(v("x"), c(RDF_TYPE), c(RSS_UNIFYING_FACTOR))],
            head: vec![tp(v("x"), c(RDF_TYPE), c(DUL_CONCEPT))],
        },
        inverse("R9", OWL_SAME_AS, OWL_SAME_AS),
        Rule {
            id: "R9'",
            body: vec![tp(v("x"), c(OWL_SAME_AS), v("y")), tp(v("y"), c(OWL_SAME_AS), v("z"))],
            head: vec![tp(v("x"), c(OWL_SAME_AS), v("z"))],
        },
    ]
}

/// Triples added by materialization, and the number of rounds it took
/// (the final round is the one that derived nothing).
#[derive(Debug, Clone)]
pub struct InferenceDelta {
    pub added: Graph,
    pub iterations: usize,
}

type Bindings = HashMap<&'static str, Term>;

fn resolve<'b>(slot: &'b Slot, bindings: &'b Bindings) -> Option<&'b Term> {
    match slot {
        Slot::Const(t) => Some(t),
        Slot::Var(name) => bindings.get(name),
    }
}

fn bind(slot: &Slot, value: &Term, bindings: &mut Bindings) -> bool {
    match slot {
        Slot::Const(t) => t == value,
        Slot::Var(name) => match bindings.get(name) {
            Some(bound) => bound == value,
            None => {
                bindings.insert(name, value.clone());
                true
            }
        },
    }
}

fn solve(graph: &Graph, body: &[TriplePattern], bindings: Bindings, out: &mut Vec<Bindings>) {
    let Some((first, rest)) = body.split_first() else {
        out.push(bindings);
        return;
    };
    let hits = graph.matches(
        resolve(&first.subject, &bindings),
        resolve(&first.predicate, &bindings),
        resolve(&first.object, &bindings),
    );
    for t in hits {
        let mut b = bindings.clone();
        if bind(&first.subject, t.subject(), &mut b)
            && bind(&first.predicate, t.predicate(), &mut b)
            && bind(&first.object, t.object(), &mut b)
        {
            solve(graph, rest, b, out);
        }
    }
}

fn instantiate(pattern: &TriplePattern, bindings: &Bindings) -> Option<Triple> {
    let s = resolve(&pattern.subject, bindings)?.clone();
    let p = resolve(&pattern.predicate, bindings)?.clone();
    let o = resolve(&pattern.object, bindings)?.clone();
    // e.g. symmetric sameAs over a literal object would put a literal in
    // subject position; such heads are dropped
    Triple::new(s, p, o).ok()
}

/// Applies `rules` to `graph` until nothing new is derived.
pub fn materialize_with(graph: &Graph, rules: &[Rule]) -> InferenceDelta {
    let mut working = graph.clone();
    let mut added = Graph::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut fresh = BTreeSet::new();
        for rule in rules {
            let mut solutions = Vec::new();
            solve(&working, &rule.body, Bindings::new(), &mut solutions);
            for b in &solutions {
                for head in &rule.head {
                    if let Some(t) = instantiate(head, b) {
                        if !working.contains(&t) {
                            fresh.insert(t);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for t in fresh {
            working.insert(t.clone());
            added.insert(t);
        }
    }
    InferenceDelta { added, iterations }
}

/// Least fixpoint of [`pattern_rules`] over `graph`.
pub fn materialize(graph: &Graph) -> InferenceDelta {
    materialize_with(graph, &pattern_rules())
}

/// `graph` together with everything the pattern rules derive from it.
pub fn closure(graph: &Graph) -> Graph {
    graph.merge(&materialize(graph).added)
}

/// Equivalence classes of the reflexive, symmetric, transitive closure of
/// `owl:sameAs`, kept as a union-find forest.
#[derive(Debug, Clone, Default)]
pub struct SameAsClasses {
    index: HashMap<Term, usize>,
    terms: Vec<Term>,
    parent: Vec<usize>,
}

impl SameAsClasses {
    fn id(&mut self, t: &Term) -> usize {
        if let Some(&i) = self.index.get(t) {
            return i;
        }
        let i = self.terms.len();
        self.index.insert(t.clone(), i);
        self.terms.push(t.clone());
        self.parent.push(i);
        i
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index becomes the root; keeps roots deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// True when `a` and `b` denote the same individual.
    pub fn same(&self, a: &Term, b: &Term) -> bool {
        if a == b {
            return true;
        }
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.find(i) == self.find(j),
            _ => false,
        }
    }

    /// The sorted class of `t`; a singleton for terms outside any sameAs triple.
    pub fn class_of(&self, t: &Term) -> Vec<Term> {
        let Some(&i) = self.index.get(t) else {
            return vec![t.clone()];
        };
        let root = self.find(i);
        let mut out: Vec<Term> = (0..self.terms.len())
            .filter(|&j| self.find(j) == root)
            .map(|j| self.terms[j].clone())
            .collect();
        out.sort();
        out
    }

    /// Classes with at least two members, each sorted, in sorted order.
    pub fn classes(&self) -> Vec<Vec<Term>> {
        let mut groups: HashMap<usize, Vec<Term>> = HashMap::new();
        for (j, t) in self.terms.iter().enumerate() {
            groups.entry(self.find(j)).or_default().push(t.clone());
        }
        let mut out: Vec<Vec<Term>> = groups
            .into_values()
            .filter(|g| g.len() > 1)
            .map(|mut g| {
                g.sort();
                g
            })
            .collect();
        out.sort();
        out
    }
}

pub fn same_as_classes(graph: &Graph) -> SameAsClasses {
    let mut classes = SameAsClasses::default();
    let same_as = term(vocab::OWL_SAME_AS);
    let mut pairs: Vec<(&Term, &Term)> = graph
        .matches(None, Some(&same_as), None)
        .into_iter()
        .map(|t| (t.subject(), t.object()))
        .collect();
    pairs.sort();
    for (a, b) in pairs {
        let (i, j) = (classes.id(a), classes.id(b));
        classes.union(i, j);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    const PRE: &str = "@prefix ex: <http://ex.org/> .\n\
        @prefix rss: <http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#> .\n\
        @prefix owl: <http://www.w3.org/2002/07/owl#> .\n";

    fn ex(n: &str) -> Term {
        Term::iri(&format!("http://ex.org/{n}"))
    }

    fn g(body: &str) -> Graph {
        parse_turtle(&format!("{PRE}{body}")).unwrap()
    }

    #[test]
    fn every_rule_is_safe() {
        for rule in pattern_rules() {
            assert!(rule.is_safe(), "{}", rule.id);
        }
    }

    #[test]
    fn series_type_chains_to_eventuality() {
        let d = materialize(&g("ex:s a rss:RecurrentSituationSeries ."));
        let ty = term(vocab::RDF_TYPE);
        for class in [vocab::DUL_COLLECTION, vocab::RSS_SITUATION, vocab::D0_EVENTUALITY] {
            assert!(d.added.has(&ex("s"), &ty, &term(class)), "{class}");
        }
        assert_eq!(d.added.len(), 3);
        // R1 in round one, R2 in round two, nothing in round three
        assert_eq!(d.iterations, 3);
    }

    #[test]
    fn empty_graph_one_iteration() {
        let d = materialize(&Graph::new());
        assert!(d.added.is_empty());
        assert_eq!(d.iterations, 1);
    }

    #[test]
    fn chain_and_inverse() {
        let d = materialize(&g(
            "ex:s rss:hasMemberSituation ex:m . ex:m rss:hasTimePeriodBeforeNextSituation ex:t .",
        ));
        assert!(d.added.has(&ex("s"), &term(vocab::RSS_HAS_TIME_PERIOD), &ex("t")));
        assert!(d
            .added
            .has(&ex("m"), &term(vocab::RSS_IS_SITUATION_MEMBER_OF), &ex("s")));
    }

    #[test]
    fn immediate_next_entails_previous() {
        let d = materialize(&g("ex:a rss:hasImmediateNextSituation ex:b ."));
        assert!(d
            .added
            .has(&ex("b"), &term(vocab::RSS_HAS_PREVIOUS_SITUATION), &ex("a")));
    }

    #[test]
    fn same_as_literal_object_does_not_produce_literal_subject() {
        let d = materialize(&g("ex:a owl:sameAs \"x\" ."));
        assert!(d.added.iter().all(|t| !t.subject().is_literal()));
    }

    #[test]
    fn fixpoint_is_idempotent() {
        let base = g("ex:a owl:sameAs ex:b . ex:b owl:sameAs ex:c . ex:s a rss:RecurrentSituationSeries .");
        let full = closure(&base);
        assert!(materialize(&full).added.is_empty());
    }

    #[test]
    fn same_as_transitive_and_symmetric() {
        let classes = same_as_classes(&g("ex:a owl:sameAs ex:b . ex:b owl:sameAs ex:c ."));
        assert!(classes.same(&ex("a"), &ex("c")));
        assert!(classes.same(&ex("c"), &ex("a")));
        assert_eq!(classes.class_of(&ex("b")), vec![ex("a"), ex("b"), ex("c")]);
        assert_eq!(classes.classes().len(), 1);
    }

    #[test]
    fn no_same_as_means_singletons() {
        let classes = same_as_classes(&g("ex:a ex:p ex:b ."));
        assert!(!classes.same(&ex("a"), &ex("b")));
        assert!(classes.same(&ex("a"), &ex("a")));
        assert_eq!(classes.class_of(&ex("a")), vec![ex("a")]);
        assert!(classes.classes().is_empty());
    }
}
