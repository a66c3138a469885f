use std::collections::{BTreeMap, HashMap, HashSet};

use super::term::{Term, Triple};

type Postings = Vec<u32>;

/// An in-memory triple set with single- and two-position indexes.
///
/// Insertion order is kept in `triples`; the indexes store positions into it.
/// Duplicate inserts are no-ops.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: Vec<Triple>,
    members: HashSet<Triple>,
    by_s: HashMap<Term, Postings>,
    by_p: HashMap<Term, Postings>,
    by_o: HashMap<Term, Postings>,
    by_sp: HashMap<(Term, Term), Postings>,
    by_po: HashMap<(Term, Term), Postings>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Self {
        let mut g = Graph::new();
        for t in triples {
            g.insert(t);
        }
        g
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.members.contains(&triple) {
            return false;
        }
        let idx = self.triples.len() as u32;
        let (s, p, o) = (
            triple.subject().clone(),
            triple.predicate().clone(),
            triple.object().clone(),
        );
        self.by_s.entry(s.clone()).or_default().push(idx);
        self.by_p.entry(p.clone()).or_default().push(idx);
        self.by_o.entry(o.clone()).or_default().push(idx);
        self.by_sp.entry((s, p.clone())).or_default().push(idx);
        self.by_po.entry((p, o)).or_default().push(idx);
        self.members.insert(triple.clone());
        self.triples.push(triple);
        true
    }

    pub fn add_prefix(&mut self, prefix: &str, namespace: &str) {
        self.prefixes.insert(prefix.to_string(), namespace.to_string());
    }

    /// Adds a prefix binding unless the prefix name or the namespace is
    /// already bound.
    pub fn add_prefix_if_absent(&mut self, prefix: &str, namespace: &str) {
        if self.prefixes.contains_key(prefix) || self.prefixes.values().any(|ns| ns == namespace) {
            return;
        }
        self.add_prefix(prefix, namespace);
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.members.contains(triple)
    }

    /// True when `(s, p, o)` is in the graph.
    pub fn has(&self, s: &Term, p: &Term, o: &Term) -> bool {
        self.by_sp
            .get(&(s.clone(), p.clone()))
            .is_some_and(|post| post.iter().any(|&i| self.triples[i as usize].object() == o))
    }

    /// Triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Triples in canonical (subject, predicate, object) order.
    pub fn sorted(&self) -> Vec<&Triple> {
        let mut v: Vec<&Triple> = self.triples.iter().collect();
        v.sort();
        v
    }

    /// Returns every triple matching the bound positions; `None` is a wildcard.
    pub fn matches(&self, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Vec<&Triple> {
        let postings = match (s, p, o) {
            (None, None, None) => return self.triples.iter().collect(),
            (Some(s), Some(p), _) => self.by_sp.get(&(s.clone(), p.clone())),
            (_, Some(p), Some(o)) => self.by_po.get(&(p.clone(), o.clone())),
            (Some(s), None, _) => self.by_s.get(s),
            (None, Some(p), None) => self.by_p.get(p),
            (None, None, Some(o)) => self.by_o.get(o),
        };
        let Some(postings) = postings else {
            return Vec::new();
        };
        postings
            .iter()
            .map(|&i| &self.triples[i as usize])
            .filter(|t| {
                s.is_none_or(|s| t.subject() == s)
                    && p.is_none_or(|p| t.predicate() == p)
                    && o.is_none_or(|o| t.object() == o)
            })
            .collect()
    }

    /// Objects of `(s, p, ?)`, sorted and deduplicated.
    pub fn objects(&self, s: &Term, p: &Term) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .matches(Some(s), Some(p), None)
            .into_iter()
            .map(|t| t.object().clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Subjects of `(?, p, o)`, sorted and deduplicated.
    pub fn subjects(&self, p: &Term, o: &Term) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .matches(None, Some(p), Some(o))
            .into_iter()
            .map(|t| t.subject().clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Every term that occurs in any position.
    pub fn terms(&self) -> HashSet<&Term> {
        let mut out = HashSet::new();
        for t in &self.triples {
            out.insert(t.subject());
            out.insert(t.predicate());
            out.insert(t.object());
        }
        out
    }

    /// Set union. Prefix bindings of `self` win on conflict.
    ///
    /// Blank nodes keep their parse scope, so nodes from distinct documents
    /// stay distinct while `merge(g, g)` is still `g`.
    pub fn merge(&self, other: &Graph) -> Graph {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &Graph) {
        for (prefix, ns) in &other.prefixes {
            self.prefixes.entry(prefix.clone()).or_insert_with(|| ns.clone());
        }
        for t in &other.triples {
            self.insert(t.clone());
        }
    }

    /// Set equality of triples; prefixes are ignored.
    pub fn same_triples(&self, other: &Graph) -> bool {
        self.len() == other.len() && self.triples.iter().all(|t| other.contains(t))
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph::from_triples(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iri(n: &str) -> Term {
        Term::iri(&format!("http://ex.org/{n}"))
    }

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o)).unwrap()
    }

    #[test]
    fn duplicate_insert_is_noop() {
        let mut g = Graph::new();
        assert!(g.insert(t("a", "b", "c")));
        assert!(!g.insert(t("a", "b", "c")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn match_by_subject() {
        let g = Graph::from_triples([t("a", "b", "c"), t("x", "b", "c")]);
        let hits = g.matches(Some(&iri("a")), None, None);
        assert_eq!(hits, vec![&t("a", "b", "c")]);
        assert!(Graph::new().matches(None, None, None).is_empty());
    }

    #[test]
    fn merge_identity_and_idempotence() {
        let g = Graph::from_triples([t("a", "b", "c"), t("c", "b", "d")]);
        assert!(g.merge(&Graph::new()).same_triples(&g));
        assert!(g.merge(&g).same_triples(&g));
    }

    fn small_triple() -> impl Strategy<Value = Triple> {
        (0..4u8, 0..3u8, 0..5u8, any::<bool>()).prop_map(|(s, p, o, lit)| {
            let obj = if lit {
                Term::literal(&format!("v{o}"))
            } else {
                iri(&format!("n{o}"))
            };
            Triple::new(iri(&format!("n{s}")), iri(&format!("p{p}")), obj).unwrap()
        })
    }

    fn pick(n: Option<u8>, f: impl Fn(u8) -> Term) -> Option<Term> {
        n.map(f)
    }

    proptest! {
        #[test]
        fn indexed_match_equals_full_scan(
            triples in proptest::collection::vec(small_triple(), 0..30),
            s in proptest::option::of(0..5u8),
            p in proptest::option::of(0..4u8),
            o in proptest::option::of(0..6u8),
            o_lit in any::<bool>(),
        ) {
            let g = Graph::from_triples(triples);
            let s = pick(s, |n| iri(&format!("n{n}")));
            let p = pick(p, |n| iri(&format!("p{n}")));
            let o = pick(o, |n| if o_lit { Term::literal(&format!("v{n}")) } else { iri(&format!("n{n}")) });
            let mut indexed: Vec<&Triple> = g.matches(s.as_ref(), p.as_ref(), o.as_ref());
            let mut scanned: Vec<&Triple> = g.iter().filter(|t| {
                s.as_ref().is_none_or(|s| t.subject() == s)
                    && p.as_ref().is_none_or(|p| t.predicate() == p)
                    && o.as_ref().is_none_or(|o| t.object() == o)
            }).collect();
            indexed.sort();
            scanned.sort();
            prop_assert_eq!(indexed, scanned);
        }
    }
}
