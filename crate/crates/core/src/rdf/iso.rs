//! Graph isomorphism up to blank-node renaming.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::graph::Graph;
use super::term::{BlankNode, Term, Triple};

fn blanks_of(graph: &Graph) -> Vec<BlankNode> {
    let mut set: Vec<BlankNode> = graph
        .iter()
        .flat_map(|t| [t.subject(), t.object()])
        .filter_map(|t| match t {
            Term::Blank(b) => Some(b.clone()),
            _ => None,
        })
        .collect();
    set.sort();
    set.dedup();
    set
}

fn h<T: Hash>(v: &T) -> u64 {
    let mut s = DefaultHasher::new();
    v.hash(&mut s);
    s.finish()
}

/// Colour refinement: each blank node's colour is a hash of the multiset of
/// its incident triples, with other blank nodes replaced by their colour.
fn colours(graph: &Graph, blanks: &[BlankNode]) -> HashMap<BlankNode, u64> {
    let mut colour: HashMap<BlankNode, u64> = blanks.iter().map(|b| (b.clone(), 0)).collect();
    let term_key = |t: &Term, colour: &HashMap<BlankNode, u64>| -> u64 {
        match t {
            Term::Blank(b) => h(&("b", colour[b])),
            other => h(&("t", other)),
        }
    };
    for _ in 0..4 {
        let mut next = HashMap::new();
        for b in blanks {
            let me = Term::Blank(b.clone());
            let mut sig: Vec<u64> = graph
                .matches(Some(&me), None, None)
                .into_iter()
                .map(|t| h(&("out", h(t.predicate()), term_key(t.object(), &colour))))
                .chain(
                    graph
                        .matches(None, None, Some(&me))
                        .into_iter()
                        .map(|t| h(&("in", h(t.predicate()), term_key(t.subject(), &colour)))),
                )
                .collect();
            sig.sort_unstable();
            next.insert(b.clone(), h(&(colour[b], sig)));
        }
        colour = next;
    }
    colour
}

impl Graph {
    /// True when some bijection between blank nodes maps `self` onto `other`.
    pub fn isomorphic(&self, other: &Graph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let ground = |g: &Graph| -> HashSet<Triple> { g.iter().filter(|t| !t.has_blank()).cloned().collect() };
        if ground(self) != ground(other) {
            return false;
        }
        let left = blanks_of(self);
        let right = blanks_of(other);
        if left.len() != right.len() {
            return false;
        }
        if left.is_empty() {
            return true;
        }
        let lc = colours(self, &left);
        let rc = colours(other, &right);
        let mut lhist: BTreeMap<u64, usize> = BTreeMap::new();
        let mut rhist: BTreeMap<u64, usize> = BTreeMap::new();
        for c in lc.values() {
            *lhist.entry(*c).or_default() += 1;
        }
        for c in rc.values() {
            *rhist.entry(*c).or_default() += 1;
        }
        if lhist != rhist {
            return false;
        }
        let mut order = left.clone();
        order.sort_by_key(|b| (lhist[&lc[b]], lc[b]));
        let blank_triples: Vec<&Triple> = self.iter().filter(|t| t.has_blank()).collect();
        let mut mapping = HashMap::new();
        let mut used = HashSet::new();
        search(
            &order,
            0,
            &lc,
            &rc,
            &right,
            &mut mapping,
            &mut used,
            &blank_triples,
            other,
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    order: &[BlankNode],
    i: usize,
    lc: &HashMap<BlankNode, u64>,
    rc: &HashMap<BlankNode, u64>,
    right: &[BlankNode],
    mapping: &mut HashMap<BlankNode, BlankNode>,
    used: &mut HashSet<BlankNode>,
    triples: &[&Triple],
    other: &Graph,
) -> bool {
    if i == order.len() {
        return triples.iter().all(|t| {
            let map = |term: &Term| match term {
                Term::Blank(b) => Term::Blank(mapping[b].clone()),
                other => other.clone(),
            };
            other.has(&map(t.subject()), t.predicate(), &map(t.object()))
        });
    }
    let b = &order[i];
    for cand in right {
        if used.contains(cand) || rc[cand] != lc[b] {
            continue;
        }
        mapping.insert(b.clone(), cand.clone());
        used.insert(cand.clone());
        // prune: every triple whose blank nodes are all mapped must exist
        let consistent = triples.iter().all(|t| {
            let map = |term: &Term| match term {
                Term::Blank(x) => mapping.get(x).map(|y| Term::Blank(y.clone())),
                other => Some(other.clone()),
            };
            match (map(t.subject()), map(t.object())) {
                (Some(s), Some(o)) => other.has(&s, t.predicate(), &o),
                _ => true,
            }
        });
        if consistent && search(order, i + 1, lc, rc, right, mapping, used, triples, other) {
            return true;
        }
        mapping.remove(b);
        used.remove(cand);
    }
    false
}
