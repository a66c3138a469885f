use std::collections::BTreeSet;

use crate::rdf::{Graph, Term, Triple};
use crate::reasoner::same_as_classes;
use crate::vocab::{self, term};

/// Result of the cross-series link check.
#[derive(Debug, Clone, Default)]
pub struct LocalConsistency {
    /// `(series of the earlier situation, series of the later situation)`.
    pub pairs: BTreeSet<(Term, Term)>,
    /// `(earlier, later)` situation links that produced at least one pair.
    pub witnesses: BTreeSet<(Term, Term)>,
    /// One `rss:isLocallyInconsistentWith` triple per pair.
    pub constructed: Graph,
}

/// Flags next/previous links between members of two different series that
/// are neither equal nor `owl:sameAs`-equivalent.
///
/// `s1 hasNextSituation s2` and `s2 hasPreviousSituation s1` state the same
/// ordering and yield the same pair, oriented from the earlier situation's
/// series to the later one's.
pub fn check_local_consistency(graph: &Graph) -> LocalConsistency {
    let classes = same_as_classes(graph);
    let has_member = term(vocab::RSS_HAS_MEMBER_SITUATION);
    let series_of = |sit: &Term| graph.subjects(&has_member, sit);

    let mut links: BTreeSet<(Term, Term)> = graph
        .matches(None, Some(&term(vocab::RSS_HAS_NEXT_SITUATION)), None)
        .into_iter()
        .map(|t| (t.subject().clone(), t.object().clone()))
        .collect();
    links.extend(
        graph
            .matches(None, Some(&term(vocab::RSS_HAS_PREVIOUS_SITUATION)), None)
            .into_iter()
            .map(|t| (t.object().clone(), t.subject().clone())),
    );

    let mut out = LocalConsistency::default();
    for (earlier, later) in links {
        if earlier == later {
            continue;
        }
        let mut hit = false;
        for rss1 in series_of(&earlier) {
            for rss2 in series_of(&later) {
                if rss1 != rss2 && !classes.same(&rss1, &rss2) {
                    out.pairs.insert((rss1.clone(), rss2));
                    hit = true;
                }
            }
        }
        if hit {
            out.witnesses.insert((earlier, later));
        }
    }
    let predicate = term(vocab::RSS_IS_LOCALLY_INCONSISTENT_WITH);
    for (a, b) in &out.pairs {
        if let Ok(t) = Triple::new(a.clone(), predicate.clone(), b.clone()) {
            out.constructed.insert(t);
        }
    }
    out
}
