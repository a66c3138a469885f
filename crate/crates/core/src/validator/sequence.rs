use std::collections::{BTreeMap, BTreeSet};

use super::{Finding, FindingCode, NumberingMode};
use crate::cq::SeriesView;
use crate::rdf::Term;

/// Sequence integrity of one series: numbering along immediate links, the
/// last-situation flag, cycles, and branching immediate successors.
pub fn check_sequence(view: &SeriesView, numbering: NumberingMode) -> Vec<Finding> {
    let mut out = Vec::new();

    for (a, b) in &view.immediate_links {
        if a == b {
            continue;
        }
        if let (Some(&na), Some(&nb)) = (view.numbers.get(a), view.numbers.get(b)) {
            let ok = match numbering {
                NumberingMode::Dense => na.checked_add(1) == Some(nb),
                NumberingMode::StrictlyIncreasing => nb > na,
            };
            if !ok {
                out.push(Finding::new(
                    FindingCode::SeqOrder,
                    a.clone(),
                    vec![b.clone()],
                    format!("situation number goes from {na} to {nb} along an immediate-next link"),
                ));
            }
        }
    }

    let successors: BTreeSet<&(Term, Term)> = view.next_links.iter().chain(&view.immediate_links).collect();
    for m in &view.flagged_last {
        for (a, b) in &successors {
            if a == m && b != m {
                out.push(Finding::new(
                    FindingCode::SeqLast,
                    m.clone(),
                    vec![b.clone()],
                    "situation flagged as last has a next situation in the same series".to_string(),
                ));
            }
        }
    }
    if view.flagged_last.len() > 1 {
        out.push(Finding::new(
            FindingCode::SeqLast,
            view.series.clone(),
            view.flagged_last.iter().cloned().collect(),
            format!("{} situations are flagged as last", view.flagged_last.len()),
        ));
    }

    for cycle in cycles(&successors) {
        let (first, rest) = cycle.split_first().expect("cycles are non-empty");
        out.push(Finding::new(
            FindingCode::SeqCycle,
            first.clone(),
            rest.to_vec(),
            format!("next-situation links form a cycle over {} situation(s)", cycle.len()),
        ));
    }

    let mut immediate_next: BTreeMap<&Term, Vec<&Term>> = BTreeMap::new();
    for (a, b) in &view.immediate_links {
        immediate_next.entry(a).or_default().push(b);
    }
    for (a, succ) in immediate_next {
        if succ.len() > 1 {
            out.push(Finding::new(
                FindingCode::ImmediateBranch,
                a.clone(),
                succ.into_iter().cloned().collect(),
                "situation has more than one immediate next situation".to_string(),
            ));
        }
    }
    out
}

/// Strongly connected components that contain a cycle, each sorted.
fn cycles(edges: &BTreeSet<&(Term, Term)>) -> Vec<Vec<Term>> {
    let mut adj: BTreeMap<&Term, Vec<&Term>> = BTreeMap::new();
    for (a, b) in edges.iter().copied().map(|e| (&e.0, &e.1)) {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default();
    }
    let reach = |start: &Term| -> BTreeSet<&Term> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<&Term> = adj[start].clone();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(adj[n].iter().copied());
            }
        }
        seen
    };
    let reachable: BTreeMap<&Term, BTreeSet<&Term>> = adj.keys().map(|n| (*n, reach(n))).collect();
    let mut assigned = BTreeSet::new();
    let mut out = Vec::new();
    for n in adj.keys() {
        if assigned.contains(*n) || !reachable[n].contains(n) {
            continue;
        }
        let component: Vec<Term> = reachable[n]
            .iter()
            .filter(|m| reachable[*m].contains(n))
            .map(|m| (*m).clone())
            .collect();
        for m in &component {
            assigned.insert(m.clone());
        }
        out.push(component);
    }
    out
}
