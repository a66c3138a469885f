use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::CqError;
use crate::rdf::{Graph, Term};
use crate::temporal::{measure_period, BandMode, Instant, PeriodAssessment, TemporalError, TimePeriod, TimeUnit};
use crate::vocab::{self, term};

/// Where temporal information is read from.
#[derive(Debug, Clone)]
pub struct ViewConfig {
    /// Member → `xsd:date` literal.
    pub anchor_predicate: Term,
    /// Optional member → `dul:TimeInterval` link, used when a member has no
    /// direct anchor; the interval's start date becomes the anchor.
    pub anchor_interval_predicate: Option<Term>,
    pub interval_start_predicate: Term,
    pub interval_end_predicate: Term,
    pub band_mode: BandMode,
}

impl Default for ViewConfig {
    fn default() -> Self {
        ViewConfig {
            anchor_predicate: term(vocab::RSS_HAS_START_DATE),
            anchor_interval_predicate: None,
            interval_start_predicate: term(vocab::RSS_HAS_INTERVAL_START_DATE),
            interval_end_predicate: term(vocab::RSS_HAS_INTERVAL_END_DATE),
            band_mode: BandMode::Approximate,
        }
    }
}

/// A validity interval; a missing end means the interval is still open.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ValidityInterval {
    pub interval: Term,
    pub start: Option<Instant>,
    pub end: Option<Instant>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnifyingSituationView {
    pub situation: Term,
    pub factors: Vec<Term>,
    pub intervals: Vec<ValidityInterval>,
}

/// Everything the competency questions and sequence checks need to know
/// about one series, read out of a (usually materialized) graph.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesView {
    pub series: Term,
    /// Ordered by immediate-next links, then `situationNumber`, then anchor
    /// date, then term order.
    pub members: Vec<Term>,
    /// Objects of `hasUnifyingFactor`.
    pub direct_factors: BTreeSet<Term>,
    /// Direct factors plus those involved in the series' unifying situations.
    pub unifying_factors: BTreeSet<Term>,
    pub unifying_situations: Vec<UnifyingSituationView>,
    /// Unifying factors typed `dul:Description`.
    pub descriptions: BTreeSet<Term>,
    pub estimated_term: Option<Term>,
    pub estimated: Option<TimePeriod>,
    pub per_member_periods: Vec<(Term, TimePeriod)>,
    pub anchors: BTreeMap<Term, Instant>,
    pub numbers: BTreeMap<Term, i64>,
    /// Members with `isTheLastSituation true`.
    pub flagged_last: BTreeSet<Term>,
    /// `(a, b)` for members with `a hasImmediateNextSituation b` or
    /// `b hasImmediatePreviousSituation a`.
    pub immediate_links: BTreeSet<(Term, Term)>,
    /// Same, for `hasNextSituation` / `hasPreviousSituation`.
    pub next_links: BTreeSet<(Term, Term)>,
    #[serde(skip)]
    pub band_mode: BandMode,
}

fn literal_date(t: &Term) -> Option<Instant> {
    t.as_literal().and_then(|l| l.lexical().trim().parse().ok())
}

fn literal_integer(t: &Term) -> Option<i64> {
    t.as_literal()
        .and_then(|l| l.lexical().trim().trim_start_matches('+').parse().ok())
}

fn literal_bool(t: &Term) -> Option<bool> {
    match t.as_literal()?.lexical().trim() {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

/// Reads a `tp:TimePeriod`-style node: an integer value and a unit IRI.
pub fn read_time_period(graph: &Graph, node: &Term) -> Option<TimePeriod> {
    let value = graph
        .objects(node, &term(vocab::TP_TIME_PERIOD_VALUE))
        .iter()
        .find_map(literal_integer)?;
    let unit = graph
        .objects(node, &term(vocab::TP_HAS_TIME_PERIOD_MEASUREMENT_UNIT))
        .iter()
        .find_map(|u| u.as_iri().and_then(TimeUnit::from_iri))?;
    Some(TimePeriod::new(u32::try_from(value).ok()?, unit))
}

fn interval_of(graph: &Graph, interval: &Term, config: &ViewConfig) -> ValidityInterval {
    let date = |p: &Term| graph.objects(interval, p).iter().filter_map(literal_date).min();
    ValidityInterval {
        interval: interval.clone(),
        start: date(&config.interval_start_predicate),
        end: date(&config.interval_end_predicate),
    }
}

/// Kahn's algorithm over the immediate links, always taking the ready
/// member with the smallest key. Members caught in cycles are appended in
/// key order.
fn order_members<K: Ord + Clone>(
    members: &BTreeSet<Term>,
    links: &BTreeSet<(Term, Term)>,
    key: impl Fn(&Term) -> K,
) -> Vec<Term> {
    let mut indegree: HashMap<&Term, usize> = members.iter().map(|m| (m, 0)).collect();
    let mut succ: HashMap<&Term, Vec<&Term>> = HashMap::new();
    for (a, b) in links {
        if a == b {
            continue;
        }
        *indegree.get_mut(b).expect("links are between members") += 1;
        succ.entry(a).or_default().push(b);
    }
    let mut ready: BTreeSet<(K, &Term)> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(m, _)| (key(m), *m))
        .collect();
    let mut out = Vec::with_capacity(members.len());
    let mut placed = BTreeSet::new();
    while let Some(first) = ready.iter().next().cloned() {
        ready.remove(&first);
        let m = first.1;
        out.push(m.clone());
        placed.insert(m);
        for n in succ.get(m).into_iter().flatten() {
            let d = indegree.get_mut(n).expect("member");
            *d -= 1;
            if *d == 0 {
                ready.insert((key(n), n));
            }
        }
    }
    if out.len() < members.len() {
        let mut rest: Vec<&Term> = members.iter().filter(|m| !placed.contains(m)).collect();
        rest.sort_by_key(|m| key(m));
        out.extend(rest.into_iter().cloned());
    }
    out
}

impl SeriesView {
    pub fn build(graph: &Graph, series: &Term, config: &ViewConfig) -> Result<SeriesView, CqError> {
        let rdf_type = term(vocab::RDF_TYPE);
        if !graph.has(series, &rdf_type, &term(vocab::RSS_RECURRENT_SITUATION_SERIES)) {
            return Err(CqError::NotASeries(series.clone()));
        }

        let mut member_set: BTreeSet<Term> = graph
            .objects(series, &term(vocab::RSS_HAS_MEMBER_SITUATION))
            .into_iter()
            .collect();
        member_set.extend(graph.subjects(&term(vocab::RSS_IS_SITUATION_MEMBER_OF), series));

        let links = |forward: &'static str, backward: &'static str| -> BTreeSet<(Term, Term)> {
            let mut out = BTreeSet::new();
            for a in &member_set {
                for b in graph.objects(a, &term(forward)) {
                    if member_set.contains(&b) {
                        out.insert((a.clone(), b));
                    }
                }
                for b in graph.subjects(&term(backward), a) {
                    if member_set.contains(&b) {
                        out.insert((a.clone(), b));
                    }
                }
            }
            out
        };
        let immediate_links = links(
            vocab::RSS_HAS_IMMEDIATE_NEXT_SITUATION,
            vocab::RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION,
        );
        let next_links = links(vocab::RSS_HAS_NEXT_SITUATION, vocab::RSS_HAS_PREVIOUS_SITUATION);

        let mut anchors = BTreeMap::new();
        let mut numbers = BTreeMap::new();
        let mut flagged_last = BTreeSet::new();
        let mut per_member_periods = Vec::new();
        for m in &member_set {
            let mut anchor = graph
                .objects(m, &config.anchor_predicate)
                .iter()
                .filter_map(literal_date)
                .min();
            if anchor.is_none() {
                if let Some(link) = &config.anchor_interval_predicate {
                    anchor = graph
                        .objects(m, link)
                        .iter()
                        .filter_map(|i| interval_of(graph, i, config).start)
                        .min();
                }
            }
            if let Some(a) = anchor {
                anchors.insert(m.clone(), a);
            }
            if let Some(n) = graph
                .objects(m, &term(vocab::RSS_SITUATION_NUMBER))
                .iter()
                .find_map(literal_integer)
            {
                numbers.insert(m.clone(), n);
            }
            if graph
                .objects(m, &term(vocab::RSS_IS_THE_LAST_SITUATION))
                .iter()
                .any(|t| literal_bool(t) == Some(true))
            {
                flagged_last.insert(m.clone());
            }
            for p in graph.objects(m, &term(vocab::RSS_HAS_TIME_PERIOD_BEFORE_NEXT_SITUATION)) {
                if let Some(tp) = read_time_period(graph, &p) {
                    per_member_periods.push((m.clone(), tp));
                }
            }
        }

        let members = order_members(&member_set, &immediate_links, |m| {
            let n = numbers.get(m).copied();
            let a = anchors.get(m).copied();
            (n.is_none(), n, a.is_none(), a, m.clone())
        });

        let direct_factors: BTreeSet<Term> = graph
            .objects(series, &term(vocab::RSS_HAS_UNIFYING_FACTOR))
            .into_iter()
            .collect();

        let involves = term(vocab::RSS_INVOLVES_UNIFYING_FACTOR);
        let mut usit_terms: BTreeSet<Term> = graph
            .objects(series, &term(vocab::RSS_HAS_UNIFYING_SITUATION))
            .into_iter()
            .collect();
        for f in &direct_factors {
            for u in graph.subjects(&involves, f) {
                if graph.has(&u, &rdf_type, &term(vocab::RSS_UNIFYING_SITUATION)) {
                    usit_terms.insert(u);
                }
            }
        }
        let unifying_situations: Vec<UnifyingSituationView> = usit_terms
            .into_iter()
            .map(|u| UnifyingSituationView {
                factors: graph.objects(&u, &involves),
                intervals: graph
                    .objects(&u, &term(vocab::RSS_IS_VALID_IN))
                    .iter()
                    .map(|i| interval_of(graph, i, config))
                    .collect(),
                situation: u,
            })
            .collect();

        let mut unifying_factors = direct_factors.clone();
        for u in &unifying_situations {
            unifying_factors.extend(u.factors.iter().cloned());
        }
        let descriptions = unifying_factors
            .iter()
            .filter(|f| graph.has(f, &rdf_type, &term(vocab::DUL_DESCRIPTION)))
            .cloned()
            .collect();

        let mut candidates = graph.objects(series, &term(vocab::RSS_HAS_ESTIMATED_TIME_PERIOD));
        if candidates.is_empty() {
            let measured = graph.objects(series, &term(vocab::RSS_HAS_MEASURED_TIME_PERIOD));
            candidates = graph
                .objects(series, &term(vocab::RSS_HAS_TIME_PERIOD))
                .into_iter()
                .filter(|t| !measured.contains(t))
                .collect();
        }
        let (estimated_term, estimated) = candidates
            .iter()
            .find_map(|t| read_time_period(graph, t).map(|p| (Some(t.clone()), Some(p))))
            .unwrap_or_else(|| (candidates.first().cloned(), None));

        Ok(SeriesView {
            series: series.clone(),
            members,
            direct_factors,
            unifying_factors,
            unifying_situations,
            descriptions,
            estimated_term,
            estimated,
            per_member_periods,
            anchors,
            numbers,
            flagged_last,
            immediate_links,
            next_links,
            band_mode: config.band_mode,
        })
    }

    /// The single member flagged as last, if exactly one is.
    pub fn last_flagged(&self) -> Option<&Term> {
        if self.flagged_last.len() == 1 {
            self.flagged_last.iter().next()
        } else {
            None
        }
    }

    /// Measured period over the anchored members, compared with the
    /// estimated period's band.
    pub fn measured_period(&self) -> Result<PeriodAssessment, TemporalError> {
        let anchors: Vec<Instant> = self
            .members
            .iter()
            .filter_map(|m| self.anchors.get(m).copied())
            .collect();
        measure_period(&anchors, self.estimated, self.band_mode)
    }
}

/// Every term typed `rss:RecurrentSituationSeries`, sorted.
pub fn series_in(graph: &Graph) -> Vec<Term> {
    graph.subjects(&term(vocab::RDF_TYPE), &term(vocab::RSS_RECURRENT_SITUATION_SERIES))
}
