//! Answers to the pattern's competency questions.
//!
//! | CQ  | Question                                                       | Function                |
//! |-----|----------------------------------------------------------------|-------------------------|
//! | CQ1 | Which are the situations of a series?                          | [`cq1_members`]         |
//! | CQ2 | Which time period elapses between two situations?              | [`cq2_time_period`]     |
//! | CQ3 | When is the next situation scheduled?                          | [`cq3_next_scheduled`]  |
//! | CQ4 | What are the unifying criteria?                                | [`cq4_unifying_factors`]|
//! | CQ5 | Which is the temporal validity of a unifying factor?           | [`cq5_factor_validity`] |
//! | CQ6 | Which description do all situations satisfy?                   | [`cq6_unifying_description`] |
//! | CQ7 | Which is the (immediate) next situation?                       | [`cq7_next`]            |
//! | CQ8 | Which is the (immediate) previous situation?                   | [`cq8_previous`]        |

mod view;

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rdf::{Graph, Term};
use crate::temporal::{next_after, Instant, PeriodAssessment, TemporalError, TimePeriod};
use crate::vocab::{self, term};

pub use view::{read_time_period, series_in, SeriesView, UnifyingSituationView, ValidityInterval, ViewConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CqError {
    #[error("{0} is not typed as a recurrent situation series")]
    NotASeries(Term),
    #[error("{0} is not a unifying factor of the series")]
    UnknownFactor(Term),
    #[error(transparent)]
    Temporal(#[from] TemporalError),
}

pub fn cq1_members(view: &SeriesView) -> &[Term] {
    &view.members
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodAnswer {
    pub estimated: Option<TimePeriod>,
    pub measured: Option<PeriodAssessment>,
}

/// Estimated period plus, when at least two members are anchored, the
/// measured one.
pub fn cq2_time_period(view: &SeriesView) -> PeriodAnswer {
    PeriodAnswer {
        estimated: view.estimated,
        measured: view.measured_period().ok(),
    }
}

/// The last anchored member (the one flagged last when it carries an
/// anchor, otherwise the latest anchor) plus the estimated period, advanced
/// until it is not before `today`.
pub fn cq3_next_scheduled(view: &SeriesView, today: Instant) -> Result<Instant, CqError> {
    let last = view
        .last_flagged()
        .and_then(|m| view.anchors.get(m))
        .or_else(|| view.anchors.values().max())
        .copied()
        .ok_or(TemporalError::NoAnchor)?;
    let period = view.estimated.ok_or(TemporalError::NoEstimatedPeriod)?;
    Ok(next_after(last, period, today)?)
}

pub fn cq4_unifying_factors(view: &SeriesView) -> &BTreeSet<Term> {
    &view.unifying_factors
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorValidity {
    /// Attached directly to the series with no temporal scope.
    Unbounded,
    Intervals(Vec<ValidityInterval>),
}

impl Serialize for FactorValidity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FactorValidity::Unbounded => serializer.serialize_str("unbounded"),
            FactorValidity::Intervals(v) => v.serialize(serializer),
        }
    }
}

/// Intervals of the unifying situations involving `factor`; a factor that
/// only hangs directly off the series is valid without bound.
pub fn cq5_factor_validity(view: &SeriesView, factor: &Term) -> Result<FactorValidity, CqError> {
    if !view.unifying_factors.contains(factor) {
        return Err(CqError::UnknownFactor(factor.clone()));
    }
    let mut intervals: Vec<ValidityInterval> = view
        .unifying_situations
        .iter()
        .filter(|u| u.factors.contains(factor))
        .flat_map(|u| u.intervals.iter().cloned())
        .collect();
    intervals.sort();
    intervals.dedup();
    let scoped = view.unifying_situations.iter().any(|u| u.factors.contains(factor));
    if scoped {
        Ok(FactorValidity::Intervals(intervals))
    } else {
        Ok(FactorValidity::Unbounded)
    }
}

pub fn cq6_unifying_description(view: &SeriesView) -> &BTreeSet<Term> {
    &view.descriptions
}

fn linked(graph: &Graph, situation: &Term, forward: &'static str, backward: &'static str) -> BTreeSet<Term> {
    let mut out: BTreeSet<Term> = graph.objects(situation, &term(forward)).into_iter().collect();
    out.extend(graph.subjects(&term(backward), situation));
    out
}

/// Situations after `situation`. Inverse-direction assertions count too, so
/// the answer does not depend on which side of a link was stated.
pub fn cq7_next(graph: &Graph, situation: &Term, immediate_only: bool) -> BTreeSet<Term> {
    if immediate_only {
        linked(
            graph,
            situation,
            vocab::RSS_HAS_IMMEDIATE_NEXT_SITUATION,
            vocab::RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION,
        )
    } else {
        linked(
            graph,
            situation,
            vocab::RSS_HAS_NEXT_SITUATION,
            vocab::RSS_HAS_PREVIOUS_SITUATION,
        )
    }
}

pub fn cq8_previous(graph: &Graph, situation: &Term, immediate_only: bool) -> BTreeSet<Term> {
    if immediate_only {
        linked(
            graph,
            situation,
            vocab::RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION,
            vocab::RSS_HAS_IMMEDIATE_NEXT_SITUATION,
        )
    } else {
        linked(
            graph,
            situation,
            vocab::RSS_HAS_PREVIOUS_SITUATION,
            vocab::RSS_HAS_NEXT_SITUATION,
        )
    }
}

/// JSON answer envelope; fields serialize in declaration order.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<T: Serialize> {
    pub cq: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub situation: Option<Term>,
    pub answer: T,
}
