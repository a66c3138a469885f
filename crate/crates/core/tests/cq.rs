mod common;

use std::collections::BTreeSet;

use common::{ex, rng};
use recurrence_core::cq::*;
use recurrence_core::fixtures::{load_fixture, FIXTURES};
use recurrence_core::rdf::{parse_turtle, Graph, Term};
use recurrence_core::reasoner::closure;
use recurrence_core::temporal::{Instant, TemporalError, TimePeriod, TimeUnit};

fn wop() -> (Graph, SeriesView) {
    let g = closure(&load_fixture("wop").unwrap());
    let view = SeriesView::build(&g, &ex("wop-series"), &ViewConfig::default()).unwrap();
    (g, view)
}

fn set(names: &[&str]) -> BTreeSet<Term> {
    names.iter().map(|n| ex(n)).collect()
}

fn day(s: &str) -> Instant {
    s.parse().unwrap()
}

#[test]
fn cq1_wop_members_in_order() {
    let (_, v) = wop();
    assert_eq!(cq1_members(&v), [ex("wop2009"), ex("wop2010"), ex("wop2012")]);
}

#[test]
fn cq1_arctic_tern_and_empty_series() {
    let g = closure(&load_fixture("arctic-tern").unwrap());
    let v = SeriesView::build(&g, &ex("arctic-tern-migration"), &ViewConfig::default()).unwrap();
    assert!(cq1_members(&v).contains(&ex("arctic-tern-migration-2019")));
    let g = closure(&load_fixture("zero-members").unwrap());
    let v = SeriesView::build(&g, &ex("planned-series"), &ViewConfig::default()).unwrap();
    assert!(cq1_members(&v).is_empty());
}

#[test]
fn cq2_estimated_and_measured() {
    let (_, v) = wop();
    let a = cq2_time_period(&v);
    assert_eq!(a.estimated, Some(TimePeriod::new(1, TimeUnit::Year)));
    let m = a.measured.unwrap();
    assert_eq!(m.measured_days, 557);
    assert_eq!(m.measured, TimePeriod::new(18, TimeUnit::Month));
    assert_eq!(m.within_band, Some(false));
}

#[test]
fn cq3_next_edition() {
    let (_, v) = wop();
    assert_eq!(cq3_next_scheduled(&v, day("2012-11-13")).unwrap(), day("2013-11-12"));
    assert_eq!(cq3_next_scheduled(&v, day("2026-10-15")).unwrap(), day("2026-11-12"));
    assert_eq!(cq3_next_scheduled(&v, day("2000-01-01")).unwrap(), day("2013-11-12"));
}

#[test]
fn cq3_without_anchors() {
    let g = closure(&load_fixture("arctic-tern").unwrap());
    let v = SeriesView::build(&g, &ex("arctic-tern-migration"), &ViewConfig::default()).unwrap();
    assert_eq!(
        cq3_next_scheduled(&v, day("2020-01-01")),
        Err(CqError::Temporal(TemporalError::NoAnchor))
    );
}

#[test]
fn cq4_wop_factors() {
    let (_, v) = wop();
    let expected = set(&[
        "pattern-based-design",
        "wop-organisation",
        "co-location-iswc",
        "wop-description",
        "current-name",
    ]);
    assert_eq!(cq4_unifying_factors(&v), &expected);
}

#[test]
fn cq5_wop_validity() {
    let (_, v) = wop();
    match cq5_factor_validity(&v, &ex("current-name")).unwrap() {
        FactorValidity::Intervals(iv) => {
            assert_eq!(iv.len(), 1);
            assert_eq!(iv[0].interval, ex("2017-present"));
            assert_eq!(iv[0].start, Some(day("2017-01-01")));
            assert_eq!(iv[0].end, None);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        cq5_factor_validity(&v, &ex("co-location-iswc")).unwrap(),
        FactorValidity::Unbounded
    );
    assert_eq!(
        cq5_factor_validity(&v, &ex("nothing")),
        Err(CqError::UnknownFactor(ex("nothing")))
    );
}

#[test]
fn cq6_wop_description() {
    let (_, v) = wop();
    assert_eq!(cq6_unifying_description(&v), &set(&["wop-description"]));
}

#[test]
fn cq7_cq8_wop() {
    let (g, _) = wop();
    assert_eq!(cq7_next(&g, &ex("wop2010"), true), set(&["wop2012"]));
    assert_eq!(cq7_next(&g, &ex("wop2009"), false), set(&["wop2010", "wop2012"]));
    assert!(cq7_next(&g, &ex("wop2012"), false).is_empty());
    assert_eq!(cq8_previous(&g, &ex("wop2012"), true), set(&["wop2010"]));
    assert!(cq8_previous(&g, &ex("wop2009"), true).is_empty());
}

#[test]
fn cq8_answers_from_inferred_inverse() {
    let g = closure(
        &parse_turtle(
            "@prefix rss: <http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#> .\n\
             <http://example.org/a> rss:hasNextSituation <http://example.org/b> .",
        )
        .unwrap(),
    );
    assert_eq!(cq8_previous(&g, &ex("b"), false), set(&["a"]));
}

#[test]
fn not_a_series() {
    let (g, _) = wop();
    assert!(matches!(
        SeriesView::build(&g, &ex("wop2009"), &ViewConfig::default()),
        Err(CqError::NotASeries(_))
    ));
}

#[test]
fn next_previous_duality_on_random_graphs() {
    let mut graphs: Vec<Graph> = FIXTURES.iter().map(|f| load_fixture(f.name).unwrap()).collect();
    let mut r = rng(21);
    graphs.extend((0..100).map(|_| common::random_pattern_graph(&mut r, 40)));
    for g in graphs {
        let g = closure(&g);
        let terms: Vec<Term> = g.terms().into_iter().cloned().collect();
        for a in &terms {
            for immediate in [true, false] {
                for b in cq7_next(&g, a, immediate) {
                    assert!(cq8_previous(&g, &b, immediate).contains(a));
                }
            }
        }
    }
}

#[test]
fn envelope_json_shape() {
    let (_, v) = wop();
    let env = Envelope {
        cq: 1,
        series: Some(v.series.clone()),
        situation: None,
        answer: cq1_members(&v),
    };
    let json = serde_json::to_string(&env).unwrap();
    assert_eq!(
        json,
        r#"{"cq":1,"series":"http://example.org/wop-series","answer":["http://example.org/wop2009","http://example.org/wop2010","http://example.org/wop2012"]}"#
    );
}
