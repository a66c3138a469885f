//! Closed-world validation of recurrent situation series.
//!
//! Missing required structure is reported as a finding rather than left
//! open. Codes and the constraint each one checks:
//!
//! | Code                   | Default   | Checks                                                      |
//! |------------------------|-----------|-------------------------------------------------------------|
//! | `RSS-SERIES-TYPE`      | violation | a series is also a `dul:Collection` and an `rss:Situation`   |
//! | `RSS-MEMBER-TYPE`      | violation | every member is an `rss:Situation`                          |
//! | `RSS-SITUATION-TYPE`   | violation | every `rss:Situation` is a `d0:Eventuality`                 |
//! | `RSS-NO-DESCRIPTION`   | violation | a series has a `dul:Description` among its unifying factors |
//! | `RSS-USIT-NO-FACTOR`   | violation | a unifying situation involves a unifying factor             |
//! | `RSS-USIT-NO-INTERVAL` | violation | a unifying situation is valid in a `dul:TimeInterval`       |
//! | `RSS-NO-PERIOD`        | violation | a series has a time period                                  |
//! | `RSS-CROSS-SERIES`     | violation | next/previous links stay inside one series                  |
//! | `RSS-SEQ-ORDER`        | violation | situation numbers step by one along immediate links         |
//! | `RSS-SEQ-LAST`         | violation | the last situation has no successor; at most one is last    |
//! | `RSS-SEQ-CYCLE`        | violation | next links are acyclic                                      |
//! | `RSS-IMMEDIATE-BRANCH` | violation | at most one immediate successor per situation               |
//! | `RSS-DESC-UNSATISFIED` | warning   | members satisfy the series' unifying description            |
//!
//! `RSS-SERIES-TYPE` and `RSS-SITUATION-TYPE` only fire when validating
//! without materialization, since the reasoner derives those types.

mod consistency;
mod sequence;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cq::{series_in, SeriesView, ViewConfig};
use crate::rdf::{Graph, Term};
use crate::reasoner::closure;
use crate::vocab::{self, term};

pub use consistency::{check_local_consistency, LocalConsistency};
pub use sequence::check_sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FindingCode {
    SeriesType,
    MemberType,
    SituationType,
    NoDescription,
    UsitNoFactor,
    UsitNoInterval,
    NoPeriod,
    CrossSeries,
    SeqOrder,
    SeqLast,
    SeqCycle,
    DescUnsatisfied,
    ImmediateBranch,
}

impl FindingCode {
    pub const ALL: [FindingCode; 13] = [
        FindingCode::SeriesType,
        FindingCode::MemberType,
        FindingCode::SituationType,
        FindingCode::NoDescription,
        FindingCode::UsitNoFactor,
        FindingCode::UsitNoInterval,
        FindingCode::NoPeriod,
        FindingCode::CrossSeries,
        FindingCode::SeqOrder,
        FindingCode::SeqLast,
        FindingCode::SeqCycle,
        FindingCode::DescUnsatisfied,
        FindingCode::ImmediateBranch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FindingCode::SeriesType => "RSS-SERIES-TYPE",
            FindingCode::MemberType => "RSS-MEMBER-TYPE",
            FindingCode::SituationType => "RSS-SITUATION-TYPE",
            FindingCode::NoDescription => "RSS-NO-DESCRIPTION",
            FindingCode::UsitNoFactor => "RSS-USIT-NO-FACTOR",
            FindingCode::UsitNoInterval => "RSS-USIT-NO-INTERVAL",
            FindingCode::NoPeriod => "RSS-NO-PERIOD",
            FindingCode::CrossSeries => "RSS-CROSS-SERIES",
            FindingCode::SeqOrder => "RSS-SEQ-ORDER",
            FindingCode::SeqLast => "RSS-SEQ-LAST",
            FindingCode::SeqCycle => "RSS-SEQ-CYCLE",
            FindingCode::DescUnsatisfied => "RSS-DESC-UNSATISFIED",
            FindingCode::ImmediateBranch => "RSS-IMMEDIATE-BRANCH",
        }
    }

    pub fn from_code(s: &str) -> Option<FindingCode> {
        FindingCode::ALL.into_iter().find(|c| c.as_str() == s)
    }

    pub fn default_severity(self) -> Severity {
        match self {
            FindingCode::DescUnsatisfied => Severity::Warning,
            _ => Severity::Violation,
        }
    }
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for FindingCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Violation,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    pub code: FindingCode,
    pub severity: Severity,
    pub focus: Term,
    pub others: Vec<Term>,
    pub message: String,
}

impl Finding {
    pub fn new(code: FindingCode, focus: Term, others: Vec<Term>, message: String) -> Self {
        Finding {
            code,
            severity: code.default_severity(),
            focus,
            others,
            message,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub conforms: bool,
    pub findings: Vec<Finding>,
    /// `rss:isLocallyInconsistentWith` triples from the cross-series check.
    #[serde(skip)]
    pub constructed: Graph,
}

impl ValidationReport {
    pub fn codes(&self) -> Vec<FindingCode> {
        self.findings.iter().map(|f| f.code).collect()
    }

    pub fn count(&self, code: FindingCode) -> usize {
        self.findings.iter().filter(|f| f.code == code).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberingMode {
    /// Each immediate successor is numbered exactly one higher.
    #[default]
    Dense,
    StrictlyIncreasing,
}

#[derive(Debug, Clone)]
pub struct ValidatorConfig {
    /// Run the reasoner before checking.
    pub materialize: bool,
    pub numbering: NumberingMode,
    pub severities: BTreeMap<FindingCode, Severity>,
    pub view: ViewConfig,
}

impl Default for ValidatorConfig {
    fn default() -> Self {
        ValidatorConfig {
            materialize: true,
            numbering: NumberingMode::Dense,
            severities: BTreeMap::new(),
            view: ViewConfig::default(),
        }
    }
}

pub fn validate(graph: &Graph) -> ValidationReport {
    validate_with(graph, &ValidatorConfig::default())
}

pub fn validate_with(graph: &Graph, config: &ValidatorConfig) -> ValidationReport {
    let materialized;
    let g = if config.materialize {
        materialized = closure(graph);
        &materialized
    } else {
        graph
    };
    let rdf_type = term(vocab::RDF_TYPE);
    let typed = |x: &Term, class: &'static str| g.has(x, &rdf_type, &term(class));
    let mut findings = Vec::new();

    for x in g.subjects(&rdf_type, &term(vocab::RSS_SITUATION)) {
        if !typed(&x, vocab::D0_EVENTUALITY) {
            findings.push(Finding::new(
                FindingCode::SituationType,
                x,
                vec![],
                "situation is not typed d0:Eventuality".into(),
            ));
        }
    }

    for series in series_in(g) {
        if !(typed(&series, vocab::DUL_COLLECTION) && typed(&series, vocab::RSS_SITUATION)) {
            findings.push(Finding::new(
                FindingCode::SeriesType,
                series.clone(),
                vec![],
                "series is not typed both dul:Collection and rss:Situation".into(),
            ));
        }
        let view = SeriesView::build(g, &series, &config.view).expect("series_in yields typed series");

        for m in &view.members {
            if !typed(m, vocab::RSS_SITUATION) {
                findings.push(Finding::new(
                    FindingCode::MemberType,
                    m.clone(),
                    vec![series.clone()],
                    "member of a series is not typed rss:Situation".into(),
                ));
            }
        }

        if view.descriptions.is_empty() {
            findings.push(Finding::new(
                FindingCode::NoDescription,
                series.clone(),
                vec![],
                "no unifying factor is a dul:Description".into(),
            ));
        }

        if !has_time_period(g, &series, &view) {
            findings.push(Finding::new(
                FindingCode::NoPeriod,
                series.clone(),
                vec![],
                "series has no time period".into(),
            ));
        }

        findings.extend(check_sequence(&view, config.numbering));

        for m in &view.members {
            for d in &view.descriptions {
                let satisfied =
                    g.has(m, &term(vocab::DUL_SATISFIES), d) || g.has(d, &term(vocab::DUL_IS_SATISFIED_BY), m);
                if !satisfied {
                    findings.push(Finding::new(
                        FindingCode::DescUnsatisfied,
                        m.clone(),
                        vec![series.clone(), d.clone()],
                        "member does not satisfy the series' unifying description".into(),
                    ));
                }
            }
        }
    }

    for u in g.subjects(&rdf_type, &term(vocab::RSS_UNIFYING_SITUATION)) {
        if g.objects(&u, &term(vocab::RSS_INVOLVES_UNIFYING_FACTOR)).is_empty() {
            findings.push(Finding::new(
                FindingCode::UsitNoFactor,
                u.clone(),
                vec![],
                "unifying situation involves no unifying factor".into(),
            ));
        }
        let has_interval = g
            .objects(&u, &term(vocab::RSS_IS_VALID_IN))
            .iter()
            .any(|i| typed(i, vocab::DUL_TIME_INTERVAL));
        if !has_interval {
            findings.push(Finding::new(
                FindingCode::UsitNoInterval,
                u,
                vec![],
                "unifying situation is not valid in any dul:TimeInterval".into(),
            ));
        }
    }

    let consistency = check_local_consistency(g);
    for (a, b) in &consistency.pairs {
        findings.push(Finding::new(
            FindingCode::CrossSeries,
            a.clone(),
            vec![b.clone()],
            "a next/previous link connects members of two distinct series".into(),
        ));
    }

    for f in &mut findings {
        if let Some(&s) = config.severities.get(&f.code) {
            f.severity = s;
        }
    }
    findings.sort();
    findings.dedup_by(|a, b| a.code == b.code && a.focus == b.focus && a.others == b.others);

    ValidationReport {
        conforms: findings.iter().all(|f| f.severity != Severity::Violation),
        findings,
        constructed: consistency.constructed,
    }
}

/// A period stated directly, through a sub-property, or through a member's
/// period-before-next (the property chain), so the check also holds on
/// unmaterialized input.
fn has_time_period(g: &Graph, series: &Term, view: &SeriesView) -> bool {
    [
        vocab::RSS_HAS_TIME_PERIOD,
        vocab::RSS_HAS_ESTIMATED_TIME_PERIOD,
        vocab::RSS_HAS_MEASURED_TIME_PERIOD,
    ]
    .into_iter()
    .any(|p| !g.objects(series, &term(p)).is_empty())
        || view.members.iter().any(|m| {
            !g.objects(m, &term(vocab::RSS_HAS_TIME_PERIOD_BEFORE_NEXT_SITUATION))
                .is_empty()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    const PRE: &str = "@prefix ex: <http://ex.org/> .\n\
        @prefix rss: <http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#> .\n\
        @prefix dul: <http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#> .\n";

    fn report(body: &str) -> ValidationReport {
        validate(&parse_turtle(&format!("{PRE}{body}")).unwrap())
    }

    #[test]
    fn empty_graph_conforms() {
        let r = report("");
        assert!(r.conforms);
        assert!(r.findings.is_empty());
    }

    #[test]
    fn zero_member_series_conforms() {
        let r = report(
            "ex:s a rss:RecurrentSituationSeries ; rss:hasUnifyingFactor ex:d ; rss:hasEstimatedTimePeriod ex:p .\n\
             ex:d a dul:Description .",
        );
        assert!(r.conforms, "{:?}", r.findings);
        assert!(r.findings.is_empty());
    }

    #[test]
    fn untyped_member() {
        let r = report("ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:m .");
        assert_eq!(r.count(FindingCode::MemberType), 1);
        let f = r.findings.iter().find(|f| f.code == FindingCode::MemberType).unwrap();
        assert_eq!(f.focus, Term::iri("http://ex.org/m"));
        assert!(!r.conforms);
    }

    #[test]
    fn warnings_do_not_break_conformance() {
        let r = report(
            "ex:s a rss:RecurrentSituationSeries ; rss:hasUnifyingFactor ex:d ; rss:hasEstimatedTimePeriod ex:p ;\n\
             rss:hasMemberSituation ex:m . ex:m a rss:Situation . ex:d a dul:Description .",
        );
        assert_eq!(r.codes(), vec![FindingCode::DescUnsatisfied]);
        assert_eq!(r.findings[0].severity, Severity::Warning);
        assert!(r.conforms);
    }

    #[test]
    fn severity_override() {
        let g = parse_turtle(&format!(
            "{PRE}ex:s a rss:RecurrentSituationSeries ; rss:hasUnifyingFactor ex:d . ex:d a dul:Description ."
        ))
        .unwrap();
        let mut config = ValidatorConfig::default();
        config.severities.insert(FindingCode::NoPeriod, Severity::Warning);
        let r = validate_with(&g, &config);
        assert_eq!(r.codes(), vec![FindingCode::NoPeriod]);
        assert!(r.conforms);
    }

    #[test]
    fn code_strings_round_trip() {
        for c in FindingCode::ALL {
            assert_eq!(FindingCode::from_code(c.as_str()), Some(c));
        }
    }

    #[test]
    fn json_field_names() {
        let r = report("ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:m .");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let f = &v["findings"][0];
        for key in ["code", "severity", "focus", "others", "message"] {
            assert!(f.get(key).is_some(), "{key}");
        }
        assert_eq!(v["conforms"], serde_json::Value::Bool(false));
    }
}
