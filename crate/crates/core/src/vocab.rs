//! Every IRI the recurrent situation series pattern defines or reuses.
//!
//! Other modules refer to terms only through these constants.

use thiserror::Error;

use crate::rdf::Term;

pub const RSS_NS: &str = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#";
pub const DUL_NS: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
pub const D0_NS: &str = "http://www.ontologydesignpatterns.org/ont/d0.owl#";
pub const TP_NS: &str = "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

/// Registered prefixes, in the order they are declared in generated output.
pub const PREFIXES: &[(&str, &str)] = &[
    ("rss", RSS_NS),
    ("dul", DUL_NS),
    ("d0", D0_NS),
    ("tp", TP_NS),
    ("rdf", RDF_NS),
    ("rdfs", RDFS_NS),
    ("owl", OWL_NS),
    ("xsd", XSD_NS),
];

macro_rules! vocab {
    ($( $(#[$meta:meta])* $name:ident = $ns:literal, $local:literal; )*) => {
        $(
            $(#[$meta])*
            pub const $name: &str = concat!($ns, $local);
        )*

        /// Every constant of this module as `(name, IRI)`.
        pub const ALL: &[(&str, &str)] = &[$((stringify!($name), $name)),*];
    };
}

vocab! {
    // classes
    RSS_RECURRENT_SITUATION_SERIES = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "RecurrentSituationSeries";
    RSS_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "Situation";
    RSS_UNIFYING_FACTOR = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "UnifyingFactor";
    RSS_UNIFYING_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "UnifyingSituation";
    RSS_TIME_PERIOD = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "TimePeriod";
    DUL_COLLECTION = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "Collection";
    DUL_CONCEPT = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "Concept";
    DUL_DESCRIPTION = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "Description";
    DUL_TIME_INTERVAL = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "TimeInterval";
    D0_EVENTUALITY = "http://www.ontologydesignpatterns.org/ont/d0.owl#", "Eventuality";
    TP_TIME_PERIOD = "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#", "TimePeriod";
    TP_TIME_PERIOD_MEASUREMENT_UNIT = "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#", "TimePeriodMeasurementUnit";

    // object properties
    RSS_HAS_MEMBER_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasMemberSituation";
    RSS_IS_SITUATION_MEMBER_OF = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "isSituationMemberOf";
    RSS_HAS_UNIFYING_FACTOR = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasUnifyingFactor";
    RSS_INVOLVES_UNIFYING_FACTOR = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "involvesUnifyingFactor";
    RSS_IS_VALID_IN = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "isValidIn";
    RSS_HAS_NEXT_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasNextSituation";
    RSS_HAS_PREVIOUS_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasPreviousSituation";
    RSS_HAS_IMMEDIATE_NEXT_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasImmediateNextSituation";
    RSS_HAS_IMMEDIATE_PREVIOUS_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasImmediatePreviousSituation";
    RSS_HAS_TIME_PERIOD = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasTimePeriod";
    RSS_HAS_ESTIMATED_TIME_PERIOD = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasEstimatedTimePeriod";
    RSS_HAS_MEASURED_TIME_PERIOD = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasMeasuredTimePeriod";
    RSS_HAS_TIME_PERIOD_BEFORE_NEXT_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasTimePeriodBeforeNextSituation";
    RSS_IS_LOCALLY_INCONSISTENT_WITH = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "isLocallyInconsistentWith";
    /// Links a series to the unifying situations that scope its factors.
    RSS_HAS_UNIFYING_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasUnifyingSituation";
    TP_HAS_TIME_PERIOD_MEASUREMENT_UNIT = "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#", "hasTimePeriodMeasurementUnit";
    DUL_DEFINES = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "defines";
    DUL_IS_SATISFIED_BY = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "isSatisfiedBy";
    DUL_SATISFIES = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "satisfies";
    DUL_CLASSIFIES = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "classifies";
    DUL_HAS_PART = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#", "hasPart";
    OWL_SAME_AS = "http://www.w3.org/2002/07/owl#", "sameAs";
    RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#", "type";
    RDFS_SUB_CLASS_OF = "http://www.w3.org/2000/01/rdf-schema#", "subClassOf";

    // datatype properties
    RSS_IS_THE_LAST_SITUATION = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "isTheLastSituation";
    RSS_SITUATION_NUMBER = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "situationNumber";
    TP_TIME_PERIOD_VALUE = "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#", "timePeriodValue";
    /// Default temporal anchor of a member situation (`xsd:date`).
    RSS_HAS_START_DATE = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasStartDate";
    /// Start date of a `dul:TimeInterval` (`xsd:date`).
    RSS_HAS_INTERVAL_START_DATE = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasIntervalStartDate";
    /// End date of a `dul:TimeInterval` (`xsd:date`); absent means open-ended.
    RSS_HAS_INTERVAL_END_DATE = "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#", "hasIntervalEndDate";

    // datatypes
    XSD_STRING = "http://www.w3.org/2001/XMLSchema#", "string";
    XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#", "integer";
    XSD_DECIMAL = "http://www.w3.org/2001/XMLSchema#", "decimal";
    XSD_DOUBLE = "http://www.w3.org/2001/XMLSchema#", "double";
    XSD_BOOLEAN = "http://www.w3.org/2001/XMLSchema#", "boolean";
    XSD_DATE = "http://www.w3.org/2001/XMLSchema#", "date";
    RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#", "langString";
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("unknown prefix in '{0}'")]
    UnknownPrefix(String),
    #[error("'{0}' is not a prefixed name")]
    NotPrefixed(String),
}

/// Expands `prefix:local` against the registered namespaces.
pub fn resolve_curie(prefixed: &str) -> Result<Term, VocabError> {
    let (prefix, local) = prefixed
        .split_once(':')
        .ok_or_else(|| VocabError::NotPrefixed(prefixed.to_string()))?;
    let ns = namespace(prefix).ok_or_else(|| VocabError::UnknownPrefix(prefixed.to_string()))?;
    Ok(Term::iri(&format!("{ns}{local}")))
}

pub fn namespace(prefix: &str) -> Option<&'static str> {
    PREFIXES.iter().find(|(p, _)| *p == prefix).map(|(_, ns)| *ns)
}

/// Shorthand for an IRI term built from one of the constants above.
pub fn term(iri: &'static str) -> Term {
    Term::iri(iri)
}
