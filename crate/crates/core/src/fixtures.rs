//! Bundled Turtle datasets: the two worked use cases and a few broken
//! variants, each with the validation outcome it is expected to produce.

use thiserror::Error;

use crate::rdf::{parse_turtle, Graph, ParseError};
use crate::validator::FindingCode;

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    /// Path relative to the repository root.
    pub path: &'static str,
    pub description: &'static str,
    pub expected_conforms: bool,
    /// Exactly the finding codes validation reports, sorted.
    pub expected_codes: &'static [FindingCode],
    pub source: &'static str,
}

macro_rules! fixture {
    ($name:literal, $desc:literal, $conforms:expr, $codes:expr) => {
        Fixture {
            name: $name,
            path: concat!("fixtures/", $name, ".ttl"),
            description: $desc,
            expected_conforms: $conforms,
            expected_codes: $codes,
            source: include_str!(concat!("../../../fixtures/", $name, ".ttl")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!(
        "wop",
        "Workshop on Ontology Design and Patterns series with three editions",
        true,
        &[]
    ),
    fixture!(
        "wop-described",
        "WOP series plus the descriptions its members and the series satisfy",
        true,
        &[]
    ),
    fixture!(
        "arctic-tern",
        "Arctic tern migration with north-south and south-north sub-series",
        true,
        &[]
    ),
    fixture!(
        "cross-series-bad",
        "next-situation link between members of two unrelated series",
        false,
        &[FindingCode::CrossSeries]
    ),
    fixture!("zero-members", "series with no members", true, &[]),
    fixture!(
        "sequence-bad",
        "numbering gap and a last situation with a successor",
        false,
        &[FindingCode::SeqOrder, FindingCode::SeqLast]
    ),
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error("fixture {name}: {source}")]
    Parse { name: String, source: ParseError },
}

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

pub fn load_fixture(name: &str) -> Result<Graph, FixtureError> {
    let f = fixture(name).ok_or_else(|| FixtureError::Unknown(name.to_string()))?;
    parse_turtle(f.source).map_err(|source| FixtureError::Parse {
        name: name.to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for f in FIXTURES {
            let g = load_fixture(f.name).unwrap();
            assert!(!g.is_empty(), "{}", f.name);
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            load_fixture("palio").unwrap_err(),
            FixtureError::Unknown("palio".into())
        );
    }

    #[test]
    fn expected_codes_are_sorted() {
        for f in FIXTURES {
            let mut sorted = f.expected_codes.to_vec();
            sorted.sort();
            assert_eq!(sorted, f.expected_codes, "{}", f.name);
        }
    }
}
