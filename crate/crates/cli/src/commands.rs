use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::time::{SystemTime, UNIX_EPOCH};

use recurrence_core::cq::*;
use recurrence_core::rdf::{parse_turtle, serialize_turtle, Graph, Iri, Term};
use recurrence_core::reasoner::{closure, materialize};
use recurrence_core::temporal::{BandMode, Instant, TemporalError, TimePeriod, TimeUnit};
use recurrence_core::validator::{validate_with, Finding, Severity, ValidationReport, ValidatorConfig};
use recurrence_core::vocab;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Band, Command, Common, Output};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VIOLATIONS: u8 = 2;
pub const EXIT_EMPTY: u8 = 3;

#[derive(Debug)]
pub struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<CqError> for Failure {
    fn from(e: CqError) -> Self {
        Failure(e.to_string())
    }
}

impl From<TemporalError> for Failure {
    fn from(e: TemporalError) -> Self {
        Failure(e.to_string())
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(msg.into()))
}

pub fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { common } => validate(&common),
        Command::Infer { delta_only, common } => infer(&common, delta_only),
        Command::Cq {
            id,
            series,
            factor,
            situation,
            immediate,
            common,
        } => cq(
            &common,
            id,
            CqArgs {
                series,
                factor,
                situation,
                immediate,
            },
        ),
        Command::Report { common } => report(&common),
    }
}

fn load(common: &Common) -> Result<Graph, Failure> {
    let mut merged = Graph::new();
    for path in &common.inputs {
        let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        let g = parse_turtle(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        merged.extend_from(&g);
    }
    Ok(merged)
}

/// `<iri>`, a prefixed name bound in the inputs or the pattern's own
/// prefixes, or an absolute IRI.
fn resolve(arg: &str, graph: &Graph) -> Result<Term, Failure> {
    let arg = arg.trim();
    let bad = |e: &dyn fmt::Display| Failure(format!("cannot read '{arg}' as an IRI: {e}"));
    if let Some(inner) = arg.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        return Iri::new(inner).map(Term::Iri).map_err(|e| bad(&e));
    }
    if let Some((prefix, local)) = arg.split_once(':') {
        let ns = graph
            .prefixes()
            .get(prefix)
            .map(String::as_str)
            .or_else(|| vocab::namespace(prefix));
        if let Some(ns) = ns {
            return Iri::new(&format!("{ns}{local}")).map(Term::Iri).map_err(|e| bad(&e));
        }
    }
    Iri::new(arg).map(Term::Iri).map_err(|e| bad(&e))
}

fn view_config(common: &Common, graph: &Graph) -> Result<ViewConfig, Failure> {
    let mut config = ViewConfig {
        band_mode: match common.band_mode {
            Band::Approximate => BandMode::Approximate,
            Band::Strict => BandMode::Strict,
        },
        ..ViewConfig::default()
    };
    if let Some(p) = &common.anchor_predicate {
        config.anchor_predicate = resolve(p, graph)?;
    }
    Ok(config)
}

fn today(common: &Common) -> Result<Instant, Failure> {
    if let Some(s) = &common.today {
        return s.parse().map_err(|e: TemporalError| Failure(format!("--today: {e}")));
    }
    let days = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_err(|e| Failure(e.to_string()))?
        .as_secs()
        / 86_400;
    let epoch = Instant::from_ymd(1970, 1, 1).expect("valid date");
    let days = u32::try_from(days).map_err(|_| Failure("system date out of range".into()))?;
    Ok(epoch.add_period(TimePeriod::new(days, TimeUnit::Day), 1)?)
}

/// The input's prefixes plus the pattern's, so output uses short names.
fn with_prefixes(mut out: Graph, source: &Graph) -> Graph {
    for (p, ns) in source.prefixes() {
        out.add_prefix_if_absent(p, ns);
    }
    for (p, ns) in vocab::PREFIXES {
        out.add_prefix_if_absent(p, ns);
    }
    out
}

fn ntriples(graph: &Graph) -> Vec<String> {
    graph.sorted().into_iter().map(|t| t.to_string()).collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("answers serialize"));
}

fn working_graph(common: &Common, asserted: &Graph) -> Graph {
    if common.asserted_only {
        asserted.clone()
    } else {
        closure(asserted)
    }
}

fn validate(common: &Common) -> Result<u8, Failure> {
    let asserted = load(common)?;
    let config = ValidatorConfig {
        materialize: !common.asserted_only,
        view: view_config(common, &asserted)?,
        ..ValidatorConfig::default()
    };
    let report = validate_with(&asserted, &config);
    match common.output.unwrap_or(Output::Json) {
        Output::Json => println!("{}", report.to_json()),
        Output::Text => print!("{}", report_text(&report)),
        Output::Turtle => print!(
            "{}",
            serialize_turtle(&with_prefixes(report.constructed.clone(), &asserted))
        ),
    }
    Ok(if report.conforms { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn report_text(report: &ValidationReport) -> String {
    let mut out = format!("conforms: {}\n", report.conforms);
    for f in &report.findings {
        let severity = match f.severity {
            Severity::Violation => "violation",
            Severity::Warning => "warning",
        };
        out.push_str(&format!("{severity} {} {}", f.code, f.focus));
        for o in &f.others {
            out.push_str(&format!(" {o}"));
        }
        out.push_str(&format!(": {}\n", f.message));
    }
    out
}

fn infer(common: &Common, delta_only: bool) -> Result<u8, Failure> {
    let asserted = load(common)?;
    let delta = materialize(&asserted);
    let out = if delta_only {
        delta.added.clone()
    } else {
        asserted.merge(&delta.added)
    };
    let out = with_prefixes(out, &asserted);
    match common.output.unwrap_or(Output::Turtle) {
        Output::Turtle => print!("{}", serialize_turtle(&out)),
        Output::Text => {
            for line in ntriples(&out) {
                println!("{line}");
            }
        }
        Output::Json => print_json(&json!({
            "iterations": delta.iterations,
            "added": delta.added.len(),
            "triples": ntriples(&out),
        })),
    }
    Ok(EXIT_OK)
}

struct CqArgs {
    series: Option<String>,
    factor: Option<String>,
    situation: Option<String>,
    immediate: bool,
}

fn cq(common: &Common, id: u8, args: CqArgs) -> Result<u8, Failure> {
    let asserted = load(common)?;
    let graph = working_graph(common, &asserted);
    let series = args.series.as_deref().map(|s| resolve(s, &asserted)).transpose()?;
    let situation = args.situation.as_deref().map(|s| resolve(s, &asserted)).transpose()?;

    let (answer, empty): (Value, bool) = if id >= 7 {
        let Some(sit) = &situation else {
            return fail(format!("CQ{id} needs --situation"));
        };
        let set = if id == 7 {
            cq7_next(&graph, sit, args.immediate)
        } else {
            cq8_previous(&graph, sit, args.immediate)
        };
        (json!(set), set.is_empty())
    } else {
        let Some(s) = &series else {
            return fail(format!("CQ{id} needs --series"));
        };
        let view = SeriesView::build(&graph, s, &view_config(common, &asserted)?)?;
        match id {
            1 => (json!(cq1_members(&view)), view.members.is_empty()),
            2 => {
                let a = cq2_time_period(&view);
                let empty = a.estimated.is_none() && a.measured.is_none();
                (json!(a), empty)
            }
            3 => (json!(cq3_next_scheduled(&view, today(common)?)?), false),
            4 => (json!(cq4_unifying_factors(&view)), view.unifying_factors.is_empty()),
            5 => {
                let Some(f) = &args.factor else {
                    return fail("CQ5 needs --factor");
                };
                let validity = cq5_factor_validity(&view, &resolve(f, &asserted)?)?;
                let empty = matches!(&validity, FactorValidity::Intervals(v) if v.is_empty());
                (json!(validity), empty)
            }
            _ => (json!(cq6_unifying_description(&view)), view.descriptions.is_empty()),
        }
    };

    let envelope = Envelope {
        cq: id,
        series: if id >= 7 { None } else { series },
        situation: if id >= 7 { situation } else { None },
        answer,
    };
    match common.output.unwrap_or(Output::Json) {
        Output::Json => print_json(&envelope),
        Output::Text => print!("{}", answer_text(&envelope.answer)),
        Output::Turtle => return fail("turtle output is not available for cq"),
    }
    Ok(if empty { EXIT_EMPTY } else { EXIT_OK })
}

fn answer_text(answer: &Value) -> String {
    match answer {
        Value::Array(items) => items.iter().map(|v| format!("{}\n", scalar_text(v))).collect(),
        v => format!("{}\n", scalar_text(v)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct Neighbours {
    next: Vec<Term>,
    immediate_next: Vec<Term>,
    previous: Vec<Term>,
    immediate_previous: Vec<Term>,
}

#[derive(Serialize)]
struct SeriesReport<'a> {
    series: &'a Term,
    members: &'a [Term],
    summary: Value,
    answers: Value,
    conforms: bool,
    findings: Vec<&'a Finding>,
    period: Option<Value>,
}

fn report(common: &Common) -> Result<u8, Failure> {
    if !matches!(common.output, None | Some(Output::Json)) {
        return fail("report is only available as json");
    }
    let asserted = load(common)?;
    let graph = working_graph(common, &asserted);
    let vconfig = view_config(common, &asserted)?;
    let validation = validate_with(
        &graph,
        &ValidatorConfig {
            materialize: false,
            view: vconfig.clone(),
            ..ValidatorConfig::default()
        },
    );
    let today = today(common)?;

    let views = series_in(&graph)
        .iter()
        .map(|s| SeriesView::build(&graph, s, &vconfig))
        .collect::<Result<Vec<_>, _>>()?;
    let mut docs = Vec::new();
    for view in &views {
        let related = |t: &Term| {
            t == &view.series || view.members.contains(t) || view.unifying_situations.iter().any(|u| &u.situation == t)
        };
        let findings: Vec<&Finding> = validation
            .findings
            .iter()
            .filter(|f| related(&f.focus) || f.others.contains(&view.series))
            .collect();
        let conforms = findings.iter().all(|f| f.severity != Severity::Violation);

        let validity: BTreeMap<&Term, FactorValidity> = view
            .unifying_factors
            .iter()
            .map(|f| Ok((f, cq5_factor_validity(view, f)?)))
            .collect::<Result<_, CqError>>()?;
        let neighbours: BTreeMap<&Term, Neighbours> = view
            .members
            .iter()
            .map(|m| {
                let v = |set: std::collections::BTreeSet<Term>| set.into_iter().collect::<Vec<_>>();
                (
                    m,
                    Neighbours {
                        next: v(cq7_next(&graph, m, false)),
                        immediate_next: v(cq7_next(&graph, m, true)),
                        previous: v(cq8_previous(&graph, m, false)),
                        immediate_previous: v(cq8_previous(&graph, m, true)),
                    },
                )
            })
            .collect();
        let next_scheduled = cq3_next_scheduled(view, today).ok();
        let period = view.measured_period().ok();

        docs.push(SeriesReport {
            series: &view.series,
            members: cq1_members(view),
            summary: json!({
                "member_count": view.members.len(),
                "direct_factors": view.direct_factors,
                "unifying_situations": view.unifying_situations,
                "estimated_period": view.estimated,
                "anchors": view.anchors,
                "situation_numbers": view.numbers,
                "flagged_last": view.flagged_last,
            }),
            answers: json!({
                "cq1": cq1_members(view),
                "cq2": cq2_time_period(view),
                "cq3": next_scheduled,
                "cq4": cq4_unifying_factors(view),
                "cq5": validity,
                "cq6": cq6_unifying_description(view),
                "cq7_cq8": neighbours,
            }),
            conforms,
            findings,
            period: period.map(|p| json!(p)),
        });
    }
    print_json(&docs);
    Ok(EXIT_OK)
}
