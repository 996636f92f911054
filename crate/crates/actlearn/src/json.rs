//! File formats: action-model and library JSON, observation and triple
//! text files, and the line-delimited trace/report records.
//!
//! Rendering is canonical — atoms in vocabulary order, events in canonical
//! order, literals as `p` / `-p` in atom order — so parse followed by
//! render is byte-stable for canonical inputs.

use serde::{Deserialize, Serialize};

use crate::action::{ActionModel, Event, RawActionModel, RawEvent};
use crate::learner::Verdict;
use crate::library::{ActionLibrary, TripleObservation};
use crate::logic::{Term, Vocabulary};
use crate::stream::Observation;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    atoms: Vec<String>,
    events: Vec<EventDoc>,
}

#[derive(Serialize, Deserialize)]
struct EventDoc {
    pre: Vec<String>,
    post: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct LibraryDoc {
    atoms: Vec<String>,
    actions: std::collections::BTreeMap<String, ActionsDoc>,
}

#[derive(Serialize, Deserialize)]
struct ActionsDoc {
    events: Vec<EventDoc>,
}

#[derive(Deserialize)]
struct RawModelDoc {
    atoms: Vec<String>,
    events: Vec<RawEventDoc>,
}

#[derive(Deserialize)]
struct RawEventDoc {
    pre: RawPre,
    post: Vec<String>,
}

/// Raw preconditions are either a formula string (`"p | -q"`) or, like the
/// plain format, a list of literals.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawPre {
    Literals(Vec<String>),
    Formula(String),
}

/// Renders a term as its literal list, in atom order.
pub fn term_to_literals(term: &Term) -> Vec<String> {
    let mut out: Vec<String> = term.pos_atoms().map(String::from).collect();
    out.extend(term.neg_atoms().map(|a| format!("-{a}")));
    let voc = term.vocabulary();
    out.sort_by_key(|lit| voc.index_of(lit.trim_start_matches('-')));
    out
}

/// Builds a term from a literal list such as `["p", "-q"]`.
pub fn literals_to_term(voc: &Vocabulary, literals: &[String]) -> Result<Term> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for lit in literals {
        match lit.strip_prefix('-') {
            Some(name) => neg.push(name.to_owned()),
            None => pos.push(lit.clone()),
        }
    }
    voc.term(pos, neg)
}

fn event_doc(event: &Event) -> EventDoc {
    EventDoc {
        pre: term_to_literals(event.pre()),
        post: term_to_literals(event.post()),
    }
}

fn doc_event(voc: &Vocabulary, doc: &EventDoc) -> Result<Event> {
    Event::new(
        literals_to_term(voc, &doc.pre)?,
        literals_to_term(voc, &doc.post)?,
    )
}

fn json_err(err: serde_json::Error) -> Error {
    Error::Parse(err.to_string())
}

/// Renders a model as `{"atoms":[...],"events":[{"pre":[...],"post":[...]}]}`.
pub fn model_to_json(model: &ActionModel) -> String {
    let doc = ModelDoc {
        atoms: model.vocabulary().atoms().to_vec(),
        events: model.events().iter().map(event_doc).collect(),
    };
    serde_json::to_string(&doc).expect("model serialization cannot fail")
}

/// The model JSON as a raw value, for byte-stable embedding in records.
pub fn model_to_raw(model: &ActionModel) -> Box<serde_json::value::RawValue> {
    serde_json::value::RawValue::from_string(model_to_json(model)).expect("just rendered")
}

pub fn model_from_json(text: &str) -> Result<ActionModel> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(json_err)?;
    let voc = Vocabulary::new(doc.atoms)?;
    let events = doc
        .events
        .iter()
        .map(|e| doc_event(&voc, e))
        .collect::<Result<Vec<_>>>()?;
    ActionModel::new(voc, events)
}

/// Parses the raw-model format, whose `pre` fields may be formula strings.
pub fn raw_model_from_json(text: &str) -> Result<RawActionModel> {
    let doc: RawModelDoc = serde_json::from_str(text).map_err(json_err)?;
    let voc = Vocabulary::new(doc.atoms)?;
    let events = doc
        .events
        .iter()
        .map(|e| {
            let pre = match &e.pre {
                RawPre::Formula(f) => voc.parse_formula(f)?,
                RawPre::Literals(lits) => literals_to_term(&voc, lits)?.to_formula(),
            };
            RawEvent::new(pre, literals_to_term(&voc, &e.post)?)
        })
        .collect::<Result<Vec<_>>>()?;
    RawActionModel::new(voc, events)
}

pub fn library_to_json(library: &ActionLibrary) -> String {
    let doc = LibraryDoc {
        atoms: library.vocabulary().atoms().to_vec(),
        actions: library
            .actions()
            .iter()
            .map(|(name, model)| {
                (
                    name.clone(),
                    ActionsDoc {
                        events: model.events().iter().map(event_doc).collect(),
                    },
                )
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("library serialization cannot fail")
}

/// The library JSON as a raw value, for byte-stable embedding in records.
pub fn library_to_raw(library: &ActionLibrary) -> Box<serde_json::value::RawValue> {
    serde_json::value::RawValue::from_string(library_to_json(library)).expect("just rendered")
}

pub fn library_from_json(text: &str) -> Result<ActionLibrary> {
    let doc: LibraryDoc = serde_json::from_str(text).map_err(json_err)?;
    let voc = Vocabulary::new(doc.atoms)?;
    let actions = doc
        .actions
        .iter()
        .map(|(name, entry)| {
            let events = entry
                .events
                .iter()
                .map(|e| doc_event(&voc, e))
                .collect::<Result<Vec<_>>>()?;
            Ok((name.clone(), ActionModel::new(voc.clone(), events)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ActionLibrary::new(voc, actions)
}

/// Parses an observation file: one `{..} -> {..}` per line; blank lines and
/// `#` comments are skipped.
pub fn observations_from_text(voc: &Vocabulary, text: &str) -> Result<Vec<Observation>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Observation::parse(voc, l))
        .collect()
}

pub fn observations_to_text(observations: &[Observation]) -> String {
    let mut out = String::new();
    for o in observations {
        out.push_str(&o.to_string());
        out.push('\n');
    }
    out
}

/// Parses a triple file: one `{..} name -> {..}` per line.
pub fn triples_from_text(voc: &Vocabulary, text: &str) -> Result<Vec<TripleObservation>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| TripleObservation::parse(voc, l))
        .collect()
}

pub fn triples_to_text(triples: &[TripleObservation]) -> String {
    let mut out = String::new();
    for t in triples {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

/// One line of a learner trace.
#[derive(Serialize)]
pub struct TraceRecord {
    pub step: usize,
    pub obs: String,
    pub survivors: usize,
    pub verdict: Box<serde_json::value::RawValue>,
}

/// The JSON for a verdict: `"undecided"` or `{"model": ...}`.
pub fn verdict_to_raw(verdict: &Verdict) -> Box<serde_json::value::RawValue> {
    let text = match verdict {
        Verdict::Undecided => "\"undecided\"".to_owned(),
        Verdict::Identified(m) => format!("{{\"model\":{}}}", model_to_json(m)),
    };
    serde_json::value::RawValue::from_string(text).expect("just rendered")
}

/// The single-line run summary printed by the CLI.
#[derive(Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub learner: String,
    pub seed: u64,
    pub steps_to_verdict: Option<usize>,
    pub verdict: Option<Box<serde_json::value::RawValue>>,
    pub equivalent_to_target: Option<bool>,
    pub elapsed_ms: u64,
}
