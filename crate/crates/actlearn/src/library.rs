//! Named action libraries, triple-observation streams, substream
//! extraction, and the induced library learner.
//!
//! A library maps action names to universally applicable action models over
//! one vocabulary. Library streams carry `(state, name, state)` triples; the
//! induced learner routes each triple to a per-name update learner, latches
//! every sub-verdict, and announces the whole library once each configured
//! name has latched.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::action::ActionModel;
use crate::learner::{LearnerKind, LearnerState, Verdict};
use crate::logic::{State, Vocabulary};
use crate::rng::SplitMix64;
use crate::stream::Observation;
use crate::{Error, Result};

/// A mapping from action names to universally applicable action models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionLibrary {
    voc: Vocabulary,
    actions: BTreeMap<String, ActionModel>,
}

impl ActionLibrary {
    pub fn new(
        voc: Vocabulary,
        actions: impl IntoIterator<Item = (String, ActionModel)>,
    ) -> Result<Self> {
        let actions: BTreeMap<String, ActionModel> = actions.into_iter().collect();
        for model in actions.values() {
            voc.check_same(model.vocabulary())?;
            if !model.is_universally_applicable() {
                return Err(Error::NotUniversallyApplicable);
            }
        }
        Ok(ActionLibrary { voc, actions })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.actions.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn model(&self, name: &str) -> Option<&ActionModel> {
        self.actions.get(name)
    }

    pub fn actions(&self) -> &BTreeMap<String, ActionModel> {
        &self.actions
    }

    /// Same names, and per-name equivalent models.
    pub fn equivalent(&self, other: &ActionLibrary) -> Result<bool> {
        self.voc.check_same(&other.voc)?;
        if self.actions.len() != other.actions.len() {
            return Ok(false);
        }
        for (name, model) in &self.actions {
            match other.actions.get(name) {
                Some(theirs) if model.equivalent(theirs)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// One library observation: executing the named action in `before` produced
/// `after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleObservation {
    before: State,
    name: String,
    after: State,
}

impl TripleObservation {
    pub fn new(before: State, name: impl Into<String>, after: State) -> Result<Self> {
        before.vocabulary().check_same(after.vocabulary())?;
        Ok(TripleObservation {
            before,
            name: name.into(),
            after,
        })
    }

    pub fn before(&self) -> &State {
        &self.before
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn after(&self) -> &State {
        &self.after
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        self.before.vocabulary()
    }

    /// The untagged observation `(before, after)`.
    pub fn observation(&self) -> Observation {
        Observation::new(self.before.clone(), self.after.clone()).expect("same vocabulary")
    }

    /// Parses a line like `{s1} flip1 -> {s1,s2}`.
    pub fn parse(voc: &Vocabulary, line: &str) -> Result<Self> {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| {
            Error::Parse(format!("expected `{{..}} name -> {{..}}`, got `{line}`"))
        })?;
        let lhs = lhs.trim();
        let (state_part, name) = lhs
            .rsplit_once(' ')
            .ok_or_else(|| Error::Parse(format!("missing action name in `{line}`")))?;
        TripleObservation::new(
            voc.parse_state(state_part)?,
            name.trim(),
            voc.parse_state(rhs)?,
        )
    }
}

impl fmt::Display for TripleObservation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {}", self.before, self.name, self.after)
    }
}

/// The subsequence of `(before, after)` pairs of triples carrying `name`,
/// order preserved. An unknown name yields an empty prefix.
pub fn substream(prefix: &[TripleObservation], name: &str) -> Vec<Observation> {
    prefix
        .iter()
        .filter(|t| t.name == name)
        .map(TripleObservation::observation)
        .collect()
}

/// A deterministic, seeded interleaving that is sound for the library and
/// complete per name each cycle: every cycle emits one seeded shuffle of
/// the union over names of the models' transition graphs.
pub fn generate_library_prefix(
    library: &ActionLibrary,
    seed: u64,
    length: usize,
) -> Result<Vec<TripleObservation>> {
    let mut cycle_template = Vec::new();
    for (name, model) in library.actions() {
        for obs in model.graph() {
            cycle_template.push(TripleObservation::new(
                obs.before().clone(),
                name.clone(),
                obs.after().clone(),
            )?);
        }
    }
    if cycle_template.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(length);
    while out.len() < length {
        let mut cycle = cycle_template.clone();
        rng.shuffle(&mut cycle);
        let take = (length - out.len()).min(cycle.len());
        out.extend(cycle.into_iter().take(take));
    }
    Ok(out)
}

/// A library learner's answer: undecided, or a complete action library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LibraryVerdict {
    Undecided,
    Identified(ActionLibrary),
}

impl LibraryVerdict {
    pub fn is_identified(&self) -> bool {
        matches!(self, LibraryVerdict::Identified(_))
    }

    pub fn library(&self) -> Option<&ActionLibrary> {
        match self {
            LibraryVerdict::Identified(l) => Some(l),
            LibraryVerdict::Undecided => None,
        }
    }
}

/// The induced library learner: one update learner per action name.
///
/// Sub-verdicts are latched as they fire; the library verdict fires exactly
/// once, when every configured name has latched. Triples carrying unknown
/// names get a lazily created learner so stray data degrades gracefully,
/// but only the configured names count towards the verdict.
#[derive(Clone, Debug)]
pub struct LibraryLearner {
    voc: Vocabulary,
    kind: LearnerKind,
    expected: BTreeSet<String>,
    learners: BTreeMap<String, LearnerState>,
    latched: BTreeMap<String, ActionModel>,
    fired: bool,
    steps: usize,
}

impl LibraryLearner {
    pub fn new<I, S>(voc: &Vocabulary, names: I, kind: LearnerKind) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let expected: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        let mut learners = BTreeMap::new();
        for name in &expected {
            learners.insert(name.clone(), LearnerState::new(voc, kind)?);
        }
        Ok(LibraryLearner {
            voc: voc.clone(),
            kind,
            expected,
            learners,
            latched: BTreeMap::new(),
            fired: false,
            steps: 0,
        })
    }

    pub fn kind(&self) -> LearnerKind {
        self.kind
    }

    pub fn fired(&self) -> bool {
        self.fired
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn latched_count(&self) -> usize {
        self.expected
            .iter()
            .filter(|n| self.latched.contains_key(*n))
            .count()
    }

    pub fn expected_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.expected.iter().map(String::as_str)
    }

    /// The per-name learner, if that name has been configured or seen.
    pub fn learner(&self, name: &str) -> Option<&LearnerState> {
        self.learners.get(name)
    }

    /// Routes the triple to its name's learner and aggregates the verdict.
    pub fn step(&mut self, triple: &TripleObservation) -> Result<LibraryVerdict> {
        self.voc.check_same(triple.vocabulary())?;
        self.steps += 1;
        if !self.learners.contains_key(&triple.name) {
            self.learners.insert(
                triple.name.clone(),
                LearnerState::new(&self.voc, self.kind)?,
            );
        }
        let learner = self.learners.get_mut(&triple.name).expect("just inserted");
        if let Verdict::Identified(model) = learner.step(&triple.observation())? {
            self.latched.insert(triple.name.clone(), model);
        }
        if !self.fired
            && self
                .expected
                .iter()
                .all(|name| self.latched.contains_key(name))
        {
            self.fired = true;
            let actions = self
                .expected
                .iter()
                .map(|name| (name.clone(), self.latched[name].clone()));
            return Ok(LibraryVerdict::Identified(ActionLibrary::new(
                self.voc.clone(),
                actions,
            )?));
        }
        Ok(LibraryVerdict::Undecided)
    }
}
