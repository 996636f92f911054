//! Events, action models, the propositional product update, action-type
//! classification, semantic equivalence, normalization, and
//! universal-applicability completion.
//!
//! An event `<pre, post>` fires in states satisfying `pre` and rewrites the
//! state by adding `post`'s positive literals and removing its negative
//! ones. An action model is a finite set of events; applying it to a state
//! yields one successor per applicable event (the outcome set). Events are
//! fully observable: distinct events are always distinguishable, so no
//! explicit indistinguishability relation is stored.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{Bits, Formula, State, Term, Vocabulary};
use crate::stream::Observation;
use crate::{Error, Result};

/// One deterministic branch of an action: a precondition/postcondition pair
/// of consistent terms over a shared vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Event {
    pre: Term,
    post: Term,
}

impl Event {
    pub fn new(pre: Term, post: Term) -> Result<Self> {
        pre.vocabulary().check_same(post.vocabulary())?;
        Ok(Event { pre, post })
    }

    pub fn pre(&self) -> &Term {
        &self.pre
    }

    pub fn post(&self) -> &Term {
        &self.post
    }

    /// True when no literal is a conjunct of both the pre- and postcondition.
    pub fn is_normal(&self) -> bool {
        !self.pre.shares_conjunct(&self.post)
    }

    /// Applies the event to a state satisfying its precondition: the result
    /// is `(state + post's positives) - post's negatives`.
    pub fn apply(&self, state: &State) -> Result<State> {
        if !state.satisfies(&self.pre)? {
            return Err(Error::Inapplicable {
                event: self.to_string(),
                state: state.to_string(),
            });
        }
        Ok(state
            .vocabulary()
            .state_from_bits(self.apply_bits(state.bits())))
    }

    pub(crate) fn applicable_bits(&self, state_bits: Bits) -> bool {
        self.pre.holds_on(state_bits)
    }

    pub(crate) fn apply_bits(&self, state_bits: Bits) -> Bits {
        (state_bits | self.post.pos_bits()) & !self.post.neg_bits()
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.pre, self.post)
    }
}

/// Classification of an action model along the standard action types.
///
/// `deterministic` and `universally_applicable` are decided semantically by
/// state enumeration: no state may satisfy two distinct events'
/// preconditions, and every state must satisfy at least one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeFlags {
    pub atomic: bool,
    pub deterministic: bool,
    pub precondition_free: bool,
    pub universally_applicable: bool,
    pub normal: bool,
    pub basic_preconditions: bool,
    pub maximal_preconditions: bool,
}

/// A finite set of events over a shared vocabulary.
///
/// Events are kept deduplicated and sorted in the canonical term order on
/// `(pre, post)`; rendering and traces rely on that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionModel {
    voc: Vocabulary,
    events: Vec<Event>,
}

impl ActionModel {
    pub fn new(voc: Vocabulary, events: impl IntoIterator<Item = Event>) -> Result<Self> {
        let mut events: Vec<Event> = events.into_iter().collect();
        for e in &events {
            voc.check_same(e.pre.vocabulary())?;
        }
        events.sort();
        events.dedup();
        Ok(ActionModel { voc, events })
    }

    pub fn empty(voc: Vocabulary) -> Self {
        ActionModel {
            voc,
            events: Vec::new(),
        }
    }

    /// Convenience constructor from `(pre, post)` pairs in term syntax,
    /// e.g. `[("T", "h"), ("T", "-h")]`.
    pub fn parse(voc: &Vocabulary, events: &[(&str, &str)]) -> Result<Self> {
        let events = events
            .iter()
            .map(|(pre, post)| Event::new(voc.parse_term(pre)?, voc.parse_term(post)?))
            .collect::<Result<Vec<_>>>()?;
        ActionModel::new(voc.clone(), events)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// The outcome set of executing this action in `state`: one successor
    /// per applicable event. Empty iff no event is applicable.
    ///
    /// Panics when `state` belongs to a different vocabulary.
    pub fn outcomes(&self, state: &State) -> BTreeSet<State> {
        assert!(
            self.voc.same_as(state.vocabulary()),
            "state belongs to a different vocabulary"
        );
        self.outcome_bits(state.bits())
            .into_iter()
            .map(|b| self.voc.state_from_bits(b))
            .collect()
    }

    pub(crate) fn outcome_bits(&self, state_bits: Bits) -> BTreeSet<Bits> {
        self.events
            .iter()
            .filter(|e| e.applicable_bits(state_bits))
            .map(|e| e.apply_bits(state_bits))
            .collect()
    }

    /// All transitions `(s, s')` with `s'` in the outcome set of `s`,
    /// enumerated over every state in canonical order.
    pub fn graph(&self) -> BTreeSet<Observation> {
        let mut out = BTreeSet::new();
        for s in self.voc.states() {
            for b in self.outcome_bits(s.bits()) {
                let after = self.voc.state_from_bits(b);
                out.insert(Observation::new(s.clone(), after).expect("same vocabulary"));
            }
        }
        out
    }

    /// The model restricted to the events satisfying `keep`; order preserved.
    pub fn restrict(&self, mut keep: impl FnMut(&Event) -> bool) -> ActionModel {
        ActionModel {
            voc: self.voc.clone(),
            events: self.events.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    pub fn is_universally_applicable(&self) -> bool {
        (0..self.voc.state_count() as Bits)
            .all(|bits| self.events.iter().any(|e| e.applicable_bits(bits)))
    }

    /// Computes the action-type flags for this model.
    pub fn classify(&self) -> TypeFlags {
        let mut deterministic = true;
        let mut universally_applicable = true;
        for bits in 0..self.voc.state_count() as Bits {
            let applicable = self
                .events
                .iter()
                .filter(|e| e.applicable_bits(bits))
                .count();
            if applicable == 0 {
                universally_applicable = false;
            }
            if applicable > 1 {
                deterministic = false;
            }
        }
        TypeFlags {
            atomic: self.events.len() == 1,
            deterministic,
            precondition_free: self.events.iter().all(|e| e.pre.is_top()),
            universally_applicable,
            normal: self.events.iter().all(Event::is_normal),
            basic_preconditions: true,
            maximal_preconditions: self.events.iter().all(|e| e.pre.is_maximal()),
        }
    }

    /// Semantic equivalence: equal outcome sets in every state.
    pub fn equivalent(&self, other: &ActionModel) -> Result<bool> {
        Ok(self.inequivalence_witness(other)?.is_none())
    }

    /// The first state (in canonical order) where the outcome sets differ,
    /// or `None` when the models are equivalent.
    pub fn inequivalence_witness(&self, other: &ActionModel) -> Result<Option<State>> {
        self.voc.check_same(&other.voc)?;
        for s in self.voc.states() {
            if self.outcome_bits(s.bits()) != other.outcome_bits(s.bits()) {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// Completes the model so that every state has at least one applicable
    /// event: appends one `<d, T>` event per DNF disjunct of the negated
    /// disjunction of all preconditions. Returns the model unchanged when it
    /// is already universally applicable. Outcomes on states where the model
    /// was applicable are untouched; previously uncovered states become
    /// fixpoints.
    pub fn make_universal(&self) -> ActionModel {
        let covered = self
            .events
            .iter()
            .fold(self.voc.ff(), |acc, e| acc | e.pre.to_formula());
        let missing = (!covered).dnf();
        if missing.is_empty() {
            return self.clone();
        }
        let mut events = self.events.clone();
        for d in missing {
            events.push(Event {
                pre: d,
                post: self.voc.top(),
            });
        }
        ActionModel::new(self.voc.clone(), events).expect("same vocabulary")
    }
}

impl fmt::Display for ActionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An event whose precondition is an arbitrary propositional formula.
#[derive(Clone, Debug)]
pub struct RawEvent {
    pre: Formula,
    post: Term,
}

impl RawEvent {
    pub fn new(pre: Formula, post: Term) -> Result<Self> {
        pre.vocabulary().check_same(post.vocabulary())?;
        Ok(RawEvent { pre, post })
    }

    pub fn pre(&self) -> &Formula {
        &self.pre
    }

    pub fn post(&self) -> &Term {
        &self.post
    }
}

/// An action model with arbitrary propositional preconditions, prior to
/// normalization.
#[derive(Clone, Debug)]
pub struct RawActionModel {
    voc: Vocabulary,
    events: Vec<RawEvent>,
}

impl RawActionModel {
    pub fn new(voc: Vocabulary, events: impl IntoIterator<Item = RawEvent>) -> Result<Self> {
        let events: Vec<RawEvent> = events.into_iter().collect();
        for e in &events {
            voc.check_same(e.pre.vocabulary())?;
        }
        Ok(RawActionModel { voc, events })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    pub fn events(&self) -> &[RawEvent] {
        &self.events
    }

    /// Outcome set under formula-precondition semantics.
    pub fn outcomes(&self, state: &State) -> BTreeSet<State> {
        assert!(
            self.voc.same_as(state.vocabulary()),
            "state belongs to a different vocabulary"
        );
        self.events
            .iter()
            .filter(|e| e.pre.eval_bits(state.bits()))
            .map(|e| {
                self.voc
                    .state_from_bits((state.bits() | e.post.pos_bits()) & !e.post.neg_bits())
            })
            .collect()
    }

    /// Rewrites the model into an equivalent normal model with term
    /// preconditions: each event `<f, psi>` becomes one event `<d, psi'>`
    /// per DNF disjunct `d` of `f`, where `psi'` drops every conjunct of
    /// `psi` that also occurs in `d`. Events with unsatisfiable
    /// preconditions vanish.
    pub fn normalize(&self) -> ActionModel {
        let mut events = Vec::new();
        for raw in &self.events {
            for d in raw.pre.dnf() {
                let post = raw.post.minus_conjuncts(&d);
                events.push(Event { pre: d, post });
            }
        }
        ActionModel::new(self.voc.clone(), events).expect("same vocabulary")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn voc_h() -> Vocabulary {
        Vocabulary::new(["h"]).unwrap()
    }

    fn coin(voc: &Vocabulary) -> ActionModel {
        ActionModel::parse(voc, &[("T", "h"), ("T", "-h")]).unwrap()
    }

    #[test]
    fn apply_event_follows_postcondition() {
        let voc = voc_h();
        let heads = voc.state(["h"]).unwrap();
        let tails_event = Event::new(voc.top(), voc.parse_term("-h").unwrap()).unwrap();
        assert_eq!(tails_event.apply(&heads).unwrap(), voc.empty_state());
        let heads_event = Event::new(voc.top(), voc.parse_term("h").unwrap()).unwrap();
        assert_eq!(heads_event.apply(&heads).unwrap(), heads);
        let noop = Event::new(voc.top(), voc.top()).unwrap();
        assert_eq!(noop.apply(&voc.empty_state()).unwrap(), voc.empty_state());
    }

    #[test]
    fn apply_event_rejects_unsatisfied_precondition() {
        let voc = voc_h();
        let e = Event::new(voc.parse_term("h").unwrap(), voc.top()).unwrap();
        assert!(matches!(
            e.apply(&voc.empty_state()),
            Err(Error::Inapplicable { .. })
        ));
    }

    #[test]
    fn outcomes_of_the_coin_toss() {
        let voc = voc_h();
        let heads = voc.state(["h"]).unwrap();
        let out = coin(&voc).outcomes(&heads);
        assert_eq!(out.len(), 2);
        assert!(out.contains(&voc.empty_state()));
        assert!(out.contains(&heads));
    }

    #[test]
    fn outcomes_empty_when_nothing_applies() {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        let m = ActionModel::parse(&voc, &[("p", "q")]).unwrap();
        assert!(m.outcomes(&voc.empty_state()).is_empty());
    }

    #[test]
    fn pushbutton_flip_outcome() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let flip = ActionModel::parse(&voc, &[("p", "-p"), ("-p", "p")]).unwrap();
        let out = flip.outcomes(&voc.empty_state());
        assert_eq!(out.len(), 1);
        assert!(out.contains(&voc.state(["p"]).unwrap()));
    }

    #[test]
    fn graph_enumerates_all_transitions() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let flip = ActionModel::parse(&voc, &[("p", "-p"), ("-p", "p")]).unwrap();
        let rendered: Vec<String> = flip.graph().iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, ["{} -> {p}", "{p} -> {}"]);

        let identity = ActionModel::parse(&voc, &[("T", "T")]).unwrap();
        let rendered: Vec<String> = identity.graph().iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, ["{} -> {}", "{p} -> {p}"]);

        let voc_h = voc_h();
        assert_eq!(coin(&voc_h).graph().len(), 4);
    }

    #[test]
    fn restrict_filters_events() {
        let voc = voc_h();
        let fake = coin(&voc).restrict(|e| e.post().to_string() == "-h");
        assert_eq!(fake.len(), 1);
        assert_eq!(fake.events()[0].to_string(), "<T, -h>");
        assert_eq!(coin(&voc).restrict(|_| true), coin(&voc));
        assert!(coin(&voc).restrict(|_| false).is_empty());
    }

    #[test]
    fn classify_coin_and_flip() {
        let voc = voc_h();
        let flags = coin(&voc).classify();
        assert!(flags.precondition_free);
        assert!(!flags.deterministic);
        assert!(flags.universally_applicable);
        assert!(flags.normal);
        assert!(!flags.atomic);

        let voc_p = Vocabulary::new(["p"]).unwrap();
        let flip = ActionModel::parse(&voc_p, &[("p", "-p"), ("-p", "p")]).unwrap();
        let flags = flip.classify();
        assert!(flags.deterministic);
        assert!(flags.maximal_preconditions);
        assert!(flags.universally_applicable);

        let single = ActionModel::parse(&voc_p, &[("T", "T")]).unwrap();
        let flags = single.classify();
        assert!(flags.atomic);
        assert!(flags.deterministic);
    }

    #[test]
    fn deterministic_implies_singleton_outcomes() {
        let voc = Vocabulary::new(["a", "b", "c"]).unwrap();
        let m = ActionModel::parse(&voc, &[("a", "-a"), ("-a&b", "c"), ("-a&-b", "a&b")]).unwrap();
        let flags = m.classify();
        for s in voc.states() {
            let n = m.outcomes(&s).len();
            if flags.deterministic {
                assert!(n <= 1);
            }
            assert_eq!(flags.universally_applicable || n == 0, n >= 1 || n == 0);
        }
        assert!(flags.deterministic);
        assert!(flags.universally_applicable);
    }

    #[test]
    fn equivalence_examples() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let identity = ActionModel::parse(&voc, &[("T", "T")]).unwrap();
        let split = ActionModel::parse(&voc, &[("p", "T"), ("-p", "T")]).unwrap();
        assert!(identity.equivalent(&identity).unwrap());
        assert!(identity.equivalent(&split).unwrap());

        let voc_h = voc_h();
        let fake = ActionModel::parse(&voc_h, &[("T", "-h")]).unwrap();
        assert!(!coin(&voc_h).equivalent(&fake).unwrap());
        let witness = coin(&voc_h).inequivalence_witness(&fake).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn equivalent_rejects_foreign_vocabulary() {
        let a = ActionModel::empty(Vocabulary::new(["p"]).unwrap());
        let b = ActionModel::empty(Vocabulary::new(["q"]).unwrap());
        assert!(matches!(a.equivalent(&b), Err(Error::VocabularyMismatch)));
    }

    #[test]
    fn normalize_splits_disjunctive_preconditions() {
        let voc = Vocabulary::new(["p", "q", "r"]).unwrap();
        let raw = RawActionModel::new(
            voc.clone(),
            [RawEvent::new(
                voc.parse_formula("p | q").unwrap(),
                voc.parse_term("r").unwrap(),
            )
            .unwrap()],
        )
        .unwrap();
        let norm = raw.normalize();
        let rendered: Vec<String> = norm.events().iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["<q, r>", "<p, r>"]);
        let flags = norm.classify();
        assert!(flags.normal && flags.basic_preconditions);
        for s in voc.states() {
            assert_eq!(raw.outcomes(&s), norm.outcomes(&s));
        }
    }

    #[test]
    fn normalize_deletes_shared_conjuncts() {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        let raw = RawActionModel::new(
            voc.clone(),
            [RawEvent::new(
                voc.parse_formula("p").unwrap(),
                voc.parse_term("p&q").unwrap(),
            )
            .unwrap()],
        )
        .unwrap();
        let norm = raw.normalize();
        let rendered: Vec<String> = norm.events().iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["<p, q>"]);
    }

    #[test]
    fn normalize_keeps_trivial_event() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let raw = RawActionModel::new(voc.clone(), [RawEvent::new(voc.tt(), voc.top()).unwrap()])
            .unwrap();
        let rendered: Vec<String> = raw
            .normalize()
            .events()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(rendered, ["<T, T>"]);
    }

    #[test]
    fn normalize_drops_unsatisfiable_preconditions() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let raw = RawActionModel::new(
            voc.clone(),
            [RawEvent::new(voc.parse_formula("p & -p").unwrap(), voc.top()).unwrap()],
        )
        .unwrap();
        assert!(raw.normalize().is_empty());
    }

    #[test]
    fn make_universal_completes_the_door() {
        let voc = Vocabulary::new(["open", "locked"]).unwrap();
        let door = ActionModel::parse(&voc, &[("-open&-locked", "open")]).unwrap();
        assert!(!door.is_universally_applicable());
        let total = door.make_universal();
        assert!(total.is_universally_applicable());
        // previously covered states keep their outcomes
        let closed = voc.empty_state();
        assert_eq!(door.outcomes(&closed), total.outcomes(&closed));
        // previously uncovered states become fixpoints
        for s in voc.states() {
            if door.outcomes(&s).is_empty() {
                let out = total.outcomes(&s);
                assert_eq!(out.len(), 1);
                assert!(out.contains(&s));
            }
        }
        // added events carry empty postconditions
        for e in total.events() {
            if !door.events().contains(e) {
                assert!(e.post().is_top());
            }
        }
    }

    #[test]
    fn make_universal_is_noop_on_total_models() {
        let voc = voc_h();
        let m = coin(&voc);
        assert_eq!(m.make_universal(), m);
    }

    #[test]
    fn make_universal_on_empty_model() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let total = ActionModel::empty(voc.clone()).make_universal();
        let rendered: Vec<String> = total.events().iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["<T, T>"]);
        assert!(total.classify().universally_applicable);
    }

    #[test]
    fn model_events_are_sorted_and_deduped() {
        let voc = voc_h();
        let m = ActionModel::parse(&voc, &[("T", "-h"), ("T", "h"), ("T", "-h")]).unwrap();
        assert_eq!(m.len(), 2);
        let rendered: Vec<String> = m.events().iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["<T, h>", "<T, -h>"]);
    }
}
