//! Update learners over event hypothesis spaces, the minimization operator,
//! the limit learner, and a generic tell-tale learner over finite model
//! classes.
//!
//! An update learner starts from an initial action model whose events
//! enumerate every candidate behaviour and deletes events contradicted by
//! observations. Each learner kind pairs a hypothesis space with a firing
//! condition:
//!
//! * [`LearnerKind::L1`] — events `<T, psi>` for every consistent term
//!   `psi`; fires when a single event survives. Identifies precondition-free
//!   atomic actions.
//! * [`LearnerKind::L2`] — events `<phi, psi>` with `phi` maximal and `psi`
//!   sharing no conjunct with `phi`; fires when all surviving events have
//!   pairwise distinct preconditions. Identifies deterministic actions with
//!   maximal preconditions.
//! * [`LearnerKind::L3`] — as L2 but `phi` ranges over all consistent
//!   terms; fires once every state has been observed as an input, and
//!   announces the minimized survivor set. Identifies deterministic actions
//!   with compact (non-maximal) event sets.
//!
//! Learners are once-defined: a verdict is announced at most once, and a
//! candidate is only announced when it is universally applicable, since the
//! hypothesis class contains only universally applicable models. On streams
//! produced by models outside the learner's class the hypothesis may
//! degenerate below universal applicability; such candidates are withheld.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::action::{ActionModel, Event};
use crate::logic::{Bits, State, Vocabulary};
use crate::stream::{dftt, is_sound, Observation};
use crate::{Error, Result};

/// Caps on `|P|` per learner kind; hypothesis sizes are `3^|P|`, `4^|P|`
/// and `7^|P|` events respectively.
pub const MAX_L1_ATOMS: usize = 10;
pub const MAX_L2_ATOMS: usize = 8;
pub const MAX_L3_ATOMS: usize = 6;

/// Cap on `|P|` for enumerating the full maximal-precondition deterministic
/// class, which holds `(2^|P|)^(2^|P|)` members.
pub const MAX_CLASS_ATOMS: usize = 2;

/// Which update learner to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnerKind {
    L1,
    L2,
    L3,
}

impl LearnerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LearnerKind::L1 => "l1",
            LearnerKind::L2 => "l2",
            LearnerKind::L3 => "l3",
        }
    }
}

impl FromStr for LearnerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" | "L1" => Ok(LearnerKind::L1),
            "l2" | "L2" => Ok(LearnerKind::L2),
            "l3" | "L3" => Ok(LearnerKind::L3),
            other => Err(Error::Parse(format!("unknown learner kind `{other}`"))),
        }
    }
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A learner's answer after a step: still undecided, or a concrete model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Undecided,
    Identified(ActionModel),
}

impl Verdict {
    pub fn is_identified(&self) -> bool {
        matches!(self, Verdict::Identified(_))
    }

    pub fn model(&self) -> Option<&ActionModel> {
        match self {
            Verdict::Identified(m) => Some(m),
            Verdict::Undecided => None,
        }
    }
}

/// The initial hypothesis model for a learner kind over a vocabulary.
pub fn init_hypothesis(voc: &Vocabulary, kind: LearnerKind) -> Result<ActionModel> {
    let n = voc.len();
    let mut events = Vec::new();
    match kind {
        LearnerKind::L1 => {
            if n > MAX_L1_ATOMS {
                return Err(Error::Capacity {
                    what: "L1 hypothesis",
                    atoms: n,
                    max: MAX_L1_ATOMS,
                });
            }
            let top = voc.top();
            for psi in voc.terms()? {
                events.push(Event::new(top.clone(), psi)?);
            }
        }
        LearnerKind::L2 => {
            if n > MAX_L2_ATOMS {
                return Err(Error::Capacity {
                    what: "L2 hypothesis",
                    atoms: n,
                    max: MAX_L2_ATOMS,
                });
            }
            for s in voc.states() {
                let phi = s.maximal_term();
                // postconditions may only flip literals fixed by phi
                for flips in 0..voc.state_count() as Bits {
                    let pos = flips & !s.bits();
                    let neg = flips & s.bits();
                    events.push(Event::new(phi.clone(), voc.term_from_bits(pos, neg)?)?);
                }
            }
        }
        LearnerKind::L3 => {
            if n > MAX_L3_ATOMS {
                return Err(Error::Capacity {
                    what: "L3 hypothesis",
                    atoms: n,
                    max: MAX_L3_ATOMS,
                });
            }
            // per atom: (pre, post) literal codes that do not share a conjunct
            const CODES: [(u8, u8); 7] = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
            let total = 7usize.pow(n as u32);
            for code in 0..total {
                let mut rest = code;
                let (mut pre_pos, mut pre_neg, mut post_pos, mut post_neg) = (0, 0, 0, 0);
                for i in (0..n).rev() {
                    let (pre_c, post_c) = CODES[rest % 7];
                    rest /= 7;
                    let bit = 1 << i;
                    match pre_c {
                        1 => pre_pos |= bit,
                        2 => pre_neg |= bit,
                        _ => {}
                    }
                    match post_c {
                        1 => post_pos |= bit,
                        2 => post_neg |= bit,
                        _ => {}
                    }
                }
                events.push(Event::new(
                    voc.term_from_bits(pre_pos, pre_neg)?,
                    voc.term_from_bits(post_pos, post_neg)?,
                )?);
            }
        }
    }
    ActionModel::new(voc.clone(), events)
}

/// Deletes every event contradicted by the observation: an event survives
/// iff its precondition fails in the before-state or applying it yields the
/// after-state. Folding over a set of observations is order-independent.
pub fn update_model(model: &ActionModel, obs: &Observation) -> Result<ActionModel> {
    model.vocabulary().check_same(obs.vocabulary())?;
    let before = obs.before().bits();
    let after = obs.after().bits();
    Ok(model.restrict(|e| !e.applicable_bits(before) || e.apply_bits(before) == after))
}

/// Keeps exactly the events whose precondition entails no other event's
/// precondition. Events with strictly stronger preconditions than some
/// other event are dropped; two events sharing a precondition delete each
/// other.
pub fn minimize(model: &ActionModel) -> ActionModel {
    let events = model.events();
    model.restrict(|e| {
        !events
            .iter()
            .any(|other| other != e && e.pre().entails(other.pre()).unwrap_or(false))
    })
}

/// The canonical maximal-precondition conjecture for a prefix: for each
/// observed input state one event per observed outcome, recording exactly
/// the changed literals; unobserved states get a `<chi_s, T>` placeholder so
/// the conjecture stays universally applicable. Once the prefix covers the
/// generating model's transition graph, the conjecture is equivalent to it
/// and stable under further sound observations.
pub fn limit_conjecture(voc: &Vocabulary, prefix: &[Observation]) -> Result<ActionModel> {
    let mut outcomes: BTreeMap<Bits, BTreeSet<Bits>> = BTreeMap::new();
    for obs in prefix {
        voc.check_same(obs.vocabulary())?;
        outcomes
            .entry(obs.before().bits())
            .or_default()
            .insert(obs.after().bits());
    }
    let mut events = Vec::new();
    for s in voc.states() {
        let chi = s.maximal_term();
        match outcomes.get(&s.bits()) {
            Some(afters) => {
                for &after in afters {
                    let delta = s.delta(&voc.state_from_bits(after))?;
                    events.push(Event::new(chi.clone(), delta)?);
                }
            }
            None => events.push(Event::new(chi, voc.top())?),
        }
    }
    ActionModel::new(voc.clone(), events)
}

/// A stepwise, once-defined update learner.
#[derive(Clone, Debug)]
pub struct LearnerState {
    kind: LearnerKind,
    hypothesis: ActionModel,
    observed_inputs: BTreeSet<State>,
    fired: bool,
    steps: usize,
}

impl LearnerState {
    pub fn new(voc: &Vocabulary, kind: LearnerKind) -> Result<Self> {
        Ok(LearnerState {
            kind,
            hypothesis: init_hypothesis(voc, kind)?,
            observed_inputs: BTreeSet::new(),
            fired: false,
            steps: 0,
        })
    }

    pub fn kind(&self) -> LearnerKind {
        self.kind
    }

    /// The surviving hypothesis events.
    pub fn hypothesis(&self) -> &ActionModel {
        &self.hypothesis
    }

    pub fn fired(&self) -> bool {
        self.fired
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn observed_inputs(&self) -> &BTreeSet<State> {
        &self.observed_inputs
    }

    /// Feeds one observation: shrinks the hypothesis, then evaluates the
    /// kind's firing condition. Returns `Identified` at most once over the
    /// learner's lifetime; observations arriving after the verdict are still
    /// absorbed but answered with `Undecided`.
    pub fn step(&mut self, obs: &Observation) -> Result<Verdict> {
        self.hypothesis = update_model(&self.hypothesis, obs)?;
        self.observed_inputs.insert(obs.before().clone());
        self.steps += 1;
        if self.fired {
            return Ok(Verdict::Undecided);
        }
        let triggered = match self.kind {
            LearnerKind::L1 => self.hypothesis.len() == 1,
            LearnerKind::L2 => {
                // events are sorted, so equal preconditions are adjacent
                self.hypothesis
                    .events()
                    .windows(2)
                    .all(|w| w[0].pre() != w[1].pre())
            }
            LearnerKind::L3 => {
                self.observed_inputs.len() == self.hypothesis.vocabulary().state_count()
            }
        };
        if triggered {
            let candidate = match self.kind {
                LearnerKind::L3 => minimize(&self.hypothesis),
                _ => self.hypothesis.clone(),
            };
            // only models of the hypothesis class are ever announced
            if candidate.is_universally_applicable() {
                self.fired = true;
                return Ok(Verdict::Identified(candidate));
            }
        }
        Ok(Verdict::Undecided)
    }
}

/// A finite class of pairwise-inequivalent models together with a tell-tale
/// observation set per member.
#[derive(Clone, Debug)]
pub struct ModelClass {
    members: Vec<ActionModel>,
    tell_tales: Vec<BTreeSet<Observation>>,
}

impl ModelClass {
    /// Builds a class of deterministic, universally applicable models with
    /// their transition graphs as tell-tales. Members equivalent to an
    /// earlier member are dropped.
    pub fn deterministic(members: Vec<ActionModel>) -> Result<Self> {
        let mut kept: Vec<ActionModel> = Vec::new();
        let mut tell_tales = Vec::new();
        for m in members {
            if let Some(first) = kept.first() {
                first.vocabulary().check_same(m.vocabulary())?;
            }
            let tt = dftt(&m)?;
            let mut duplicate = false;
            for old in &kept {
                if old.equivalent(&m)? {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                kept.push(m);
                tell_tales.push(tt);
            }
        }
        Ok(ModelClass {
            members: kept,
            tell_tales,
        })
    }

    /// Every deterministic, normal, universally applicable model with
    /// maximal preconditions over `voc`: one member per transition function,
    /// `(2^|P|)^(2^|P|)` in total. Capped at [`MAX_CLASS_ATOMS`] atoms.
    pub fn maximal_deterministic(voc: &Vocabulary) -> Result<Self> {
        let n = voc.len();
        if n > MAX_CLASS_ATOMS {
            return Err(Error::Capacity {
                what: "maximal deterministic class",
                atoms: n,
                max: MAX_CLASS_ATOMS,
            });
        }
        let states = voc.state_count();
        let mut members = Vec::new();
        let total = (states as u64).pow(states as u32);
        for mut code in 0..total {
            let mut events = Vec::new();
            for s in voc.states() {
                let image = (code % states as u64) as Bits;
                code /= states as u64;
                let delta = s.delta(&voc.state_from_bits(image))?;
                events.push(Event::new(s.maximal_term(), delta)?);
            }
            members.push(ActionModel::new(voc.clone(), events)?);
        }
        ModelClass::deterministic(members)
    }

    pub fn members(&self) -> &[ActionModel] {
        &self.members
    }

    pub fn tell_tale(&self, index: usize) -> &BTreeSet<Observation> {
        &self.tell_tales[index]
    }

    /// Scans members in order and identifies the first whose tell-tale is
    /// contained in the prefix and for which the prefix is sound. The
    /// soundness conjunct guards user-supplied classes whose tell-tales are
    /// not separating; for true tell-tales it is redundant.
    pub fn tell_tale_step(&self, prefix: &[Observation]) -> Result<Verdict> {
        let seen: BTreeSet<&Observation> = prefix.iter().collect();
        for (member, tale) in self.members.iter().zip(&self.tell_tales) {
            if tale.iter().all(|o| seen.contains(o)) && is_sound(prefix, member)? {
                return Ok(Verdict::Identified(member.clone()));
            }
        }
        Ok(Verdict::Undecided)
    }
}
