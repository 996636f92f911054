//! Propositional action models, the product update, and learners that infer
//! action models from streams of state-transition observations.
//!
//! An [`ActionModel`] is a finite set of events, each pairing a precondition
//! with a postcondition (both conjunctions of literals). Applying an action
//! model to a [`State`] yields the set of possible successor states. The
//! [`learner`] module provides update learners that start from a hypothesis
//! space of candidate events and delete events contradicted by observations,
//! announcing a model once their firing condition holds, plus a limit learner
//! and a generic tell-tale learner over finite model classes. The [`library`]
//! module lifts learning to named action libraries fed by `(state, name,
//! state)` triples.
//!
//! All value types are immutable after construction and cheap to clone;
//! operations are pure, so instances can be shared freely across threads.
//!
//! Learning the on/off button from two observations:
//!
//! ```
//! use actlearn::{LearnerKind, LearnerState, Observation, Verdict, Vocabulary};
//!
//! let voc = Vocabulary::new(["p"])?;
//! let mut learner = LearnerState::new(&voc, LearnerKind::L2)?;
//!
//! // pressing the button turns the light on, then off again
//! let first = learner.step(&Observation::parse(&voc, "{} -> {p}")?)?;
//! assert_eq!(first, Verdict::Undecided);
//! match learner.step(&Observation::parse(&voc, "{p} -> {}")?)? {
//!     Verdict::Identified(model) => {
//!         assert_eq!(model.to_string(), "{<p, -p>, <-p, p>}");
//!     }
//!     Verdict::Undecided => unreachable!("two observations pin the button down"),
//! }
//! # Ok::<(), actlearn::Error>(())
//! ```

pub mod action;
pub mod json;
pub mod learner;
pub mod library;
pub mod logic;
mod rng;
pub mod scenario;
pub mod stream;
pub mod suite;

pub use action::{ActionModel, Event, RawActionModel, RawEvent, TypeFlags};
pub use learner::{
    init_hypothesis, limit_conjecture, minimize, update_model, LearnerKind, LearnerState,
    ModelClass, Verdict,
};
pub use library::{
    generate_library_prefix, substream, ActionLibrary, LibraryLearner, LibraryVerdict,
    TripleObservation,
};
pub use logic::{Formula, State, Term, Vocabulary, MAX_ATOMS};
pub use scenario::{Scenario, Target};
pub use stream::{
    covers_graph, dftt, generate_prefix, is_sound, Observation, StreamPolicy, StreamSpec,
};

/// Errors shared by every module in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vocabulary holds {size} atoms, more than the supported maximum of {max}")]
    TooManyAtoms { size: usize, max: usize },
    #[error("duplicate atom `{0}` in vocabulary")]
    DuplicateAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{0}` occurs both positively and negatively in a term")]
    InconsistentTerm(String),
    #[error("operands belong to different vocabularies")]
    VocabularyMismatch,
    #[error("{what} is not feasible over {atoms} atoms (maximum {max})")]
    Capacity {
        what: &'static str,
        atoms: usize,
        max: usize,
    },
    #[error("event <{event}> is not applicable in state {state}")]
    Inapplicable { event: String, state: String },
    #[error("action model is not universally applicable")]
    NotUniversallyApplicable,
    #[error("action model is not deterministic")]
    NotDeterministic,
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("unknown action name `{0}`")]
    UnknownAction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
