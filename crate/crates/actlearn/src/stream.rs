//! Observations, seeded generation of sound-and-complete observation
//! streams from a target model, prefix soundness and coverage checks, and
//! definite finite tell-tale extraction.
//!
//! Streams are realized as deterministic generators: a [`StreamSpec`] fixes
//! the target model, a seed, and a policy, and [`generate_prefix`] produces
//! any finite prefix of the induced infinite stream. Cyclic policies emit
//! the target's full transition graph once per cycle, so every prefix that
//! spans a cycle is complete as well as sound.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::action::ActionModel;
use crate::logic::{State, Vocabulary};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// A single observation: the state before and after one execution of the
/// hidden action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    before: State,
    after: State,
}

impl Observation {
    pub fn new(before: State, after: State) -> Result<Self> {
        before.vocabulary().check_same(after.vocabulary())?;
        Ok(Observation { before, after })
    }

    pub fn before(&self) -> &State {
        &self.before
    }

    pub fn after(&self) -> &State {
        &self.after
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        self.before.vocabulary()
    }

    /// Parses a line like `{p} -> {}`.
    pub fn parse(voc: &Vocabulary, line: &str) -> Result<Self> {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("expected `{{..}} -> {{..}}`, got `{line}`")))?;
        Observation::new(voc.parse_state(lhs)?, voc.parse_state(rhs)?)
    }
}

impl PartialOrd for Observation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Observation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.before
            .cmp(&other.before)
            .then_with(|| self.after.cmp(&other.after))
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.before, self.after)
    }
}

/// How a stream orders the transitions it emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamPolicy {
    /// Repeats the transition graph in canonical order.
    CyclicCanonical,
    /// Repeats the transition graph, freshly shuffled each cycle.
    CyclicShuffled,
    /// Draws transitions independently and uniformly from the graph.
    IidUniform,
}

impl FromStr for StreamPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic-canonical" => Ok(StreamPolicy::CyclicCanonical),
            "cyclic-shuffled" => Ok(StreamPolicy::CyclicShuffled),
            "iid-uniform" => Ok(StreamPolicy::IidUniform),
            other => Err(Error::Parse(format!("unknown stream policy `{other}`"))),
        }
    }
}

impl fmt::Display for StreamPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StreamPolicy::CyclicCanonical => "cyclic-canonical",
            StreamPolicy::CyclicShuffled => "cyclic-shuffled",
            StreamPolicy::IidUniform => "iid-uniform",
        })
    }
}

/// A deterministic description of an infinite observation stream.
#[derive(Clone, Debug)]
pub struct StreamSpec {
    pub target: ActionModel,
    pub seed: u64,
    pub policy: StreamPolicy,
}

impl StreamSpec {
    pub fn new(target: ActionModel, seed: u64, policy: StreamPolicy) -> Self {
        StreamSpec {
            target,
            seed,
            policy,
        }
    }
}

/// Returns the first `length` observations of the stream described by
/// `spec`. A pure function of `(spec, length)`: equal seeds yield equal
/// prefixes, and longer prefixes extend shorter ones.
///
/// The target must be universally applicable so that every state has an
/// outcome to observe.
pub fn generate_prefix(spec: &StreamSpec, length: usize) -> Result<Vec<Observation>> {
    if !spec.target.is_universally_applicable() {
        return Err(Error::NotUniversallyApplicable);
    }
    let graph: Vec<Observation> = spec.target.graph().into_iter().collect();
    if graph.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = SplitMix64::new(spec.seed);
    let mut out = Vec::with_capacity(length);
    match spec.policy {
        StreamPolicy::CyclicCanonical => {
            for i in 0..length {
                out.push(graph[i % graph.len()].clone());
            }
        }
        StreamPolicy::CyclicShuffled => {
            while out.len() < length {
                let mut cycle = graph.clone();
                rng.shuffle(&mut cycle);
                let take = (length - out.len()).min(cycle.len());
                out.extend(cycle.into_iter().take(take));
            }
        }
        StreamPolicy::IidUniform => {
            for _ in 0..length {
                out.push(graph[rng.below(graph.len())].clone());
            }
        }
    }
    Ok(out)
}

/// True iff every observation in the prefix is a possible transition of
/// `model`.
pub fn is_sound(prefix: &[Observation], model: &ActionModel) -> Result<bool> {
    for obs in prefix {
        model.vocabulary().check_same(obs.vocabulary())?;
        if !model
            .outcome_bits(obs.before.bits())
            .contains(&obs.after.bits())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every transition of `model` occurs in the prefix.
pub fn covers_graph(prefix: &[Observation], model: &ActionModel) -> Result<bool> {
    for obs in prefix {
        model.vocabulary().check_same(obs.vocabulary())?;
    }
    let seen: BTreeSet<&Observation> = prefix.iter().collect();
    Ok(model.graph().iter().all(|o| seen.contains(o)))
}

/// The definite finite tell-tale of a deterministic, universally applicable
/// model: its full transition graph. Within the deterministic class, no
/// inequivalent model is sound for this set, so observing all of it
/// identifies the model conclusively.
pub fn dftt(model: &ActionModel) -> Result<BTreeSet<Observation>> {
    let flags = model.classify();
    if !flags.deterministic {
        return Err(Error::NotDeterministic);
    }
    if !flags.universally_applicable {
        return Err(Error::NotUniversallyApplicable);
    }
    Ok(model.graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flip() -> (Vocabulary, ActionModel) {
        let voc = Vocabulary::new(["p"]).unwrap();
        let m = ActionModel::parse(&voc, &[("p", "-p"), ("-p", "p")]).unwrap();
        (voc, m)
    }

    fn coin() -> (Vocabulary, ActionModel) {
        let voc = Vocabulary::new(["h"]).unwrap();
        let m = ActionModel::parse(&voc, &[("T", "h"), ("T", "-h")]).unwrap();
        (voc, m)
    }

    #[test]
    fn cyclic_canonical_prefix_of_flip() {
        let (_, m) = flip();
        let spec = StreamSpec::new(m, 0, StreamPolicy::CyclicCanonical);
        let prefix = generate_prefix(&spec, 2).unwrap();
        let rendered: Vec<String> = prefix.iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, ["{} -> {p}", "{p} -> {}"]);
    }

    #[test]
    fn cyclic_canonical_wraps_around() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let identity = ActionModel::parse(&voc, &[("T", "T")]).unwrap();
        let spec = StreamSpec::new(identity, 9, StreamPolicy::CyclicCanonical);
        let prefix = generate_prefix(&spec, 3).unwrap();
        let rendered: Vec<String> = prefix.iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, ["{} -> {}", "{p} -> {p}", "{} -> {}"]);
    }

    #[test]
    fn counter_two_canonical_stream_matches_increment_order() {
        let voc = Vocabulary::new(["c1", "c2"]).unwrap();
        let mut events = Vec::new();
        for s in voc.states() {
            let next = voc.state_from_bits(((s.bits() as usize + 1) & 3) as u32);
            events.push(
                crate::action::Event::new(s.maximal_term(), s.delta(&next).unwrap()).unwrap(),
            );
        }
        let counter = ActionModel::new(voc.clone(), events).unwrap();
        let spec = StreamSpec::new(counter, 0, StreamPolicy::CyclicCanonical);
        let rendered: Vec<String> = generate_prefix(&spec, 4)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(
            rendered,
            [
                "{} -> {c1}",
                "{c1} -> {c2}",
                "{c2} -> {c1,c2}",
                "{c1,c2} -> {}"
            ]
        );
    }

    #[test]
    fn generation_requires_universal_applicability() {
        let voc = Vocabulary::new(["p"]).unwrap();
        let partial = ActionModel::parse(&voc, &[("p", "-p")]).unwrap();
        let spec = StreamSpec::new(partial, 0, StreamPolicy::CyclicCanonical);
        assert!(matches!(
            generate_prefix(&spec, 1),
            Err(Error::NotUniversallyApplicable)
        ));
    }

    #[test]
    fn prefixes_are_deterministic_and_monotone() {
        let (_, m) = coin();
        for policy in [
            StreamPolicy::CyclicCanonical,
            StreamPolicy::CyclicShuffled,
            StreamPolicy::IidUniform,
        ] {
            for seed in 0..5 {
                let spec = StreamSpec::new(m.clone(), seed, policy);
                let a = generate_prefix(&spec, 13).unwrap();
                let b = generate_prefix(&spec, 13).unwrap();
                assert_eq!(a, b);
                let shorter = generate_prefix(&spec, 7).unwrap();
                assert_eq!(&a[..7], &shorter[..]);
            }
        }
    }

    #[test]
    fn generated_prefixes_are_sound_and_cyclic_ones_cover() {
        let (_, m) = coin();
        for policy in [StreamPolicy::CyclicCanonical, StreamPolicy::CyclicShuffled] {
            for seed in 0..10 {
                let spec = StreamSpec::new(m.clone(), seed, policy);
                let cycle = m.graph().len();
                let prefix = generate_prefix(&spec, cycle).unwrap();
                assert!(is_sound(&prefix, &m).unwrap());
                assert!(covers_graph(&prefix, &m).unwrap());
                assert!(!covers_graph(&prefix[..cycle - 1], &m).unwrap());
            }
        }
        let spec = StreamSpec::new(m.clone(), 3, StreamPolicy::IidUniform);
        let prefix = generate_prefix(&spec, 50).unwrap();
        assert!(is_sound(&prefix, &m).unwrap());
        // 50 draws from a 4-element graph: coverage is overwhelmingly likely
        assert!(covers_graph(&prefix, &m).unwrap());
    }

    #[test]
    fn soundness_examples() {
        let (voc, m) = coin();
        let heads = Observation::parse(&voc, "{} -> {h}").unwrap();
        assert!(is_sound(std::slice::from_ref(&heads), &m).unwrap());
        let fake = ActionModel::parse(&voc, &[("T", "-h")]).unwrap();
        assert!(!is_sound(&[heads], &fake).unwrap());
        assert!(is_sound(&[], &m).unwrap());
        assert!(is_sound(&[], &fake).unwrap());
    }

    #[test]
    fn coverage_examples() {
        let (_, m) = flip();
        let graph: Vec<Observation> = m.graph().into_iter().rev().collect();
        assert!(covers_graph(&graph, &m).unwrap());
        assert!(!covers_graph(&graph[..1], &m).unwrap());

        let (_, c) = coin();
        let graph: Vec<Observation> = c.graph().into_iter().collect();
        assert!(covers_graph(&graph, &c).unwrap());
    }

    #[test]
    fn dftt_of_deterministic_models() {
        let (_, m) = flip();
        let rendered: Vec<String> = dftt(&m).unwrap().iter().map(|o| o.to_string()).collect();
        assert_eq!(rendered, ["{} -> {p}", "{p} -> {}"]);

        let voc = Vocabulary::new(["p"]).unwrap();
        let identity = ActionModel::parse(&voc, &[("T", "T")]).unwrap();
        let rendered: Vec<String> = dftt(&identity)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(rendered, ["{} -> {}", "{p} -> {p}"]);

        let on_button = ActionModel::parse(&voc, &[("T", "p")]).unwrap();
        let rendered: Vec<String> = dftt(&on_button)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(rendered, ["{} -> {p}", "{p} -> {p}"]);
    }

    #[test]
    fn dftt_rejects_out_of_class_models() {
        let (_, c) = coin();
        assert!(matches!(dftt(&c), Err(Error::NotDeterministic)));

        let voc = Vocabulary::new(["p"]).unwrap();
        let partial = ActionModel::parse(&voc, &[("p", "-p")]).unwrap();
        assert!(matches!(
            dftt(&partial),
            Err(Error::NotUniversallyApplicable)
        ));
    }

    #[test]
    fn observation_parse_round_trip() {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        for line in ["{} -> {p}", "{p,q} -> {}", "{q} -> {p,q}"] {
            let obs = Observation::parse(&voc, line).unwrap();
            assert_eq!(obs.to_string(), line);
        }
        assert!(Observation::parse(&voc, "{p}").is_err());
    }
}
