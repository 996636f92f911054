//! Built-in scenarios: small hidden targets for exercising the learners.

use crate::action::{ActionModel, Event};
use crate::library::ActionLibrary;
use crate::logic::Vocabulary;
use crate::{Error, Result};

/// What a scenario asks the learner to recover.
#[derive(Clone, Debug)]
pub enum Target {
    Model(ActionModel),
    Library(ActionLibrary),
}

/// A named vocabulary/target pair with a human note.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub vocabulary: Vocabulary,
    pub target: Target,
    pub notes: String,
}

impl Scenario {
    fn model(name: &str, voc: Vocabulary, model: ActionModel, notes: &str) -> Scenario {
        Scenario {
            name: name.to_owned(),
            vocabulary: voc,
            target: Target::Model(model),
            notes: notes.to_owned(),
        }
    }
}

/// Names of the built-in scenarios; `counter-N` works for any N up to the
/// vocabulary limit.
pub fn builtin_names() -> &'static [&'static str] {
    &[
        "coin",
        "pushbutton-noop",
        "pushbutton-on",
        "pushbutton-off",
        "pushbutton-flip",
        "counter-2",
        "counter-3",
        "circuit",
    ]
}

/// The increment action on an `n`-bit counter, in maximal-precondition
/// form: one event per bit configuration, wrapping at the top.
pub fn counter(n: usize) -> Result<ActionModel> {
    let voc = Vocabulary::new((1..=n).map(|i| format!("c{i}")))?;
    let wrap = voc.state_count();
    let mut events = Vec::new();
    for s in voc.states() {
        let next = voc.state_from_bits(((s.bits() as usize + 1) % wrap) as u32);
        events.push(Event::new(s.maximal_term(), s.delta(&next)?)?);
    }
    ActionModel::new(voc, events)
}

/// The two-switch circuit library: `flip1`/`flip2` toggle one switch each,
/// and the light is on exactly when both switches are closed.
pub fn circuit() -> Result<ActionLibrary> {
    let voc = Vocabulary::new(["s1", "s2", "l"])?;
    let flip1 = ActionModel::parse(
        &voc,
        &[
            ("-s1&-s2", "s1&-l"),
            ("-s1&s2", "s1&l"),
            ("s1&-s2", "-s1&-l"),
            ("s1&s2", "-s1&-l"),
        ],
    )?;
    let flip2 = ActionModel::parse(
        &voc,
        &[
            ("-s1&-s2", "s2&-l"),
            ("-s1&s2", "-s2&-l"),
            ("s1&-s2", "s2&l"),
            ("s1&s2", "-s2&-l"),
        ],
    )?;
    ActionLibrary::new(
        voc,
        [("flip1".to_string(), flip1), ("flip2".to_string(), flip2)],
    )
}

/// Looks up a built-in scenario by name.
pub fn builtin(name: &str) -> Result<Scenario> {
    match name {
        "coin" => {
            let voc = Vocabulary::new(["h"])?;
            let model = ActionModel::parse(&voc, &[("T", "h"), ("T", "-h")])?;
            Ok(Scenario::model(
                name,
                voc,
                model,
                "a fair coin toss: heads or tails, non-deterministically",
            ))
        }
        "pushbutton-noop" => {
            let voc = Vocabulary::new(["p"])?;
            let model = ActionModel::parse(&voc, &[("p", "T"), ("-p", "T")])?;
            Ok(Scenario::model(
                name,
                voc,
                model,
                "a button that does not affect the light",
            ))
        }
        "pushbutton-on" => {
            let voc = Vocabulary::new(["p"])?;
            let model = ActionModel::parse(&voc, &[("p", "T"), ("-p", "p")])?;
            Ok(Scenario::model(
                name,
                voc,
                model,
                "a button that turns the light on unconditionally",
            ))
        }
        "pushbutton-off" => {
            let voc = Vocabulary::new(["p"])?;
            let model = ActionModel::parse(&voc, &[("p", "-p"), ("-p", "T")])?;
            Ok(Scenario::model(
                name,
                voc,
                model,
                "a button that turns the light off unconditionally",
            ))
        }
        "pushbutton-flip" => {
            let voc = Vocabulary::new(["p"])?;
            let model = ActionModel::parse(&voc, &[("p", "-p"), ("-p", "p")])?;
            Ok(Scenario::model(
                name,
                voc,
                model,
                "an on/off button that flips the light",
            ))
        }
        "circuit" => {
            let lib = circuit()?;
            Ok(Scenario {
                name: name.to_owned(),
                vocabulary: lib.vocabulary().clone(),
                target: Target::Library(lib),
                notes: "two switches in series with a bulb; the light is on \
                        exactly when both switches are closed"
                    .to_owned(),
            })
        }
        _ => {
            if let Some(n) = name.strip_prefix("counter-") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::UnknownScenario(name.to_owned()))?;
                if n == 0 {
                    return Err(Error::UnknownScenario(name.to_owned()));
                }
                let model = counter(n)?;
                let voc = model.vocabulary().clone();
                return Ok(Scenario::model(
                    name,
                    voc,
                    model,
                    "the increment action of a binary counter",
                ));
            }
            Err(Error::UnknownScenario(name.to_owned()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_resolve() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            assert_eq!(&s.name, name);
        }
        assert!(matches!(
            builtin("nonesuch"),
            Err(Error::UnknownScenario(_))
        ));
        assert!(builtin("counter-0").is_err());
    }

    #[test]
    fn counter_two_matches_the_increment_table() {
        let m = counter(2).unwrap();
        let rendered: Vec<String> = m.graph().iter().map(|o| o.to_string()).collect();
        assert_eq!(
            rendered,
            [
                "{} -> {c1}",
                "{c1} -> {c2}",
                "{c2} -> {c1,c2}",
                "{c1,c2} -> {}"
            ]
        );
        let flags = m.classify();
        assert!(flags.deterministic && flags.universally_applicable);
        assert!(flags.maximal_preconditions && flags.normal);
    }

    #[test]
    fn circuit_library_is_deterministic_and_total() {
        let lib = circuit().unwrap();
        for name in ["flip1", "flip2"] {
            let flags = lib.model(name).unwrap().classify();
            assert!(flags.deterministic, "{name} must be deterministic");
            assert!(flags.universally_applicable);
        }
        // closing both switches turns the light on
        let voc = lib.vocabulary().clone();
        let s0 = voc.empty_state();
        let after1 = lib.model("flip1").unwrap().outcomes(&s0);
        assert_eq!(after1.len(), 1);
        let s1 = after1.into_iter().next().unwrap();
        assert_eq!(s1.to_string(), "{s1}");
        let after2 = lib.model("flip2").unwrap().outcomes(&s1);
        let s2 = after2.into_iter().next().unwrap();
        assert_eq!(s2.to_string(), "{s1,s2,l}");
    }
}
