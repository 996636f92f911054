//! Property tests over randomly generated formulas, terms, models and
//! observation sequences.

use proptest::prelude::*;

use actlearn::{
    generate_prefix, init_hypothesis, is_sound, minimize, update_model, ActionModel, Event,
    Formula, LearnerKind, Observation, StreamPolicy, StreamSpec, Vocabulary,
};

fn voc3() -> Vocabulary {
    Vocabulary::new(["p", "q", "r"]).unwrap()
}

#[derive(Clone, Debug)]
enum FExpr {
    T,
    F,
    Atom(usize),
    Not(Box<FExpr>),
    And(Box<FExpr>, Box<FExpr>),
    Or(Box<FExpr>, Box<FExpr>),
}

impl FExpr {
    fn build(&self, voc: &Vocabulary) -> Formula {
        match self {
            FExpr::T => voc.tt(),
            FExpr::F => voc.ff(),
            FExpr::Atom(i) => voc.atom(voc.atom_name(i % voc.len())).unwrap(),
            FExpr::Not(g) => !g.build(voc),
            FExpr::And(a, b) => a.build(voc) & b.build(voc),
            FExpr::Or(a, b) => a.build(voc) | b.build(voc),
        }
    }
}

fn formula_strategy() -> impl Strategy<Value = FExpr> {
    let leaf = prop_oneof![
        Just(FExpr::T),
        Just(FExpr::F),
        (0usize..3).prop_map(FExpr::Atom),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|g| FExpr::Not(Box::new(g))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FExpr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| FExpr::Or(Box::new(a), Box::new(b))),
        ]
    })
}

/// A random consistent term as (code per atom): 0 absent, 1 positive, 2 negative.
fn term_strategy(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..3, n)
}

fn term_from_codes(voc: &Vocabulary, codes: &[u8]) -> actlearn::Term {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, c) in codes.iter().enumerate() {
        match c {
            1 => pos.push(voc.atom_name(i).to_owned()),
            2 => neg.push(voc.atom_name(i).to_owned()),
            _ => {}
        }
    }
    voc.term(pos, neg).unwrap()
}

fn model_strategy(n: usize) -> impl Strategy<Value = Vec<(Vec<u8>, Vec<u8>)>> {
    proptest::collection::vec((term_strategy(n), term_strategy(n)), 0..5)
}

fn model_from_spec(voc: &Vocabulary, spec: &[(Vec<u8>, Vec<u8>)]) -> ActionModel {
    let events: Vec<Event> = spec
        .iter()
        .map(|(pre, post)| {
            Event::new(term_from_codes(voc, pre), term_from_codes(voc, post)).unwrap()
        })
        .collect();
    ActionModel::new(voc.clone(), events).unwrap()
}

proptest! {
    /// The DNF of a formula agrees with direct evaluation in every state.
    #[test]
    fn dnf_matches_eval(expr in formula_strategy()) {
        let voc = voc3();
        let f = expr.build(&voc);
        let disjuncts = f.dnf();
        for s in voc.states() {
            let via_dnf = disjuncts.iter().any(|d| s.satisfies(d).unwrap());
            prop_assert_eq!(f.eval(&s).unwrap(), via_dnf);
        }
    }

    /// Terms survive a render/parse round trip.
    #[test]
    fn term_text_round_trips(codes in term_strategy(3)) {
        let voc = voc3();
        let t = term_from_codes(&voc, &codes);
        prop_assert_eq!(voc.parse_term(&t.to_string()).unwrap(), t);
    }

    /// Updating with two observations commutes, for every learner kind.
    #[test]
    fn update_commutes(
        kind in prop_oneof![Just(LearnerKind::L1), Just(LearnerKind::L2), Just(LearnerKind::L3)],
        a in 0u32..4, b in 0u32..4, c in 0u32..4, d in 0u32..4,
    ) {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        let states: Vec<_> = voc.states().collect();
        let o1 = Observation::new(states[a as usize].clone(), states[b as usize].clone()).unwrap();
        let o2 = Observation::new(states[c as usize].clone(), states[d as usize].clone()).unwrap();
        let init = init_hypothesis(&voc, kind).unwrap();
        let ab = update_model(&update_model(&init, &o1).unwrap(), &o2).unwrap();
        let ba = update_model(&update_model(&init, &o2).unwrap(), &o1).unwrap();
        prop_assert_eq!(ab, ba);
    }

    /// Minimization is idempotent.
    #[test]
    fn minimize_is_idempotent(spec in model_strategy(3)) {
        let voc = voc3();
        let m = model_from_spec(&voc, &spec);
        let once = minimize(&m);
        prop_assert_eq!(minimize(&once), once);
    }

    /// The semantic type flags agree with the outcome sets in every state:
    /// deterministic means at most one outcome, universally applicable
    /// means at least one.
    #[test]
    fn classification_matches_outcome_counts(spec in model_strategy(3)) {
        let voc = voc3();
        let m = model_from_spec(&voc, &spec);
        let flags = m.classify();
        let counts: Vec<usize> = voc.states().map(|s| m.outcomes(&s).len()).collect();
        if flags.deterministic {
            prop_assert!(counts.iter().all(|&n| n <= 1));
        }
        prop_assert_eq!(flags.universally_applicable, counts.iter().all(|&n| n >= 1));
    }

    /// Completion keeps outcomes on covered states and adds fixpoints on
    /// uncovered ones.
    #[test]
    fn make_universal_extends_conservatively(spec in model_strategy(3)) {
        let voc = voc3();
        let m = model_from_spec(&voc, &spec);
        let total = m.make_universal();
        prop_assert!(total.is_universally_applicable());
        for s in voc.states() {
            let before = m.outcomes(&s);
            let after = total.outcomes(&s);
            if before.is_empty() {
                prop_assert_eq!(after.len(), 1);
                prop_assert!(after.contains(&s));
            } else {
                prop_assert_eq!(before, after);
            }
        }
    }

    /// Equivalence is reflexive and symmetric, and transitive on triples.
    #[test]
    fn equivalence_is_an_equivalence(
        s1 in model_strategy(2), s2 in model_strategy(2), s3 in model_strategy(2)
    ) {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        let a = model_from_spec(&voc, &s1);
        let b = model_from_spec(&voc, &s2);
        let c = model_from_spec(&voc, &s3);
        prop_assert!(a.equivalent(&a).unwrap());
        prop_assert_eq!(a.equivalent(&b).unwrap(), b.equivalent(&a).unwrap());
        if a.equivalent(&b).unwrap() && b.equivalent(&c).unwrap() {
            prop_assert!(a.equivalent(&c).unwrap());
        }
    }

    /// Every generated prefix is sound for its target.
    #[test]
    fn generated_prefixes_are_sound(
        spec in model_strategy(2),
        seed in any::<u64>(),
        policy in prop_oneof![
            Just(StreamPolicy::CyclicCanonical),
            Just(StreamPolicy::CyclicShuffled),
            Just(StreamPolicy::IidUniform),
        ],
        len in 0usize..40,
    ) {
        let voc = Vocabulary::new(["p", "q"]).unwrap();
        let target = model_from_spec(&voc, &spec).make_universal();
        let prefix = generate_prefix(&StreamSpec::new(target.clone(), seed, policy), len).unwrap();
        prop_assert_eq!(prefix.len(), len);
        prop_assert!(is_sound(&prefix, &target).unwrap());
    }
}
