//! The verification battery: exhaustive and randomized checks of the
//! identifiability guarantees at small vocabulary sizes.
//!
//! Each check pins its thresholds (target counts, seed counts, step budgets,
//! wall-clock limits) in code. The `suite` CLI command prints one line per
//! check; the `acceptance` integration test asserts that every check passes.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::action::{ActionModel, Event, RawActionModel, RawEvent};
use crate::learner::{
    init_hypothesis, limit_conjecture, minimize, update_model, LearnerKind, LearnerState,
    ModelClass, Verdict,
};
use crate::library::{generate_library_prefix, LibraryLearner, LibraryVerdict};
use crate::logic::{Formula, State, Term, Vocabulary};
use crate::rng::SplitMix64;
use crate::scenario;
use crate::stream::{dftt, generate_prefix, is_sound, Observation, StreamPolicy, StreamSpec};

pub const CHECK_COUNT: usize = 11;

/// Result of one verification check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CheckOutcome {
    /// One human-readable pass/fail line.
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<24} {:>9.2?} (limit {:?}) — {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.limit,
            self.detail
        )
    }
}

/// Collects failure messages for one check.
#[derive(Default)]
struct Facts {
    fails: Vec<String>,
}

impl Facts {
    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond && self.fails.len() < 8 {
            self.fails.push(msg());
        }
    }

    fn finish(
        self,
        id: usize,
        name: &'static str,
        started: Instant,
        limit: Duration,
        ok_detail: String,
    ) -> CheckOutcome {
        let elapsed = started.elapsed();
        let mut fails = self.fails;
        if elapsed > limit {
            fails.push(format!("elapsed {elapsed:?} exceeds limit {limit:?}"));
        }
        CheckOutcome {
            id,
            name,
            passed: fails.is_empty(),
            detail: if fails.is_empty() {
                ok_detail
            } else {
                fails.join("; ")
            },
            elapsed,
            limit,
        }
    }
}

/// Runs every check in order.
pub fn run_all() -> Vec<CheckOutcome> {
    (1..=CHECK_COUNT).map(|id| run_check(id).unwrap()).collect()
}

/// Runs one check by its 1-based id.
pub fn run_check(id: usize) -> Option<CheckOutcome> {
    match id {
        1 => Some(pushbutton_replay()),
        2 => Some(counter_replay()),
        3 => Some(circuit_library()),
        4 => Some(l2_exhaustive()),
        5 => Some(l1_exhaustive()),
        6 => Some(l3_sampled()),
        7 => Some(nondeterministic_guard()),
        8 => Some(limit_stability()),
        9 => Some(normalization()),
        10 => Some(telltale_separation()),
        11 => Some(hypothesis_counts()),
        _ => None,
    }
}

/// What happened while driving a learner over a fixed observation sequence.
struct Drive {
    fire_step: Option<usize>,
    verdict: Option<ActionModel>,
    verdict_count: usize,
    coverage_step: Option<usize>,
    distinct_at_coverage: usize,
    distinct_at_fire: usize,
    inputs_covered_step: Option<usize>,
}

fn drive(
    voc: &Vocabulary,
    kind: LearnerKind,
    target: &ActionModel,
    prefix: &[Observation],
) -> Drive {
    let graph = target.graph();
    let mut learner = LearnerState::new(voc, kind).expect("hypothesis fits");
    let mut seen: BTreeSet<Observation> = BTreeSet::new();
    let mut inputs: BTreeSet<State> = BTreeSet::new();
    let mut out = Drive {
        fire_step: None,
        verdict: None,
        verdict_count: 0,
        coverage_step: None,
        distinct_at_coverage: 0,
        distinct_at_fire: 0,
        inputs_covered_step: None,
    };
    for (i, obs) in prefix.iter().enumerate() {
        let step = i + 1;
        seen.insert(obs.clone());
        inputs.insert(obs.before().clone());
        if out.coverage_step.is_none() && graph.iter().all(|o| seen.contains(o)) {
            out.coverage_step = Some(step);
            out.distinct_at_coverage = seen.len();
        }
        if out.inputs_covered_step.is_none() && inputs.len() == voc.state_count() {
            out.inputs_covered_step = Some(step);
        }
        if let Verdict::Identified(m) = learner.step(obs).expect("same vocabulary") {
            out.verdict_count += 1;
            if out.fire_step.is_none() {
                out.fire_step = Some(step);
                out.distinct_at_fire = seen.len();
                out.verdict = Some(m);
            }
        }
    }
    out
}

/// Every deterministic, normal, universally applicable, maximal-precondition
/// model over `voc`: one per transition function.
fn maximal_models(voc: &Vocabulary) -> Vec<ActionModel> {
    let states = voc.state_count();
    let total = (states as u64).pow(states as u32);
    (0..total)
        .map(|mut code| {
            let events: Vec<Event> = voc
                .states()
                .map(|s| {
                    let image = (code % states as u64) as u32;
                    code /= states as u64;
                    let to = voc.state_from_bits(image);
                    Event::new(s.maximal_term(), s.delta(&to).unwrap()).unwrap()
                })
                .collect();
            ActionModel::new(voc.clone(), events).unwrap()
        })
        .collect()
}

/// The maximal-precondition model of one random transition function.
fn random_function_model(voc: &Vocabulary, rng: &mut SplitMix64) -> ActionModel {
    let states = voc.state_count();
    let events: Vec<Event> = voc
        .states()
        .map(|s| {
            let to = voc.state_from_bits(rng.below(states) as u32);
            Event::new(s.maximal_term(), s.delta(&to).unwrap()).unwrap()
        })
        .collect();
    ActionModel::new(voc.clone(), events).unwrap()
}

fn random_term(voc: &Vocabulary, rng: &mut SplitMix64) -> Term {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for i in 0..voc.len() {
        match rng.below(3) {
            1 => pos.push(voc.atom_name(i).to_owned()),
            2 => neg.push(voc.atom_name(i).to_owned()),
            _ => {}
        }
    }
    voc.term(pos, neg).unwrap()
}

fn random_formula(voc: &Vocabulary, rng: &mut SplitMix64, depth: usize) -> Formula {
    if depth == 0 || rng.below(4) == 0 {
        return match rng.below(6) {
            0 => voc.tt(),
            1 => voc.ff(),
            _ => voc
                .atom(voc.atom_name(rng.below(voc.len())))
                .expect("known atom"),
        };
    }
    match rng.below(3) {
        0 => !random_formula(voc, rng, depth - 1),
        1 => random_formula(voc, rng, depth - 1) & random_formula(voc, rng, depth - 1),
        _ => random_formula(voc, rng, depth - 1) | random_formula(voc, rng, depth - 1),
    }
}

/// The compact survivor form of a deterministic target: update the L3
/// hypothesis with the target's whole graph, then minimize.
fn compact_form(voc: &Vocabulary, target: &ActionModel) -> ActionModel {
    let mut survivors = init_hypothesis(voc, LearnerKind::L3).unwrap();
    for obs in target.graph() {
        survivors = update_model(&survivors, &obs).unwrap();
    }
    minimize(&survivors)
}

/// Check 1: the one-atom pushbutton replays. Two fixed two-observation
/// streams drive L2 to a verdict at step 2 with exact event sets.
fn pushbutton_replay() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let voc = Vocabulary::new(["p"]).unwrap();
    type ReplayCase = (
        &'static str,
        &'static str,
        &'static [(&'static str, &'static str)],
    );
    let cases: [ReplayCase; 2] = [
        ("{p} -> {}", "flip", &[("p", "-p"), ("-p", "p")]),
        ("{p} -> {p}", "on", &[("p", "T"), ("-p", "p")]),
    ];
    for (second_obs, label, expected) in cases {
        let expected = ActionModel::parse(&voc, expected).unwrap();
        let mut learner = LearnerState::new(&voc, LearnerKind::L2).unwrap();
        let first = learner
            .step(&Observation::parse(&voc, "{} -> {p}").unwrap())
            .unwrap();
        facts.check(first == Verdict::Undecided, || {
            format!("{label}: fired prematurely at step 1")
        });
        let second = learner
            .step(&Observation::parse(&voc, second_obs).unwrap())
            .unwrap();
        match second {
            Verdict::Identified(m) => facts.check(m == expected, || {
                format!("{label}: expected {expected}, identified {m}")
            }),
            Verdict::Undecided => facts.check(false, || format!("{label}: no verdict at step 2")),
        }
    }
    facts.finish(
        1,
        "pushbutton-replay",
        started,
        Duration::from_millis(1),
        "both button streams identified at step 2 with exact event sets".into(),
    )
}

/// Check 2: the two-bit counter replay fires L2 at step 4 with the four
/// maximal-precondition events; L3 compresses counter-2 and counter-3 to
/// n+1 events, equivalent to the target.
fn counter_replay() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();

    let voc2 = Vocabulary::new(["c1", "c2"]).unwrap();
    let stream = [
        "{} -> {c1}",
        "{c1} -> {c2}",
        "{c2} -> {c1,c2}",
        "{c1,c2} -> {}",
    ];
    let mut learner = LearnerState::new(&voc2, LearnerKind::L2).unwrap();
    let mut fired_at = None;
    for (i, line) in stream.iter().enumerate() {
        let verdict = learner
            .step(&Observation::parse(&voc2, line).unwrap())
            .unwrap();
        if let Verdict::Identified(m) = verdict {
            fired_at = Some((i + 1, m));
        }
    }
    match fired_at {
        Some((step, m)) => {
            facts.check(step == 4, || format!("L2 fired at step {step}, expected 4"));
            let expected = ActionModel::parse(
                &voc2,
                &[
                    ("-c1&-c2", "c1"),
                    ("c1&-c2", "-c1&c2"),
                    ("-c1&c2", "c1"),
                    ("c1&c2", "-c1&-c2"),
                ],
            )
            .unwrap();
            facts.check(m == expected, || {
                format!("L2 verdict {m} differs from the increment table")
            });
        }
        None => facts.check(false, || "L2 never fired on the counter stream".into()),
    }

    for n in [2usize, 3] {
        let target = scenario::counter(n).unwrap();
        let voc = target.vocabulary().clone();
        let spec = StreamSpec::new(target.clone(), 0, StreamPolicy::CyclicCanonical);
        let prefix = generate_prefix(&spec, voc.state_count()).unwrap();
        let run = drive(&voc, LearnerKind::L3, &target, &prefix);
        match &run.verdict {
            Some(m) => {
                facts.check(m.len() == n + 1, || {
                    format!(
                        "counter-{n}: L3 produced {} events, expected {}",
                        m.len(),
                        n + 1
                    )
                });
                facts.check(m.equivalent(&target).unwrap(), || {
                    format!("counter-{n}: L3 verdict not equivalent to the target")
                });
            }
            None => facts.check(false, || format!("counter-{n}: L3 never fired")),
        }
    }

    facts.finish(
        2,
        "counter-replay",
        started,
        Duration::from_millis(100),
        "L2 reproduced the 4-event table at step 4; L3 compressed counter-2/3 to n+1 events".into(),
    )
}

/// Check 3: the induced L3 library learner recovers the two-switch circuit
/// within two full stream cycles, equivalently per name.
fn circuit_library() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let lib = scenario::circuit().unwrap();
    let voc = lib.vocabulary().clone();
    let cycle = 2 * voc.state_count(); // two names, one transition per state
    for seed in 0..5u64 {
        let prefix = generate_library_prefix(&lib, seed, 2 * cycle).unwrap();
        let names: Vec<String> = lib.names().map(String::from).collect();
        let mut learner = LibraryLearner::new(&voc, names, LearnerKind::L3).unwrap();
        let mut identified = None;
        for (i, t) in prefix.iter().enumerate() {
            if let LibraryVerdict::Identified(l) = learner.step(t).unwrap() {
                identified = Some((i + 1, l));
                break;
            }
        }
        match identified {
            Some((step, learned)) => {
                facts.check(step <= 2 * cycle, || {
                    format!("seed {seed}: verdict only after {step} triples")
                });
                facts.check(learned.equivalent(&lib).unwrap(), || {
                    format!("seed {seed}: learned library differs from the circuit")
                });
            }
            None => facts.check(false, || format!("seed {seed}: no verdict in 2 cycles")),
        }
    }
    facts.finish(
        3,
        "circuit-library",
        started,
        Duration::from_secs(1),
        "library learner converged within 2 cycles on 5 seeds, equivalent per name".into(),
    )
}

/// Check 4: exhaustive two-atom sweep of L2 — all 256 deterministic,
/// normal, universally applicable, maximal-precondition models, 20 stream
/// seeds each; fires at graph coverage, verdict equivalent, once-defined.
fn l2_exhaustive() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let voc = Vocabulary::new(["p", "q"]).unwrap();
    let members = maximal_models(&voc);
    facts.check(members.len() == 256, || {
        format!("expected 256 targets, enumerated {}", members.len())
    });
    let mut runs = 0usize;
    for (ti, target) in members.iter().enumerate() {
        for seed in 0..20u64 {
            let spec = StreamSpec::new(target.clone(), seed, StreamPolicy::CyclicShuffled);
            let prefix = generate_prefix(&spec, 12).unwrap();
            let run = drive(&voc, LearnerKind::L2, target, &prefix);
            runs += 1;
            match (&run.verdict, run.coverage_step) {
                (Some(m), Some(_)) => {
                    facts.check(
                        run.distinct_at_fire
                            .saturating_sub(run.distinct_at_coverage)
                            <= 4,
                        || format!("target {ti} seed {seed}: fired late after coverage"),
                    );
                    facts.check(m.equivalent(target).unwrap(), || {
                        format!("target {ti} seed {seed}: wrong verdict")
                    });
                    facts.check(run.verdict_count == 1, || {
                        format!("target {ti} seed {seed}: fired {} times", run.verdict_count)
                    });
                }
                _ => facts.check(false, || {
                    format!("target {ti} seed {seed}: no verdict within 12 steps")
                }),
            }
        }
    }
    facts.finish(
        4,
        "l2-exhaustive",
        started,
        Duration::from_secs(5),
        format!("{runs} runs over 256 targets x 20 seeds all identified correctly, once each"),
    )
}

/// Check 5: exhaustive two-atom sweep of L1 over all 9 precondition-free
/// atomic targets, 20 seeds each.
fn l1_exhaustive() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let voc = Vocabulary::new(["p", "q"]).unwrap();
    let posts = voc.terms().unwrap();
    facts.check(posts.len() == 9, || {
        format!("expected 9 atomic targets, enumerated {}", posts.len())
    });
    let mut runs = 0usize;
    for psi in &posts {
        let target =
            ActionModel::new(voc.clone(), [Event::new(voc.top(), psi.clone()).unwrap()]).unwrap();
        for seed in 0..20u64 {
            let spec = StreamSpec::new(target.clone(), seed, StreamPolicy::CyclicShuffled);
            let prefix = generate_prefix(&spec, 16).unwrap();
            let run = drive(&voc, LearnerKind::L1, &target, &prefix);
            runs += 1;
            match &run.verdict {
                Some(m) => {
                    facts.check(m.equivalent(&target).unwrap(), || {
                        format!("target <T, {psi}> seed {seed}: wrong verdict")
                    });
                    facts.check(run.verdict_count == 1, || {
                        format!("target <T, {psi}> seed {seed}: fired twice")
                    });
                }
                None => facts.check(false, || {
                    format!("target <T, {psi}> seed {seed}: no verdict")
                }),
            }
        }
    }
    facts.finish(
        5,
        "l1-exhaustive",
        started,
        Duration::from_secs(1),
        format!("{runs} runs over 9 atomic targets x 20 seeds all identified correctly"),
    )
}

/// Check 6: 200 sampled three-atom deterministic targets for L3 — fires
/// exactly when all 8 input states have been observed, verdict equivalent,
/// and the minimized output has pairwise incomparable preconditions.
fn l3_sampled() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let voc = Vocabulary::new(["a", "b", "c"]).unwrap();
    let mut rng = SplitMix64::new(0x1003);
    for case in 0..200usize {
        let target = random_function_model(&voc, &mut rng);
        let seed = rng.next_u64();
        let spec = StreamSpec::new(target.clone(), seed, StreamPolicy::CyclicShuffled);
        let prefix = generate_prefix(&spec, 16).unwrap();
        let run = drive(&voc, LearnerKind::L3, &target, &prefix);
        match (&run.verdict, run.fire_step) {
            (Some(m), Some(step)) => {
                facts.check(run.inputs_covered_step == Some(step), || {
                    format!(
                        "case {case}: fired at step {step}, inputs covered at {:?}",
                        run.inputs_covered_step
                    )
                });
                facts.check(m.equivalent(&target).unwrap(), || {
                    format!("case {case}: verdict not equivalent to target")
                });
                let mut comparable = false;
                for e in m.events() {
                    for other in m.events() {
                        if e != other && e.pre().entails(other.pre()).unwrap() {
                            comparable = true;
                        }
                    }
                }
                facts.check(!comparable, || {
                    format!("case {case}: minimized output kept a dominated precondition")
                });
            }
            _ => facts.check(false, || format!("case {case}: no verdict in 16 steps")),
        }
    }
    facts.finish(
        6,
        "l3-sampled",
        started,
        Duration::from_secs(30),
        "200 sampled deterministic targets identified at full input coverage, minimal output"
            .into(),
    )
}

/// Check 7: the non-deterministic coin never draws a verdict. Canonical
/// cyclic streams interleave the contradicting outcomes, so every
/// hypothesis degenerates before a firing condition can hold, and
/// candidates below universal applicability are withheld.
fn nondeterministic_guard() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let coin = match scenario::builtin("coin").unwrap().target {
        scenario::Target::Model(m) => m,
        scenario::Target::Library(_) => unreachable!(),
    };
    let voc = coin.vocabulary().clone();
    let mut fired = 0usize;
    for kind in [LearnerKind::L1, LearnerKind::L2, LearnerKind::L3] {
        for seed in 0..20u64 {
            let spec = StreamSpec::new(coin.clone(), seed, StreamPolicy::CyclicCanonical);
            let prefix = generate_prefix(&spec, 100).unwrap();
            let run = drive(&voc, kind, &coin, &prefix);
            fired += run.verdict_count;
            facts.check(run.verdict_count == 0, || {
                format!("{kind} fired on the coin with seed {seed}")
            });
        }
    }
    facts.finish(
        7,
        "nondeterministic-guard",
        started,
        Duration::from_secs(1),
        format!("60 coin runs of 100 steps each produced {fired} verdicts"),
    )
}

/// Check 8: the limit conjecture locks on — for 50 random universally
/// applicable (possibly non-deterministic) two-atom targets it is
/// equivalent to the target from the first graph-covering prefix through
/// the next 50 steps.
fn limit_stability() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let voc = Vocabulary::new(["p", "q"]).unwrap();
    let mut rng = SplitMix64::new(0x0801);
    for case in 0..50usize {
        let count = 1 + rng.below(4);
        let events: Vec<Event> = (0..count)
            .map(|_| Event::new(random_term(&voc, &mut rng), random_term(&voc, &mut rng)).unwrap())
            .collect();
        let target = ActionModel::new(voc.clone(), events)
            .unwrap()
            .make_universal();
        let graph = target.graph();
        let spec = StreamSpec::new(target.clone(), rng.next_u64(), StreamPolicy::CyclicShuffled);
        let prefix = generate_prefix(&spec, graph.len() + 50).unwrap();

        let mut seen: BTreeSet<Observation> = BTreeSet::new();
        let mut n0 = None;
        for (i, obs) in prefix.iter().enumerate() {
            seen.insert(obs.clone());
            if graph.iter().all(|o| seen.contains(o)) {
                n0 = Some(i + 1);
                break;
            }
        }
        let n0 = match n0 {
            Some(n) => n,
            None => {
                facts.check(false, || format!("case {case}: graph never covered"));
                continue;
            }
        };
        for n in n0..=(n0 + 50).min(prefix.len()) {
            let conjecture = limit_conjecture(&voc, &prefix[..n]).unwrap();
            if !conjecture.equivalent(&target).unwrap() {
                facts.check(false, || {
                    format!("case {case}: conjecture diverged at prefix length {n}")
                });
                break;
            }
        }
    }
    facts.finish(
        8,
        "limit-stability",
        started,
        Duration::from_secs(5),
        "50 random targets: conjecture equivalent from first coverage for 50 further steps".into(),
    )
}

/// Check 9: normalization — 100 random models with formula preconditions
/// over up to three atoms become normal models with term preconditions and
/// identical outcome sets in every state.
fn normalization() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    let mut rng = SplitMix64::new(0x0901);
    for case in 0..100usize {
        let n = 1 + case % 3;
        let voc = Vocabulary::new((0..n).map(|i| format!("a{i}"))).unwrap();
        let count = 1 + rng.below(3);
        let events: Vec<RawEvent> = (0..count)
            .map(|_| {
                RawEvent::new(
                    random_formula(&voc, &mut rng, 4),
                    random_term(&voc, &mut rng),
                )
                .unwrap()
            })
            .collect();
        let raw = RawActionModel::new(voc.clone(), events).unwrap();
        let norm = raw.normalize();
        let flags = norm.classify();
        facts.check(flags.normal, || format!("case {case}: output not normal"));
        facts.check(flags.basic_preconditions, || {
            format!("case {case}: output preconditions not basic")
        });
        for s in voc.states() {
            if raw.outcomes(&s) != norm.outcomes(&s) {
                facts.check(false, || {
                    format!("case {case}: outcome sets differ at state {s}")
                });
                break;
            }
        }
    }
    facts.finish(
        9,
        "normalization",
        started,
        Duration::from_secs(2),
        "100 random formula-precondition models normalized with outcomes preserved".into(),
    )
}

/// Check 10: tell-tale separation — a deterministic model's transition
/// graph is sound only for its own equivalence class, and the tell-tale
/// learner identifies every class member from its own cyclic stream.
fn telltale_separation() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();

    // one atom, exhaustively
    let voc1 = Vocabulary::new(["p"]).unwrap();
    let small = maximal_models(&voc1);
    for (i, a) in small.iter().enumerate() {
        let tale: Vec<Observation> = dftt(a).unwrap().into_iter().collect();
        facts.check(is_sound(&tale, a).unwrap(), || {
            format!("|P|=1 member {i}: tell-tale not sound for itself")
        });
        for (j, b) in small.iter().enumerate() {
            if i != j {
                facts.check(!is_sound(&tale, b).unwrap(), || {
                    format!("|P|=1: tell-tale of member {i} is sound for member {j}")
                });
            }
        }
    }
    let class1 = ModelClass::maximal_deterministic(&voc1).unwrap();
    for (i, member) in class1.members().iter().enumerate() {
        let prefix: Vec<Observation> = member.graph().into_iter().collect();
        match class1.tell_tale_step(&prefix).unwrap() {
            Verdict::Identified(m) => facts.check(m.equivalent(member).unwrap(), || {
                format!("|P|=1 member {i}: tell-tale learner picked the wrong model")
            }),
            Verdict::Undecided => facts.check(false, || {
                format!("|P|=1 member {i}: tell-tale learner stayed undecided")
            }),
        }
    }

    // two atoms: sampled pairs, with the second model in compact form
    let voc2 = Vocabulary::new(["p", "q"]).unwrap();
    let mut rng = SplitMix64::new(0x1001);
    for case in 0..200usize {
        let a = random_function_model(&voc2, &mut rng);
        let mut b = random_function_model(&voc2, &mut rng);
        while b.equivalent(&a).unwrap() {
            b = random_function_model(&voc2, &mut rng);
        }
        let b = compact_form(&voc2, &b);
        let tale: Vec<Observation> = dftt(&a).unwrap().into_iter().collect();
        facts.check(is_sound(&tale, &a).unwrap(), || {
            format!("case {case}: tell-tale not sound for its own model")
        });
        facts.check(!is_sound(&tale, &b).unwrap(), || {
            format!("case {case}: tell-tale sound for an inequivalent model")
        });
    }
    let class2 = ModelClass::maximal_deterministic(&voc2).unwrap();
    for (i, member) in class2.members().iter().enumerate() {
        let prefix: Vec<Observation> = member.graph().into_iter().collect();
        match class2.tell_tale_step(&prefix).unwrap() {
            Verdict::Identified(m) => facts.check(m.equivalent(member).unwrap(), || {
                format!("|P|=2 member {i}: tell-tale learner picked the wrong model")
            }),
            Verdict::Undecided => facts.check(false, || {
                format!("|P|=2 member {i}: tell-tale learner stayed undecided")
            }),
        }
    }

    facts.finish(
        10,
        "telltale-separation",
        started,
        Duration::from_secs(5),
        "tell-tales separate inequivalent models and identify every class member".into(),
    )
}

/// Check 11: hypothesis-space sizes match the closed forms 3^n, 4^n, 7^n,
/// validated event-for-event against a brute-force enumerator over all
/// term pairs.
fn hypothesis_counts() -> CheckOutcome {
    let started = Instant::now();
    let mut facts = Facts::default();
    for n in 1..=3usize {
        let voc = Vocabulary::new((0..n).map(|i| format!("a{i}"))).unwrap();
        let terms = voc.terms().unwrap();
        let all_pairs: Vec<Event> = terms
            .iter()
            .flat_map(|pre| {
                terms
                    .iter()
                    .map(move |post| Event::new(pre.clone(), post.clone()).unwrap())
            })
            .collect();
        type CountCase = (LearnerKind, usize, Box<dyn Fn(&Event) -> bool>);
        let cases: [CountCase; 3] = [
            (
                LearnerKind::L1,
                3usize.pow(n as u32),
                Box::new(|e: &Event| e.pre().is_top()),
            ),
            (
                LearnerKind::L2,
                4usize.pow(n as u32),
                Box::new(|e: &Event| e.pre().is_maximal() && e.is_normal()),
            ),
            (
                LearnerKind::L3,
                7usize.pow(n as u32),
                Box::new(|e: &Event| e.is_normal()),
            ),
        ];
        for (kind, expected, predicate) in cases {
            let init = init_hypothesis(&voc, kind).unwrap();
            facts.check(init.len() == expected, || {
                format!(
                    "{kind} over {n} atoms: {} events, expected {expected}",
                    init.len()
                )
            });
            let brute: BTreeSet<Event> =
                all_pairs.iter().filter(|e| predicate(e)).cloned().collect();
            let built: BTreeSet<Event> = init.events().iter().cloned().collect();
            facts.check(brute == built, || {
                format!("{kind} over {n} atoms: hypothesis differs from brute-force enumeration")
            });
        }
    }
    // the nine-event two-atom layout is the L1 anchor
    let voc = Vocabulary::new(["p", "q"]).unwrap();
    let init = init_hypothesis(&voc, LearnerKind::L1).unwrap();
    facts.check(init.len() == 9, || {
        format!("L1 over {{p,q}} holds {} events, expected 9", init.len())
    });
    facts.finish(
        11,
        "hypothesis-counts",
        started,
        Duration::from_secs(1),
        "hypothesis spaces match 3^n, 4^n, 7^n and the brute-force enumerations".into(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_id_resolves() {
        for id in 1..=CHECK_COUNT {
            assert!(run_check(id).is_some());
        }
        assert!(run_check(0).is_none());
        assert!(run_check(CHECK_COUNT + 1).is_none());
    }
}
