//! Command-line driver: load scenarios, generate streams, run learners,
//! dump graphs and tell-tales, check equivalence, and run the verification
//! suite.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use actlearn::json::{
    self, library_to_json, library_to_raw, model_from_json, model_to_json, model_to_raw,
    raw_model_from_json, verdict_to_raw, RunReport, TraceRecord,
};
use actlearn::scenario::{self, Target};
use actlearn::{
    generate_library_prefix, generate_prefix, limit_conjecture, ActionModel, LearnerKind,
    LearnerState, LibraryLearner, LibraryVerdict, ModelClass, Observation, StreamPolicy,
    StreamSpec, Verdict, Vocabulary,
};

#[derive(Parser)]
#[command(
    name = "actlearn",
    version,
    about = "Learn propositional action models from state-transition observations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a learner against a scenario or model file
    Learn(LearnArgs),
    /// Print a model's transition graph, one observation per line
    Graph(ModelInput),
    /// Print the definite finite tell-tale of a deterministic model
    Dftt(ModelInput),
    /// Compare two models (scenario names or files) for equivalence
    Equiv(EquivArgs),
    /// Normalize a model whose preconditions may be arbitrary formulas
    Normalize(NormalizeArgs),
    /// Run the induced library learner on a library scenario or file
    LibraryLearn(LibraryLearnArgs),
    /// Run the verification battery and print one line per check
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LearnerChoice {
    L1,
    L2,
    L3,
    Limit,
    Telltale,
}

impl LearnerChoice {
    fn as_str(self) -> &'static str {
        match self {
            LearnerChoice::L1 => "l1",
            LearnerChoice::L2 => "l2",
            LearnerChoice::L3 => "l3",
            LearnerChoice::Limit => "limit",
            LearnerChoice::Telltale => "telltale",
        }
    }
}

#[derive(Args)]
struct LearnArgs {
    /// Built-in scenario name
    #[arg(long, conflicts_with = "model")]
    scenario: Option<String>,
    /// Action-model JSON file to use as the hidden target
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    #[arg(long, value_enum)]
    learner: LearnerChoice,
    /// Stream seed; omitting it selects the canonical cyclic stream
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    max_steps: usize,
    /// Replay observations from a file instead of generating them
    #[arg(long, value_name = "FILE")]
    obs_file: Option<PathBuf>,
    /// Write one trace record per step to this file
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Also print a human-readable summary
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct ModelInput {
    #[arg(long, conflicts_with = "model")]
    scenario: Option<String>,
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
}

#[derive(Args)]
struct EquivArgs {
    /// Scenario name or model file
    left: String,
    /// Scenario name or model file
    right: String,
}

#[derive(Args)]
struct NormalizeArgs {
    /// Raw model JSON file; "pre" entries may be formula strings
    #[arg(long, value_name = "FILE")]
    model: PathBuf,
}

#[derive(Args)]
struct LibraryLearnArgs {
    #[arg(long, conflicts_with = "library")]
    scenario: Option<String>,
    /// Library JSON file to use as the hidden target
    #[arg(long, value_name = "FILE")]
    library: Option<PathBuf>,
    /// Per-name learner kind
    #[arg(long, value_enum, default_value_t = LearnerChoice::L3)]
    learner: LearnerChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_steps: usize,
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    pretty: bool,
}

type AnyError = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AnyError> {
    match cli.command {
        Command::Learn(args) => learn(args),
        Command::Graph(input) => {
            let (_, model) = resolve_model_args(&input.scenario, &input.model)?;
            for obs in model.graph() {
                println!("{obs}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dftt(input) => {
            let (_, model) = resolve_model_args(&input.scenario, &input.model)?;
            for obs in actlearn::dftt(&model)? {
                println!("{obs}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv(args) => equiv(args),
        Command::Normalize(args) => {
            let text = fs::read_to_string(&args.model)?;
            let raw = raw_model_from_json(&text)?;
            println!("{}", model_to_json(&raw.normalize()));
            Ok(ExitCode::SUCCESS)
        }
        Command::LibraryLearn(args) => library_learn(args),
        Command::Suite(args) => suite(args),
    }
}

/// Resolves a target model from a scenario name or a model file.
fn resolve_model_args(
    scenario_name: &Option<String>,
    model_path: &Option<PathBuf>,
) -> Result<(String, ActionModel), AnyError> {
    match (scenario_name, model_path) {
        (Some(name), None) => {
            let s = scenario::builtin(name)?;
            match s.target {
                Target::Model(m) => Ok((s.name, m)),
                Target::Library(_) => {
                    Err(format!("scenario `{name}` is an action library; use library-learn").into())
                }
            }
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok((path.display().to_string(), model_from_json(&text)?))
        }
        _ => Err("provide exactly one of --scenario or --model".into()),
    }
}

/// Resolves a positional input: a built-in scenario name, else a file path.
fn resolve_input(input: &str) -> Result<ActionModel, AnyError> {
    if let Ok(s) = scenario::builtin(input) {
        return match s.target {
            Target::Model(m) => Ok(m),
            Target::Library(_) => Err(format!("scenario `{input}` is an action library").into()),
        };
    }
    let text = fs::read_to_string(input)?;
    Ok(model_from_json(&text)?)
}

fn class_warning(choice: LearnerChoice, target: &ActionModel) -> Option<String> {
    let flags = target.classify();
    let outside = match choice {
        LearnerChoice::L1 => !(flags.precondition_free && flags.atomic),
        LearnerChoice::L2 => {
            !(flags.deterministic && flags.maximal_preconditions && flags.universally_applicable)
        }
        LearnerChoice::L3 | LearnerChoice::Telltale => {
            !(flags.deterministic && flags.universally_applicable)
        }
        LearnerChoice::Limit => false,
    };
    outside.then(|| {
        format!(
            "warning: target is outside the class identified by {}; running anyway",
            choice.as_str()
        )
    })
}

struct TraceWriter {
    file: Option<fs::File>,
}

impl TraceWriter {
    fn open(path: &Option<PathBuf>) -> Result<Self, AnyError> {
        Ok(TraceWriter {
            file: path.as_ref().map(fs::File::create).transpose()?,
        })
    }

    fn record(&mut self, record: &impl serde::Serialize) -> Result<(), AnyError> {
        if let Some(f) = &mut self.file {
            writeln!(f, "{}", serde_json::to_string(record)?)?;
        }
        Ok(())
    }
}

fn observation_source(
    args: &LearnArgs,
    voc: &Vocabulary,
    target: &ActionModel,
) -> Result<Vec<Observation>, AnyError> {
    if let Some(path) = &args.obs_file {
        let text = fs::read_to_string(path)?;
        let mut obs = json::observations_from_text(voc, &text)?;
        obs.truncate(args.max_steps);
        Ok(obs)
    } else {
        let policy = match args.seed {
            Some(_) => StreamPolicy::CyclicShuffled,
            None => StreamPolicy::CyclicCanonical,
        };
        let spec = StreamSpec::new(target.clone(), args.seed.unwrap_or(0), policy);
        Ok(generate_prefix(&spec, args.max_steps)?)
    }
}

fn learn(args: LearnArgs) -> Result<ExitCode, AnyError> {
    let (name, target) = resolve_model_args(&args.scenario, &args.model)?;
    if let Some(w) = class_warning(args.learner, &target) {
        eprintln!("{w}");
    }
    let voc = target.vocabulary().clone();
    let observations = observation_source(&args, &voc, &target)?;
    let mut trace = TraceWriter::open(&args.trace)?;
    let started = Instant::now();

    let (steps_to_verdict, verdict_model) = match args.learner {
        LearnerChoice::L1 | LearnerChoice::L2 | LearnerChoice::L3 => {
            let kind = match args.learner {
                LearnerChoice::L1 => LearnerKind::L1,
                LearnerChoice::L2 => LearnerKind::L2,
                _ => LearnerKind::L3,
            };
            let mut learner = LearnerState::new(&voc, kind)?;
            let mut fired = None;
            for (i, obs) in observations.iter().enumerate() {
                let verdict = learner.step(obs)?;
                trace.record(&TraceRecord {
                    step: i + 1,
                    obs: obs.to_string(),
                    survivors: learner.hypothesis().len(),
                    verdict: verdict_to_raw(&verdict),
                })?;
                if let Verdict::Identified(m) = verdict {
                    fired = Some((i + 1, m));
                    break;
                }
            }
            match fired {
                Some((step, m)) => (Some(step), Some(m)),
                None => (None, None),
            }
        }
        LearnerChoice::Limit => {
            let mut conjectures: Vec<ActionModel> = Vec::new();
            for (i, obs) in observations.iter().enumerate() {
                let conjecture = limit_conjecture(&voc, &observations[..=i])?;
                trace.record(&TraceRecord {
                    step: i + 1,
                    obs: obs.to_string(),
                    survivors: conjecture.len(),
                    verdict: verdict_to_raw(&Verdict::Identified(conjecture.clone())),
                })?;
                conjectures.push(conjecture);
            }
            // the conjectures stabilize once correct; report where that happened
            let mut stable_from = None;
            for (i, c) in conjectures.iter().enumerate() {
                if c.equivalent(&target)? {
                    if stable_from.is_none() {
                        stable_from = Some(i + 1);
                    }
                } else {
                    stable_from = None;
                }
            }
            (stable_from, conjectures.into_iter().last())
        }
        LearnerChoice::Telltale => {
            let class = ModelClass::maximal_deterministic(&voc)?;
            let mut alive: Vec<bool> = vec![true; class.members().len()];
            let mut fired = None;
            for (i, obs) in observations.iter().enumerate() {
                for (slot, member) in class.members().iter().enumerate() {
                    if alive[slot] && !actlearn::is_sound(std::slice::from_ref(obs), member)? {
                        alive[slot] = false;
                    }
                }
                let verdict = class.tell_tale_step(&observations[..=i])?;
                trace.record(&TraceRecord {
                    step: i + 1,
                    obs: obs.to_string(),
                    survivors: alive.iter().filter(|a| **a).count(),
                    verdict: verdict_to_raw(&verdict),
                })?;
                if let Verdict::Identified(m) = verdict {
                    fired = Some((i + 1, m));
                    break;
                }
            }
            match fired {
                Some((step, m)) => (Some(step), Some(m)),
                None => (None, None),
            }
        }
    };

    let equivalent_to_target = match &verdict_model {
        Some(m) => Some(m.equivalent(&target)?),
        None => None,
    };
    let report = RunReport {
        scenario: name,
        learner: args.learner.as_str().to_owned(),
        seed: args.seed.unwrap_or(0),
        steps_to_verdict,
        verdict: verdict_model.as_ref().map(model_to_raw),
        equivalent_to_target,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    println!("{}", serde_json::to_string(&report)?);
    if args.pretty {
        print_pretty_report(&report, verdict_model.as_ref().map(|m| m.to_string()));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_pretty_report(report: &RunReport, verdict: Option<String>) {
    println!("scenario:          {}", report.scenario);
    println!("learner:           {}", report.learner);
    println!("seed:              {}", report.seed);
    match report.steps_to_verdict {
        Some(n) => println!("steps to verdict:  {n}"),
        None => println!("steps to verdict:  none"),
    }
    println!(
        "verdict:           {}",
        verdict.unwrap_or_else(|| "(undecided)".into())
    );
    match report.equivalent_to_target {
        Some(true) => println!("equivalent:        yes"),
        Some(false) => println!("equivalent:        no"),
        None => println!("equivalent:        n/a"),
    }
    println!("elapsed:           {} ms", report.elapsed_ms);
}

fn equiv(args: EquivArgs) -> Result<ExitCode, AnyError> {
    let left = resolve_input(&args.left)?;
    let right = resolve_input(&args.right)?;
    match left.inequivalence_witness(&right)? {
        None => {
            println!("equivalent");
            Ok(ExitCode::SUCCESS)
        }
        Some(state) => {
            let render = |m: &ActionModel| {
                m.outcomes(&state)
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("inequivalent");
            println!("witness state: {state}");
            println!("outcomes: [{}] vs [{}]", render(&left), render(&right));
            Ok(ExitCode::from(1))
        }
    }
}

fn library_learn(args: LibraryLearnArgs) -> Result<ExitCode, AnyError> {
    let (name, library) = match (&args.scenario, &args.library) {
        (Some(name), None) => {
            let s = scenario::builtin(name)?;
            match s.target {
                Target::Library(l) => (s.name, l),
                Target::Model(_) => {
                    return Err(format!("scenario `{name}` is a single action; use learn").into())
                }
            }
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            (path.display().to_string(), json::library_from_json(&text)?)
        }
        _ => return Err("provide exactly one of --scenario or --library".into()),
    };
    let kind = match args.learner {
        LearnerChoice::L1 => LearnerKind::L1,
        LearnerChoice::L2 => LearnerKind::L2,
        LearnerChoice::L3 => LearnerKind::L3,
        other => {
            return Err(format!(
                "library-learn runs per-name update learners; `{}` is not one",
                other.as_str()
            )
            .into())
        }
    };
    let voc = library.vocabulary().clone();
    let names: Vec<String> = library.names().map(String::from).collect();
    let prefix = generate_library_prefix(&library, args.seed, args.max_steps)?;
    let mut learner = LibraryLearner::new(&voc, names, kind)?;
    let mut trace = TraceWriter::open(&args.trace)?;
    let started = Instant::now();

    #[derive(serde::Serialize)]
    struct LibraryTraceRecord {
        step: usize,
        obs: String,
        latched: usize,
        verdict: Box<serde_json::value::RawValue>,
    }

    let mut fired = None;
    for (i, triple) in prefix.iter().enumerate() {
        let verdict = learner.step(triple)?;
        let verdict_value = match &verdict {
            LibraryVerdict::Undecided => {
                serde_json::value::RawValue::from_string("\"undecided\"".to_owned()).unwrap()
            }
            LibraryVerdict::Identified(l) => serde_json::value::RawValue::from_string(format!(
                "{{\"library\":{}}}",
                library_to_json(l)
            ))
            .unwrap(),
        };
        trace.record(&LibraryTraceRecord {
            step: i + 1,
            obs: triple.to_string(),
            latched: learner.latched_count(),
            verdict: verdict_value,
        })?;
        if let LibraryVerdict::Identified(l) = verdict {
            fired = Some((i + 1, l));
            break;
        }
    }

    let (steps_to_verdict, learned) = match fired {
        Some((step, l)) => (Some(step), Some(l)),
        None => (None, None),
    };
    let equivalent_to_target = match &learned {
        Some(l) => Some(l.equivalent(&library)?),
        None => None,
    };
    let report = RunReport {
        scenario: name,
        learner: args.learner.as_str().to_owned(),
        seed: args.seed,
        steps_to_verdict,
        verdict: learned.as_ref().map(library_to_raw),
        equivalent_to_target,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    println!("{}", serde_json::to_string(&report)?);
    if args.pretty {
        print_pretty_report(&report, learned.as_ref().map(library_to_json));
    }
    Ok(ExitCode::SUCCESS)
}

fn suite(args: SuiteArgs) -> Result<ExitCode, AnyError> {
    #[derive(serde::Serialize)]
    struct SuiteRecord<'a> {
        criterion: usize,
        name: &'a str,
        passed: bool,
        elapsed_ms: u64,
        detail: &'a str,
    }

    let results = actlearn::suite::run_all();
    let mut all_ok = true;
    for r in &results {
        all_ok &= r.passed;
        if args.pretty {
            println!("{}", r.line());
        } else {
            println!(
                "{}",
                serde_json::to_string(&SuiteRecord {
                    criterion: r.id,
                    name: r.name,
                    passed: r.passed,
                    elapsed_ms: r.elapsed.as_millis() as u64,
                    detail: &r.detail,
                })?
            );
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    if args.pretty {
        println!("{passed}/{} checks passed", results.len());
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
