//! The `mutspace` command line.
//!
//! Stages talk only through files: `mutate` writes descriptors and mutant
//! sources, `run` writes a behavior matrix, `analyze` and `mbfl` read one.
//!
//! Exit codes: 0 success, 1 a `check` found a counterexample, 2 input error
//! (usage, I/O, syntax, schema), 3 role error (a required program role is
//! missing or wrong), 4 capacity (explicit lattice too large).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bits::BitVector;
use crate::diffcore::{
    d_vector, mutation_adequacy, BehaviorMatrix, Differentiator, Policy, ProgramId, Role,
    TestVector,
};
use crate::error::{Error, Result};
use crate::examples;
use crate::lattice::{build_pdl, Pdl};
use crate::mbfl::{compare_methods, rank_statements, FaultLocalizationInput, Method, Metric};
use crate::mutlang::{
    behavior_matrix, check_inputs, descriptors_from_json, mutant_statements, mutate_all, parse,
    spec_from_json, tests_from_json, ExecOptions, MutantDescriptor, Operator, Program,
    DEFAULT_BUDGET, ORIGINAL_ID,
};
use crate::progspace::ProgramSpace;
use crate::subsumption::{
    build_dmsg, deviance_subsumption_equivalence, max_minimal_size, minimal_mutant_set, KillMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ROLE: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MissingRole(_) | Error::WrongRole { .. } => EXIT_ROLE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mutspace",
    version,
    about = "Difference-based mutation analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate first-order mutants of a source file.
    Mutate(MutateArgs),
    /// Execute a program and its mutants on a test suite, producing a
    /// behavior matrix.
    Run(RunArgs),
    /// Analyze a behavior matrix (JSON) or kill matrix (CSV).
    Analyze(AnalyzeArgs),
    /// Rank statements by mutation-based suspiciousness.
    Mbfl(MbflArgs),
    /// Regenerate the built-in worked examples.
    Demo(DemoArgs),
    /// Randomized property checks.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct OperatorArgs {
    /// Comma-separated operators out of AOR, ROR, LCR, CRP, SDL.
    #[arg(long, default_value = "AOR,ROR,LCR,CRP,SDL")]
    operators: String,
}

#[derive(Debug, Args)]
struct MutateArgs {
    source: PathBuf,
    #[command(flatten)]
    ops: OperatorArgs,
    /// Directory receiving `mutants.json` and one `<id>.mut` source per
    /// mutant. Without it the descriptor list goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExecArgs {
    /// Test suite JSON: `[{"id": .., "inputs": {var: int}}]`.
    #[arg(long)]
    tests: PathBuf,
    /// Expected outputs JSON (`{test-id: output}`), added as the spec row.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Record execution traces (needed by the trace policy).
    #[arg(long)]
    trace: bool,
    /// Step budget per execution.
    #[arg(long, env = "MUTSPACE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct RunArgs {
    source: PathBuf,
    #[command(flatten)]
    exec: ExecArgs,
    #[command(flatten)]
    ops: OperatorArgs,
    /// Also write the mutant descriptors here.
    #[arg(long)]
    mutants_out: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PolicyArgs {
    /// Differentiator policy: exact, output (strong), trace (weak), numeric.
    #[arg(long, default_value = "output")]
    policy: String,
    /// Tolerance for the numeric policy.
    #[arg(long)]
    epsilon: Option<f64>,
}

impl PolicyArgs {
    fn differentiator(&self) -> Result<Differentiator> {
        Ok(Differentiator::from_policy(Policy::parse(
            &self.policy,
            self.epsilon,
        )?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(value_enum)]
    task: Task,
    /// Behavior matrix (`.json`) or kill matrix (`.csv`). Optional for
    /// `pdl --n`.
    input: Option<PathBuf>,
    #[command(flatten)]
    policy: PolicyArgs,
    /// Origin program; defaults to the row with role `original`.
    #[arg(long)]
    origin: Option<String>,
    /// Comma-separated test ids restricting the test vector.
    #[arg(long)]
    tests: Option<String>,
    /// Program on the left of `dvector` and `counterexample`.
    #[arg(long)]
    left: Option<String>,
    /// Program on the right of `dvector` and `counterexample`.
    #[arg(long)]
    right: Option<String>,
    /// Dimension of an unannotated lattice for `pdl`.
    #[arg(long)]
    n: Option<usize>,
    /// Project the lattice onto its first `k` tests.
    #[arg(long)]
    project: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format dot`.
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Task {
    /// Live mutants and whether the suite is adequate.
    Adequacy,
    /// Minimal mutant set and reduction ratio.
    Minimize,
    /// Dynamic mutant subsumption graph.
    Dmsg,
    /// Position deviance lattice.
    Pdl,
    /// d-vector between two programs.
    Dvector,
    /// Ordered subsuming/subsumed mutant pairs.
    Pairs,
    /// The kill matrix itself.
    Kill,
    /// Distinguishing tests of two programs, when the space separates them.
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodName {
    Fix,
    Flt,
}

#[derive(Debug, Args)]
struct MbflArgs {
    /// Behavior matrix JSON carrying spec and original rows.
    matrix: Option<PathBuf>,
    /// Mutant descriptors mapping mutants to statements. Without them each
    /// mutant is ranked as its own location.
    #[arg(long)]
    mutants: Option<PathBuf>,
    /// Program source; used with `--tests` and `--spec` instead of a matrix.
    #[arg(long, conflicts_with = "matrix")]
    source: Option<PathBuf>,
    #[arg(long, requires = "source")]
    tests: Option<PathBuf>,
    #[arg(long, requires = "source")]
    spec: Option<PathBuf>,
    #[arg(long, default_value = "AOR,ROR,LCR,CRP,SDL")]
    operators: String,
    #[arg(long, env = "MUTSPACE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "fix")]
    method: MethodName,
    /// Similarity metric for `--method flt`: ochiai or jaccard.
    #[arg(long, default_value = "ochiai")]
    metric: String,
    #[command(flatten)]
    policy: PolicyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// Directory for the generated files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(value_enum)]
    property: Property,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Largest number of tests in a random kill matrix.
    #[arg(long, default_value_t = 6)]
    max_tests: usize,
    /// Largest number of mutants in a random kill matrix.
    #[arg(long, default_value_t = 12)]
    max_mutants: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Deviance paths from the origin agree with dynamic subsumption.
    Equivalence,
    /// Minimal sets never exceed the antichain bound.
    Bound,
}

/// Runs the command line with `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Mutate(a) => cmd_mutate(&a, out),
        Command::Run(a) => cmd_run(&a, out),
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Mbfl(a) => cmd_mbfl(&a, out),
        Command::Demo(a) => cmd_demo(&a, out),
        Command::Check(a) => cmd_check(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "mutspace: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load_program(path: &Path) -> Result<Program> {
    parse(&read(path)?)
}

fn cmd_mutate(a: &MutateArgs, out: &mut dyn Write) -> Result<i32> {
    let program = load_program(&a.source)?;
    let operators = Operator::parse_list(&a.ops.operators)?;
    let mutants = mutate_all(&program, &operators);
    let descriptors: Vec<&MutantDescriptor> = mutants.iter().map(|(d, _)| d).collect();
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("mutants.json"), to_json(&descriptors))?;
            for (d, m) in &mutants {
                fs::write(dir.join(format!("{}.mut", d.id)), &m.source)?;
            }
            writeln!(
                out,
                "{} mutants written to {}",
                mutants.len(),
                dir.display()
            )?;
        }
        None => out.write_all(to_json(&descriptors).as_bytes())?,
    }
    Ok(EXIT_OK)
}

/// Parses, mutates and executes; shared by `run` and `mbfl --source`.
fn build_matrix(
    source: &Path,
    tests: &Path,
    spec: Option<&Path>,
    operators: &str,
    options: ExecOptions,
) -> Result<(BehaviorMatrix, Vec<MutantDescriptor>)> {
    let program = load_program(source)?;
    let operators = Operator::parse_list(operators)?;
    let tests = tests_from_json(&read(tests)?)?;
    check_inputs(&program, &tests)?;
    let spec = spec
        .map(|p| read(p).and_then(|s| spec_from_json(&s)))
        .transpose()?;
    let mutants = mutate_all(&program, &operators);
    let bm = behavior_matrix(&program, &mutants, &tests, options, spec.as_ref())?;
    Ok((bm, mutants.into_iter().map(|(d, _)| d).collect()))
}

fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let options = ExecOptions {
        budget: a.exec.budget,
        tracing: a.exec.trace,
    };
    let (bm, descriptors) = build_matrix(
        &a.source,
        &a.exec.tests,
        a.exec.spec.as_deref(),
        &a.ops.operators,
        options,
    )?;
    if let Some(p) = &a.mutants_out {
        fs::write(p, to_json(&descriptors))?;
    }
    let mut text = bm.to_json();
    text.push('\n');
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

/// Reads a behavior matrix, or a kill matrix CSV synthesized into one with
/// origin `po`.
fn load_matrix(path: &Path) -> Result<BehaviorMatrix> {
    let text = read(path)?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        Ok(KillMatrix::from_csv(&text)?.to_behavior_matrix(ORIGINAL_ID))
    } else {
        BehaviorMatrix::from_json(&text)
    }
}

fn test_vector(bm: &BehaviorMatrix, list: Option<&str>) -> Result<TestVector> {
    match list {
        None => Ok(bm.tests().clone()),
        Some(list) => {
            let ids = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    if bm.tests().contains(s) {
                        Ok(s.into())
                    } else {
                        Err(Error::UnknownTest(s.to_owned()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            TestVector::new(ids)
        }
    }
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("`{flag}` is required for this task")))
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    // Reject a bad policy before touching any input.
    let d = a.policy.differentiator()?;
    let format = if a.dot { Some(Format::Dot) } else { a.format };
    let supported: &[Format] = match a.task {
        Task::Dmsg | Task::Pdl => &[Format::Dot, Format::Json],
        Task::Kill => &[Format::Csv, Format::Json],
        _ => &[Format::Json],
    };
    let format = format.unwrap_or(supported[0]);
    if !supported.contains(&format) {
        return Err(Error::InvalidArgument(format!(
            "format {format:?} is not available for {:?}",
            a.task
        )));
    }

    if a.task == Task::Pdl && a.input.is_none() {
        let n = a
            .n
            .ok_or_else(|| Error::InvalidArgument("`pdl` needs an input matrix or `--n`".into()))?;
        let pdl = build_pdl(n)?;
        let pdl = match a.project {
            Some(k) => pdl.project(k),
            None => pdl,
        };
        emit(out, a.out.as_deref(), &render_pdl(&pdl, format))?;
        return Ok(EXIT_OK);
    }
    let input = a
        .input
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("an input matrix is required".into()))?;
    let bm = load_matrix(input)?;
    let origin = match &a.origin {
        Some(o) => ProgramId::from(o.as_str()),
        None => bm
            .with_role(Role::Original)
            .ok_or(Error::MissingRole("original"))?
            .clone(),
    };
    let tests = test_vector(&bm, a.tests.as_deref())?;
    let space = ProgramSpace::new(&bm, tests.clone(), origin.clone(), d.clone())?;
    let mutants = bm.mutants();

    let text = match a.task {
        Task::Adequacy => to_json(&mutation_adequacy(
            &d,
            &tests,
            origin.as_str(),
            &mutants,
            &bm,
        )?),
        Task::Minimize => to_json(&minimal_mutant_set(&KillMatrix::from_space(
            &space, &mutants,
        )?)),
        Task::Pairs => {
            let km = KillMatrix::from_space(&space, &mutants)?;
            let pairs: Vec<_> = km
                .subsumption_pairs()
                .into_iter()
                .map(|(x, y)| json!({ "subsumes": x, "subsumed": y }))
                .collect();
            to_json(&pairs)
        }
        Task::Kill => {
            let km = KillMatrix::from_space(&space, &mutants)?;
            match format {
                Format::Csv => km.to_csv(),
                _ => to_json(&json!({
                    "tests": km.tests(),
                    "mutants": km.mutants(),
                    "rows": km.rows(),
                })),
            }
        }
        Task::Dmsg => {
            let dmsg = build_dmsg(&KillMatrix::from_space(&space, &mutants)?);
            match format {
                Format::Dot => dmsg.to_dot(),
                _ => to_json(&dmsg),
            }
        }
        Task::Pdl => {
            let pdl = Pdl::for_space(&space)?.annotate(&space, &mutants)?;
            let pdl = match a.project {
                Some(k) => pdl.project(k),
                None => pdl,
            };
            render_pdl(&pdl, format)
        }
        Task::Dvector => {
            let left = require(&a.left, "--left")?;
            let right = require(&a.right, "--right")?;
            let v = d_vector(&d, &tests, left, right, &bm)?;
            to_json(&json!({
                "left": v.left,
                "right": v.right,
                "tests": v.tests,
                "differentiator": v.differentiator,
                "bits": v.bits.to_string(),
                "angle": v.bits.angle(),
                "norm": v.norm(),
            }))
        }
        Task::Counterexample => {
            let left = require(&a.left, "--left")?;
            let right = require(&a.right, "--right")?;
            let witness = space.coincidence_counterexample(left, right)?;
            to_json(&json!({ "left": left, "right": right, "tests": witness }))
        }
    };
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn render_pdl(pdl: &Pdl, format: Format) -> String {
    match format {
        Format::Dot => pdl.to_dot(),
        _ => {
            let annotations: serde_json::Map<String, serde_json::Value> = pdl
                .annotations()
                .iter()
                .map(|(&node, ps)| (pdl.node_bits(node).to_string(), json!(ps)))
                .collect();
            to_json(&json!({
                "dimension": pdl.dimension(),
                "tests": pdl.tests(),
                "nodes": pdl.node_count(),
                "edges": pdl.edges().len(),
                "annotations": annotations,
            }))
        }
    }
}

fn cmd_mbfl(a: &MbflArgs, out: &mut dyn Write) -> Result<i32> {
    let d = a.policy.differentiator()?;
    let method = match a.method {
        MethodName::Fix => Method::Fix,
        MethodName::Flt => Method::Flt(Metric::parse(&a.metric)?),
    };
    let (bm, descriptors) = match (&a.matrix, &a.source) {
        (Some(m), None) => {
            let descriptors = match &a.mutants {
                Some(p) => Some(descriptors_from_json(&read(p)?)?),
                None => None,
            };
            (load_matrix(m)?, descriptors)
        }
        (None, Some(src)) => {
            let tests = a
                .tests
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("`--source` needs `--tests`".into()))?;
            let options = ExecOptions {
                budget: a.budget,
                tracing: d.policy == Policy::Trace,
            };
            let (bm, ds) = build_matrix(src, tests, a.spec.as_deref(), &a.operators, options)?;
            (bm, Some(ds))
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give either a behavior matrix or `--source`".into(),
            ))
        }
    };
    let mutants = match descriptors {
        Some(ds) => mutant_statements(&ds),
        None => bm
            .mutants()
            .into_iter()
            .map(|m| {
                let stmt = m.to_string();
                (m, Some(stmt))
            })
            .collect(),
    };
    let input = FaultLocalizationInput::new(&bm, mutants, bm.tests().clone(), d)?;
    let report = rank_statements(&input, method)?;
    let mut text = report.to_json();
    text.push('\n');
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_demo(a: &DemoArgs, out: &mut dyn Write) -> Result<i32> {
    let mut files: Vec<(&str, String)> = Vec::new();

    // Running example: positions relative to the spec and the original.
    let re = examples::running_example();
    let strong = Differentiator::strong();
    let tv = re.tests().clone();
    let from_spec = d_vector(&strong, &tv, "ps", "po", &re)?;
    let m_from_original = d_vector(&strong, &tv, "po", "m", &re)?;
    let m_from_spec = d_vector(&strong, &tv, "ps", "m", &re)?;
    let t3 = ProgramSpace::new(&re, TestVector::of(&["t3"]), "ps", strong.clone())?;
    let input = FaultLocalizationInput::new(
        &re,
        vec![(ProgramId::from("m"), None)],
        tv.clone(),
        strong.clone(),
    )?;
    let cmp = compare_methods(&input, "m")?;
    files.push((
        "running_example.json",
        to_json(&json!({
            "d(ps,po)": { "bits": from_spec.bits.angle(), "norm": from_spec.norm() },
            "d(po,m)": { "bits": m_from_original.bits.angle(), "norm": m_from_original.norm() },
            "d(ps,m)": { "bits": m_from_spec.bits.angle(), "norm": m_from_spec.norm() },
            "counterexample(po,m) over <t3>": t3.coincidence_counterexample("po", "m")?,
            "methods": cmp,
        })),
    ));

    // Kill table: subsumption, minimal set, DMSG.
    let km = examples::sample_kill_table();
    let pairs: Vec<String> = km
        .subsumption_pairs()
        .into_iter()
        .map(|(x, y)| format!("{x} subsumes {y}"))
        .collect();
    files.push((
        "sample_kill_table.json",
        to_json(&json!({
            "subsumption": pairs,
            "minimize": minimal_mutant_set(&km),
            "bound": max_minimal_size(km.tests().len() as u64).to_string(),
        })),
    ));
    files.push(("sample_kill_table_dmsg.dot", build_dmsg(&km).to_dot()));

    // The three-test lattice with the table's mutants placed on it.
    let bm = examples::sample_kill_table_behaviors();
    let space = ProgramSpace::over_all_tests(&bm, "po", strong)?;
    let pdl = Pdl::for_space(&space)?.annotate(&space, &bm.mutants())?;
    files.push(("pdl.dot", pdl.to_dot()));

    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (name, text) in &files {
                fs::write(dir.join(name), text)?;
            }
            writeln!(out, "{} files written to {}", files.len(), dir.display())?;
        }
        None => {
            for (name, text) in &files {
                writeln!(out, "== {name}")?;
                out.write_all(text.as_bytes())?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// A random kill matrix with `1..=max_tests` tests and `1..=max_mutants`
/// mutants.
pub fn random_kill_matrix(rng: &mut impl Rng, max_tests: usize, max_mutants: usize) -> KillMatrix {
    let n = rng.gen_range(1..=max_tests.max(1));
    let m = rng.gen_range(1..=max_mutants.max(1));
    let tests = TestVector::new((1..=n).map(|i| format!("t{i}").into()).collect())
        .expect("generated ids are unique");
    let mutants = (1..=m).map(|j| format!("m{j}").into()).collect();
    let rows = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_bool(0.5)).collect::<BitVector>())
        .collect();
    KillMatrix::new(tests, mutants, rows).expect("generated matrix is well formed")
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut failures = Vec::new();
    let mut pairs = 0u64;
    for trial in 0..a.trials {
        let km = random_kill_matrix(&mut rng, a.max_tests, a.max_mutants);
        match a.property {
            Property::Equivalence => {
                let bm = km.to_behavior_matrix(ORIGINAL_ID);
                let space =
                    ProgramSpace::over_all_tests(&bm, ORIGINAL_ID, Differentiator::strong())?;
                for x in km.mutants() {
                    for y in km.mutants() {
                        pairs += 1;
                        let c =
                            deviance_subsumption_equivalence(&space, &km, x.as_str(), y.as_str())?;
                        if !c.agrees() {
                            failures.push(json!({ "trial": trial, "mx": x, "my": y, "check": c }));
                        }
                    }
                }
            }
            Property::Bound => {
                let size = minimal_mutant_set(&km).minimal.len();
                let bound = max_minimal_size(km.tests().len() as u64);
                if num_bigint::BigUint::from(size) > bound {
                    failures
                        .push(json!({ "trial": trial, "size": size, "bound": bound.to_string() }));
                }
            }
        }
    }
    let mut report = json!({
        "property": format!("{:?}", a.property).to_lowercase(),
        "seed": a.seed,
        "trials": a.trials,
        "failures": failures,
    });
    if a.property == Property::Equivalence {
        report["pairs"] = json!(pairs);
    }
    out.write_all(to_json(&report).as_bytes())?;
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
