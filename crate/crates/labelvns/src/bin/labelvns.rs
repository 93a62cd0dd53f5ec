//! Command-line front end: solve single instances, generate random ones,
//! run the exact reference solver, and sweep benchmark grids to CSV.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 1 on usage, input or parameter errors, 2 when the instance has no
//! feasible solution.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::borrow::Cow;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use labelvns::{
    GeneratorParams, LabelledGraph, OracleError, ProblemSpec, SolveError, SolveResult,
    SolverConfig, Variant, components, exact_solve, generate, parse_instance, solve,
    write_instance,
};

/// Version tag of the output documents (JSON and CSV).
const SCHEMA: u32 = 1;

/// Attempts tried by `generate --require-connected` before giving up.
const CONNECT_ATTEMPTS: u64 = 10_000;

#[derive(Parser)]
#[command(name = "labelvns", version, about = "Heuristic and exact solvers for minimum-label spanning tree and bounded-label spanning forest problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a heuristic solver on one instance.
    Solve(SolveArgs),
    /// Generate a random instance file.
    Generate(GenerateArgs),
    /// Solve one instance exactly by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Run a (instances x variants x seeds) sweep and emit CSV rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    /// Minimize the labels of a connected spanning subgraph.
    Mlst,
    /// Minimize components under a label budget (set --kbar).
    Klsf,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum VariantArg {
    /// Shake and greedy repair with a fixed shake ceiling.
    Basic,
    /// Adds a restart from the incumbent's unused labels each iteration.
    Covns,
    /// Probabilistic construction and a reactive shake ceiling.
    Intvns,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Json,
    Csv,
}

impl fmt::Display for ProblemArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemArg::Mlst => "mlst",
            ProblemArg::Klsf => "klsf",
        })
    }
}

impl fmt::Display for VariantArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantArg::Basic => "basic",
            VariantArg::Covns => "covns",
            VariantArg::Intvns => "intvns",
        })
    }
}

impl From<VariantArg> for Variant {
    fn from(arg: VariantArg) -> Self {
        match arg {
            VariantArg::Basic => Variant::BasicVns,
            VariantArg::Covns => Variant::CoVns,
            VariantArg::Intvns => Variant::IntVns,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file to solve.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Label budget; required for klsf, rejected for mlst.
    #[arg(long)]
    kbar: Option<usize>,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many outer iterations.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Stop after this many wall-clock milliseconds.
    #[arg(long)]
    max_time_ms: Option<u64>,
    #[arg(long, value_enum, default_value_t = OutputArg::Json)]
    output: OutputArg,
    /// Include the improvement trace in the document (json only).
    #[arg(long)]
    trace: bool,
    /// Also solve exactly and report whether the heuristic matched the
    /// optimum (small label counts only).
    #[arg(long)]
    with_oracle: bool,
    /// Fill wall_ms in the document. Off by default so that equal runs
    /// produce byte-identical output; measured time always goes to stderr.
    #[arg(long)]
    report_timing: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of nodes (at least 2).
    #[arg(long)]
    nodes: usize,
    /// Number of labels (at least 1).
    #[arg(long)]
    labels: usize,
    /// Fraction of node pairs that receive an edge, in (0, 1].
    #[arg(long)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination file.
    #[arg(long)]
    out: PathBuf,
    /// Retry consecutive seeds until the instance is connected.
    #[arg(long)]
    require_connected: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance file to solve.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Label budget; required for klsf, rejected for mlst.
    #[arg(long)]
    kbar: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputArg::Json)]
    output: OutputArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Glob pattern selecting the instance files.
    #[arg(long)]
    instances: String,
    /// Comma-separated list of variants to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "basic,covns,intvns")]
    variants: Vec<VariantArg>,
    /// Seeds to run: "N" for 0..N, "A..B", or "A..=B".
    #[arg(long, default_value = "1")]
    seeds: String,
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Label budget; required for klsf, rejected for mlst.
    #[arg(long)]
    kbar: Option<usize>,
    /// Stop each run after this many outer iterations.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Stop each run after this many wall-clock milliseconds.
    #[arg(long)]
    max_time_ms: Option<u64>,
    /// Solve each instance exactly once per sweep and fill opt_match.
    #[arg(long)]
    with_oracle: bool,
    /// Fill wall_ms in the rows (costs byte-for-byte reproducibility).
    #[arg(long)]
    report_timing: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
}

/// One run's result in the shared document schema; optional fields stay
/// empty (CSV) or null (JSON) when unknown or not requested.
#[derive(Serialize)]
struct RunRecord {
    schema: u32,
    instance: String,
    variant: String,
    problem: String,
    kbar: Option<usize>,
    seed: u64,
    label_count: Option<usize>,
    component_count: Option<usize>,
    feasible: Option<bool>,
    iterations: Option<u64>,
    wall_ms: Option<u64>,
    opt_match: Option<bool>,
    status: String,
}

const CSV_HEADER: &str =
    "schema,instance,variant,problem,kbar,seed,label_count,component_count,feasible,iterations,wall_ms,opt_match,status";

impl RunRecord {
    fn csv_row(&self) -> String {
        fn opt<T: ToString>(value: &Option<T>) -> String {
            value.as_ref().map(T::to_string).unwrap_or_default()
        }
        [
            self.schema.to_string(),
            csv_escape(&self.instance).into_owned(),
            self.variant.clone(),
            self.problem.clone(),
            opt(&self.kbar),
            self.seed.to_string(),
            opt(&self.label_count),
            opt(&self.component_count),
            opt(&self.feasible),
            opt(&self.iterations),
            opt(&self.wall_ms),
            opt(&self.opt_match),
            csv_escape(&self.status).into_owned(),
        ]
        .join(",")
    }
}

/// Quotes a CSV field when it contains a separator, quote or line break.
fn csv_escape(field: &str) -> Cow<'_, str> {
    if field.contains(['"', ',', '\n', '\r']) {
        Cow::Owned(format!("\"{}\"", field.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(field)
    }
}

/// Solve document: the shared record plus the solution itself.
#[derive(Serialize)]
struct SolveDocument {
    #[serde(flatten)]
    record: RunRecord,
    labels: Vec<usize>,
    forest: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceRow>>,
}

#[derive(Serialize)]
struct TraceRow {
    iteration: u64,
    label_count: usize,
    component_count: usize,
    feasible: bool,
}

#[derive(Serialize)]
struct OracleDocument {
    schema: u32,
    instance: String,
    problem: String,
    kbar: Option<usize>,
    label_count: usize,
    component_count: usize,
    feasible: bool,
    subsets_examined: u64,
    labels: Vec<usize>,
}

/// A failure with its process exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn unsolvable(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not errors; everything else is
            // a usage problem and exits 1.
            let requested = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if requested { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Combines the problem flag and the budget flag, enforcing that --kbar
/// appears exactly when the problem needs it.
fn resolve_problem(problem: ProblemArg, kbar: Option<usize>) -> Result<ProblemSpec, Failure> {
    match (problem, kbar) {
        (ProblemArg::Mlst, None) => Ok(ProblemSpec::Mlst),
        (ProblemArg::Mlst, Some(_)) => {
            Err(Failure::usage("--kbar only applies to --problem klsf"))
        }
        (ProblemArg::Klsf, Some(label_budget)) => Ok(ProblemSpec::Klsf { label_budget }),
        (ProblemArg::Klsf, None) => Err(Failure::usage("--problem klsf requires --kbar")),
    }
}

fn require_run_limit(max_iter: Option<u64>, max_time_ms: Option<u64>) -> Result<(), Failure> {
    if max_iter.is_none() && max_time_ms.is_none() {
        return Err(Failure::usage("set --max-iter and/or --max-time-ms"));
    }
    Ok(())
}

fn load_instance(path: &PathBuf) -> Result<LabelledGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|err| Failure::input(format!("{}: {err}", path.display())))?;
    parse_instance(&text).map_err(|err| Failure::input(format!("{}: {err}", path.display())))
}

/// Compares a heuristic result against the exact optimum: label counts must
/// match for the spanning-tree problem, component counts for the forest
/// problem.
fn matches_optimum(result: &SolveResult, problem: &ProblemSpec, graph: &LabelledGraph) -> Option<bool> {
    match exact_solve(graph, problem) {
        Ok(exact) => Some(match problem {
            ProblemSpec::Mlst => result.evaluation.label_count == exact.evaluation.label_count,
            ProblemSpec::Klsf { .. } => {
                result.evaluation.component_count == exact.evaluation.component_count
            }
        }),
        Err(err) => {
            eprintln!("note: exact reference unavailable: {err}");
            None
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let problem = resolve_problem(args.problem, args.kbar)?;
    require_run_limit(args.max_iter, args.max_time_ms)?;
    if args.trace && args.output == OutputArg::Csv {
        return Err(Failure::usage("--trace requires --output json"));
    }
    let graph = load_instance(&args.instance)?;
    let config = SolverConfig {
        variant: args.variant.into(),
        max_iterations: args.max_iter,
        max_elapsed: args.max_time_ms.map(Duration::from_millis),
        seed: args.seed,
        record_trace: args.trace,
    };
    let result = match solve(&graph, &problem, &config) {
        Ok(result) => result,
        Err(SolveError::Unsolvable) => {
            return Err(Failure::unsolvable(format!(
                "{}: {}",
                args.instance.display(),
                SolveError::Unsolvable
            )));
        }
        Err(err) => return Err(Failure::usage(err.to_string())),
    };

    eprintln!(
        "{}: {} labels, {} components, {} iterations, {:.1} ms",
        args.instance.display(),
        result.evaluation.label_count,
        result.evaluation.component_count,
        result.iterations_used,
        result.wall_time.as_secs_f64() * 1e3,
    );
    let opt_match = if args.with_oracle {
        matches_optimum(&result, &problem, &graph)
    } else {
        None
    };
    let record = RunRecord {
        schema: SCHEMA,
        instance: args.instance.display().to_string(),
        variant: args.variant.to_string(),
        problem: args.problem.to_string(),
        kbar: problem.label_budget(),
        seed: args.seed,
        label_count: Some(result.evaluation.label_count),
        component_count: Some(result.evaluation.component_count),
        feasible: Some(result.evaluation.feasible),
        iterations: Some(result.iterations_used),
        wall_ms: args
            .report_timing
            .then(|| result.wall_time.as_millis() as u64),
        opt_match,
        status: "ok".into(),
    };
    match args.output {
        OutputArg::Json => {
            let document = SolveDocument {
                record,
                labels: result.labels.members(),
                forest: result.forest.edges().to_vec(),
                trace: result.trace.map(|points| {
                    points
                        .iter()
                        .map(|p| TraceRow {
                            iteration: p.iteration,
                            label_count: p.evaluation.label_count,
                            component_count: p.evaluation.component_count,
                            feasible: p.evaluation.feasible,
                        })
                        .collect()
                }),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&document).expect("document serializes")
            );
        }
        OutputArg::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", record.csv_row());
        }
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let mut params = GeneratorParams {
        node_count: args.nodes,
        label_count: args.labels,
        edge_density: args.density,
        seed: args.seed,
    };
    let (graph, connected) = if args.require_connected {
        let mut found = None;
        for attempt in 0..CONNECT_ATTEMPTS {
            params.seed = args.seed.wrapping_add(attempt);
            let graph = generate(&params).map_err(|err| Failure::input(err.to_string()))?;
            if components(&graph, &graph.all_labels()).component_count() == 1 {
                found = Some(graph);
                break;
            }
        }
        let graph = found.ok_or_else(|| {
            Failure::input(format!(
                "no connected instance found in {CONNECT_ATTEMPTS} attempts from seed {}",
                args.seed
            ))
        })?;
        (graph, true)
    } else {
        let graph = generate(&params).map_err(|err| Failure::input(err.to_string()))?;
        let connected = components(&graph, &graph.all_labels()).component_count() == 1;
        (graph, connected)
    };
    fs::write(&args.out, write_instance(&graph))
        .map_err(|err| Failure::input(format!("{}: {err}", args.out.display())))?;
    eprintln!(
        "{}: {} nodes, {} edges, {} labels, seed {}, {}",
        args.out.display(),
        graph.node_count(),
        graph.edge_count(),
        graph.label_count(),
        params.seed,
        if connected { "connected" } else { "disconnected" },
    );
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let problem = resolve_problem(args.problem, args.kbar)?;
    let graph = load_instance(&args.instance)?;
    let result = match exact_solve(&graph, &problem) {
        Ok(result) => result,
        Err(OracleError::Unsolvable) => {
            return Err(Failure::unsolvable(format!(
                "{}: {}",
                args.instance.display(),
                OracleError::Unsolvable
            )));
        }
        Err(err) => return Err(Failure::input(err.to_string())),
    };
    eprintln!(
        "{}: optimum found after {} subsets",
        args.instance.display(),
        result.subsets_examined
    );
    let document = OracleDocument {
        schema: SCHEMA,
        instance: args.instance.display().to_string(),
        problem: args.problem.to_string(),
        kbar: problem.label_budget(),
        label_count: result.evaluation.label_count,
        component_count: result.evaluation.component_count,
        feasible: result.evaluation.feasible,
        subsets_examined: result.subsets_examined,
        labels: result.optimum.members(),
    };
    match args.output {
        OutputArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(&document).expect("document serializes")
        ),
        OutputArg::Csv => {
            println!("schema,instance,problem,kbar,label_count,component_count,feasible,subsets_examined");
            println!(
                "{},{},{},{},{},{},{},{}",
                document.schema,
                csv_escape(&document.instance),
                document.problem,
                document.kbar.map(|k| k.to_string()).unwrap_or_default(),
                document.label_count,
                document.component_count,
                document.feasible,
                document.subsets_examined,
            );
        }
    }
    Ok(())
}

/// Seeds specs: "N" for 0..N, "A..B" half-open, "A..=B" inclusive.
fn parse_seeds(spec: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::usage(format!("invalid --seeds \"{spec}\": use N, A..B or A..=B"));
    let seeds: Vec<u64> = if let Some((start, rest)) = spec.split_once("..") {
        let start: u64 = if start.is_empty() {
            0
        } else {
            start.parse().map_err(|_| bad())?
        };
        if let Some(end) = rest.strip_prefix('=') {
            let end: u64 = end.parse().map_err(|_| bad())?;
            (start..=end).collect()
        } else {
            let end: u64 = rest.parse().map_err(|_| bad())?;
            (start..end).collect()
        }
    } else {
        let count: u64 = spec.parse().map_err(|_| bad())?;
        (0..count).collect()
    };
    if seeds.is_empty() {
        return Err(Failure::usage(format!("--seeds \"{spec}\" selects no seeds")));
    }
    Ok(seeds)
}

/// Exact reference for one instance of a sweep, shared by all its runs.
enum OracleRef {
    /// Optimum known: (label count, component count).
    Known(usize, usize),
    /// Not requested, not solvable, or over the enumeration cap.
    Unavailable,
}

struct BenchInstance {
    name: String,
    graph: Result<LabelledGraph, String>,
    oracle: OracleRef,
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let problem = resolve_problem(args.problem, args.kbar)?;
    require_run_limit(args.max_iter, args.max_time_ms)?;
    let seeds = parse_seeds(&args.seeds)?;
    let mut variants = args.variants.clone();
    variants.sort_unstable();
    variants.dedup();
    if variants.is_empty() {
        return Err(Failure::usage("--variants selects no variants"));
    }

    let mut paths: Vec<String> = Vec::new();
    let entries = glob::glob(&args.instances)
        .map_err(|err| Failure::usage(format!("bad --instances pattern: {err}")))?;
    for entry in entries {
        match entry {
            Ok(path) => paths.push(path.display().to_string()),
            Err(err) => eprintln!("warning: skipping unreadable path: {err}"),
        }
    }
    paths.sort_unstable();
    paths.dedup();
    if paths.is_empty() {
        return Err(Failure::input(format!(
            "no instances match \"{}\"",
            args.instances
        )));
    }

    let instances: Vec<BenchInstance> = paths
        .into_iter()
        .map(|name| {
            let graph = fs::read_to_string(&name)
                .map_err(|err| err.to_string())
                .and_then(|text| parse_instance(&text).map_err(|err| err.to_string()));
            let graph = match graph {
                Ok(graph) => Ok(graph),
                Err(message) => {
                    eprintln!("warning: {name}: {message}");
                    Err(message)
                }
            };
            let oracle = match (&graph, args.with_oracle) {
                (Ok(graph), true) => match exact_solve(graph, &problem) {
                    Ok(exact) => OracleRef::Known(
                        exact.evaluation.label_count,
                        exact.evaluation.component_count,
                    ),
                    Err(err) => {
                        eprintln!("note: {name}: exact reference unavailable: {err}");
                        OracleRef::Unavailable
                    }
                },
                _ => OracleRef::Unavailable,
            };
            BenchInstance { name, graph, oracle }
        })
        .collect();

    // Tasks are laid out in output order (instance, variant, seed); the
    // parallel map preserves it.
    let tasks: Vec<(usize, VariantArg, u64)> = instances
        .iter()
        .enumerate()
        .flat_map(|(index, _)| {
            let seeds = &seeds;
            variants.iter().flat_map(move |&variant| {
                seeds.iter().map(move |&seed| (index, variant, seed))
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|err| Failure::input(format!("cannot build worker pool: {err}")))?;
    let rows: Vec<RunRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(index, variant, seed)| {
                bench_row(&instances[index], variant, seed, &problem, &args)
            })
            .collect()
    });

    println!("{CSV_HEADER}");
    let mut solved = 0usize;
    for row in &rows {
        if row.status == "ok" {
            solved += 1;
        }
        println!("{}", row.csv_row());
    }
    eprintln!("{} rows, {} ok", rows.len(), solved);
    Ok(())
}

fn bench_row(
    instance: &BenchInstance,
    variant: VariantArg,
    seed: u64,
    problem: &ProblemSpec,
    args: &BenchArgs,
) -> RunRecord {
    let mut record = RunRecord {
        schema: SCHEMA,
        instance: instance.name.clone(),
        variant: variant.to_string(),
        problem: args.problem.to_string(),
        kbar: problem.label_budget(),
        seed,
        label_count: None,
        component_count: None,
        feasible: None,
        iterations: None,
        wall_ms: None,
        opt_match: None,
        status: String::new(),
    };
    let graph = match &instance.graph {
        Ok(graph) => graph,
        Err(_) => {
            record.status = "parse_error".into();
            return record;
        }
    };
    let config = SolverConfig {
        variant: variant.into(),
        max_iterations: args.max_iter,
        max_elapsed: args.max_time_ms.map(Duration::from_millis),
        seed,
        record_trace: false,
    };
    match solve(graph, problem, &config) {
        Ok(result) => {
            record.label_count = Some(result.evaluation.label_count);
            record.component_count = Some(result.evaluation.component_count);
            record.feasible = Some(result.evaluation.feasible);
            record.iterations = Some(result.iterations_used);
            record.wall_ms = args
                .report_timing
                .then(|| result.wall_time.as_millis() as u64);
            record.opt_match = match instance.oracle {
                OracleRef::Known(label_count, component_count) => Some(match problem {
                    ProblemSpec::Mlst => result.evaluation.label_count == label_count,
                    ProblemSpec::Klsf { .. } => {
                        result.evaluation.component_count == component_count
                    }
                }),
                OracleRef::Unavailable => None,
            };
            record.status = "ok".into();
        }
        Err(SolveError::Unsolvable) => {
            record.status = "unsolvable".into();
        }
        Err(err) => {
            eprintln!("warning: {} (variant {variant}, seed {seed}): {err}", instance.name);
            record.status = "error".into();
        }
    }
    record
}
