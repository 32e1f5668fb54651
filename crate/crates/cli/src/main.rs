use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use iris_core::bench::{run_benchmark, to_csv, to_text_table, BenchConfig};
use iris_core::det::brute_force_minmax_regret;
use iris_core::heuristics::{evolve, EvoParams};
use iris_core::io::{instance_to_json, read_instance, read_selection, selection_to_json};
use iris_core::reductions::{default_b, dnf_to_iris, independent_set_to_ris, Graph, QuantifiedDnf};
use iris_core::regret::{minmax_regret_with, RobustResult};
use iris_core::{classify, evaluate_regret, GenParams, Mode, RisDispatcher, RobustStatus, SolverConfig, StructureClass};

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "iris", version, about = "Restricted items selection under interval costs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize the maximum regret of an instance
    Solve(SolveArgs),
    /// Write a random instance
    Generate(GenerateArgs),
    /// Print the maximum regret of a selection
    Evaluate { instance: PathBuf, selection: PathBuf },
    /// Build an instance from a graph or a quantified DNF formula
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Run a benchmark suite and write a CSV report
    Bench(BenchArgs),
    /// Print the conflict structure of an instance
    Classify { instance: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Cut generation (the default)
    #[arg(long, conflicts_with_all = ["heuristic_only", "brute_force"])]
    exact: bool,
    /// Evolutionary search only; the result is an upper bound
    #[arg(long, conflicts_with = "brute_force")]
    heuristic_only: bool,
    /// Enumerate every feasible selection (small instances only)
    #[arg(long)]
    brute_force: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write one JSON record per iteration
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 500)]
    iter_limit: usize,
    /// Seconds per master solve
    #[arg(long, default_value_t = 60.0)]
    master_time_limit: f64,
    /// Start from the midpoint-scenario cut only
    #[arg(long)]
    no_init_heuristics: bool,
    /// Write the selection as JSON
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value = "normal")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    cost_lo: i64,
    #[arg(long, default_value_t = 100)]
    cost_hi: i64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum ReduceKind {
    /// DIMACS edge list to a deterministic instance
    Indepset {
        input: PathBuf,
        /// Independent set size asked for
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quantified 3-DNF (one clause per line, e.g. `x1 -y2 y3`) to an interval instance
    Dnf {
        input: PathBuf,
        #[arg(short = 'B')]
        b: Option<i64>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// JSON list of generator parameter rows
    suite: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    /// Leave time columns empty so reruns are byte-identical
    #[arg(long)]
    no_timing: bool,
    #[arg(long, default_value_t = 500)]
    iter_limit: usize,
    #[arg(long, default_value_t = 60.0)]
    master_time_limit: f64,
    /// Write per-instance records as JSON lines
    #[arg(long)]
    records: Option<PathBuf>,
}

/// An error that maps to a specific exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<iris_core::Error>() {
        Some(iris_core::Error::Infeasible) => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).ok().filter(|d| !d.is_zero()).with_context(|| format!("bad time limit {s}"))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_instance(path: &Path) -> Result<iris_core::Instance> {
    read_instance(path).with_context(|| format!("reading {}", path.display()))
}

fn print_result(res: &RobustResult) {
    println!("status: {:?}", res.status);
    println!("regret: {}", res.regret);
    println!("lower_bound: {}", res.lower_bound);
    println!("upper_bound: {}", res.upper_bound);
    println!("gap: {}", res.gap);
    println!("iterations: {}", res.iterations);
    println!("selection: {}", selection_to_json(&res.x_star));
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = load_instance(&args.instance)?;
    let config = SolverConfig {
        epsilon: args.eps,
        iteration_limit: args.iter_limit,
        master_time_limit: seconds(args.master_time_limit)?,
        heuristics: !args.no_init_heuristics,
        ..SolverConfig::default()
    }
    .seeded(args.seed);
    config.check()?;

    let x = if args.heuristic_only {
        let params = EvoParams { rng_seed: args.seed, ..config.evo };
        let pop = evolve(&inst, &params, &RisDispatcher::for_instance(&inst))?;
        let (x, regret) = pop.best().expect("population is never empty").clone();
        println!("status: Heuristic");
        println!("regret: {regret}");
        println!("selection: {}", selection_to_json(&x));
        x
    } else if args.brute_force {
        let res = brute_force_minmax_regret(&inst)?;
        print_result(&res);
        res.x_star
    } else {
        let mut trace = match &args.trace {
            Some(path) => Some(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
            None => None,
        };
        let mut trace_err = None;
        let res = minmax_regret_with(&inst, &config, |rec| {
            if let Some(w) = trace.as_mut() {
                let line = serde_json::to_string(rec).expect("records serialize");
                if let Err(e) = writeln!(w, "{line}") {
                    trace_err.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = trace_err {
            return Err(e).context("writing trace");
        }
        if let Some(mut w) = trace {
            w.flush()?;
        }
        print_result(&res);
        if res.status != RobustStatus::Optimal {
            if let Some(path) = &args.output {
                write_file(path, &selection_to_json(&res.x_star))?;
            }
            return Err(Exit(EXIT_LIMIT, format!("stopped on {:?} with gap {:.4}", res.status, res.gap)).into());
        }
        res.x_star
    };
    if let Some(path) = &args.output {
        write_file(path, &selection_to_json(&x))?;
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let params = GenParams { cost_range: (args.cost_lo, args.cost_hi), ..GenParams::new(args.m, args.r, args.p, args.k, args.mode, args.seed) };
    let inst = iris_core::generate_instance(&params)?;
    write_file(&args.output, &instance_to_json(&inst))?;
    println!("items: {}", inst.n_items());
    println!("pairs: {}", inst.forbidden().len());
    Ok(())
}

fn evaluate(instance: &Path, selection: &Path) -> Result<()> {
    let inst = load_instance(instance)?;
    let x = read_selection(&inst, selection).with_context(|| format!("reading {}", selection.display()))?;
    let report = evaluate_regret(&inst, &x, &RisDispatcher::for_instance(&inst))?;
    let worst = iris_core::cost_of(&inst, &report.scenario, &x);
    println!("regret: {}", report.regret);
    println!("worst_case_cost: {worst}");
    println!("best_alternative_cost: {}", worst - report.regret);
    println!("best_alternative: {}", selection_to_json(&report.witness));
    Ok(())
}

fn reduce(kind: ReduceKind) -> Result<()> {
    match kind {
        ReduceKind::Indepset { input, k, output } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let g = Graph::parse_dimacs(&text)?;
            let (inst, threshold) = independent_set_to_ris(&g, k)?;
            write_file(&output, &instance_to_json(&inst))?;
            println!("threshold: {threshold}");
        }
        ReduceKind::Dnf { input, b, output } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let phi = QuantifiedDnf::parse(&text)?;
            let art = dnf_to_iris(&phi, b.unwrap_or_else(|| default_b(&phi)))?;
            write_file(&output, &instance_to_json(&art.instance))?;
            println!("B: {}", art.b);
            println!("Z: {}", art.z);
            for (s, roles) in art.roles.iter().enumerate() {
                println!("set {s}: {}", serde_json::to_string(roles)?);
            }
        }
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.suite).with_context(|| format!("reading {}", args.suite.display()))?;
    let rows: Vec<GenParams> = serde_json::from_str(&text).context("parsing suite")?;
    if args.instances == 0 {
        bail!(Exit(EXIT_INPUT, "--instances must be positive".into()));
    }
    let config = BenchConfig {
        instances_per_row: args.instances,
        solver: SolverConfig {
            iteration_limit: args.iter_limit,
            master_time_limit: seconds(args.master_time_limit)?,
            ..SolverConfig::default()
        },
        timing: !args.no_timing,
    };
    let report = run_benchmark(&rows, &config);
    write_file(&args.output, &to_csv(&report.rows)?)?;
    if let Some(path) = &args.records {
        let mut out = String::new();
        for rec in &report.records {
            out.push_str(&serde_json::to_string(rec)?);
            out.push('\n');
        }
        write_file(path, &out)?;
    }
    print!("{}", to_text_table(&report.rows));
    Ok(())
}

fn classify_cmd(instance: &Path) -> Result<()> {
    let inst = load_instance(instance)?;
    let class = classify(&inst);
    println!("{}", class.name());
    if let StructureClass::CliqueComponents { classes } = &class {
        println!("classes: {}", classes.len());
        for c in classes {
            let members: Vec<String> = c.iter().map(ToString::to_string).collect();
            println!("  {}", members.join(" "));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Generate(args) => generate(args),
        Command::Evaluate { instance, selection } => evaluate(&instance, &selection),
        Command::Reduce { kind } => reduce(kind),
        Command::Bench(args) => bench(args),
        Command::Classify { instance } => classify_cmd(&instance),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
