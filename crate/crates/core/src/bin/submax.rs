use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use submax::error::{Error, Result};
use submax::harness::config::{config_to_args, load_config};
use submax::harness::{
    render_svg, run_on, summarize, write_instance, write_records_csv, write_summary_csv, ExperimentSpec, InstanceSource,
};
use submax::objectives::{brute_force_opt, Instance, ObjectiveKind, SyntheticSpec};
use submax::oracle::{Objective, OracleHandle};
use submax::solvers::{Algorithm, PMode, SolverConfig, DEFAULT_FLIP_POINT};

#[derive(Parser)]
#[command(
    name = "submax",
    version,
    about = "Submodular maximization under a cardinality constraint"
)]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm once and print the selected set.
    Solve(SolveArgs),
    /// Run a seeded benchmark and write CSV/SVG reports.
    Bench(BenchArgs),
    /// Exact optimum by enumeration (small instances only).
    Bruteforce(BruteArgs),
    /// Write a synthetic instance to a file.
    Gen(GenArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, default_value = "cut")]
    objective: ObjectiveKind,
    /// Similarity CSV (coverage, facility) or edge list (cut). Synthetic when omitted.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value_t = 0.75)]
    lambda: f64,
    /// Synthetic instance size.
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Synthetic edge probability (cut).
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Synthetic feature dimension (coverage, facility).
    #[arg(long, default_value_t = 25)]
    dim: usize,
    #[arg(long, default_value_t = 0.0)]
    weight_lo: f64,
    #[arg(long, default_value_t = 1.0)]
    weight_hi: f64,
}

impl InstanceArgs {
    fn synthetic(&self) -> SyntheticSpec {
        SyntheticSpec::new(self.objective, self.n)
            .density(self.density)
            .lambda(self.lambda)
            .dim(self.dim)
            .weights(self.weight_lo, self.weight_hi)
    }

    fn source(&self) -> InstanceSource {
        match &self.data {
            Some(path) => InstanceSource::File {
                kind: self.objective,
                path: path.clone(),
                lambda: self.lambda,
            },
            None => InstanceSource::Synthetic(self.synthetic()),
        }
    }
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = DEFAULT_FLIP_POINT)]
    ts: f64,
    #[arg(long = "p-mode", default_value = "practical")]
    p_mode: PMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "main")]
    algo: Algorithm,
    /// Also write the instance used (useful for synthetic runs).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// key=value file with defaults for any of these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "main,samplegreedy,randomgreedy")]
    algo: Vec<Algorithm>,
    #[arg(long, default_value_t = 8)]
    reps: usize,
    /// Per-run records CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Aggregated table CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Run cells one after another instead of on the thread pool.
    #[arg(long)]
    serial: bool,
}

#[derive(Args)]
struct BruteArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

/// Same instance `bench` would build for this seed.
fn instance(args: &InstanceArgs, seed: u64) -> Result<Instance> {
    let mut spec = ExperimentSpec::new(args.source(), Vec::new(), Vec::new());
    spec.seed = seed;
    spec.load_instance()
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = instance(&args.instance, args.solver.seed)?;
    if let Some(path) = &args.out {
        write_instance(&inst, path)?;
    }
    let h = OracleHandle::new(&inst, args.k)?;
    let cfg = SolverConfig::new(args.k)
        .eps(args.solver.eps)
        .flip_point(args.solver.ts)
        .p_mode(args.solver.p_mode)
        .seed(args.solver.seed);
    let outcome = args.algo.run(&h, &cfg)?;
    let queries = h.queries();
    let value = inst.evaluate(outcome.solution.elements());
    let ids: Vec<String> = outcome.solution.sorted().iter().map(usize::to_string).collect();
    println!("algo\t{}", args.algo);
    println!("set\t{}", ids.join(","));
    println!("value\t{value}");
    println!("queries\t{queries}");
    println!("failed\t{}", outcome.failed);
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let mut spec = ExperimentSpec::new(args.instance.source(), args.algo.clone(), args.k.clone());
    spec.eps = args.solver.eps;
    spec.flip_point = args.solver.ts;
    spec.p_mode = args.solver.p_mode;
    spec.reps = args.reps;
    spec.seed = args.solver.seed;
    spec.parallel = !args.serial;
    let inst = spec.load_instance()?;
    let records = run_on(&spec, &inst)?;
    let rows = summarize(&records)?;
    if let Some(path) = &args.out {
        write_records_csv(&records, path)?;
    }
    if let Some(path) = &args.summary {
        write_summary_csv(&rows, path)?;
    }
    if let Some(path) = &args.svg {
        render_svg(&rows, path)?;
    }
    println!("algo\tk\tmean_value\tstd_value\tmean_queries\tfailure_rate");
    for r in &rows {
        println!(
            "{}\t{}\t{:.6}\t{:.6}\t{:.1}\t{:.3}",
            r.algo, r.k, r.mean_value, r.std_value, r.mean_queries, r.failure_rate
        );
    }
    Ok(())
}

fn bruteforce(args: BruteArgs) -> Result<()> {
    let inst = instance(&args.instance, args.seed)?;
    let h = OracleHandle::new(&inst, args.k)?;
    let cert = brute_force_opt(&h, args.k)?;
    let ids: Vec<String> = cert.opt_set.sorted().iter().map(usize::to_string).collect();
    println!("set\t{}", ids.join(","));
    println!("value\t{}", cert.opt_value);
    println!("enumerated\t{}", cert.enumerated);
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    if args.instance.data.is_some() {
        return Err(Error::Config("gen writes synthetic instances; drop --data".into()));
    }
    let inst = instance(&args.instance, args.seed)?;
    write_instance(&inst, &args.out)?;
    eprintln!("wrote {} elements to {}", inst.ground_size(), args.out.display());
    Ok(())
}

/// Splices `key=value` pairs from `--config FILE` in front of the remaining flags so that
/// explicit flags win.
fn expand_config(raw: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = raw.iter().position(|a| a == "--config") else {
        return Ok(raw);
    };
    let Some(path) = raw.get(pos + 1) else {
        return Ok(raw);
    };
    let pairs = load_config(path)?;
    let mut args = raw[..2.min(raw.len())].to_vec();
    args.extend(config_to_args(&pairs));
    args.extend(raw[2.min(raw.len())..].iter().cloned());
    Ok(args)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Bruteforce(a) => bruteforce(a),
        Command::Gen(a) => gen(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let fail = |e: Error| {
        eprintln!("error: {e}");
        ExitCode::from(e.exit_code() as u8)
    };
    let args = match expand_config(std::env::args().collect()) {
        Ok(args) => args,
        Err(e) => return fail(e),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            e.print().ok();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
