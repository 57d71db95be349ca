use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use wzf::cli::{family_from_flags, run, MethodChoice, Report, RunConfig, Source};
use wzf::{markov, montecarlo};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    Complete,
    Star,
    Path,
    Cycle,
    #[value(name = "complete_bipartite", alias = "complete-bipartite")]
    CompleteBipartite,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Markov,
    Closed,
    Mc,
    All,
}

/// Expected and confidence propagation times for weighted zero forcing.
#[derive(Debug, Parser)]
#[command(name = "wzf", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "family"])))]
struct Args {
    /// Graph document: {"n":N,"edges":[{"u":U,"v":V,"w":W},...]}
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Build a standard family instead of reading a file
    #[arg(long, value_enum, value_name = "NAME")]
    family: Option<FamilyName>,
    /// Vertex count (path, cycle, complete) or leaf count (star)
    #[arg(long)]
    n: Option<usize>,
    /// First part size for complete_bipartite
    #[arg(long)]
    a: Option<usize>,
    /// Second part size for complete_bipartite
    #[arg(long)]
    b: Option<usize>,
    /// Family edge weights in canonical edge order
    #[arg(long, value_delimiter = ',', value_name = "CSV")]
    weights: Vec<f64>,
    /// Compute the expected propagation time (the default)
    #[arg(long)]
    eptw: bool,
    /// Compute the alpha-confidence propagation time
    #[arg(long, value_name = "ALPHA")]
    cptw: Option<f64>,
    #[arg(long, value_enum, default_value = "markov")]
    method: MethodArg,
    /// Evaluate this initial set only
    #[arg(long, value_delimiter = ',', value_name = "CSV")]
    set: Option<Vec<usize>>,
    #[arg(long, default_value_t = montecarlo::DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Closed form vs Markov tolerance for expected times
    #[arg(long, default_value_t = wzf::cli::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = markov::DEFAULT_STATE_CAP)]
    state_cap: u64,
    #[arg(long, default_value_t = markov::DEFAULT_ROUND_CAP)]
    round_cap: u64,
    /// Human-readable table instead of JSON
    #[arg(long)]
    pretty: bool,
}

fn config(args: &Args) -> wzf::Result<RunConfig> {
    let source = match (&args.input, args.family) {
        (Some(path), _) => Source::File(path.clone()),
        (None, Some(name)) => {
            let name = name.to_possible_value().expect("no skipped variants");
            let family = family_from_flags(name.get_name(), args.n, args.a, args.b)?;
            Source::Family { family, weights: args.weights.clone() }
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let mut cfg = RunConfig::new(source);
    cfg.eptw = args.eptw;
    cfg.cptw = args.cptw;
    cfg.method = match args.method {
        MethodArg::Markov => MethodChoice::Markov,
        MethodArg::Closed => MethodChoice::Closed,
        MethodArg::Mc => MethodChoice::Mc,
        MethodArg::All => MethodChoice::All,
    };
    cfg.fixed_set = args.set.clone();
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.tol = args.tol;
    cfg.state_cap = args.state_cap;
    cfg.round_cap = args.round_cap;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match config(&args) {
        Ok(cfg) => run(&cfg),
        Err(e) => Report::from_error(&e),
    };
    if args.pretty {
        print!("{}", report.to_pretty());
    } else {
        println!("{}", report.to_json());
    }
    if report.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
