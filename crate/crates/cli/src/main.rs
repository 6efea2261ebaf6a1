mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

/// Exact invariant dimensions, splines and volumes for complete conics and
/// twisted cubics.
#[derive(Parser, Debug)]
#[command(name = "twistvol", version)]
pub struct Cli {
    /// Print only the value instead of the JSON record.
    #[arg(long, global = true)]
    quiet: bool,
    /// JSON file memoizing invariant dimensions across runs.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of the irreducible representation V_λ of SL_{N+1}.
    Dim(RankWeight),
    /// Dimension of the SL₂-invariants of V_λ.
    Invdim(RankWeight),
    /// Irreducible summands of the sections of L_λ with their multiplicities.
    Sections(WeightArg),
    /// Closed-form generating function of the invariant dimensions.
    #[command(subcommand)]
    Genfun(GenfunCmd),
    /// Vector partition functions.
    #[command(subcommand)]
    Vpf(VpfCmd),
    /// Splines of the six-vector lists.
    #[command(subcommand)]
    Spline(SplineCmd),
    /// Asymptotic dimensions at a point of the Weyl chamber.
    Dimas(DimasArgs),
    /// Volume of the divisor L_λ.
    Volume(VolumeArgs),
    /// Stability of linearizations on the complete twisted cubics.
    #[command(subcommand)]
    Git(GitCmd),
    /// The three central valuations of a weight.
    Valuations(WeightArg),
    /// Ratios dim(V_{kλ}^H) / (k³ dimas(λ)) along a ray.
    Asymptotic(AsymptoticArgs),
}

#[derive(Args, Debug)]
pub struct RankWeight {
    #[arg(long)]
    rank: usize,
    /// Comma-separated coordinates in the fundamental-weight basis.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Args, Debug)]
pub struct WeightArg {
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Subcommand, Debug)]
pub enum GenfunCmd {
    /// Series coefficient at a multidegree.
    Coeff(WeightArg),
    /// Compare the series with the constant-term oracle on [0, bound]³.
    Verify {
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VpfCmd {
    /// Number of ways to write the target as a nonnegative combination.
    Count {
        /// A built-in list (A1..A4).
        #[arg(long, conflicts_with = "vectors", required_unless_present = "vectors")]
        list: Option<String>,
        /// Vectors separated by ';', coordinates by ','.
        #[arg(long)]
        vectors: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SplineCmd {
    /// Pieces, cells, lattice index and adjacencies.
    Show {
        #[arg(long)]
        list: String,
    },
    /// Relative deviation between the spline and scaled partition counts.
    Verify {
        #[arg(long)]
        list: String,
        /// Sample point; repeat the flag for several points.
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = 25)]
        k_max: i64,
        /// Largest accepted relative deviation.
        #[arg(long, default_value = "3/20")]
        tolerance: String,
    },
    /// Planes spanned by pairs of vectors of a list.
    Walls {
        #[arg(long)]
        list: String,
    },
    /// Discrepancy of the weighted sum of the four splines against dimas.
    LemmaA0 {
        /// Point with rational coordinates; repeat the flag for several points.
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct DimasArgs {
    #[arg(long)]
    case: String,
    /// Rational coordinates, e.g. 1/2,1,3.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
}

#[derive(Args, Debug)]
pub struct VolumeArgs {
    #[arg(long)]
    case: String,
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Subcommand, Debug)]
pub enum GitCmd {
    /// Unstable and strictly semistable strata, chamber and boundary divisors.
    Classify(WeightArg),
}

#[derive(Args, Debug)]
pub struct AsymptoticArgs {
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Comma-separated scale factors.
    #[arg(long, default_value = "10,20,40")]
    k: String,
}

/// Stable part of a command's output: identical invocations print identical records.
#[derive(Serialize, Debug)]
struct CommandResult {
    command: String,
    inputs: Value,
    outputs: Value,
}

/// What a command produced: the JSON payload, the bare value for `--quiet`,
/// and whether a verification found mismatches.
pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub quiet: String,
    pub failed: bool,
}

/// Parses the `TWISTVOL_THREADS` setting; `None` or 0 leaves rayon's default.
fn thread_count(raw: Option<&str>) -> Result<Option<usize>, String> {
    let Some(raw) = raw else { return Ok(None) };
    match raw.trim().parse::<usize>() {
        Ok(0) => Ok(None),
        Ok(n) => Ok(Some(n)),
        Err(_) => Err(format!("TWISTVOL_THREADS must be a nonnegative integer, got {raw:?}")),
    }
}

/// Result of one invocation: what goes to stdout and stderr, and the exit code.
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Parses `args` (without the program name) and runs the command.
pub fn execute(args: &[String]) -> Execution {
    let cli = match Cli::try_parse_from(std::iter::once("twistvol".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Execution { stdout: text, stderr: String::new(), code }
            } else {
                Execution { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let start = Instant::now();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => return Execution { stdout: String::new(), stderr: format!("error: {e}\n"), code: 2 },
    };
    let elapsed = start.elapsed();
    let code = u8::from(outcome.failed);
    if cli.quiet {
        return Execution { stdout: format!("{}\n", outcome.quiet), stderr: String::new(), code };
    }
    let command = args.iter().filter(|a| *a != "--quiet").cloned().collect::<Vec<_>>().join(" ");
    let record = CommandResult { command, inputs: outcome.inputs, outputs: outcome.outputs };
    Execution {
        stdout: format!("{}\n", serde_json::to_string_pretty(&record).expect("serializable record")),
        stderr: format!("{}\n", serde_json::json!({ "timing_ms": elapsed.as_millis() as u64 })),
        code,
    }
}

fn main() -> ExitCode {
    match thread_count(std::env::var("TWISTVOL_THREADS").ok().as_deref()) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let run = execute(&args);
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    ExitCode::from(run.code)
}
