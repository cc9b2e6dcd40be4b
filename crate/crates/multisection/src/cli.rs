//! Command-line front end over the library.
//!
//! Six subcommands cover the pipeline: `generate` samples an instance to
//! JSON, `solve` runs a relaxation and prints the objective and integrality
//! verdict, `certify` builds and verifies the dual certificate, `adversary`
//! applies a random monotone perturbation, `bounds` evaluates one tail
//! bound, T-statistic, or threshold curve, and `sweep` writes the CSV table
//! and SVG heatmap of a phase-diagram grid.
//!
//! Exit codes: 0 for success (for `certify`, success means verified=true);
//! 1 for operational failures (out-of-range parameters, solver errors, an
//! unverified certificate); 2 for unreadable or malformed inputs (JSON and
//! config parse errors carry line diagnostics) and for usage errors.
//!
//! Any subcommand accepts `--config FILE` with one `flag=value` per line
//! (`#` comments allowed). Config entries are injected as ordinary flags,
//! and a flag given explicitly on the command line always wins.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adversary::{objective_shift_check, random_monotone};
use crate::bounds;
use crate::certificate::{certify, DEFAULT_STRICT_GAP};
use crate::error::Error;
use crate::model::{Instance, Partition, SbmParams};
use crate::relax::{
    build, confirm_with_certificate, detect_integrality, RelaxationKind, DEFAULT_TOL_ENTRY,
};
use crate::sdp::{solve, SolveSettings};
use crate::sweep::{render_svg, run_sweep, write_csv, SweepGrid, DEFAULT_TRIALS};

/// Parse `std::env::args`, dispatch, and map failures to exit codes.
pub fn main() -> ExitCode {
    run(std::env::args().collect())
}

/// Run the CLI on an explicit argument vector (argv[0] is the program name).
pub fn run(argv: Vec<String>) -> ExitCode {
    ExitCode::from(run_code(argv))
}

/// Like [`run`], but with the raw numeric exit code.
fn run_code(argv: Vec<String>) -> u8 {
    let argv = match expand_config(argv) {
        Ok(argv) => argv,
        Err(failure) => return failure.report(),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap routes help to stdout and usage errors to stderr, and
            // picks exit 0 or 2 accordingly.
            let _ = err.print();
            return err.exit_code() as u8;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(failure) => failure.report(),
    }
}

/// A failed command: what to print on stderr and which exit code to use.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    /// Unreadable or malformed input: exit 2.
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    /// Operational failure: exit 1.
    fn op(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn report(self) -> u8 {
        eprintln!("error: {}", self.message);
        self.code
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::op(err.to_string())
    }
}

/// The subcommand names; config entries are injected right after this token.
const SUBCOMMANDS: [&str; 6] = ["generate", "solve", "certify", "adversary", "bounds", "sweep"];

/// Splice `key=value` lines from a `--config` file into the argument vector
/// as `--key value` pairs. Entries whose flag already appears explicitly are
/// skipped, so the command line overrides the file.
fn expand_config(argv: Vec<String>) -> Result<Vec<String>, Failure> {
    let mut config: Option<PathBuf> = None;
    for (i, token) in argv.iter().enumerate() {
        if token == "--config" {
            match argv.get(i + 1) {
                Some(value) => config = Some(PathBuf::from(value)),
                None => return Err(Failure::parse("--config needs a file argument")),
            }
            break;
        }
        if let Some(value) = token.strip_prefix("--config=") {
            config = Some(PathBuf::from(value));
            break;
        }
    }
    let Some(path) = config else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let Some(insert_at) = argv
        .iter()
        .position(|token| SUBCOMMANDS.contains(&token.as_str()))
        .map(|i| i + 1)
    else {
        return Err(Failure::parse("--config requires a subcommand"));
    };

    let mut injected = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::parse(format!(
                "{}:{}: expected key=value, got {raw:?}",
                path.display(),
                lineno + 1
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" {
            return Err(Failure::parse(format!(
                "{}:{}: {key:?} is not a settable key",
                path.display(),
                lineno + 1
            )));
        }
        let flag = format!("--{key}");
        let assigned = format!("--{key}=");
        let given = argv.iter().any(|token| {
            token == &flag || token.starts_with(&assigned) || (key == "output" && token == "-o")
        });
        if !given {
            injected.push(flag);
            injected.push(value.to_string());
        }
    }
    let mut argv = argv;
    argv.splice(insert_at..insert_at, injected);
    Ok(argv)
}

const SWEEP_HELP: &str = "Output formats:
  CSV: header `alpha,beta,trials,integral_count,fraction`, one row per
  in-range cell in alpha-major order. Out-of-range cells (alpha <= beta, or
  derived p > 1) are omitted. Max-k-cut sweeps append a `# certified=false`
  comment because their integral counts are entrywise-pattern decisions
  without a dual certificate.

  SVG: each cell is a 40 px square inside 64 px left, 24 px right, 40 px
  top, and 52 px bottom margins; alpha grows rightward and beta upward. A
  cell with integral fraction f is filled rgb(v,v,v), v = round(255*f):
  black = 0, white = 1, lighter = higher. Out-of-range cells are blue
  rgb(70,110,180). The curve beta = (sqrt(alpha)-1)^2 is drawn in red.";

#[derive(Parser)]
#[command(
    name = "multisection",
    version,
    about = "Planted multisection: generate, solve, certify, perturb, bound, and sweep"
)]
struct Cli {
    /// Defaults file with one flag=value per line; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a model instance and write it as JSON.
    Generate(GenerateArgs),
    /// Solve a relaxation on an instance and print the integrality verdict.
    Solve(SolveArgs),
    /// Build and verify the dual certificate; exit 0 iff verified.
    Certify(CertifyArgs),
    /// Apply a random monotone perturbation to an instance.
    Adversary(AdversaryArgs),
    /// Evaluate one tail bound, T-statistic, or threshold curve.
    Bounds(BoundsArgs),
    /// Sweep an (alpha, beta) grid into a CSV table and SVG heatmap.
    #[command(after_help = SWEEP_HELP)]
    Sweep(SweepArgs),
}

/// Which relaxation a subcommand should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SdpChoice {
    /// Row-sum relaxation; integrality is certificate-backed.
    Balanced,
    /// Max-k-cut relaxation; integrality is entrywise-pattern only.
    Maxkcut,
}

impl From<SdpChoice> for RelaxationKind {
    fn from(choice: SdpChoice) -> Self {
        match choice {
            SdpChoice::Balanced => RelaxationKind::BalancedRowSum,
            SdpChoice::Maxkcut => RelaxationKind::MaxKCut,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Within-cluster density parameter (p = alpha ln(m)/m).
    #[arg(long)]
    alpha: f64,
    /// Cross-cluster density parameter (q = beta ln(m)/m).
    #[arg(long)]
    beta: f64,
    /// Number of clusters.
    #[arg(long)]
    k: usize,
    /// Cluster size.
    #[arg(long)]
    m: usize,
    /// Sampling seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON file.
    input: PathBuf,
    /// Which relaxation to solve.
    #[arg(long, value_enum, default_value_t = SdpChoice::Balanced)]
    sdp: SdpChoice,
    /// Iteration cap.
    #[arg(long, default_value_t = 20_000)]
    max_iter: usize,
    /// Primal and dual residual tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Also write the result JSON here.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Instance JSON file.
    input: PathBuf,
    /// `planted` for the stored partition, or a JSON file holding a
    /// cluster-assignment array.
    #[arg(long, default_value = "planted")]
    partition: String,
    /// Margin the orthogonal spectrum must clear for uniqueness.
    #[arg(long, default_value_t = DEFAULT_STRICT_GAP)]
    strict_gap: f64,
}

#[derive(Args)]
struct AdversaryArgs {
    /// Instance JSON file.
    input: PathBuf,
    /// Probability of adding each absent within-cluster edge.
    #[arg(long, default_value_t = 0.3)]
    add_prob: f64,
    /// Probability of removing each present cross-cluster edge.
    #[arg(long, default_value_t = 0.3)]
    remove_prob: f64,
    /// Perturbation seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the perturbed instance JSON.
    #[arg(short, long)]
    output: PathBuf,
}

/// Which quantity `bounds` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundOp {
    /// Exact Chernoff upper-tail bound: needs --mu and --delta.
    ChernoffUpper,
    /// Exact Chernoff lower-tail bound: needs --mu and --delta.
    ChernoffLower,
    /// Bernstein tail bound: needs --t, --variance-sum, and --m-bound.
    Bernstein,
    /// Hoeffding tail bound with identical ranges: needs --n, --t,
    /// --range-lo, and --range-hi.
    Hoeffding,
    /// T-statistic by full enumeration: needs --m, --p, --q, and --delta.
    TExact,
    /// T-statistic by Monte Carlo: needs --m, --p, --q, and --delta;
    /// --trials and --seed are optional.
    TMc,
    /// Rate function g: needs --alpha, --beta, and --epsilon.
    G,
    /// Recovery threshold curve (sqrt(alpha)-1)^2: needs --alpha.
    ThresholdBeta,
}

#[derive(Args)]
struct BoundsArgs {
    /// Quantity to evaluate.
    #[arg(long, value_enum)]
    op: BoundOp,
    /// Mean of the binomial sum (Chernoff).
    #[arg(long)]
    mu: Option<f64>,
    /// Relative deviation (Chernoff) or difference threshold (T-statistic).
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Absolute deviation (Bernstein, Hoeffding).
    #[arg(long)]
    t: Option<f64>,
    /// Sum of summand variances (Bernstein).
    #[arg(long)]
    variance_sum: Option<f64>,
    /// Uniform bound on each summand (Bernstein).
    #[arg(long)]
    m_bound: Option<f64>,
    /// Number of summands (Hoeffding).
    #[arg(long)]
    n: Option<usize>,
    /// Shared lower endpoint of the summand ranges (Hoeffding).
    #[arg(long, allow_negative_numbers = true)]
    range_lo: Option<f64>,
    /// Shared upper endpoint of the summand ranges (Hoeffding).
    #[arg(long, allow_negative_numbers = true)]
    range_hi: Option<f64>,
    /// Summands per side of the T-statistic.
    #[arg(long)]
    m: Option<usize>,
    /// Success probability of each positive summand (T-statistic).
    #[arg(long)]
    p: Option<f64>,
    /// Success probability of each negative summand (T-statistic).
    #[arg(long)]
    q: Option<f64>,
    /// Monte-Carlo trial count.
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    /// Monte-Carlo seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Within-cluster density parameter (rate function, threshold curve).
    #[arg(long)]
    alpha: Option<f64>,
    /// Cross-cluster density parameter (rate function).
    #[arg(long)]
    beta: Option<f64>,
    /// Imbalance parameter of the rate function.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest alpha on the grid.
    #[arg(long, default_value_t = 0.0)]
    alpha_min: f64,
    /// Largest alpha on the grid.
    #[arg(long, default_value_t = 20.0)]
    alpha_max: f64,
    /// Number of alpha values.
    #[arg(long, default_value_t = 20)]
    alpha_steps: usize,
    /// Smallest beta on the grid.
    #[arg(long, default_value_t = 0.0)]
    beta_min: f64,
    /// Largest beta on the grid.
    #[arg(long, default_value_t = 20.0)]
    beta_max: f64,
    /// Number of beta values.
    #[arg(long, default_value_t = 20)]
    beta_steps: usize,
    /// Number of clusters.
    #[arg(long)]
    k: usize,
    /// Cluster size.
    #[arg(long)]
    m: usize,
    /// Instances per grid cell.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Seed all per-trial seeds derive from.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Which relaxation to sweep.
    #[arg(long, value_enum, default_value_t = SdpChoice::Balanced)]
    sdp: SdpChoice,
    /// Iteration cap per solve (sweeps favor speed; row-sum integrality is
    /// still certificate-backed).
    #[arg(long, default_value_t = 4000)]
    max_iter: usize,
    /// Primal and dual residual tolerance per solve.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// CSV output path.
    #[arg(long, default_value = "sweep.csv")]
    csv: PathBuf,
    /// SVG output path.
    #[arg(long, default_value = "sweep.svg")]
    svg: PathBuf,
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Cmd::Generate(args) => cmd_generate(args),
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Certify(args) => cmd_certify(args),
        Cmd::Adversary(args) => cmd_adversary(args),
        Cmd::Bounds(args) => cmd_bounds(args),
        Cmd::Sweep(args) => cmd_sweep(args),
    }
}

/// Read and JSON-parse an input file; failures exit 2 and keep serde's
/// line/column diagnostics.
fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::op(format!("cannot write {}: {e}", path.display())))
}

/// Pretty-print a value that is known to serialize.
fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize")
}

/// Print a report line to stdout, tolerating a reader that hung up early
/// (e.g. piped into `head`); a closed pipe is not an operational failure.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    let instance = Instance::sample(SbmParams {
        alpha: args.alpha,
        beta: args.beta,
        k: args.k,
        m: args.m,
        seed: args.seed,
    })?;
    let json = to_json(&instance);
    match &args.output {
        Some(path) => write_file(path, json.as_bytes())?,
        None => emit(&json),
    }
    Ok(0)
}

fn cmd_solve(args: SolveArgs) -> Result<u8, Failure> {
    let instance: Instance = read_json(&args.input)?;
    let kind = RelaxationKind::from(args.sdp);
    let k = instance.params.k;
    let problem = build(kind, &instance.graph, k)?;
    let settings = SolveSettings {
        tol_primal: args.tol,
        tol_dual: args.tol,
        max_iter: args.max_iter,
        ..SolveSettings::default()
    };
    let out = solve(&problem, &settings)?;
    let verdict = detect_integrality(&out.y, kind, k, DEFAULT_TOL_ENTRY);
    let verdict = confirm_with_certificate(verdict, kind, &instance.graph)?;
    let report = serde_json::json!({
        "relaxation": kind,
        "objective": out.objective_value,
        "iterations": out.iterations,
        "status": out.status,
        "primal_residual": out.primal_residual,
        "dual_residual": out.dual_residual,
        "verdict": verdict,
    });
    let json = to_json(&report);
    emit(&json);
    if let Some(path) = &args.output {
        write_file(path, json.as_bytes())?;
    }
    Ok(0)
}

fn cmd_certify(args: CertifyArgs) -> Result<u8, Failure> {
    let instance: Instance = read_json(&args.input)?;
    let partition = if args.partition == "planted" {
        instance.partition.clone()
    } else {
        let assignment: Vec<usize> = read_json(Path::new(&args.partition))?;
        Partition::new(assignment, instance.params.k)?
    };
    let report = certify(&instance.graph, &partition, args.strict_gap)?;
    emit(to_json(&report));
    Ok(if report.verified { 0 } else { 1 })
}

fn cmd_adversary(args: AdversaryArgs) -> Result<u8, Failure> {
    if !(0.0..=1.0).contains(&args.add_prob) || !(0.0..=1.0).contains(&args.remove_prob) {
        return Err(Failure::op(format!(
            "probabilities must lie in [0, 1], got add {} remove {}",
            args.add_prob, args.remove_prob
        )));
    }
    let instance: Instance = read_json(&args.input)?;
    let (perturbed_graph, log) = random_monotone(
        &instance.graph,
        &instance.partition,
        args.add_prob,
        args.remove_prob,
        args.seed,
    );
    let shift_ok = objective_shift_check(&instance.graph, &perturbed_graph, &log, &instance.partition);
    let perturbed = Instance {
        params: instance.params,
        graph: perturbed_graph,
        partition: instance.partition,
    };
    write_file(&args.output, to_json(&perturbed).as_bytes())?;
    let summary = serde_json::json!({
        "r_plus": log.r_plus,
        "r_minus": log.r_minus,
        "objective_shift_ok": shift_ok,
        "output": args.output,
    });
    emit(to_json(&summary));
    Ok(0)
}

/// Unwrap a flag an op needs, or fail as a usage error.
fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::parse(format!("--{flag} is required for this bounds op")))
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, Failure> {
    let report = match args.op {
        BoundOp::ChernoffUpper => {
            let value = bounds::chernoff_upper(need(args.mu, "mu")?, need(args.delta, "delta")?)?;
            serde_json::json!({"op": "chernoff-upper", "value": value})
        }
        BoundOp::ChernoffLower => {
            let value = bounds::chernoff_lower(need(args.mu, "mu")?, need(args.delta, "delta")?)?;
            serde_json::json!({"op": "chernoff-lower", "value": value})
        }
        BoundOp::Bernstein => {
            let value = bounds::bernstein_tail(
                need(args.t, "t")?,
                need(args.variance_sum, "variance-sum")?,
                need(args.m_bound, "m-bound")?,
            )?;
            serde_json::json!({"op": "bernstein", "value": value})
        }
        BoundOp::Hoeffding => {
            let n = need(args.n, "n")?;
            let ranges = vec![(need(args.range_lo, "range-lo")?, need(args.range_hi, "range-hi")?); n];
            let value = bounds::hoeffding_tail(n, need(args.t, "t")?, &ranges)?;
            serde_json::json!({"op": "hoeffding", "value": value})
        }
        BoundOp::TExact => {
            let value = bounds::t_statistic_exact(
                need(args.m, "m")?,
                need(args.p, "p")?,
                need(args.q, "q")?,
                need(args.delta, "delta")?,
            )?;
            serde_json::json!({"op": "t-exact", "value": value})
        }
        BoundOp::TMc => {
            let estimate = bounds::t_statistic_mc(
                need(args.m, "m")?,
                need(args.p, "p")?,
                need(args.q, "q")?,
                need(args.delta, "delta")?,
                args.trials,
                args.seed,
            )?;
            serde_json::json!({
                "op": "t-mc",
                "estimate": estimate.estimate,
                "std_error": estimate.std_error,
                "trials": estimate.trials,
            })
        }
        BoundOp::G => {
            let value = bounds::g_function(
                need(args.alpha, "alpha")?,
                need(args.beta, "beta")?,
                need(args.epsilon, "epsilon")?,
            )?;
            serde_json::json!({"op": "g", "value": value})
        }
        BoundOp::ThresholdBeta => {
            let value = bounds::threshold_beta(need(args.alpha, "alpha")?)?;
            serde_json::json!({"op": "threshold-beta", "value": value})
        }
    };
    emit(to_json(&report));
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, Failure> {
    let grid = SweepGrid {
        alpha_min: args.alpha_min,
        alpha_max: args.alpha_max,
        alpha_steps: args.alpha_steps,
        beta_min: args.beta_min,
        beta_max: args.beta_max,
        beta_steps: args.beta_steps,
        k: args.k,
        m: args.m,
        trials: args.trials,
        base_seed: args.seed,
        relaxation: args.sdp.into(),
    };
    let settings = SolveSettings {
        tol_primal: args.tol,
        tol_dual: args.tol,
        max_iter: args.max_iter,
        ..SolveSettings::default()
    };
    let result = run_sweep(&grid, &settings)?;
    let mut csv = Vec::new();
    write_csv(&result, &mut csv).expect("writing to memory cannot fail");
    write_file(&args.csv, &csv)?;
    write_file(&args.svg, render_svg(&result).as_bytes())?;
    let present = result.cells.iter().flatten().count();
    emit(format_args!(
        "swept {} cells ({} in range, {} out of range); wrote {} and {}",
        result.cells.len(),
        present,
        result.cells.len() - present,
        args.csv.display(),
        args.svg.display()
    ));
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn argv(tokens: &[&str]) -> Vec<String> {
        std::iter::once("multisection")
            .chain(tokens.iter().copied())
            .map(str::to_string)
            .collect()
    }

    #[test]
    fn sdp_choice_maps_to_relaxation() {
        assert_eq!(
            RelaxationKind::from(SdpChoice::Balanced),
            RelaxationKind::BalancedRowSum
        );
        assert_eq!(RelaxationKind::from(SdpChoice::Maxkcut), RelaxationKind::MaxKCut);
    }

    #[test]
    fn config_injects_only_missing_flags() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# defaults").unwrap();
        writeln!(file, "alpha = 4.0").unwrap();
        writeln!(file, "beta=1.0").unwrap();
        file.flush().unwrap();
        let path = file.path().to_str().unwrap().to_string();

        let expanded = expand_config(argv(&[
            "generate", "--alpha", "2.0", "--config", &path, "--k", "2", "--m", "4",
        ]))
        .unwrap();
        let beta_at = expanded.iter().position(|t| t == "--beta").unwrap();
        assert_eq!(expanded[beta_at + 1], "1.0");
        assert!(beta_at > 0 && expanded[1] == "generate", "injected after the subcommand");
        assert_eq!(
            expanded.iter().filter(|t| *t == "--alpha").count(),
            1,
            "explicit --alpha suppresses the config entry"
        );
    }

    #[test]
    fn config_reports_malformed_lines_with_position() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "alpha=1.0").unwrap();
        writeln!(file, "not a key value pair").unwrap();
        file.flush().unwrap();
        let path = file.path().to_str().unwrap().to_string();

        let failure = expand_config(argv(&["generate", "--config", &path])).unwrap_err();
        assert_eq!(failure.code, 2);
        assert!(failure.message.contains(":2:"), "got: {}", failure.message);
    }

    #[test]
    fn config_without_file_or_subcommand_fails() {
        let failure = expand_config(argv(&["generate", "--config"])).unwrap_err();
        assert_eq!(failure.code, 2);

        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "alpha=1.0").unwrap();
        file.flush().unwrap();
        let path = file.path().to_str().unwrap().to_string();
        let failure = expand_config(argv(&["--config", &path])).unwrap_err();
        assert_eq!(failure.code, 2);
    }

    #[test]
    fn malformed_json_exits_two() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, "{{ definitely not json").unwrap();
        file.flush().unwrap();
        let path = file.path().to_str().unwrap().to_string();
        assert_eq!(run_code(argv(&["solve", &path])), 2);
        assert_eq!(run_code(argv(&["certify", &path])), 2);
    }

    #[test]
    fn missing_bounds_flags_exit_two() {
        assert_eq!(run_code(argv(&["bounds", "--op", "g", "--alpha", "2.0"])), 2);
        assert_eq!(
            run_code(argv(&[
                "bounds", "--op", "g", "--alpha", "2.0", "--beta", "1.0", "--epsilon", "0.0",
            ])),
            0
        );
    }

    #[test]
    fn certify_exit_code_tracks_verification() {
        // Disjoint cliques certify; a near-threshold instance does not.
        let m = 5f64;
        let cliques = Instance::sample(SbmParams {
            alpha: m / m.ln(),
            beta: 0.0,
            k: 2,
            m: 5,
            seed: 0,
        })
        .unwrap();
        let mut good = tempfile::NamedTempFile::new().unwrap();
        good.write_all(to_json(&cliques).as_bytes()).unwrap();
        good.flush().unwrap();
        let good_path = good.path().to_str().unwrap().to_string();
        assert_eq!(run_code(argv(&["certify", &good_path])), 0);

        let muddled = Instance::sample(SbmParams {
            alpha: 1.5,
            beta: 1.4,
            k: 2,
            m: 10,
            seed: 0,
        })
        .unwrap();
        let mut bad = tempfile::NamedTempFile::new().unwrap();
        bad.write_all(to_json(&muddled).as_bytes()).unwrap();
        bad.flush().unwrap();
        let bad_path = bad.path().to_str().unwrap().to_string();
        assert_eq!(run_code(argv(&["certify", &bad_path])), 1);
    }
}
