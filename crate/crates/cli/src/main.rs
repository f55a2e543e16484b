use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use subspace_hilbert::formats::{parse_arrangement, parse_point_cloud};
use subspace_hilbert::gpca::{estimate_recovery_values, recover_codimensions, RankMode};
use subspace_hilbert::num_bigint::BigInt;
use subspace_hilbert::report::{analyze, selftest, to_canonical_json, AnalyzeOptions, RecoveryDocument};
use subspace_hilbert::{Error, Limits};

/// Exit status when the brute-force oracle disagrees with a closed form.
const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "subspace-hilbert",
    version,
    about = "Hilbert series, Hilbert polynomials and Betti numbers of subspace-arrangement ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an arrangement file.
    Analyze(AnalyzeArgs),
    /// Recover subspace codimensions from Hilbert values or sample points.
    Recover(RecoverArgs),
    /// Run the bundled example arrangements end to end.
    Selftest,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Largest degree tabulated (default m + n - 1).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Append the brute-force table and check it against the closed forms.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
    /// Worker threads for the oracle.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
}

#[derive(Args)]
struct RecoverArgs {
    /// Values h(I, d) for d = m, ..., m + n - 1.
    #[arg(long, num_args = 1.., allow_negative_numbers = true, conflicts_with = "points", requires = "n")]
    values: Option<Vec<BigInt>>,
    /// Point-cloud file.
    #[arg(long, required_unless_present = "values")]
    points: Option<PathBuf>,
    /// Number of subspaces.
    #[arg(long)]
    m: usize,
    /// Ambient dimension (with --values).
    #[arg(long, conflicts_with = "points")]
    n: Option<usize>,
    /// Relative rank tolerance; enables floating-point coordinates.
    #[arg(long, requires = "points")]
    tol: Option<f64>,
    #[arg(long)]
    json: bool,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn with_file(path: &Path, e: Error) -> anyhow::Error {
    anyhow::Error::new(e).context(format!("in {}", path.display()))
}

fn run_analyze(args: &AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let limits = Limits::from_env()?;
    let a = parse_arrangement(&read(&args.file)?, &limits).map_err(|e| with_file(&args.file, e))?;
    let doc = analyze(
        &a,
        &AnalyzeOptions {
            max_degree: args.max_degree,
            oracle: args.oracle,
            jobs: args.jobs as usize,
            limits,
        },
    )?;
    if args.json {
        emit(&(to_canonical_json(&doc)? + "\n"))?;
    } else {
        emit(&doc.to_text())?;
    }
    if let Some(o) = &doc.oracle {
        if !o.agrees {
            eprintln!("error: the oracle disagrees with the closed forms (this is a bug)");
            return Ok(ExitCode::from(EXIT_DISAGREEMENT));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_recover(args: &RecoverArgs) -> anyhow::Result<ExitCode> {
    let (values, n, mode) = match (&args.values, &args.points) {
        (Some(values), None) => {
            let n = args.n.context("--values needs --n")?;
            (values.clone(), n, RankMode::Exact)
        }
        (None, Some(path)) => {
            let mode = match args.tol {
                Some(rel_tol) => RankMode::Approx { rel_tol },
                None => RankMode::Exact,
            };
            let pc = parse_point_cloud(&read(path)?, args.tol.is_some()).map_err(|e| with_file(path, e))?;
            if pc.is_empty() {
                bail!("{} contains no points", path.display());
            }
            let values = estimate_recovery_values(&pc, args.m, mode)?;
            (values, pc.ambient_dim(), mode)
        }
        _ => bail!("give exactly one of --values or --points"),
    };
    let result = recover_codimensions(&values, args.m, n).map_err(|e| match e {
        Error::Inconsistent(msg) => {
            let hint = if args.points.is_some() {
                "check m, that the subspaces are transversal, and that there are enough \
                 points per subspace (or loosen --tol for noisy data)"
            } else {
                "check m, that the values are h(I, d) for d = m..m+n-1, and that the \
                 subspaces are transversal"
            };
            anyhow::anyhow!("inconsistent Hilbert data: {msg}\nhint: {hint}")
        }
        e => e.into(),
    })?;
    let doc = RecoveryDocument::new(&result, args.m, &values, mode);
    if args.json {
        emit(&(to_canonical_json(&doc)? + "\n"))?;
    } else {
        emit(&doc.to_text())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_selftest() -> ExitCode {
    let checks = selftest();
    let text: String = checks
        .iter()
        .map(|c| format!("{} {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    let _ = emit(&text);
    if checks.iter().all(|c| c.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Recover(args) => run_recover(args),
        Command::Selftest => Ok(run_selftest()),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
