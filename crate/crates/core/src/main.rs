//! `chordal` — chord-length analysis of convex bodies.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chordal::commands::{self, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "chordal",
    version,
    about = "Chord-length analysis of convex bodies: half-chord fields, equichordal search, invariant suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the half-chord field at a point; writes phi.csv, chords.csv,
    /// defect.json and constant_sum.json
    Analyze(CommonArgs),
    /// Multi-start search for equichordal points; writes search.json and
    /// clusters.csv (absence of an equichordal point is a valid finding)
    Find(CommonArgs),
    /// Run the invariant suites against the body; writes verify.json
    Verify(CommonArgs),
    /// Diameter, interior margin and circumradius; writes metrics.json
    Metrics(CommonArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Body specification file (JSON)
    #[arg(long)]
    body: PathBuf,

    /// Comma-separated point coordinates, e.g. --point 0.1,0.2
    #[arg(long)]
    point: Option<String>,

    /// Grid resolution m; the grid holds 2m directions
    /// (default 720 for n = 2, 2000 for n >= 3)
    #[arg(long = "grid-m")]
    grid_m: Option<usize>,

    /// Number of search starts
    #[arg(long, default_value_t = 20)]
    starts: usize,

    /// Seed for all randomized sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Simplex convergence tolerance (default 1e-6 x diameter)
    #[arg(long = "inner-tol")]
    inner_tol: Option<f64>,

    /// Defect threshold for declaring a point equichordal
    /// (default 1e-6 x diameter)
    #[arg(long = "declare-tol")]
    declare_tol: Option<f64>,

    /// Residual tolerance for the verification suites
    #[arg(long = "residual-tol", default_value_t = 1e-9)]
    residual_tol: f64,

    /// Output directory
    #[arg(long = "out", default_value = "chordal-out")]
    out: PathBuf,

    /// Stdout summary format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

fn parse_point(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {s:?}: {e}"))
        })
        .collect()
}

fn to_config(args: &CommonArgs) -> Result<RunConfig, String> {
    let point = match &args.point {
        Some(text) => Some(parse_point(text)?),
        None => None,
    };
    Ok(RunConfig {
        body_file: args.body.clone(),
        point,
        grid_m: args.grid_m,
        starts: args.starts,
        seed: args.seed,
        inner_tol: args.inner_tol,
        declare_threshold: args.declare_tol,
        residual_tol: args.residual_tol,
        out_dir: args.out.clone(),
        format: match args.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        },
    })
}

fn main() -> ExitCode {
    // CHORDAL_THREADS caps worker parallelism (default: hardware concurrency).
    if let Ok(threads) = std::env::var("CHORDAL_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }

    let cli = Cli::parse();
    let (args, run): (
        &CommonArgs,
        fn(&RunConfig) -> chordal::Result<bool>,
    ) = match &cli.command {
        Command::Analyze(a) => (a, |cfg| commands::cmd_analyze(cfg).map(|_| true)),
        Command::Find(a) => (a, |cfg| commands::cmd_find(cfg).map(|_| true)),
        Command::Verify(a) => (a, commands::cmd_verify),
        Command::Metrics(a) => (a, |cfg| commands::cmd_metrics(cfg).map(|_| true)),
    };

    let cfg = match to_config(args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };

    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
