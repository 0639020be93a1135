//! Command-line front end for wedge projection and isotonicity analysis.

mod commands;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use isowedge::Tolerance;
use serde_json::json;

use commands::{Outcome, EXIT_INPUT};
use input::WedgeSpecFile;
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "isowedge",
    version,
    about = "Projection onto wedges and isotone-projection analysis"
)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,

    /// Write the JSON run report here ("-" for stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Relative threshold for linear dependence.
    #[arg(long, global = true, default_value_t = Tolerance::default().eps_rank)]
    eps_rank: f64,
    /// Feasibility slack for certificates and membership.
    #[arg(long, global = true, default_value_t = Tolerance::default().eps_feas)]
    eps_feas: f64,
    /// Tolerance for equality comparisons.
    #[arg(long, global = true, default_value_t = Tolerance::default().eps_eq)]
    eps_eq: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Project each point onto the wedge and certify the result.
    Project {
        #[arg(long)]
        wedge: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Projection method (see `isowedge methods`).
        #[arg(long)]
        method: Option<String>,
    },
    /// Split the wedge into its lineality space and a pointed cone part.
    Decompose {
        #[arg(long)]
        wedge: PathBuf,
    },
    /// Extreme rays of the polar of the cone part.
    Polar {
        #[arg(long)]
        wedge: PathBuf,
    },
    /// Decide whether projection onto the wedge is isotone.
    CheckIsotone {
        #[arg(long)]
        wedge: PathBuf,
        /// Analyse the cone part inside its own span instead.
        #[arg(long)]
        intrinsic: bool,
    },
    /// Randomised search for order-reversing projection pairs.
    Sample {
        #[arg(long)]
        wedge: PathBuf,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        method: Option<String>,
    },
    /// Project points onto the monotone wedge with pool-adjacent-violators.
    Pava {
        #[arg(long)]
        points: PathBuf,
    },
    /// List the registered projection methods.
    Methods,
}

struct Run {
    name: &'static str,
    arguments: serde_json::Value,
    inputs: Vec<String>,
    seed: Option<u64>,
    outcome: Outcome,
}

fn load_wedge(path: &Path, inputs: &mut Vec<String>) -> Result<WedgeSpecFile> {
    let text = input::read(path)?;
    let spec = WedgeSpecFile::parse(&text)?;
    inputs.push(text);
    Ok(spec)
}

fn load_points(path: &Path, inputs: &mut Vec<String>) -> Result<Vec<isowedge::Vector>> {
    let text = input::read(path)?;
    let points = input::parse_points(&text)?;
    inputs.push(text);
    Ok(points)
}

fn dispatch(command: &Command, tol: &Tolerance) -> Result<Run> {
    let mut inputs = Vec::new();
    let mut seed = None;
    let (name, arguments, outcome) = match command {
        Command::Project { wedge, points, method } => {
            let spec = load_wedge(wedge, &mut inputs)?;
            let pts = load_points(points, &mut inputs)?;
            let out = commands::project(&spec, &pts, method.as_deref(), tol)?;
            (
                "project",
                json!({ "wedge": wedge, "points": points, "method": method }),
                out,
            )
        }
        Command::Decompose { wedge } => {
            let spec = load_wedge(wedge, &mut inputs)?;
            (
                "decompose",
                json!({ "wedge": wedge }),
                commands::decompose_cmd(&spec, tol)?,
            )
        }
        Command::Polar { wedge } => {
            let spec = load_wedge(wedge, &mut inputs)?;
            ("polar", json!({ "wedge": wedge }), commands::polar(&spec, tol)?)
        }
        Command::CheckIsotone { wedge, intrinsic } => {
            let spec = load_wedge(wedge, &mut inputs)?;
            let out = commands::check_isotone(&spec, *intrinsic, tol)?;
            ("check-isotone", json!({ "wedge": wedge, "intrinsic": intrinsic }), out)
        }
        Command::Sample {
            wedge,
            pairs,
            seed: s,
            method,
        } => {
            let spec = load_wedge(wedge, &mut inputs)?;
            seed = Some(*s);
            let out = commands::sample(&spec, *pairs, *s, method.as_deref(), tol)?;
            (
                "sample",
                json!({ "wedge": wedge, "pairs": pairs, "method": method }),
                out,
            )
        }
        Command::Pava { points } => {
            let pts = load_points(points, &mut inputs)?;
            ("pava", json!({ "points": points }), commands::pava(&pts, tol)?)
        }
        Command::Methods => ("methods", json!({}), commands::methods()),
    };
    Ok(Run {
        name,
        arguments,
        inputs,
        seed,
        outcome,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let tol = Tolerance::new(cli.tol.eps_rank, cli.tol.eps_feas, cli.tol.eps_eq);
    let run = tol
        .map_err(anyhow::Error::from)
        .and_then(|tol| Ok((dispatch(&cli.command, &tol)?, tol)));
    let (run, tol) = match run {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT);
        }
    };

    let to_stdout = cli.output.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        for line in &run.outcome.summary {
            println!("{line}");
        }
    }
    if let Some(path) = &cli.output {
        let inputs: Vec<&str> = run.inputs.iter().map(String::as_str).collect();
        let report = RunReport {
            command: run.name.to_string(),
            arguments: run.arguments,
            input_digest: report::digest(&inputs),
            tolerance: tol,
            seed: run.seed,
            exit_code: run.outcome.exit_code,
            results: run.outcome.results,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        if let Err(e) = report.write(path) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(run.outcome.exit_code)
}
