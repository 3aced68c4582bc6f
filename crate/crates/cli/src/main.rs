use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use superprolong_cli::{apply_overrides, render_table, run, CliError, Overrides, ProblemSpec, RunOptions};

#[derive(Parser)]
#[command(name = "superprolong", version, about = "Prolongations of linear Lie superalgebras and Killing fields of super frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the prolongation tower.
    Prolong(Common),
    /// First vanishing level of the tower.
    FiniteType(Common),
    /// Admissibility against mixed data.
    Admissible(Common),
    /// Cokernel of the super-antisymmetrizer.
    H02(Common),
    /// Infinitesimal automorphisms of a frame or metric.
    Killing(Common),
    /// Flow of an even real vector field.
    Flow(Common),
    /// Split a family of superdiffeomorphisms into fields.
    Decompose(Common),
    /// Built-in self-test.
    Check(Common),
}

#[derive(Args)]
struct Common {
    /// Problem spec (JSON). Reads stdin when omitted.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    kmax: Option<usize>,
    /// Maximal x-degree of the Killing ansatz.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Integrator tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

impl Command {
    fn split(&self) -> (&'static str, &Common) {
        match self {
            Command::Prolong(c) => ("prolong", c),
            Command::FiniteType(c) => ("finite-type", c),
            Command::Admissible(c) => ("admissible", c),
            Command::H02(c) => ("h02", c),
            Command::Killing(c) => ("killing", c),
            Command::Flow(c) => ("flow", c),
            Command::Decompose(c) => ("decompose", c),
            Command::Check(c) => ("check", c),
        }
    }
}

fn read_spec(kind: &str, path: Option<&PathBuf>) -> Result<ProblemSpec, CliError> {
    let src = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?,
        None if kind == "check" => return Ok(ProblemSpec::check()),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Validation(format!("stdin: {e}")))?;
            s
        }
    };
    let spec = ProblemSpec::from_json(&src).map_err(|e| CliError::Validation(format!("spec: {e}")))?;
    if spec.task.kind() != kind {
        return Err(CliError::Validation(format!("task.kind is {}, subcommand is {kind}", spec.task.kind())));
    }
    Ok(spec)
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    let (kind, c) = cli.command.split();
    let mut spec = read_spec(kind, c.spec.as_ref())?;
    apply_overrides(&mut spec, &Overrides { kmax: c.kmax, degree: c.degree, tol: c.tol })?;
    let report = run(&spec, &RunOptions { seed: c.seed, timing: c.timing })?;
    if c.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", render_table(&report));
    }
    Ok(report.all_checks_passed())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
