use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vho_cli::commands::{self, CliError};
use vho_cli::render;
use vho_cli::{Format, MethodArg};

#[derive(Parser)]
#[command(
    name = "vho",
    version,
    about = "Vertical handover decisions with SAW and WPM"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the alternatives of a decision-matrix file (or replay stored score vectors).
    Decide(DecideArgs),
    /// Run a scenario and write its JSON-lines trace.
    Simulate(SimulateArgs),
    /// Run a scenario under every scheme and method and tabulate the results.
    Compare(CompareArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["matrix", "scores"]))]
struct DecideArgs {
    /// Decision-matrix file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// JSON file of precomputed score vectors keyed by method.
    #[arg(long)]
    scores: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Trace destination (JSON lines).
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = render::Style::from_env();
    let result: Result<String, CliError> = match cli.command {
        Command::Decide(a) => {
            let input = match (a.matrix, a.scores) {
                (Some(p), _) => commands::DecideInput::Matrix(p),
                (None, Some(p)) => commands::DecideInput::Scores(p),
                (None, None) => unreachable!("clap enforces the input group"),
            };
            commands::decide(&input, a.method).and_then(|r| match a.format {
                Format::Json => render::json(&r),
                Format::Table => Ok(render::decide_table(&r, &style)),
            })
        }
        Command::Simulate(a) => {
            commands::simulate(&a.scenario, &a.out).and_then(|m| match a.format {
                Format::Json => render::json(&m),
                Format::Table => Ok(render::metrics_table(&m, &a.out, &style)),
            })
        }
        Command::Compare(a) => commands::compare(&a.scenario).and_then(|r| match a.format {
            Format::Json => render::json(&r),
            Format::Table => Ok(render::compare_table(&r, &style)),
        }),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
