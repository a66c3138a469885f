mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Validate, materialize and query recurrent situation series in Turtle files.
#[derive(Debug, Parser)]
#[command(name = "recurrence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the inputs against the pattern's constraints.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Print the inputs together with everything the pattern rules derive.
    Infer {
        /// Print only the derived triples.
        #[arg(long)]
        delta_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Answer one competency question (1-8).
    Cq {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=8))]
        id: u8,
        /// Series to ask about (CQ1-CQ6).
        #[arg(long)]
        series: Option<String>,
        /// Unifying factor whose validity is asked for (CQ5).
        #[arg(long)]
        factor: Option<String>,
        /// Situation whose next or previous situations are asked for (CQ7, CQ8).
        #[arg(long)]
        situation: Option<String>,
        /// Only immediate next or previous situations (CQ7, CQ8).
        #[arg(long)]
        immediate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// One JSON document per series: members, answers, findings and period.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Turtle,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Band {
    /// One next-finer unit either side of the estimate.
    #[value(name = "approximate", alias = "paper-band")]
    Approximate,
    Strict,
}

#[derive(Debug, Args)]
struct Common {
    /// Turtle files, merged before processing.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Predicate linking a member to its xsd:date anchor.
    #[arg(long, value_name = "IRI")]
    anchor_predicate: Option<String>,
    #[arg(long, value_enum, default_value_t = Band::Approximate)]
    band_mode: Band,
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Work on the asserted triples without running the reasoner.
    #[arg(long)]
    asserted_only: bool,
    /// Reference date for scheduling questions (default: the system date).
    #[arg(long, value_name = "YYYY-MM-DD")]
    today: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_ERROR),
            };
        }
    };
    let code = match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            commands::EXIT_ERROR
        }
    };
    ExitCode::from(code)
}
