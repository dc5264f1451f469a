//! `frobkit`: p-Frobenius numbers, p-Sylvester numbers and p-Apéry sets from
//! the command line.
//!
//! Exit codes: 0 success, 1 closed form and oracle disagree, 2 invalid
//! input, 3 resource limit.

mod commands;
mod output;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frobkit::semigroup::DEFAULT_TABLE_CAP;
use frobkit::{Error, Limits};

use commands::{AperyArgs, ComputeArgs, Outcome, TableArgs, VerifyArgs};

#[derive(Parser, Debug)]
#[command(
    name = "frobkit",
    version,
    about = "p-Frobenius and p-Sylvester numbers of numerical semigroups"
)]
struct Cli {
    /// Largest denumerant table the oracle may allocate.
    #[arg(long, env = "FROBKIT_TABLE_CAP", global = true, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// g_p or n_p by closed form, oracle, or both.
    Compute(ComputeArgs),
    /// The p-Apéry set with respect to the smallest generator.
    Apery(AperyArgs),
    /// Check closed forms against the oracle over a parameter grid.
    Verify(VerifyArgs),
    /// g_p and n_p for p = 0..=p-max.
    Table(TableArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::AssertionFailure(_) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> frobkit::Result<Outcome> {
    let limits = Limits {
        table_cap: cli.table_cap,
    };
    match &cli.command {
        Command::Compute(a) => commands::compute(a, limits),
        Command::Apery(a) => commands::apery(a, limits),
        Command::Verify(a) => commands::verify(a, limits),
        Command::Table(a) => commands::table(a, limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stdout.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
