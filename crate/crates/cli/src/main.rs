//! `kfc`: batch front end for the local-equivalence toolkit.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Failure;

#[derive(Debug, Parser)]
#[command(name = "kfc", version, about = "Involutive knot Floer local equivalence over F2")]
struct Cli {
    /// Cable parameter, also the default `n` for `std:C_n` style names.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cross-check every small solver query by enumeration.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a complex, ι-complex, type-D or type-A file.
    Check { input: String },
    /// Cancel unit arrows.
    Reduce { input: String },
    /// Print a standard object in the file format.
    Standard { name: String },
    /// Decide the local order between two horizontal ι-complexes.
    Compare { x: String, y: String },
    /// Value of the local class on the standard pair, with the comparability table.
    Classify { input: String },
    /// Box tensor product of a type-A and a type-D file.
    Pair { a: String, d: String },
    /// Cable a `tau = 0` knot complex and reduce.
    Cable { input: String },
    /// Summary of the standard library.
    Report,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = commands::Context::new(cli.n, cli.json, cli.oracle);
    let result = match &cli.command {
        Command::Check { input } => ctx.check(input),
        Command::Reduce { input } => ctx.reduce(input),
        Command::Standard { name } => ctx.standard(name),
        Command::Compare { x, y } => ctx.compare(x, y),
        Command::Classify { input } => ctx.classify(input),
        Command::Pair { a, d } => ctx.pair(a, d),
        Command::Cable { input } => ctx.cable(input),
        Command::Report => ctx.report(),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, output, message }) => {
            print!("{output}");
            eprintln!("kfc: {message}");
            ExitCode::from(code)
        }
    }
}
