use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use typeineq_cli::{run_file, Command, Flags};

#[derive(Parser)]
#[command(
    name = "typeineq",
    version,
    about = "Type checking with subtyping and parametric signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Problem file.
    file: String,
    /// Emit the JSON report on stdout; human-readable text goes to stderr.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct SolverArgs {
    #[command(flatten)]
    common: Common,
    /// Print the frontier size of every round.
    #[arg(long)]
    trace: bool,
    /// Cross-check the verdict with the brute-force oracle (exit 3 on disagreement).
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the alphabet and print the closure of its order.
    Validate(Common),
    /// Decide the `subtype:` query.
    Subtype(Common),
    /// Print the inequations generated for the `term:`.
    Gen(Common),
    /// Decide solvability of the `solve:` system.
    Solve(SolverArgs),
    /// Decide typability of the `term:`.
    Check(SolverArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, trace, oracle) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, c, false, false),
        Cmd::Subtype(c) => (Command::Subtype, c, false, false),
        Cmd::Gen(c) => (Command::Gen, c, false, false),
        Cmd::Solve(s) => (Command::Solve, s.common, s.trace, s.oracle),
        Cmd::Check(s) => (Command::Check, s.common, s.trace, s.oracle),
    };
    let flags = Flags {
        json: common.json,
        trace,
        oracle,
    };
    let out = run_file(command, &common.file, flags);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
