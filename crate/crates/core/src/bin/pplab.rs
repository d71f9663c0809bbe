use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use pplab::cli::{self, Command};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Classification, hypothesis checks and permanence bounds.
    Analyze,
    /// Trajectory CSV and residue-class tail statistics.
    Simulate,
    /// Periodic orbit and limit relations.
    Orbit,
    /// Orbit plus attractivity check from random initial conditions.
    Verify,
    /// Everything above.
    Full,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Analyze => Command::Analyze,
            Cmd::Simulate => Command::Simulate,
            Cmd::Orbit => Command::Orbit,
            Cmd::Verify => Command::Verify,
            Cmd::Full => Command::Full,
        }
    }
}

/// Global dynamics of x_{n+1} = x_n f_n(x_{n-1}) with k-periodic f_n.
#[derive(Debug, Parser)]
#[command(name = "pplab", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Directory for the report and CSV outputs.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(cli::EXIT_INPUT as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let code = cli::run(args.command.into(), &args.scenario, args.out.as_deref());
    ExitCode::from(code as u8)
}
