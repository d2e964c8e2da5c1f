use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use setfix_core::rational::parse_rational;
use setfix_core::scenario::{run, run_paper_example, Command, Format};
use setfix_core::solver::EnumerateMode;
use setfix_core::{parse_scenario, Mode, Rational};

#[derive(Parser)]
#[command(
    name = "setfix",
    version,
    about = "Certify, iterate and enumerate fixed points of set-valued maps"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for sampled checks; defaults to the scenario's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Generalized,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Generalized)]
    mode: ModeArg,
    /// Grid step for interval spaces, as p/q.
    #[arg(long, value_parser = rational)]
    grid_step: Option<Rational>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = rational)]
    tol: Option<Rational>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// First successor x1, overriding the scenario's.
    #[arg(long, allow_hyphen_values = true)]
    x1: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Solve x ∈ Tx branch by branch (default on interval spaces).
    #[arg(long, conflicts_with = "grid")]
    analytic: bool,
    /// Test the points of a grid with this step instead.
    #[arg(long, value_parser = rational)]
    grid: Option<Rational>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the contractive inequality on pairs.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        args: CertifyArgs,
    },
    /// Build an orbit from the scenario's start.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        args: SolveArgs,
    },
    /// List fixed points.
    Enumerate {
        file: PathBuf,
        #[command(flatten)]
        args: EnumerateArgs,
    },
    /// Run the class and admissibility checks.
    CheckClasses { file: PathBuf },
    /// Run a command on built-in example 1 or 2.
    PaperExample {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[command(subcommand)]
        command: ExampleCmd,
    },
}

#[derive(Subcommand)]
enum ExampleCmd {
    Certify(CertifyArgs),
    Solve(SolveArgs),
    Enumerate(EnumerateArgs),
    CheckClasses,
}

impl From<CertifyArgs> for Command {
    fn from(a: CertifyArgs) -> Self {
        let mode = match a.mode {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Generalized => Mode::Generalized,
        };
        Command::Certify {
            mode,
            grid_step: a.grid_step,
        }
    }
}

impl From<SolveArgs> for Command {
    fn from(a: SolveArgs) -> Self {
        Command::Solve {
            tol: a.tol,
            max_iter: a.max_iter,
            x1: a.x1,
        }
    }
}

impl From<EnumerateArgs> for Command {
    fn from(a: EnumerateArgs) -> Self {
        let mode = match (a.analytic, a.grid) {
            (_, Some(step)) => Some(EnumerateMode::Grid(step)),
            (true, None) => Some(EnumerateMode::Analytic),
            (false, None) => None,
        };
        Command::Enumerate { mode }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Records => Format::Records,
    };
    let (file, command) = match cli.command {
        Cmd::Certify { file, args } => (file, args.into()),
        Cmd::Solve { file, args } => (file, args.into()),
        Cmd::Enumerate { file, args } => (file, args.into()),
        Cmd::CheckClasses { file } => (file, Command::CheckClasses),
        Cmd::PaperExample { id, command } => {
            let command = match command {
                ExampleCmd::Certify(a) => a.into(),
                ExampleCmd::Solve(a) => a.into(),
                ExampleCmd::Enumerate(a) => a.into(),
                ExampleCmd::CheckClasses => Command::CheckClasses,
            };
            return finish(run_paper_example(id, &command, format, cli.seed));
        }
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let scenario = match parse_scenario(&text) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    finish(run(&scenario, &command, format, cli.seed))
}

fn finish(result: setfix_core::Result<setfix_core::scenario::Outcome>) -> ExitCode {
    match result {
        Ok(out) => {
            print!("{}", out.output);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
