mod commands;
mod io;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cdpoly::{Rational, ScalarMode, SolveOptions, ToleranceContext};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::commands::EvalKind;
use crate::io::{parse_scalar_list, usage, CliError, CliResult, PolynomialFile, RawScalar};

#[derive(Debug, Parser)]
#[command(
    name = "cdpoly",
    version,
    about = "Polynomials over Cayley-Dickson algebras"
)]
struct Cli {
    /// Scalar mode; overrides the mode recorded in the input file.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<ScalarMode>,

    /// Uniform absolute and relative tolerance for inexact results.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Polynomial file; read from stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All alternating roots of a polynomial over a division algebra.
    AltRoots {
        #[command(flatten)]
        input: Input,
        /// Irrational norms are refined to width 2^-bits.
        #[arg(long, default_value_t = 64)]
        precision: u32,
        /// Solve even when the algebra is not certified as a division algebra.
        #[arg(long)]
        assume_division: bool,
        /// Use the sampling solver in binary64 (any height, all gammas -1).
        #[arg(long)]
        experimental_general: bool,
    },
    /// Evaluates the polynomial at a point.
    Eval {
        #[command(flatten)]
        input: Input,
        /// The point as a JSON list of coordinates.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = EvalKind::Alternating)]
        kind: EvalKind,
    },
    /// The alternating friend over the algebra doubled with `--gamma`.
    Friend {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_raw)]
        gamma: RawScalar,
    },
    /// Splits a polynomial over CD(A, γ) into f and g over A.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Runs the seeded identity suite on one algebra.
    Check {
        /// Doubling parameters, e.g. `-1,-1` or `[-1,-1]`.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        gammas: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iterations: usize,
    },
    /// The basis multiplication table.
    Table {
        /// Doubling parameters, e.g. `-1,-1` or `[-1,-1]`.
        #[arg(long, allow_hyphen_values = true)]
        gammas: String,
    },
}

fn parse_mode(s: &str) -> Result<ScalarMode, String> {
    s.parse().map_err(|e: cdpoly::Error| e.to_string())
}

fn parse_raw(s: &str) -> Result<RawScalar, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn read_input(input: &Input) -> CliResult<PolynomialFile> {
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    PolynomialFile::parse(&text)
}

/// Instantiates a generic command for the selected scalar type.
macro_rules! by_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            ScalarMode::Exact => commands::$f::<Rational>($($arg),*),
            ScalarMode::Float => commands::$f::<f64>($($arg),*),
        }
    };
}

/// Returns the JSON to print and whether the command succeeded.
fn run(cli: Cli) -> CliResult<(Value, bool)> {
    let tolerance = match cli.tol {
        Some(t) => ToleranceContext::uniform(t)?,
        None => ToleranceContext::default(),
    };
    match cli.command {
        Command::AltRoots {
            input,
            precision,
            assume_division,
            experimental_general,
        } => {
            if precision == 0 {
                return Err(usage("--precision must be positive"));
            }
            let file = read_input(&input)?;
            let opts = SolveOptions {
                tolerance,
                precision_bits: precision,
                assume_division,
            };
            let mode = file.effective_mode(cli.mode);
            Ok((
                by_mode!(mode, alt_roots_cmd(&file, &opts, experimental_general))?,
                true,
            ))
        }
        Command::Eval { input, at, kind } => {
            let file = read_input(&input)?;
            let mode = file.effective_mode(cli.mode);
            Ok((by_mode!(mode, eval_cmd(&file, &at, kind))?, true))
        }
        Command::Friend { input, gamma } => {
            let file = read_input(&input)?;
            let mode = file.effective_mode(cli.mode);
            Ok((by_mode!(mode, friend_cmd(&file, &gamma))?, true))
        }
        Command::Decompose { input } => {
            let file = read_input(&input)?;
            let mode = file.effective_mode(cli.mode);
            Ok((by_mode!(mode, decompose_cmd(&file))?, true))
        }
        Command::Check {
            gammas,
            seed,
            iterations,
        } => {
            let gammas = parse_scalar_list(&gammas)?;
            by_mode!(
                cli.mode.unwrap_or(ScalarMode::Exact),
                check_cmd(&gammas, seed, iterations)
            )
        }
        Command::Table { gammas } => {
            let gammas = parse_scalar_list(&gammas)?;
            Ok((
                by_mode!(cli.mode.unwrap_or(ScalarMode::Exact), table_cmd(&gammas))?,
                true,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((value, ok)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("some checks failed");
                ExitCode::from(2)
            }
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
