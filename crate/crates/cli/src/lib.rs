//! Command-line surface over the derivation engine.
//!
//! Eight subcommands: print coefficient families (`coeffs`) and polynomial
//! towers (`polys`), render the asymptotic expansion symbolically (`expand`)
//! or evaluate it numerically (`eval`), estimate the initial-condition
//! constant of a catalog orbit (`estimate-c`), check the exact sign relations
//! between kindred partners (`kindred`), list the catalog
//! (`list-functions`), and re-derive the golden corpus (`verify`).
//!
//! Exit codes: 0 on success, 1 on any validation or usage error, 2 when a
//! verification subcommand finds a mismatch.

mod commands;
mod render;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

/// Exit code for usage and validation errors.
const VALIDATION_EXIT: i32 = 1;
/// Exit code for mathematical verification failures.
const VERIFICATION_EXIT: i32 = 2;

/// Environment variable holding the default digit count for numeric
/// subcommands when `--digits` is not given.
const DIGITS_ENV: &str = "KINDRED_DIGITS";

/// Exact asymptotics of iterated analytic maps x_{n+1} = f(x_n) -> 0.
#[derive(Parser)]
#[command(
    name = "kindred",
    version,
    about = "Exact coefficient families, asymptotic expansions, and \
             high-precision constants for iterated analytic maps",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Document format of a subcommand's output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    /// Human-readable lines, mirroring the published table layout.
    Text,
    /// Pretty-printed JSON with rationals as "p/q" strings.
    Json,
    /// LaTeX math markup.
    Latex,
}

/// The map a subcommand operates on: a catalog entry or a custom document.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub(crate) struct TargetArgs {
    /// Catalog function name (see list-functions)
    #[arg(long, value_name = "NAME")]
    pub(crate) function: Option<String>,

    /// Path to a custom series document (fields: tau, a, name, formula, scale)
    #[arg(long, value_name = "FILE")]
    pub(crate) spec: Option<PathBuf>,
}

/// Where the output document goes.
#[derive(Args)]
pub(crate) struct OutputArg {
    /// Write the document to a file instead of standard output
    #[arg(short, long, value_name = "FILE")]
    pub(crate) output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the coefficient families of a map: lambda, b_j, a_{0,j}, a_{i,j}, c_i
    Coeffs {
        #[command(flatten)]
        target: TargetArgs,

        /// Derivation depth J (default: the target's full depth)
        #[arg(long, value_name = "J")]
        orders: Option<usize>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Print the polynomial towers T_m and P_m of a map
    Polys {
        #[command(flatten)]
        target: TargetArgs,

        /// Derivation depth J (default: the target's full depth)
        #[arg(long, value_name = "J")]
        orders: Option<usize>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Render the asymptotic expansion of the iterates as an exact term table
    Expand {
        #[command(flatten)]
        target: TargetArgs,

        /// Expansion truncation order J (default: the target's full depth)
        #[arg(long, value_name = "J")]
        orders: Option<usize>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Evaluate the truncated expansion numerically at an orbit index n
    Eval {
        #[command(flatten)]
        target: TargetArgs,

        /// Orbit index n (at least 2)
        #[arg(long)]
        n: u64,

        /// The orbit's published constant C, as a plain decimal
        #[arg(long, value_name = "DECIMAL")]
        constant: String,

        /// Printed fractional digits and working precision
        /// (default 30; KINDRED_DIGITS overrides)
        #[arg(long)]
        digits: Option<u32>,

        /// Expansion truncation order J (default: the target's full depth)
        #[arg(long, value_name = "J")]
        orders: Option<usize>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Estimate the initial-condition constant of a catalog orbit
    #[command(name = "estimate-c")]
    EstimateC {
        /// Catalog function name (custom specs carry no evaluator)
        #[arg(long, value_name = "NAME")]
        function: String,

        /// Orbit start: "p/q", "pi", or "pi/q" (default: the catalog start)
        #[arg(long, value_name = "START")]
        x0: Option<String>,

        /// Digits printed after the decimal point
        /// (default 20; KINDRED_DIGITS overrides)
        #[arg(long)]
        digits: Option<u32>,

        /// Cap the orbit-depth escalation schedule at this base depth N
        #[arg(long, value_name = "N")]
        max_n: Option<u64>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Show a map's kindred partner and check the exact sign relations
    Kindred {
        #[command(flatten)]
        target: TargetArgs,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// List the twelve catalog functions
    #[command(name = "list-functions")]
    ListFunctions {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },

    /// Re-derive every table in the golden corpus and compare exactly
    Verify {
        /// Corpus directory (default: the corpus embedded in the binary)
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,

        /// Check a single function instead of the whole corpus
        #[arg(long, value_name = "NAME")]
        function: Option<String>,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,

        #[command(flatten)]
        out: OutputArg,
    },
}

/// A failed run: the message goes to standard error, the code to the shell.
#[derive(Debug)]
pub(crate) struct CliError(pub(crate) String);

impl CliError {
    pub(crate) fn new(message: impl Into<String>) -> Self {
        CliError(message.into())
    }
}

/// A successful computation: the document and whether a verification-style
/// subcommand found mismatches (which turns exit 0 into exit 2).
pub(crate) struct Outcome {
    pub(crate) document: String,
    pub(crate) verified: bool,
}

impl Outcome {
    pub(crate) fn ok(document: String) -> Self {
        Outcome { document, verified: true }
    }
}

/// Parses `args` and runs the selected subcommand, returning the process
/// exit code. Documents go to standard output (or `--output`), errors to
/// standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are successful outputs, not usage errors.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => VALIDATION_EXIT,
            };
            let _ = e.print();
            return code;
        }
    };
    let (outcome, output) = match dispatch(cli) {
        Ok(pair) => pair,
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            return VALIDATION_EXIT;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.document) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return VALIDATION_EXIT;
            }
        }
        None => print!("{}", outcome.document),
    }
    if outcome.verified {
        0
    } else {
        VERIFICATION_EXIT
    }
}

fn dispatch(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Coeffs { target, orders, format, out } => {
            Ok((commands::coeffs(&target, orders, format)?, out.output))
        }
        Command::Polys { target, orders, format, out } => {
            Ok((commands::polys(&target, orders, format)?, out.output))
        }
        Command::Expand { target, orders, format, out } => {
            Ok((commands::expand(&target, orders, format)?, out.output))
        }
        Command::Eval { target, n, constant, digits, orders, format, out } => Ok((
            commands::eval(&target, n, &constant, digits, orders, format)?,
            out.output,
        )),
        Command::EstimateC { function, x0, digits, max_n, format, out } => Ok((
            commands::estimate(&function, x0.as_deref(), digits, max_n, format)?,
            out.output,
        )),
        Command::Kindred { target, format, out } => {
            Ok((commands::kindred(&target, format)?, out.output))
        }
        Command::ListFunctions { format, out } => {
            Ok((commands::list_functions(format)?, out.output))
        }
        Command::Verify { corpus, function, format, out } => Ok((
            commands::verify(corpus.as_deref(), function.as_deref(), format)?,
            out.output,
        )),
    }
}

/// Resolves a digit count: the explicit flag, else the `KINDRED_DIGITS`
/// environment variable, else the subcommand's default.
pub(crate) fn resolve_digits(flag: Option<u32>, fallback: u32) -> Result<u32, CliError> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var(DIGITS_ENV) {
            Ok(text) => text.trim().parse::<u32>().map_err(|_| {
                CliError::new(format!(
                    "{DIGITS_ENV} must be a positive integer (got {text:?})"
                ))
            })?,
            Err(_) => fallback,
        },
    };
    if digits == 0 {
        return Err(CliError::new("digits must be at least 1"));
    }
    Ok(digits)
}

/// Rejects LaTeX for subcommands whose output is a report, not a formula.
pub(crate) fn text_or_json(format: Format, subcommand: &str) -> Result<(), CliError> {
    if format == Format::Latex {
        return Err(CliError::new(format!(
            "latex output is not available for {subcommand}; use text or json"
        )));
    }
    Ok(())
}
