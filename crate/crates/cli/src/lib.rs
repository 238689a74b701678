//! Argument handling and dispatch for the `weightdist` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a computed
//! quantity contradicts a closed form, 2 for invalid parameters, 3 for
//! budget, capacity and internal failures.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weightdist::report::{self, Mode, Table, VerificationReport};
use weightdist::{CodeContext, CodeParams, Error, ErrorClass};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "weightdist",
    version,
    about = "Value and weight distributions of five-weight cyclic codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "WEIGHTDIST_WORKERS")]
    pub workers: Option<usize>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Moments,
    Sample,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value and weight distributions by the chosen mode, checked against the closed forms.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "moments")]
        mode: ModeArg,
        /// Sample size for `--mode sample`.
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Counting lemmas and the sub-lemma distributions.
    Lemmas {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Closed-form value table (1) or weight table (2).
    Table {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
    /// One codeword, by element indices.
    Codeword {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
    },
    /// The parity-check factors h0, h1, h2 and their product.
    Minpoly {
        #[command(flatten)]
        params: ParamArgs,
    },
}

impl Command {
    fn params(&self) -> ParamArgs {
        match self {
            Command::Verify { params, .. }
            | Command::Lemmas { params }
            | Command::Table { params, .. }
            | Command::Codeword { params, .. }
            | Command::Minpoly { params } => *params,
        }
    }
}

/// What a run produced: the exit code, the serialized report if one was
/// built, and a diagnostic for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Option<String>,
    pub message: Option<String>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.class() {
        ErrorClass::InvalidInput => EXIT_INVALID,
        ErrorClass::Falsified => EXIT_FAILED,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

fn dispatch(command: &Command) -> weightdist::Result<VerificationReport> {
    let ParamArgs { p, m, k, t } = command.params();
    let params = CodeParams::validate(p, m, k, t)?;
    let cc = CodeContext::new(params)?;
    match *command {
        Command::Verify { mode, n, seed, .. } => {
            let mode = match mode {
                ModeArg::Full => Mode::Full,
                ModeArg::Moments => Mode::Moments,
                ModeArg::Sample => Mode::Sample { n, seed },
            };
            report::verify(&cc, mode)
        }
        Command::Lemmas { .. } => report::lemmas(&cc),
        Command::Table { which, .. } => report::table(
            &cc,
            if which == 1 {
                Table::Values
            } else {
                Table::Weights
            },
        ),
        Command::Codeword { a, b, c, .. } => report::codeword(&cc, a, b, c),
        Command::Minpoly { .. } => report::minpoly(&cc),
    }
}

/// Runs a parsed command on a pool of `workers` threads.
pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Outcome {
                code: EXIT_INVALID,
                json: None,
                message: Some("--workers must be positive".into()),
            };
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            return Outcome {
                code: EXIT_INTERNAL,
                json: None,
                message: Some(format!("thread pool: {e}")),
            }
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(mut report) => {
            report.runtime_ms = start.elapsed().as_millis() as u64;
            let failed: Vec<String> = report.failed().map(|c| c.name.clone()).collect();
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            Outcome {
                code: if failed.is_empty() {
                    EXIT_PASS
                } else {
                    EXIT_FAILED
                },
                json: Some(json),
                message: (!failed.is_empty())
                    .then(|| format!("failed checks: {}", failed.join(", "))),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            json: None,
            message: Some(format!("error: {e}")),
        },
    }
}

/// Parses `argv` and runs it without touching stdout or stderr.
pub fn run_captured<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => Outcome {
            code: if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_PASS
            },
            json: None,
            message: Some(e.render().to_string()),
        },
    }
}

/// Parses `argv`, runs it and writes the report to stdout or `--out`.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_PASS
            };
        }
    };
    let outcome = execute(&cli);
    if let Some(json) = &outcome.json {
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return EXIT_INTERNAL;
                }
            }
            None => println!("{json}"),
        }
    }
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    outcome.code
}
