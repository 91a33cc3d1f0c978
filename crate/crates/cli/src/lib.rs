//! File formats and the `irredkit` command line.
//!
//! Groups are read from `group-v1` JSON documents (Cayley table or
//! permutation generators), representations from `rep-v1` documents. Every
//! command prints one [`report::ResultDocument`] on standard output.

pub mod error;
pub mod format;
pub mod report;

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use irredkit::tol::{DEFAULT_MAX_ORDER, DEFAULT_SEED};
use irredkit::Tolerances;

pub use commands::REGULAR_CHECK_LIMIT;
use commands::{CommandOutput, Context};
use error::CliError;
use report::{serialize_result, OutputFormat, ResultDocument};

#[derive(Debug, Parser)]
#[command(
    name = "irredkit",
    version,
    about = "Irreducible representations of finite groups"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Equality tolerance; the other tolerances scale with it.
    #[arg(long, global = true, default_value_t = irredkit::tol::BASE_EQ, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Largest group order any command will build.
    #[arg(long, global = true, env = "IRREDKIT_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, conjugacy classes and element orders.
    GroupInfo { group: PathBuf },
    /// Discover a complete set of irreducible unitary representations.
    Irreps { group: PathBuf },
    /// Character table (rows are irreps, columns are classes).
    Chartable { group: PathBuf },
    /// Multiplicities and an adapted basis for a representation.
    Decompose { group: PathBuf, rep: PathBuf },
    /// Equivalent unitary representation and the similarity used.
    Unitarize { group: PathBuf, rep: PathBuf },
    /// Tensor product of two representations of the same group.
    Tensor {
        group: PathBuf,
        left: PathBuf,
        right: PathBuf,
    },
    /// Direct sum of two representations of the same group.
    Dsum {
        group: PathBuf,
        left: PathBuf,
        right: PathBuf,
    },
    /// Direct product of two groups as a Cayley table.
    ProductGroup { left: PathBuf, right: PathBuf },
    /// Run the invariant suite and report worst residuals.
    Verify { group: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GroupInfo { .. } => "group-info",
            Command::Irreps { .. } => "irreps",
            Command::Chartable { .. } => "chartable",
            Command::Decompose { .. } => "decompose",
            Command::Unitarize { .. } => "unitarize",
            Command::Tensor { .. } => "tensor",
            Command::Dsum { .. } => "dsum",
            Command::ProductGroup { .. } => "product-group",
            Command::Verify { .. } => "verify",
        }
    }

    fn args(&self) -> Vec<String> {
        let paths: Vec<&PathBuf> = match self {
            Command::GroupInfo { group }
            | Command::Irreps { group }
            | Command::Chartable { group }
            | Command::Verify { group } => vec![group],
            Command::Decompose { group, rep } | Command::Unitarize { group, rep } => {
                vec![group, rep]
            }
            Command::Tensor { group, left, right } | Command::Dsum { group, left, right } => {
                vec![group, left, right]
            }
            Command::ProductGroup { left, right } => vec![left, right],
        };
        paths.iter().map(|p| p.display().to_string()).collect()
    }

    fn run(&self, ctx: &Context) -> Result<CommandOutput, CliError> {
        match self {
            Command::GroupInfo { group } => commands::group_info(group, ctx),
            Command::Irreps { group } => commands::irreps(group, ctx),
            Command::Chartable { group } => commands::chartable(group, ctx),
            Command::Decompose { group, rep } => commands::decompose(group, rep, ctx),
            Command::Unitarize { group, rep } => commands::unitarize_cmd(group, rep, ctx),
            Command::Tensor { group, left, right } => commands::tensor(group, left, right, ctx),
            Command::Dsum { group, left, right } => commands::dsum(group, left, right, ctx),
            Command::ProductGroup { left, right } => commands::product_group(left, right, ctx),
            Command::Verify { group } => commands::verify(group, ctx),
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

/// Exit code and the text destined for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn execute_command<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Execution {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let ctx = Context {
        seed: cli.seed,
        tol: Tolerances::scaled(cli.tol),
        max_order: cli.max_order,
    };
    match run(&cli, &ctx) {
        Ok((stdout, failed)) if failed.is_empty() => Execution {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Ok((stdout, failed)) => {
            let e = CliError::Verification(failed.join(", "));
            Execution {
                code: e.exit_code(),
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
        Err(e) => Execution {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn run(cli: &Cli, ctx: &Context) -> Result<(String, Vec<String>), CliError> {
    if cli.output == OutputFormat::Tsv && !matches!(cli.command, Command::Chartable { .. }) {
        return Err(CliError::UnsupportedFormat(cli.output.name().into()));
    }
    let out = cli.command.run(ctx)?;
    let doc = ResultDocument {
        command: cli.command.name().into(),
        args: cli.command.args(),
        seed: ctx.seed,
        tolerances: (&ctx.tol).into(),
        max_order: ctx.max_order,
        payload: out.payload,
        max_residuals: out.max_residuals,
        table: out.table,
    };
    Ok((serialize_result(&doc, cli.output)?, out.failed))
}
