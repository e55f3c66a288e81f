//! `modgeo` command-line front end.
//!
//! Every subcommand builds a [`table::Table`] and prints it as CSV (default)
//! or as a JSON array of objects with the same field names.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "modgeo",
    version,
    about = "Count and enumerate geodesic classes on the modular orbifold"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact class count for one family at index t.
    Count(CountArgs),
    /// List canonical representatives.
    Enumerate(EnumerateArgs),
    /// Root of z^m - z^(m-1) - ... - 1 and the closed-form coefficient.
    Alpha(AlphaArgs),
    /// Run invariant suites; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Exact counts against a growth law.
    Growth(GrowthArgs),
    /// The four cardinality rows, cross-checked by enumeration.
    Table1(Table1Args),
    /// Deepest cusp excursion of one word.
    Depth(DepthArgs),
    /// Depth-bracket audit over every hyperbolic class up to a length.
    #[command(name = "audit-lemma71")]
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    m: Option<u32>,
    /// Sum over indices 1..=t.
    #[arg(long)]
    cumulative: bool,
    #[arg(long)]
    primitive: bool,
    /// Add the three length-one torsion classes (classes family, cumulative).
    #[arg(long)]
    torsion: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    primitive: bool,
}

#[derive(Debug, Args)]
struct AlphaArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = modgeo::counting::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 12)]
    tmax: u32,
}

#[derive(Debug, Args)]
struct GrowthArgs {
    #[arg(long)]
    item: u8,
    /// Largest t in the table.
    #[arg(long)]
    t: u32,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = modgeo::report::DEFAULT_ORACLE_MAX)]
    oracle_max: u32,
}

#[derive(Debug, Args)]
struct Table1Args {
    #[arg(long)]
    t: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = modgeo::report::DEFAULT_ORACLE_MAX)]
    oracle_max: u32,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct DepthArgs {
    /// Sign word such as `++-`.
    #[arg(long)]
    word: Option<String>,
    /// Syllable word such as `abaB` (`B` is the inverse of `b`).
    #[arg(long)]
    syllables: Option<String>,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long, default_value_t = 10)]
    tmax: u32,
}

/// Outcome of a subcommand before emission.
pub(crate) struct Output {
    table: table::Table,
    /// Human-readable summary for the error stream.
    note: Option<String>,
    failed: bool,
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let exec = match configure_threads(cli.threads) {
        Ok(exec) => exec,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Count(a) => commands::count(a, exec),
        Command::Enumerate(a) => commands::enumerate(a, exec),
        Command::Alpha(a) => commands::alpha(a),
        Command::Verify(a) => commands::verify(a, exec),
        Command::Growth(a) => commands::growth(a, exec),
        Command::Table1(a) => commands::table1(a, exec),
        Command::Depth(a) => commands::depth(a),
        Command::Audit(a) => commands::audit(a, exec),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match cli.format {
        Format::Csv => output.table.write_csv(out),
        Format::Json => output.table.write_json(out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_FAILED;
    }
    if let Some(note) = output.note {
        let _ = write!(err, "{note}");
    }
    if output.failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Result<modgeo::Exec, String> {
    if let Some(n) = threads {
        if n == 0 {
            return Err("--threads must be at least 1".into());
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(modgeo::Exec::Parallel)
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) -> Result<modgeo::Exec, String> {
    if threads == Some(0) {
        return Err("--threads must be at least 1".into());
    }
    Ok(modgeo::Exec::Sequential)
}
