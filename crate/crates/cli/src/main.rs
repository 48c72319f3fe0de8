//! Command-line front end. Exit codes: 0 success, 2 usage error, 3 domain
//! error (invalid field, degenerate or singular curve, exceeded bounds);
//! oracle-check exits 1 when it finds mismatches. Domain errors print one
//! machine-parsable line `error: <Code>: <detail>` on the error stream.

mod document;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use document::{curve_document, OracleCheckDocument, ResultDocument, SCHEMA_VERSION};
use picard_core::{
    oracle_equivalence_run, sweep, Convention, PicardCurve, PrimeSelection, SweepConfig,
    SweepReport, DEFAULT_ORACLE_BOUND,
};

#[derive(Parser)]
#[command(
    name = "picard",
    version,
    about = "Cartier/Hasse-Witt matrix, a-number and p-rank of Picard curves y^3 = f(x) over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 3x3 matrix on the differential basis {dx/y^2, x dx/y^2, dx/y}
    Matrix {
        #[command(flatten)]
        curve: CurveArgs,
        /// Matrix layout: rows of basis images, or its transpose acting on
        /// coordinate columns
        #[arg(long, value_enum, default_value_t = ConventionArg::HasseWitt)]
        convention: ConventionArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the a-number of the curve (with rank and p-rank)
    ANumber {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the p-rank of the curve (with rank and a-number)
    PRank {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample random curves per prime and tally the a-number dichotomy
    Sweep {
        #[command(flatten)]
        selection: SelectionArgs,
        /// Random curves per prime
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Base seed; every (prime, trial) pair derives its own generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample only quartics with a nonzero constant coefficient
        #[arg(long)]
        require_nonzero_constant: bool,
        /// Also cross-check the computation paths for primes within the bound
        #[arg(long)]
        oracle_check: bool,
        /// Prime cutoff for the expansion oracle
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check the three computation paths on sampled curves
    OracleCheck {
        #[command(flatten)]
        selection: SelectionArgs,
        /// Random curves per prime, after the pinned reference quartic
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample only quartics with a nonzero constant coefficient
        #[arg(long)]
        require_nonzero_constant: bool,
        /// Prime cutoff for the expansion oracle; all selected primes must
        /// stay within it
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Prime characteristic, p > 3
    #[arg(long)]
    p: u64,
    /// Quartic coefficients mod p, constant term first: c0,c1,c2,c3,c4
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<i64>,
}

#[derive(Args)]
struct SelectionArgs {
    /// Explicit comma-separated primes (each > 3)
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["min", "max", "residue"])]
    primes: Option<Vec<u64>>,
    /// Lower end of an inclusive prime range
    #[arg(long, requires = "max")]
    min: Option<u64>,
    /// Upper end of an inclusive prime range
    #[arg(long, requires = "min")]
    max: Option<u64>,
    /// Keep only range primes with this residue mod 3
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), requires = "min")]
    residue: Option<u8>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    HasseWitt,
    Cartier,
}

impl From<ConventionArg> for Convention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::HasseWitt => Convention::HasseWitt,
            ConventionArg::Cartier => Convention::Cartier,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Domain(picard_core::Error),
    Io(std::io::Error),
}

impl From<picard_core::Error> for CliError {
    fn from(e: picard_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: UsageError: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {}: {e}", e.code());
            3
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: IoError: {e}");
            1
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Matrix {
            curve,
            convention,
            out,
        } => {
            let doc = curve_document("matrix", &build_curve(&curve)?, Some(convention.into()));
            emit(render_result(&doc, out.format), &out.output)?;
            Ok(0)
        }
        Command::ANumber { curve, out } => {
            let doc = curve_document("a-number", &build_curve(&curve)?, None);
            emit(render_result(&doc, out.format), &out.output)?;
            Ok(0)
        }
        Command::PRank { curve, out } => {
            let doc = curve_document("p-rank", &build_curve(&curve)?, None);
            emit(render_result(&doc, out.format), &out.output)?;
            Ok(0)
        }
        Command::Sweep {
            selection,
            trials,
            seed,
            require_nonzero_constant,
            oracle_check,
            oracle_bound,
            out,
        } => {
            let config = SweepConfig {
                primes: selection.to_selection()?,
                trials_per_prime: trials,
                seed,
                require_nonzero_constant,
                oracle_check,
                oracle_bound,
            };
            let report = sweep(&config)?;
            // timing goes to stderr so stdout stays byte-deterministic
            eprintln!("sweep completed in {} ms", report.total_runtime_ms);
            emit(render_sweep(&report, out.format), &out.output)?;
            Ok(0)
        }
        Command::OracleCheck {
            selection,
            trials,
            seed,
            require_nonzero_constant,
            oracle_bound,
            out,
        } => {
            let config = SweepConfig {
                primes: selection.to_selection()?,
                trials_per_prime: trials,
                seed,
                require_nonzero_constant,
                oracle_check: true,
                oracle_bound,
            };
            let mismatches = oracle_equivalence_run(&config)?;
            let clean = mismatches.is_empty();
            let doc = OracleCheckDocument {
                schema_version: SCHEMA_VERSION.to_string(),
                command: "oracle-check".to_string(),
                config,
                mismatches,
            };
            emit(render_oracle(&doc, out.format), &out.output)?;
            Ok(if clean { 0 } else { 1 })
        }
    }
}

fn build_curve(args: &CurveArgs) -> Result<PicardCurve, CliError> {
    if args.f.len() != 5 {
        return Err(CliError::Usage(format!(
            "--f takes exactly 5 comma-separated coefficients (constant first), got {}",
            args.f.len()
        )));
    }
    Ok(PicardCurve::new(args.p, &args.f)?)
}

impl SelectionArgs {
    fn to_selection(&self) -> Result<PrimeSelection, CliError> {
        match (&self.primes, self.min, self.max) {
            (Some(list), _, _) => Ok(PrimeSelection::List(list.clone())),
            (None, Some(min), Some(max)) => Ok(PrimeSelection::Range {
                min,
                max,
                residue_mod_3: self.residue,
            }),
            _ => Err(CliError::Usage(
                "select primes with --primes or with --min and --max".to_string(),
            )),
        }
    }
}

fn render_result(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Text => document::result_to_text(doc),
        Format::Json => document::result_to_json(doc),
        Format::Csv => document::result_to_csv(doc),
    }
}

fn render_sweep(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Text => document::sweep_to_text(report),
        Format::Json => document::sweep_to_json(report),
        Format::Csv => document::sweep_to_csv(report),
    }
}

fn render_oracle(doc: &OracleCheckDocument, format: Format) -> String {
    match format {
        Format::Text => document::oracle_to_text(doc),
        Format::Json => document::oracle_to_json(doc),
        Format::Csv => document::oracle_to_csv(doc),
    }
}

fn emit(content: String, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(CliError::Io),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
