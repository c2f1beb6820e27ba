//! `kostant`: character values at the Coxeter class from the command line.
//!
//! Every subcommand prints one JSON document (or CSV for `table --format
//! csv`) on stdout, with sorted keys and a `schema_version` field. Timing goes
//! to stderr so that output is byte-identical across runs.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 theorem violation or
//! internal error, 4 refusal because a size cap would be exceeded.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kostant_core::Error;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "kostant",
    version,
    about = "Characters of simply connected semisimple groups at the Coxeter class",
    long_about = "Characters of simply connected semisimple groups at the Coxeter class.\n\n\
        Types are written as in \"E8\", \"B3\" or \"A2xG2\" (Bourbaki numbering). \
        Highest weights are given by their coordinates in the basis of \
        fundamental weights.\n\n\
        Exit codes: 0 success, 2 usage or parse error, 3 theorem violation or \
        internal error, 4 refused because a size cap would be exceeded."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural data: Coxeter numbers, center, lift orders and the
    /// principal cocharacter checks.
    Info {
        #[arg(value_name = "TYPE")]
        type_string: String,
    },
    /// Character value at the Coxeter class for one highest weight.
    Char {
        #[arg(value_name = "TYPE")]
        type_string: String,
        /// Highest weight coordinates, one per simple root.
        #[arg(value_name = "LAMBDA", allow_negative_numbers = true)]
        lambda: Vec<i64>,
        /// Also evaluate the brute-force Weyl character formula.
        #[arg(long)]
        oracle: bool,
        /// Largest Weyl group the oracle may enumerate.
        #[arg(long, default_value_t = kostant_core::weyl::DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Frobenius-Schur indicator of one highest weight.
    Fs {
        #[arg(value_name = "TYPE")]
        type_string: String,
        #[arg(value_name = "LAMBDA", allow_negative_numbers = true)]
        lambda: Vec<i64>,
    },
    /// Character values and indicators for all weights in a box.
    Table {
        #[arg(value_name = "TYPE")]
        type_string: String,
        /// Every coordinate runs over 0..=K.
        #[arg(long, value_name = "K", allow_negative_numbers = true)]
        max_coord: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Refuse tables with more rows than this.
        #[arg(long, default_value_t = 1_000_000)]
        max_rows: u64,
    },
    /// Compare the fast path with the brute-force oracle.
    Verify {
        #[arg(value_name = "TYPE")]
        type_string: String,
        /// Check every weight with coordinates in 0..=K.
        #[arg(
            long,
            value_name = "K",
            conflicts_with = "random",
            allow_negative_numbers = true
        )]
        max_coord: Option<i64>,
        /// Check N random dominant weights instead.
        #[arg(long, value_name = "N", required_unless_present = "max_coord")]
        random: Option<usize>,
        /// Seed for ChaCha8, the generator behind --random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest coordinate drawn by --random.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Largest Weyl group the oracle may enumerate.
        #[arg(long, default_value_t = kostant_core::weyl::DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Torsion points, their characters, and the regular classes mod N.
    Torsion {
        #[arg(value_name = "TYPE")]
        type_string: String,
        #[arg(value_name = "N")]
        n: u64,
        /// Largest number of classes to enumerate.
        #[arg(long, default_value_t = kostant_core::torsion::DEFAULT_CLASS_CAP)]
        cap: u64,
        /// Seed for the random equivariance witnesses (ChaCha8).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = kostant_core::torsion::DEFAULT_WITNESSES)]
        witnesses: usize,
    },
    /// Run a quick self-check over every simple type of rank at most 8.
    CheckAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::RankConstraint { .. }
            | Error::RankMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::NotDominant(_)
            | Error::CoordinateTooLarge { .. }
            | Error::NotSimple(_)
            | Error::ZeroModulus => 2,
            Error::CapExceeded { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli.command);
    eprintln!("runtime: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if let Some(message) = &outcome.problem {
                eprintln!("error: {message}");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            if code == 4 {
                eprintln!("hint: raise --cap to override");
            }
            ExitCode::from(code)
        }
    }
}
