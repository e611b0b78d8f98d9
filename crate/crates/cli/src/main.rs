//! `dehn-roots`: query roots of Dehn twists from the command line.
//!
//! Exit codes: 0 success, 2 usage or argument error, 3 class cap exceeded,
//! 4 I/O failure.

mod figure;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dehn_roots::enumeration::DEFAULT_CLASS_CAP;
use dehn_roots::{fractional, numtheory, special, DataSet, EnumQuery, Error, FractionalDataSet};

use crate::figure::PairTable;
use crate::render::Format;

const CLASS_CAP_ENV: &str = "DEHN_ROOTS_CLASS_CAP";

#[derive(Parser)]
#[command(
    name = "dehn-roots",
    version,
    about = "Roots of Dehn twists on closed surfaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Abort enumeration after this many classes (overrides DEHN_ROOTS_CLASS_CAP).
    #[arg(long, global = true)]
    class_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the conjugacy classes of roots of t_{g+1} as data sets.
    Roots {
        #[arg(long)]
        genus: u64,
        /// Restrict to one degree; all degrees otherwise.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Degrees of the (d,e)-roots of t_{g+1}.
    DeRoots { genus: u64 },
    /// Genera for which n is the degree of a (d,e)-root.
    DeRootGenera { degree: u64 },
    /// Write the (g, n) pair table as CSV.
    Figure1 {
        #[arg(long)]
        max_genus: u64,
        #[arg(long)]
        max_degree: u64,
        /// Destination file; `-` for standard output.
        #[arg(long)]
        output: PathBuf,
    },
    /// Genera with no primary root of the given odd degree.
    TSet {
        #[arg(long)]
        degree: u64,
    },
    /// Genera g <= max-genus for which t_{g+1} has a root of the given degree.
    GenusSet {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        max_genus: u64,
    },
    /// Degrees of all roots of t_{g+1}.
    RootSet {
        #[arg(long)]
        genus: u64,
    },
    /// Roots of the maximal degree 2g+1.
    MsRoots {
        #[arg(long)]
        genus: u64,
    },
    /// Number of roots of the maximal degree n = 2g+1.
    MsCount {
        #[arg(long)]
        degree: u64,
    },
    /// Construct a (d,e)-root data set.
    DeConstruct {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
    },
    /// Candidate data sets for roots of the power t_{g+1}^power.
    Fractional {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        power: u64,
    },
    /// Bezout coefficients for d1, d2 avoiding the given primes.
    BezoutAvoid {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Check a data set written as "(n, g0, (a,b); (c1,n1), ...)".
    Validate {
        dataset: String,
        /// Check the scaled condition a + b = power*a*b instead.
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::ClassCapExceeded { .. } => Failure::Cap(err.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn class_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CLASS_CAP_ENV) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{CLASS_CAP_ENV}={value:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_CLASS_CAP),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    let out = match cli.command {
        Command::Roots { genus, degree } => {
            let query = EnumQuery {
                genus,
                degree,
                class_cap: Some(class_cap(cli.class_cap)?),
            };
            render::datasets(&query.run()?, format)
        }
        Command::DeRoots { genus } => {
            if genus == 0 {
                return Err(Failure::Usage("genus must be positive".into()));
            }
            render::integers(&special::de_roots(genus)?, format)
        }
        Command::DeRootGenera { degree } => {
            render::integers(&special::de_root_genera(degree)?, format)
        }
        Command::Figure1 {
            max_genus,
            max_degree,
            output,
        } => {
            let csv = PairTable::build(max_genus, max_degree).to_csv();
            if output.as_os_str() == "-" {
                csv
            } else {
                std::fs::write(&output, csv)
                    .map_err(|e| Failure::Io(format!("{}: {e}", output.display())))?;
                String::new()
            }
        }
        Command::TSet { degree } => render::integers(&special::t_set(degree)?.members, format),
        Command::GenusSet { degree, max_genus } => {
            render::integers(&dehn_roots::genus_set(degree, max_genus), format)
        }
        Command::RootSet { genus } => render::integers(&dehn_roots::root_degrees(genus), format),
        Command::MsRoots { genus } => render::datasets(&special::ms_roots(genus)?, format),
        Command::MsCount { degree } => render::integer(special::ms_count(degree)?, format),
        Command::DeConstruct { d, e } => render::datasets(&[special::de_construct(d, e)?], format),
        Command::Fractional {
            genus,
            degree,
            power,
        } => render::fractional(
            &fractional::fractional_datasets(genus, degree, power)?,
            format,
        ),
        Command::BezoutAvoid { d1, d2, primes } => {
            render::witness(&numtheory::bezout_avoiding_primes(d1, d2, &primes)?, format)
        }
        Command::Validate { dataset, power } => {
            let ds: DataSet = dataset.parse()?;
            let report = fractional::validate_fractional(&FractionalDataSet {
                dataset: ds.clone(),
                power,
            })?;
            render::report(&ds, &report, format)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(msg) => (2, msg),
                Failure::Cap(msg) => (3, msg),
                Failure::Io(msg) => (4, msg),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
