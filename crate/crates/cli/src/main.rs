//! `dpd`: exact classification of normal affine C*-surfaces given by
//! divisor data on the affine line.
//!
//! Exit status is 0 on success, 1 on a domain error (its name goes to
//! stderr) and 2 on a usage error.

mod commands;
mod input;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "dpd", version, about = "Homogeneous LNDs and invariants of C*-surfaces")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// `SPEC` is a spec file, a report produced with `--json`, or
/// `catalog:NAME[:P1,P2,...]`.
#[derive(Subcommand)]
enum Command {
    /// Full classification report.
    Classify { spec: String },
    /// Admissible LND degrees, or the derivation of one degree.
    Lnd {
        spec: String,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Iterate a derivation on an element, printing every image.
    Apply {
        spec: String,
        #[command(flatten)]
        degree: DegreeArgs,
        #[arg(long)]
        element: String,
        /// Stop after this many applications.
        #[arg(long)]
        times: Option<u64>,
        /// Give up when no iterate vanishes within this many applications.
        #[arg(long, default_value_t = 1000)]
        max_iter: u64,
    },
    /// Kernel generator of a derivation.
    Kernel {
        spec: String,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// The equation `u^k v = P(t)` of a pair; with `--poly P --degree k`,
    /// the spec file of that equation instead.
    Equation {
        spec: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
    },
    /// Makar-Limanov invariant.
    Ml { spec: String },
    /// Miyanishi-Masuda invariant MM_h.
    Mm { spec: String },
    /// SL2 and homogeneous model recognition.
    Recognize { spec: String },
    /// Fibers of the quotient map, the ruling divisor and fixed points.
    Fibers {
        spec: String,
        /// Only the fiber over this point of the input coordinate.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// List the catalog, or print the spec file of one entry.
    Catalog { name: Option<String>, params: Vec<u64> },
    /// Compare the brute-force stabilization check with the admissible degrees.
    Verify {
        spec: String,
        #[arg(long, default_value_t = lnd_window())]
        window: u64,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Kernel generator of the conjugated derivation on `u v = P(t)`.
    Family {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        degree: u64,
    },
}

const fn lnd_window() -> u64 {
    dpd_core::lnd::DEFAULT_WINDOW
}

#[derive(Args, Clone, Copy)]
struct DegreeArgs {
    /// Degree of the derivation; negative degrees act through the reversed grading.
    #[arg(long, allow_negative_numbers = true)]
    degree: Option<i64>,
    /// Negate `--degree`. On elliptic surfaces, picks `X^e·d/dY` over `Y^e·d/dX`.
    #[arg(long)]
    negative: bool,
}

impl DegreeArgs {
    fn signed(&self) -> Option<i64> {
        self.degree.map(|d| if self.negative { -d } else { d })
    }
}

#[derive(Debug)]
pub enum CliError {
    Domain(dpd_core::Error),
    Io(String, std::io::Error),
    /// The brute-force check and the closed form disagree.
    Mismatch(String),
    Usage(String),
    /// A panic caught at the top level.
    Internal(String),
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Io(..) => "IoError",
            CliError::Mismatch(_) => "OracleMismatch",
            CliError::Usage(_) => "Usage",
            CliError::Internal(_) => "Internal",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Mismatch(m) | CliError::Usage(m) | CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<dpd_core::Error> for CliError {
    fn from(e: dpd_core::Error) -> Self {
        CliError::Domain(e)
    }
}

/// Text and JSON renderings of a result; `error` is reported after printing.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub error: Option<CliError>,
}

impl Output {
    pub fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, error: None }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    use commands as c;
    match cli.command {
        Command::Classify { spec } => c::classify(&input::load_spec(&spec)?),
        Command::Lnd { spec, degree } => c::lnd(&input::load_spec(&spec)?, degree),
        Command::Apply {
            spec,
            degree,
            element,
            times,
            max_iter,
        } => c::apply(&input::load_spec(&spec)?, degree, &element, times, max_iter),
        Command::Kernel { spec, degree } => c::kernel(&input::load_spec(&spec)?, degree),
        Command::Equation { spec, poly, degree } => match (spec, poly) {
            (Some(spec), None) => c::equation(&input::load_spec(&spec)?),
            (None, Some(poly)) => {
                let k = degree.ok_or_else(|| CliError::Usage("--poly needs --degree K".into()))?;
                c::from_equation(&poly, k)
            }
            _ => Err(CliError::Usage("give either SPEC or --poly".into())),
        },
        Command::Ml { spec } => c::ml(&input::load_spec(&spec)?),
        Command::Mm { spec } => c::mm(&input::load_spec(&spec)?),
        Command::Recognize { spec } => c::recognize(&input::load_spec(&spec)?),
        Command::Fibers { spec, at } => c::fibers(&input::load_spec(&spec)?, at.as_deref()),
        Command::Catalog { name, params } => c::catalog(name.as_deref(), &params),
        Command::Verify { spec, window, degree } => c::verify(&input::load_spec(&spec)?, window, degree),
        Command::Family { poly, alpha, degree } => c::family(&poly, &alpha, degree),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    // panics surface as an `Internal` error, without a backtrace
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(|| run(cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(CliError::Internal(msg))
    });
    let (out, err) = match result {
        Ok(mut out) => {
            let err = out.error.take();
            (Some(out), err)
        }
        Err(e) => (None, Some(e)),
    };
    if let Some(out) = out {
        if json {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
        } else {
            println!("{}", out.text.trim_end());
        }
    }
    match err {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if matches!(e, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}
