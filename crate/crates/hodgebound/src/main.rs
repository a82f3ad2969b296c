use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hodgebound::commands::{self, BoundsOptions};
use hodgebound::input::InputDocument;
use hodgebound::{parse_tolerance, Format, Suite, SuiteConfig, UsageError, TOL_ENV};
use hodgebound_core::DEFAULT_TOL;

#[derive(Parser)]
#[command(
    name = "hodgebound",
    version,
    about = "Eigenvalue bounds for Hodge Laplacians on submanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate every bound and threshold for a second fundamental form.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        /// Single degree; all of 1..n-1 when omitted.
        #[arg(long)]
        p: Option<usize>,
        /// Constant ambient curvature; overrides the document.
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c_lower: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        c_upper: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        ric_min: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate a Clifford torus S^p(r1) x S^(n-p)(r2) in the unit sphere, r1/r2 = mu.
    Clifford {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "sweep")]
        mu: Option<f64>,
        /// lo:hi:steps, log-uniform; the Einstein value is inserted when in range.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Tabulate the spectrum of a geodesic sphere against the extrinsic bound.
    Sphere {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        mean_curvature: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn tolerance() -> Result<f64, UsageError> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => parse_tolerance(&raw),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOL),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(UsageError::Invalid(format!("{TOL_ENV} is not valid UTF-8")))
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, UsageError> {
    let tol = tolerance()?;
    match cli.command {
        Command::Verify {
            suite,
            seed,
            trials,
            format,
        } => commands::verify(suite, &SuiteConfig { seed, trials, tol }, format, out),
        Command::Bounds {
            input,
            p,
            c,
            c_lower,
            c_upper,
            ric_min,
            format,
        } => {
            let doc = InputDocument::from_path(&input)?;
            let opts = BoundsOptions {
                p,
                c,
                c_lower,
                c_upper,
                ric_min,
            };
            commands::bounds(&doc, &opts, tol, format, out)
        }
        Command::Clifford {
            n,
            p,
            mu,
            sweep,
            format,
        } => {
            let mus = match sweep {
                Some(s) => commands::with_critical(commands::parse_sweep(&s)?, n, p),
                None => vec![mu.unwrap_or(1.0)],
            };
            commands::clifford(n, p, &mus, tol, format, out)
        }
        Command::Sphere {
            n,
            m,
            c,
            mean_curvature,
            format,
        } => commands::sphere(n, m, c, mean_curvature, tol, format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(2)
        }
    }
}
