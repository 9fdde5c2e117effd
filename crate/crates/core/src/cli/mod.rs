//! Command-line front end.
//!
//! Every command renders to markdown, csv or json. Exit codes: 0 when all
//! checks pass, 1 when a tolerance check fails, 2 on a usage error.
//! Global flags can also be set through `ZETA_MOMENTS_*` environment
//! variables; an explicit flag always wins.

mod render;
mod report;
mod suites;

pub use report::{CheckRecord, Record, RunReport};
pub use suites::{identity_checks, random_symval};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::numquad::{QuadConfig, A_DERIV_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "zeta-moments", version, about = "Moments of |Gamma zeta|^2 on the critical line")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Markdown, env = "ZETA_MOMENTS_FORMAT")]
    pub format: OutputFormat,

    /// Significant digits of reported decimals.
    #[arg(long, global = true, default_value_t = 10, env = "ZETA_MOMENTS_DIGITS",
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub digits: u32,

    /// Tolerance for verification suites (default depends on the suite).
    #[arg(long, global = true, env = "ZETA_MOMENTS_TOL")]
    pub tol: Option<f64>,

    /// Quadrature cutoff T.
    #[arg(long = "T", global = true, env = "ZETA_MOMENTS_T")]
    pub cutoff: Option<f64>,

    /// Gauss–Legendre nodes per panel.
    #[arg(long, global = true, env = "ZETA_MOMENTS_PANEL_ORDER")]
    pub panel_order: Option<usize>,

    /// Worker threads for quadrature (0 = automatic).
    #[arg(long, global = true, default_value_t = 0, env = "ZETA_MOMENTS_THREADS")]
    pub threads: usize,

    /// Internal decimal digits for constant evaluation.
    #[arg(long, global = true, default_value_t = 30, env = "ZETA_MOMENTS_PRECISION",
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub precision: u32,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, env = "ZETA_MOMENTS_OUT")]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20_240_601, env = "ZETA_MOMENTS_SEED")]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the integer coefficients T(l, j).
    Tnj {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(2..=64))]
        max_l: u64,
    },
    /// Closed forms and decimal values of the moments M_k, k = 0, 2, ..., 2 max-n.
    Moments {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(0..=20))]
        max_n: u64,
    },
    /// Closed form of A^(k)(1), optionally checked by quadrature.
    Aderiv {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=20))]
        k: u64,
        #[arg(long)]
        numeric: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Quadrature against closed-form moments.
    Moments {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(0..=8))]
        max_n: u64,
    },
    /// Quadrature against closed-form A^(k)(1).
    Aderiv {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(0..=8))]
        max_k: u64,
    },
    /// Cosine-transform identity for G(v).
    Ramanujan {
        #[arg(long = "v", value_delimiter = ',', allow_hyphen_values = true,
              default_values_t = [0.0, 0.1, 0.25, 0.5])]
        v: Vec<f64>,
    },
    /// Cotangent-sum reciprocity at x = h/k.
    Reciprocity {
        #[arg(long, requires = "k")]
        h: Option<u64>,
        #[arg(long, requires = "h")]
        k: Option<u64>,
    },
    /// Exact combinatorial and symbolic identities.
    Identities {
        /// Number of random samples for the ring-axiom checks.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Outcome {
    Pass,
    ToleranceFail,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl Cli {
    pub fn quad_config(&self, default_tol: f64) -> Result<QuadConfig, CliError> {
        let mut cfg = QuadConfig { threads: self.threads, tol: self.tol.unwrap_or(default_tol), ..QuadConfig::default() };
        if let Some(t) = self.cutoff {
            cfg.cutoff = t;
        }
        if let Some(p) = self.panel_order {
            cfg.panel_order = p;
        }
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Output goes to `stdout` or the `--out` file.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, outcome)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).map_err(CliError::from),
                None => stdout.write_all(text.as_bytes()).map_err(CliError::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            match outcome {
                Outcome::Pass => 0,
                Outcome::ToleranceFail => 1,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, Outcome), CliError> {
    let digits = cli.digits;
    match &cli.command {
        Command::Tnj { max_l } => Ok((render::tnj(*max_l as usize, cli.format), Outcome::Pass)),
        Command::Moments { max_n } => {
            let text = render::moments(*max_n as usize, digits, cli.precision, cli.format)?;
            Ok((text, Outcome::Pass))
        }
        Command::Aderiv { k, numeric } => {
            let k = *k as usize;
            if *numeric && k > A_DERIV_MAX {
                return Err(CliError::Usage(format!("--numeric supports k <= {A_DERIV_MAX} (got {k})")));
            }
            let cfg = if *numeric { Some(cli.quad_config(1e-6)?) } else { None };
            render::aderiv(k, cfg.as_ref(), digits, cli.precision, cli.format)
        }
        Command::Verify { which } => {
            let report = suites::run_verify(cli, which)?;
            let outcome = if report.pass { Outcome::Pass } else { Outcome::ToleranceFail };
            Ok((render::run_report(&report, cli.format), outcome))
        }
    }
}
