//! `slopegeo` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 when a
//! mathematical verdict fails (the output file is still written).

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
pub use commands::Outcome;
pub use config::{Format, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "slopegeo",
    version,
    about = "Slope metrics on surfaces: convexity, geodesics, areas"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Certify strong convexity (sup b < 1/2) over a region.
    Convexity(CommonArgs),
    /// Integrate a unit-speed geodesic and export the trace.
    Geodesic(CommonArgs),
    /// Sample a limacon indicatrix and verify its Okubo norm.
    Indicatrix(CommonArgs),
    /// Compare Riemannian, Busemann-Hausdorff and Holmes-Thompson areas.
    Area(CommonArgs),
    /// Tabulate the volume coefficients f, g, h.
    Volcoeff(CommonArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, clap::Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Exit code for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Io(_)
        | Error::Domain { .. }
        | Error::Range { .. }
        | Error::ZeroVector
        | Error::NotUnitSpeed { .. } => EXIT_CONFIG,
        Error::ConvexityViolation { .. }
        | Error::NonConvexLimacon { .. }
        | Error::DegenerateDenominator { .. }
        | Error::Unattainable { .. }
        | Error::AmbiguousBranch { .. }
        | Error::QuadratureFailure { .. } => EXIT_VERDICT,
    }
}

/// Run one command against a parsed configuration.
pub fn execute(command: &Command, cfg: &RunConfig, format: Format) -> crate::Result<Outcome> {
    match command {
        Command::Convexity(_) => commands::convexity(cfg, format),
        Command::Geodesic(_) => commands::geodesic(cfg, format),
        Command::Indicatrix(_) => commands::indicatrix(cfg, format),
        Command::Area(_) => commands::area(cfg, format),
        Command::Volcoeff(_) => commands::volcoeff(cfg, format),
    }
}

/// Parse arguments, run, write output, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let common = match &cli.command {
        Command::Convexity(a)
        | Command::Geodesic(a)
        | Command::Indicatrix(a)
        | Command::Area(a)
        | Command::Volcoeff(a) => a,
    };
    let cfg = match RunConfig::from_path(&common.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("slopegeo: {e}");
            return EXIT_CONFIG;
        }
    };
    let format = common.format.or(cfg.format).unwrap_or_default();
    let outcome = match execute(&cli.command, &cfg, format) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("slopegeo: {e}");
            return exit_code(&e);
        }
    };
    let written = match &common.out {
        Some(p) => std::fs::write(p, outcome.body.as_bytes()),
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("slopegeo: cannot write output: {e}");
        return EXIT_CONFIG;
    }
    eprintln!("{}", outcome.summary);
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}
