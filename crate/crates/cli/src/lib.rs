//! Command-line front end: reads ideal files, runs jet-scheme computations
//! and renders the results as tables, JSON or CSV.

pub mod arc;
mod commands;
pub mod document;
pub mod idealfile;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use jetlct_core::groebner::Limits;
use jetlct_core::lct::LctOptions;
use thiserror::Error;

pub use idealfile::{FileError, IdealFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "jetlct", version, about = "Jet-scheme codimensions and log canonical threshold upper bounds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Worker threads for per-level jobs; 0 uses the available parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Abandon a Gröbner computation once an intermediate degree exceeds this.
    #[arg(long, global = true, default_value_t = 40)]
    pub max_degree: u32,
    /// Time budget in seconds for each Gröbner computation.
    #[arg(long, global = true, default_value_t = 300.0)]
    pub time_limit: f64,
}

impl GlobalArgs {
    pub fn options(&self) -> LctOptions {
        let limits = Limits {
            max_degree: self.max_degree,
            time_budget: Duration::from_secs_f64(self.time_limit.max(0.0)),
            ..Limits::default()
        };
        LctOptions { limits, ..LctOptions::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the jet equations g_{l,p} (or their restriction to the origin).
    Jet {
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        fiber_origin: bool,
    },
    /// Tabulate codim(Y_m)/(m+1) for m = 0..=mmax.
    Lct {
        file: PathBuf,
        #[arg(long)]
        mmax: usize,
        #[arg(long)]
        fiber_origin: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Compare origin-fiber dimensions over Q with their reductions mod p.
    Compare {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        mmax: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Order of vanishing of a polynomial arc along the subscheme.
    Ord {
        file: PathBuf,
        /// Assignments such as "x=t^3; y=t^2".
        #[arg(long)]
        arc: String,
        #[arg(long, default_value_t = 10)]
        prec: usize,
    },
    /// Codimension of the contact locus Cont^{>=e}(Y)_m.
    Contact {
        file: PathBuf,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        m: usize,
    },
    /// Compare origin-fiber codimensions of Y and of its hyperplane section.
    Ioa {
        file: PathBuf,
        /// Variable whose vanishing defines the hyperplane.
        #[arg(long)]
        hyperplane: String,
        #[arg(long)]
        mmax: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Read(#[from] idealfile::ReadError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lct(#[from] jetlct_core::lct::LctError),
    #[error(transparent)]
    Jet(#[from] jetlct_core::jets::JetError),
    #[error(transparent)]
    Arc(#[from] arc::ArcError),
    #[error("writing {path}: {message}")]
    Output { path: String, message: String },
    #[error("could not start the worker pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use jetlct_core::groebner::GroebnerError;
        use jetlct_core::lct::LctError;
        match self {
            CliError::Lct(LctError::MonotonicityViolated { .. })
            | CliError::Lct(LctError::Groebner(GroebnerError::SelfCheckFailed(_))) => EXIT_FAIL,
            CliError::Lct(LctError::Groebner(GroebnerError::ResourceExhausted { .. })) => EXIT_EXHAUSTED,
            _ => EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let jobs = pool.current_num_threads();
    let mut buffer = Vec::new();
    let result = pool.install(|| commands::dispatch(cli, jobs, &mut buffer));
    out.write_all(&buffer).map_err(|e| CliError::Output { path: "stdout".into(), message: e.to_string() })?;
    result
}
