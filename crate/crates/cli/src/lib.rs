//! Command line front end for occulab.
//!
//! Parameters come from flags, then an optional flat `key=value` config file, then built-in defaults.

pub mod commands;
pub mod params;

use clap::{Args, Parser, Subcommand, ValueEnum};
use occulab_core::acceptance::run_all;
use occulab_core::error::{Error, Result};
use occulab_core::experiments::ExperimentReport;
use occulab_core::montecarlo::with_threads;
use params::Params;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

pub const THREADS_ENV: &str = "OCCULAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Summary,
}

#[derive(Debug, Parser)]
#[command(name = "occulab", version, about = "Occupation times of Brownian motion outside [-1, 1]")]
pub struct Cli {
    /// Flat key=value file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (falls back to OCCULAB_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Omit the timestamp metadata line.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantities.
    Eval(Knobs),
    /// Laplace transform values and ratios.
    Laplace(Knobs),
    /// Numerical Laplace inversion.
    Invert(Knobs),
    /// Monte Carlo event probabilities.
    Simulate(Knobs),
    /// A named verification suite.
    Experiment {
        name: String,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Run the acceptance suite, optionally restricted to some criteria.
    Selftest { ids: Vec<u8> },
}

/// Every parameter as text; values are parsed once merged with the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Knobs {
    #[arg(long)]
    pub what: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long)]
    pub s: Option<String>,
    /// Horizon or comma-separated horizons.
    #[arg(long = "T")]
    pub t: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub tol: Option<String>,
    #[arg(long)]
    pub max_terms: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im: Option<String>,
    /// `gs`, `bromwich` or `both`.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub precision_bits: Option<String>,
    #[arg(long)]
    pub terms: Option<String>,
    #[arg(long)]
    pub bromwich_shift: Option<String>,
    #[arg(long)]
    pub bromwich_terms: Option<String>,
    #[arg(long)]
    pub euler_terms: Option<String>,
    #[arg(long)]
    pub event: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// `point`, `qsd` or `qsd-stratified`.
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub strata: Option<String>,
    /// Occupation correction: `plain`, `half-step` or `exact`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub chunk: Option<String>,
    #[arg(long)]
    pub early_stop: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub probes: Option<String>,
    #[arg(long)]
    pub max_paths: Option<String>,
    #[arg(long = "fraction-T")]
    pub fraction_t: Option<String>,
    #[arg(long)]
    pub fraction_n: Option<String>,
    #[arg(long)]
    pub s_compare: Option<String>,
    #[arg(long)]
    pub reference_y: Option<String>,
    #[arg(long)]
    pub stratified: Option<String>,
}

impl Knobs {
    pub fn to_params(&self) -> Params {
        let mut p = Params::default();
        let pairs = [
            ("what", &self.what),
            ("y", &self.y),
            ("x", &self.x),
            ("s", &self.s),
            ("T", &self.t),
            ("dt", &self.dt),
            ("n", &self.n),
            ("seed", &self.seed),
            ("tol", &self.tol),
            ("max-terms", &self.max_terms),
            ("lambda", &self.lambda),
            ("lambda-im", &self.lambda_im),
            ("method", &self.method),
            ("precision-bits", &self.precision_bits),
            ("terms", &self.terms),
            ("bromwich-shift", &self.bromwich_shift),
            ("bromwich-terms", &self.bromwich_terms),
            ("euler-terms", &self.euler_terms),
            ("event", &self.event),
            ("eps", &self.eps),
            ("start", &self.start),
            ("strata", &self.strata),
            ("mode", &self.mode),
            ("chunk", &self.chunk),
            ("early-stop", &self.early_stop),
            ("alpha", &self.alpha),
            ("probes", &self.probes),
            ("max-paths", &self.max_paths),
            ("fraction-T", &self.fraction_t),
            ("fraction-n", &self.fraction_n),
            ("s-compare", &self.s_compare),
            ("reference-y", &self.reference_y),
            ("stratified", &self.stratified),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                p.set(k, v.clone());
            }
        }
        p
    }
}

/// The resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub params: Params,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub timestamp: bool,
    pub threads: Option<usize>,
}

fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse().map(Some).map_err(|_| Error::config(format!("{THREADS_ENV}=`{v}` is not a thread count")))
        }
        _ => Ok(None),
    }
}

fn merged(config: &Option<PathBuf>, knobs: &Knobs) -> Result<Params> {
    let mut p = match config {
        Some(path) => Params::from_file(path)?,
        None => Params::default(),
    };
    p.overlay(&knobs.to_params());
    Ok(p)
}

fn timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    format!("{secs}")
}

fn emit(rep: &ExperimentReport, cfg: &RunConfig) -> Result<()> {
    let text = match cfg.format {
        Format::Csv => {
            let ts = cfg.timestamp.then(timestamp);
            rep.to_csv_string(ts.as_deref())
        }
        Format::Summary => rep.summary(),
    };
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::config(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::config(format!("stdout: {e}")))
        }
    }
}

fn selftest(ids: &[u8]) -> i32 {
    let outcomes = run_all(ids, |o| println!("{}", o.line()));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("selftest: {} passed, {} failed", outcomes.len() - failed, failed);
    if failed == 0 {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let threads = resolve_threads(cli.threads)?;
    let (name, knobs) = match &cli.command {
        Command::Selftest { ids } => return with_threads(threads, || selftest(ids)),
        Command::Eval(k) => ("eval", k),
        Command::Laplace(k) => ("laplace", k),
        Command::Invert(k) => ("invert", k),
        Command::Simulate(k) => ("simulate", k),
        Command::Experiment { name, knobs } => (name.as_str(), knobs),
    };
    let cfg = RunConfig {
        command: name.to_string(),
        params: merged(&cli.config, knobs)?,
        output: cli.output.clone(),
        format: cli.format,
        timestamp: !cli.no_timestamp,
        threads,
    };
    let rep = with_threads(threads, || match &cli.command {
        Command::Eval(_) => commands::eval(&cfg.params),
        Command::Laplace(_) => commands::laplace(&cfg.params),
        Command::Invert(_) => commands::invert_cmd(&cfg.params),
        Command::Simulate(_) => commands::simulate(&cfg.params),
        _ => commands::experiment(&cfg.command, &cfg.params),
    })??;
    emit(&rep, &cfg)?;
    Ok(0)
}

/// Runs the front end on `argv` (program name first) and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("occulab: {e}");
            e.exit_code()
        }
    }
}
