use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::checks::{run_all, Ctx};
use crate::config::{Format, RunConfig, Suite, TagChoice};
use crate::report::Report;
use crate::suites::plan;

/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when any check fails.
pub const EXIT_FAIL: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "u21", about = "Runs the check suites for U(2,1) over k((t)) and reports pass/fail per check")]
pub struct Cli {
    /// Residue characteristic (odd prime).
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    /// Residue degree: q = p^f.
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long = "K", value_enum, default_value = "both")]
    pub k: TagChoice,
    /// Working precision N (t-adic).
    #[arg(long, default_value_t = 16)]
    pub prec: i32,
    /// Largest |n| for basis functions f_n.
    #[arg(long, default_value_t = 4)]
    pub nmax: i32,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Record wall time per check (makes the report non-deterministic).
    #[arg(long)]
    pub timings: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            p: self.p,
            f: self.f,
            tags: self.k,
            prec: self.prec,
            nmax: self.nmax,
            suite: self.suite,
            seed: self.seed,
        }
    }
}

/// Runs the configured suites and returns the report.
pub fn execute(cfg: &RunConfig, threads: usize, timings: bool) -> Result<Report, crate::config::ConfigError> {
    let tower = cfg.validate()?;
    let ctx = Ctx { tower, prec: cfg.prec, nmax: cfg.nmax, seed: cfg.seed };
    let checks = plan(cfg.suite, &cfg.tags.tags(), &ctx);
    Ok(Report::new(cfg.clone(), run_all(&checks, &ctx, threads, timings)))
}

/// Parses `args`, runs, writes the report and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = match execute(&cli.config(), threads, cli.timings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("u21: configuration error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("u21: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if report.summary.fail > 0 {
        EXIT_FAIL
    } else {
        0
    }
}
