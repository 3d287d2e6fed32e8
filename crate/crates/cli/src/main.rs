//! `moqed`: command-line driver.
//!
//! Exit codes: `0` success, `1` validation failure (bad arguments, bad
//! config, failed checks, stability refusals), `2` runtime or IO failure.
//! The worker count is read from `MOQED_THREADS`; output does not depend on it.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moqed::config::SimulationConfig;
use moqed::evolve::{compare_solvers, run_with};
use moqed::field::{energy, helicity_spectrum};
use moqed::io::{self, fmt_f64};
use moqed::verify::verify_suite;
use moqed::Error;

const THREADS_ENV: &str = "MOQED_THREADS";

#[derive(Parser)]
#[command(name = "moqed", version, about = "Photon wave function electrodynamics")]
struct Cli {
    /// Write outputs here instead of the config's `[output] dir`.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algebra, spintensor and spinor-form check suite; prints a JSON report.
    Verify,
    /// Evolve a field and write `timeseries.csv` (plus snapshots if enabled).
    Evolve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Cross-solver convergence table, written to `compare.csv`.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Per-mode helicity spectrum of a snapshot, as CSV on stdout.
    Spectrum { snapshot: PathBuf },
}

enum Failure {
    Validation(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Validation(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(format!("thread pool: {e}")))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Runtime(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn output_dir(cli_dir: &Option<PathBuf>, cfg: &SimulationConfig) -> PathBuf {
    cli_dir.clone().unwrap_or_else(|| cfg.output_dir())
}

fn cmd_verify() -> Result<(), Failure> {
    let report = verify_suite();
    let passed = report.all_passed();
    let json = serde_json::json!({ "passed": passed, "checks": report.checks });
    emit(&(serde_json::to_string_pretty(&json).expect("plain data serializes") + "\n"))?;
    if passed {
        Ok(())
    } else {
        let failed: Vec<String> = report.failures().map(|c| format!("{}: {}", c.id, c.detail)).collect();
        Err(Failure::Validation(format!("failed checks:\n  {}", failed.join("\n  "))))
    }
}

fn cmd_evolve(config: &Path, out: &Option<PathBuf>) -> Result<(), Failure> {
    let cfg = SimulationConfig::from_file(config)?;
    let dir = output_dir(out, &cfg);
    let mut count = 0usize;
    let series = run_with(&cfg, |snap| {
        let path = dir.join(format!("snapshot_{count:06}.json"));
        count += 1;
        io::write_snapshot(&path, snap)
    })?;
    let path = dir.join("timeseries.csv");
    io::write_atomic(&path, &series.to_csv())?;
    eprintln!("wrote {} ({} samples, {count} snapshots)", path.display(), series.samples.len());
    Ok(())
}

fn cmd_compare(config: &Path, out: &Option<PathBuf>) -> Result<(), Failure> {
    let cfg = SimulationConfig::from_file(config)?;
    let table = compare_solvers(&cfg)?;
    let path = output_dir(out, &cfg).join("compare.csv");
    io::write_atomic(&path, &table.to_csv())?;
    eprintln!("wrote {} ({} rows)", path.display(), table.rows.len());
    Ok(())
}

fn cmd_spectrum(snapshot: &Path) -> Result<(), Failure> {
    let snap = io::read_snapshot(snapshot)?;
    let spec = helicity_spectrum(&snap.psi);
    emit(&io::spectrum_csv(&spec))?;
    eprintln!(
        "bins {}, total {}, snapshot energy {}, longitudinal {}",
        spec.bins.len(),
        fmt_f64(spec.total()),
        fmt_f64(energy(&snap.psi)),
        fmt_f64(spec.longitudinal)
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Verify => cmd_verify(),
        Command::Evolve { config } => cmd_evolve(config, &cli.output_dir),
        Command::Compare { config } => cmd_compare(config, &cli.output_dir),
        Command::Spectrum { snapshot } => cmd_spectrum(snapshot),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
