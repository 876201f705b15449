use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beamsat_core::experiment::{
    bound_rows, run_sweep, validate, write_csv, ExperimentConfig, Preset, ResultRow,
};
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION_FAILED: u8 = 2;

/// Monte Carlo spectral efficiency of analog and hybrid beamsteering in a
/// multi-user MISO downlink, with the closed-form saturation level and
/// high-SNR approximation.
#[derive(Debug, Parser)]
#[command(name = "beamsat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate the configured grid and write CSV.
    Sweep(Options),
    /// Simulate and compare against the closed-form values at the highest
    /// SNR; exits with status 2 if any reference check fails.
    Validate(Options),
    /// Write only the closed-form rows.
    Bounds(Options),
    /// ABS with two beams, N_t ∈ {16, 32, 128}.
    Figure1(Options),
    /// HBS and the interference-free reference, two beams, N_t ∈ {16, 32, 128}.
    Figure2(Options),
    /// ABS and HBS with three and five beams at N_t = 32.
    Figure3(Options),
    /// ABS and HBS with five beams at N_t = 128.
    Figure4(Options),
}

#[derive(Debug, Args)]
struct Options {
    /// key=value file applied before the flags below.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Start from a built-in scenario (figure1 … figure4).
    #[arg(long)]
    preset: Option<Preset>,
    /// Antenna counts, comma separated.
    #[arg(long, value_name = "LIST")]
    ntx: Option<String>,
    /// Beam counts (= users = RF chains), comma separated.
    #[arg(long, value_name = "LIST")]
    nbeams: Option<String>,
    /// SNR grid in dB: comma list or start:step:stop.
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    snr_db: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Element spacing in wavelengths.
    #[arg(long)]
    spacing: Option<String>,
    /// Any of ABS, HBS, NoInterference, comma separated.
    #[arg(long, value_name = "LIST")]
    schemes: Option<String>,
    /// Include closed-form rows (true/false).
    #[arg(long)]
    bounds: Option<String>,
    /// CSV destination; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads. Results do not depend on it.
    #[arg(long)]
    threads: Option<String>,
}

impl Options {
    fn resolve(&self, preset: Option<Preset>) -> Result<ExperimentConfig, String> {
        let mut cfg = self.preset.or(preset).map(Preset::config).unwrap_or_default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            cfg.apply_key_values(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let flags = [
            ("ntx", &self.ntx),
            ("nbeams", &self.nbeams),
            ("snr-db", &self.snr_db),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("spacing", &self.spacing),
            ("schemes", &self.schemes),
            ("bounds", &self.bounds),
            ("threads", &self.threads),
        ];
        for (key, value) in flags {
            if let Some(value) = value {
                cfg.set(key, value).map_err(|e| format!("--{key}: {e}"))?;
            }
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

fn emit(rows: &[ResultRow], out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&mut w, rows)?;
            w.flush()
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_csv(&mut w, rows)?;
            w.flush()
        }
    }
}

fn closed_form_rows(cfg: &ExperimentConfig) -> beamsat_core::Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for &n_tx in &cfg.n_tx_list {
        for &n_beams in &cfg.n_beams_list {
            rows.extend(bound_rows(cfg, n_tx, n_beams, Some(&cfg.schemes))?);
        }
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<u8, String> {
    let (opts, preset) = match &cli.command {
        Command::Sweep(o) | Command::Validate(o) | Command::Bounds(o) => (o, None),
        Command::Figure1(o) => (o, Some(Preset::Figure1)),
        Command::Figure2(o) => (o, Some(Preset::Figure2)),
        Command::Figure3(o) => (o, Some(Preset::Figure3)),
        Command::Figure4(o) => (o, Some(Preset::Figure4)),
    };
    let cfg = opts.resolve(preset)?;
    let out = opts.out.as_deref();
    let write_err = |e: io::Error| format!("cannot write CSV: {e}");

    match cli.command {
        Command::Validate(_) => {
            let report = validate(&cfg).map_err(|e| e.to_string())?;
            if out.is_some() {
                emit(&report.rows, out).map_err(write_err)?;
            }
            println!("{report}");
            Ok(if report.passed() { 0 } else { EXIT_VALIDATION_FAILED })
        }
        Command::Bounds(_) => {
            let rows = closed_form_rows(&cfg).map_err(|e| e.to_string())?;
            emit(&rows, out).map_err(write_err)?;
            Ok(0)
        }
        _ => {
            let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
            emit(&rows, out).map_err(write_err)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
