//! `tomolab` command-line front end.
//!
//! Exit codes: 0 when every reported inequality holds, 1 when one is
//! violated beyond its tolerance, 2 on invalid input or a failed
//! computation.

pub mod config;
pub mod dataset;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Result, TomoError};
use crate::inequalities::{sweep_reports, InequalityReport, QUADRATURE_TOL};
use crate::states::{SingleModeState, State};
use crate::tomography::{
    optical_tomogram, reconstruct_density, symplectic_tomogram, ModeSource, ReconstructionSettings,
};
use crate::transforms::RotationAngle;

pub use config::{OutputFormat, RunConfig};
pub use dataset::{validate_measured_tomogram, MeasuredTomogramDataset, DEFAULT_DATA_TOL};

#[derive(Debug, Parser)]
#[command(name = "tomolab", version, about = "Quantum tomograms and entropic uncertainty relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate uncertainty relations for the configured state.
    Check(CommonArgs),
    /// Write optical or symplectic tomograms of a one-mode state.
    Tomogram(CommonArgs),
    /// Reconstruct a grid density matrix from tomograms.
    Reconstruct(CommonArgs),
    /// Check a measured `theta,X,w` tomogram against the relations.
    Validate(CommonArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Measured tomogram CSV with header `theta,X,w`.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance override (inequality margin, or data normalization for validate).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<OutputFormat>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Check(a) => run_check_command(a),
        Command::Tomogram(a) => run_tomogram_command(a),
        Command::Reconstruct(a) => run_reconstruct_command(a),
        Command::Validate(a) => run_validate_command(a),
    }
}

fn load_config(args: &CommonArgs) -> Result<RunConfig> {
    match &args.config {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn require_config(args: &CommonArgs) -> Result<RunConfig> {
    if args.config.is_none() {
        return Err(TomoError::InvalidInput("--config is required".into()));
    }
    load_config(args)
}

fn format_for(args: &CommonArgs, cfg: &RunConfig, out: Option<&Path>) -> OutputFormat {
    args.format
        .or(cfg.output.format)
        .or_else(|| match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("csv") => Some(OutputFormat::Csv),
            _ => None,
        })
        .unwrap_or_default()
}

fn output_path(args: &CommonArgs, cfg: &RunConfig) -> Option<PathBuf> {
    args.out.clone().or_else(|| cfg.output.path.as_ref().map(|p| cfg.base_dir.join(p)))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| TomoError::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(TomoError::InvalidInput(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn emit_reports(args: &CommonArgs, cfg: &RunConfig, reports: &[InequalityReport]) -> Result<i32> {
    let out = output_path(args, cfg);
    let text = match format_for(args, cfg, out.as_deref()) {
        OutputFormat::Json => report::reports_json(reports)?,
        OutputFormat::Csv => report::reports_csv(reports),
    };
    emit(out.as_deref(), &text)?;
    Ok(if reports.iter().all(|r| r.satisfied) { 0 } else { 1 })
}

fn tolerance_override(args: &CommonArgs, cfg: &RunConfig) -> Result<Option<f64>> {
    match args.tol.or(cfg.tolerance) {
        Some(t) if !(t > 0.0) => Err(TomoError::InvalidInput(format!("tolerance must be positive, got {t}"))),
        t => Ok(t),
    }
}

/// `check`: sweep the configured checks over the `θ` and `q` grids.
pub fn run_check_command(args: &CommonArgs) -> Result<i32> {
    let cfg = require_config(args)?;
    let state = cfg.state()?;
    let mut reports = sweep_reports(&state, &cfg.thetas()?, &cfg.q_values()?, &cfg.checks()?)?;
    if let Some(t) = tolerance_override(args, &cfg)? {
        reports = reports.into_iter().map(|r| r.with_tolerance(t)).collect();
    }
    emit_reports(args, &cfg, &reports)
}

fn single_mode(state: &State) -> Result<ModeSource<'_>> {
    match state {
        State::Fock(f) => Ok(ModeSource::Fock(f)),
        State::Grid(g) => Ok(ModeSource::Grid(g)),
        State::Gaussian(g) if g.n_modes() == 1 => Ok(ModeSource::Gaussian(g)),
        State::Product(p) if p.n_modes() == 1 => Ok(match &p.factors()[0] {
            SingleModeState::Fock(f) => ModeSource::Fock(f),
            SingleModeState::Grid(g) => ModeSource::Grid(g),
        }),
        other => Err(TomoError::WrongArity { expected: 1, got: other.n_modes() }),
    }
}

/// Grid implied by the source when the config does not name one.
fn source_grid(cfg: &RunConfig, state: &State) -> Result<crate::grid::ModeGrid> {
    match (&cfg.grid, state) {
        (None, State::Grid(psi)) => Ok(*psi.grid()),
        _ => cfg.grid(),
    }
}

/// `tomogram`: optical slices over the `θ` grid, or symplectic slices at
/// the configured frames.
pub fn run_tomogram_command(args: &CommonArgs) -> Result<i32> {
    let cfg = require_config(args)?;
    let state = cfg.state()?;
    let source = single_mode(&state)?;
    let grid = source_grid(&cfg, &state)?;
    let slices = match cfg.frames()? {
        Some(frames) => frames
            .into_iter()
            .map(|f| Ok(report::TomogramSlice::framed(f, &symplectic_tomogram(source, f, &grid)?)))
            .collect::<Result<Vec<_>>>()?,
        None => cfg
            .thetas()?
            .into_iter()
            .map(|t| Ok(report::TomogramSlice::optical(t, &optical_tomogram(source, RotationAngle::new(t)?, &grid)?)))
            .collect::<Result<Vec<_>>>()?,
    };
    let out = output_path(args, &cfg);
    let text = match format_for(args, &cfg, out.as_deref()) {
        OutputFormat::Json => report::tomogram_json(&slices)?,
        OutputFormat::Csv => report::tomogram_csv(&slices),
    };
    emit(out.as_deref(), &text)?;
    Ok(0)
}

/// `reconstruct`: density matrix on the configured grid from the state's
/// tomograms or from a measured table (`--data`). Writes `x,xp,re,im` and
/// prints trace, smallest eigenvalue and, for pure sources, the fidelity to
/// stderr.
pub fn run_reconstruct_command(args: &CommonArgs) -> Result<i32> {
    let cfg = load_config(args)?;
    let grid = cfg.grid()?;
    let mut settings: ReconstructionSettings = cfg.reconstruction();
    let (rho, reference) = match &args.data {
        Some(path) => {
            let tol = args.tol.unwrap_or(DEFAULT_DATA_TOL);
            let data = MeasuredTomogramDataset::load(path, tol)?;
            settings.optical_grid = *data.angles()[0].density.grid();
            (reconstruct_density(&data.to_table()?, &grid, &settings)?, None)
        }
        None => {
            if args.config.is_none() {
                return Err(TomoError::InvalidInput("reconstruct needs --config or --data".into()));
            }
            let state = cfg.state()?;
            let source = single_mode(&state)?;
            let reference = match source {
                ModeSource::Fock(f) => Some(f.sample(&grid)),
                ModeSource::Gaussian(g) if g.is_pure() => Some(g.wavefunction(&grid)?),
                _ => None,
            };
            (reconstruct_density(&source, &grid, &settings)?, reference)
        }
    };
    let xs = grid.points();
    let mut text = String::from("x,xp,re,im\n");
    for (i, x) in xs.iter().enumerate() {
        for (j, xp) in xs.iter().enumerate() {
            let v = rho.elements()[(i, j)];
            text.push_str(&format!("{x:.16e},{xp:.16e},{:.16e},{:.16e}\n", v.re, v.im));
        }
    }
    emit(output_path(args, &cfg).as_deref(), &text)?;
    let min_eig = rho.eigenvalues().first().copied().unwrap_or(f64::NAN);
    eprintln!("trace: {:.9}", rho.trace());
    eprintln!("min eigenvalue: {min_eig:.3e}");
    if let Some(psi) = reference {
        eprintln!("fidelity: {:.9}", rho.fidelity(&psi)?);
    }
    Ok(0)
}

/// `validate`: Shannon and Rényi checks on measured `(θ, θ + π/2)` pairs.
pub fn run_validate_command(args: &CommonArgs) -> Result<i32> {
    let cfg = load_config(args)?;
    let path = args.data.as_ref().ok_or_else(|| TomoError::InvalidInput("--data is required".into()))?;
    let data_tol = args.tol.unwrap_or(DEFAULT_DATA_TOL);
    let data = MeasuredTomogramDataset::load(path, data_tol)?;
    let pairs: Vec<(f64, f64)> = match &cfg.pairs {
        Some(p) => p.iter().map(|[a, b]| (*a, *b)).collect(),
        None => data.quarter_pairs(),
    };
    let q_grid = match &cfg.q {
        Some(q) => q.values.clone(),
        None => vec![0.1, 0.3, 0.5, 0.7, 0.9],
    };
    let tolerance = cfg.tolerance.unwrap_or(QUADRATURE_TOL);
    let reports = validate_measured_tomogram(&data, &pairs, &q_grid, tolerance)?;
    emit_reports(args, &cfg, &reports)
}
