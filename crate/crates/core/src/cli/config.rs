//! JSON run configuration.

use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Result, TomoError};
use crate::grid::ModeGrid;
use crate::inequalities::{CheckKind, QParameter};
use crate::states::{FockSuperposition, GaussianStateSpec, GridWavefunction, MultimodeProductState, SingleModeState, State};
use crate::tomography::{ReconstructionSettings, SymplecticFrame};

/// A Fock coefficient written either as a real number or as `[re, im]`.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl From<CoefficientSpec> for Complex64 {
    fn from(c: CoefficientSpec) -> Self {
        match c {
            CoefficientSpec::Real(re) => Complex64::new(re, 0.0),
            CoefficientSpec::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Fock { coefficients: Vec<CoefficientSpec> },
    Gaussian { mean: Vec<f64>, covariance: Vec<Vec<f64>> },
    /// CSV file with header `x,re,im` on a uniform grid; relative paths are
    /// resolved against the config file's directory.
    Grid { path: PathBuf },
    Product { factors: Vec<StateSpec> },
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn to_grid(self) -> Result<ModeGrid> {
        ModeGrid::new(self.xmin, self.xmax, self.points)
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl RangeSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self.count {
            0 => Err(TomoError::InvalidInput("theta grid has count 0".into())),
            1 => Ok(vec![self.start]),
            n => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                Ok((0..n).map(|i| self.start + i as f64 * step).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QSpec {
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}', expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionSpec {
    pub mu_cutoff: Option<f64>,
    pub mu_points: Option<usize>,
}

/// Top-level configuration shared by every subcommand.
#[derive(Debug, Clone, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub state: Option<StateSpec>,
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub checks: Vec<String>,
    pub theta: Option<RangeSpec>,
    pub q: Option<QSpec>,
    /// Frame radius for symplectic checks.
    pub r: Option<f64>,
    /// Explicit `(μ, ν)` frames for the tomogram command.
    pub frames: Option<Vec<[f64; 2]>>,
    /// `(θ, θ + π/2)` pairs for the validate command.
    pub pairs: Option<Vec<[f64; 2]>>,
    pub tolerance: Option<f64>,
    pub reconstruction: Option<ReconstructionSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| TomoError::InvalidInput(format!("config: {e}")))?;
        cfg.base_dir = base_dir.to_path_buf();
        if let Some(t) = cfg.tolerance {
            if !(t > 0.0) {
                return Err(TomoError::InvalidInput(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TomoError::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn grid(&self) -> Result<ModeGrid> {
        self.grid.map_or(Ok(ModeGrid::default()), GridSpec::to_grid)
    }

    pub fn state(&self) -> Result<State> {
        let spec = self.state.as_ref().ok_or_else(|| TomoError::InvalidInput("config has no \"state\"".into()))?;
        build_state(spec, &self.base_dir)
    }

    pub fn thetas(&self) -> Result<Vec<f64>> {
        self.theta.map_or(Ok(vec![0.0]), |t| t.values())
    }

    pub fn q_values(&self) -> Result<Vec<f64>> {
        let values = self.q.as_ref().map_or_else(|| vec![0.5], |q| q.values.clone());
        for &v in &values {
            QParameter::new(v)?;
        }
        Ok(values)
    }

    pub fn radius(&self) -> f64 {
        self.r.unwrap_or(1.0)
    }

    pub fn checks(&self) -> Result<Vec<CheckKind>> {
        if self.checks.is_empty() {
            return Err(TomoError::InvalidInput("config lists no \"checks\"".into()));
        }
        self.checks.iter().map(|c| CheckKind::parse(c, self.radius())).collect()
    }

    pub fn frames(&self) -> Result<Option<Vec<SymplecticFrame>>> {
        self.frames
            .as_ref()
            .map(|fs| fs.iter().map(|[mu, nu]| SymplecticFrame::new(*mu, *nu)).collect())
            .transpose()
    }

    pub fn reconstruction(&self) -> ReconstructionSettings {
        let mut s = ReconstructionSettings::default();
        if let Some(r) = self.reconstruction {
            if let Some(c) = r.mu_cutoff {
                s.mu_cutoff = c;
            }
            if let Some(p) = r.mu_points {
                s.mu_points = p;
            }
        }
        s
    }
}

fn build_single(spec: &StateSpec, base_dir: &Path) -> Result<SingleModeState> {
    match build_state(spec, base_dir)? {
        State::Fock(f) => Ok(f.into()),
        State::Grid(g) => Ok(g.into()),
        _ => Err(TomoError::InvalidInput("product factors must be fock or grid states".into())),
    }
}

pub fn build_state(spec: &StateSpec, base_dir: &Path) -> Result<State> {
    Ok(match spec {
        StateSpec::Fock { coefficients } => {
            State::Fock(FockSuperposition::new(coefficients.iter().map(|&c| c.into()).collect())?)
        }
        StateSpec::Gaussian { mean, covariance } => {
            let n = covariance.len();
            if covariance.iter().any(|row| row.len() != n) {
                return Err(TomoError::InvalidInput("covariance must be a square matrix".into()));
            }
            let flat: Vec<f64> = covariance.iter().flatten().copied().collect();
            State::Gaussian(GaussianStateSpec::new(mean.clone(), DMatrix::from_row_slice(n, n, &flat))?)
        }
        StateSpec::Grid { path } => State::Grid(read_wavefunction(&base_dir.join(path))?),
        StateSpec::Product { factors } => State::Product(MultimodeProductState::new(
            factors.iter().map(|f| build_single(f, base_dir)).collect::<Result<_>>()?,
        )?),
    })
}

/// Reads a `x,re,im` CSV into a wavefunction on the implied uniform grid.
pub fn read_wavefunction(path: &Path) -> Result<GridWavefunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TomoError::InvalidInput(format!("cannot read wavefunction {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next().map(str::trim) {
        Some("x,re,im") => {}
        other => return Err(TomoError::InvalidInput(format!("wavefunction header must be x,re,im, got {other:?}"))),
    }
    let mut xs = Vec::new();
    let mut samples = Vec::new();
    for (i, line) in lines.enumerate() {
        let v = super::dataset::parse_row::<3>(line, i + 2)?;
        xs.push(v[0]);
        samples.push(Complex64::new(v[1], v[2]));
    }
    let grid = super::dataset::uniform_grid(&xs)?;
    GridWavefunction::new(grid, samples)
}
