//! Forward maps from states to optical, symplectic and multimode tomograms,
//! and the inverse map from tomograms back to a grid density matrix.
//!
//! Symplectic tomograms are obtained from optical ones through homogeneity,
//! `w(X, μ, ν) = w(X/r, θ) / r` with `r = √(μ² + ν²)`, `θ = atan2(ν, μ)`.
//! Rotated amplitudes are evaluated directly at `X/r`, so no interpolation
//! enters the forward map.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::gaussian_oracle::{projected_covariance, ProjectedGaussian};
use crate::grid::ModeGrid;
use crate::states::{
    DensityMatrix, FockSuperposition, GaussianStateSpec, GridWavefunction, MultimodeProductState, SingleModeState,
    MAX_MODES,
};
use crate::transforms::{rotated_amplitude_at, RotationAngle};

/// Allowed normalization error of a one-dimensional tomogram.
pub const NORMALIZATION_TOL_1D: f64 = 1e-6;
/// Allowed normalization error on tensor grids.
pub const NORMALIZATION_TOL_ND: f64 = 1e-5;

/// Reference frame `(μ, ν)` of the observable `μ q̂ + ν p̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticFrame {
    mu: f64,
    nu: f64,
}

impl SymplecticFrame {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(TomoError::InvalidInput(format!("frame ({mu}, {nu}) is not finite")));
        }
        if mu.hypot(nu) == 0.0 {
            return Err(TomoError::DegenerateFrame("frame (0, 0) gives w(X) = δ(X)".into()));
        }
        Ok(Self { mu, nu })
    }

    /// Unit frame `(cos θ, sin θ)`.
    pub fn optical(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { mu: c, nu: s }
    }

    /// `(r cos θ, r sin θ)`.
    pub fn polar(r: f64, theta: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(TomoError::DegenerateFrame(format!("frame radius must be positive, got {r}")));
        }
        let (s, c) = theta.sin_cos();
        Self::new(r * c, r * s)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn r(&self) -> f64 {
        self.mu.hypot(self.nu)
    }

    pub fn theta(&self) -> f64 {
        self.nu.atan2(self.mu)
    }

    pub fn angle(&self) -> RotationAngle {
        RotationAngle::new(self.theta()).expect("finite frame")
    }

    /// `(λμ, λν)`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(lambda * self.mu, lambda * self.nu)
    }

    /// `(−ν, μ)`: the same radius at angle `θ + π/2`.
    pub fn quarter_turned(&self) -> Self {
        Self { mu: -self.nu, nu: self.mu }
    }
}

/// Nonnegative density on a 1-D grid or an N-D tensor grid, normalized by the
/// trapezoid rule. Weights are stored row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledDensity {
    axes: Vec<ModeGrid>,
    weights: Vec<f64>,
}

/// Full tensor-product trapezoid weights, row-major.
pub(crate) fn tensor_weights(axes: &[ModeGrid]) -> Vec<f64> {
    let mut out = vec![1.0];
    for axis in axes {
        let w = axis.trapezoid_weights();
        out = out.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect();
    }
    out
}

impl SampledDensity {
    /// Validates nonnegativity and normalization (1e-6 in 1-D, 1e-5 on tensor
    /// grids), then rescales to unit mass.
    pub fn new(axes: Vec<ModeGrid>, weights: Vec<f64>) -> Result<Self> {
        let tol = if axes.len() == 1 { NORMALIZATION_TOL_1D } else { NORMALIZATION_TOL_ND };
        Ok(Self::with_tolerance(axes, weights, tol)?.0)
    }

    /// As [`Self::new`] with a caller-chosen normalization tolerance; also
    /// returns the mass found before rescaling.
    pub fn with_tolerance(axes: Vec<ModeGrid>, weights: Vec<f64>, tol: f64) -> Result<(Self, f64)> {
        if axes.is_empty() {
            return Err(TomoError::InvalidInput("density needs at least one axis".into()));
        }
        let expected: usize = axes.iter().map(ModeGrid::len).product();
        if weights.len() != expected {
            return Err(TomoError::InvalidInput(format!(
                "{} weights for a grid of {expected} nodes",
                weights.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0) || !w.is_finite()) {
            return Err(TomoError::InvalidInput(format!("density weight {w} at node {i} is not a nonnegative number")));
        }
        let mass: f64 = tensor_weights(&axes).iter().zip(&weights).map(|(t, w)| t * w).sum();
        if !((mass - 1.0).abs() <= tol) {
            return Err(TomoError::Normalization(format!(
                "density integrates to {mass:.9}, tolerance {tol:e}; the grid may truncate the state"
            )));
        }
        let weights = weights.into_iter().map(|w| w / mass).collect();
        Ok((Self { axes, weights }, mass))
    }

    /// Tensor product of 1-D densities, in the order given.
    pub fn tensor_product(factors: &[&SampledDensity]) -> Result<Self> {
        let mut axes = Vec::new();
        let mut weights = vec![1.0];
        for f in factors {
            axes.extend_from_slice(&f.axes);
            weights = weights.iter().flat_map(|a| f.weights.iter().map(move |b| a * b)).collect();
        }
        Self::new(axes, weights)
    }

    pub fn axes(&self) -> &[ModeGrid] {
        &self.axes
    }

    /// First (for 1-D densities, the only) axis.
    pub fn grid(&self) -> &ModeGrid {
        &self.axes[0]
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Trapezoid integral of `f(w(X⃗))` over the grid.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        if self.axes.len() == 1 {
            let vals: Vec<f64> = self.weights.iter().map(|&w| f(w)).collect();
            return self.axes[0].trapezoid(&vals);
        }
        tensor_weights(&self.axes).iter().zip(&self.weights).map(|(t, &w)| t * f(w)).sum()
    }
}

/// A one-mode state whose optical tomogram can be evaluated at any angle and
/// any point.
#[derive(Debug, Clone, Copy)]
pub enum ModeSource<'a> {
    Fock(&'a FockSuperposition),
    Grid(&'a GridWavefunction),
    Gaussian(&'a GaussianStateSpec),
}

impl<'a> From<&'a FockSuperposition> for ModeSource<'a> {
    fn from(s: &'a FockSuperposition) -> Self {
        Self::Fock(s)
    }
}

impl<'a> From<&'a GridWavefunction> for ModeSource<'a> {
    fn from(s: &'a GridWavefunction) -> Self {
        Self::Grid(s)
    }
}

impl<'a> From<&'a GaussianStateSpec> for ModeSource<'a> {
    fn from(s: &'a GaussianStateSpec) -> Self {
        Self::Gaussian(s)
    }
}

impl<'a> From<&'a SingleModeState> for ModeSource<'a> {
    fn from(s: &'a SingleModeState) -> Self {
        match s {
            SingleModeState::Fock(f) => Self::Fock(f),
            SingleModeState::Grid(g) => Self::Grid(g),
        }
    }
}

/// Anything that can report optical tomogram values `w(X, θ)`.
pub trait TomogramProvider: Sync {
    /// `w(X_i, θ)` at each point; values need not be normalized.
    fn optical_values(&self, theta: RotationAngle, points: &[f64]) -> Result<Vec<f64>>;
}

impl TomogramProvider for ModeSource<'_> {
    fn optical_values(&self, theta: RotationAngle, points: &[f64]) -> Result<Vec<f64>> {
        match *self {
            ModeSource::Fock(s) => Ok(points.iter().map(|&x| s.rotated_amplitude_at(theta, x).norm_sqr()).collect()),
            ModeSource::Grid(psi) => Ok(rotated_amplitude_at(psi, theta, points).iter().map(|z| z.norm_sqr()).collect()),
            ModeSource::Gaussian(g) => {
                if g.n_modes() != 1 {
                    return Err(TomoError::WrongArity { expected: 1, got: g.n_modes() });
                }
                let proj = projected_covariance(g, &[SymplecticFrame::optical(theta.radians())])?;
                Ok(points.iter().map(|&x| proj.density_at(&[x])).collect())
            }
        }
    }
}

/// Optical tomogram `w(X, θ)`: distribution of `q̂ cos θ + p̂ sin θ`.
pub fn optical_tomogram<'a>(state: impl Into<ModeSource<'a>>, theta: RotationAngle, grid: &ModeGrid) -> Result<SampledDensity> {
    let values = state.into().optical_values(theta, &grid.points())?;
    SampledDensity::new(vec![*grid], values)
}

/// Symplectic tomogram `w(X, μ, ν)`: distribution of `μ q̂ + ν p̂`.
pub fn symplectic_tomogram<'a>(state: impl Into<ModeSource<'a>>, frame: SymplecticFrame, grid: &ModeGrid) -> Result<SampledDensity> {
    let r = frame.r();
    let scaled: Vec<f64> = grid.points().iter().map(|x| x / r).collect();
    let values = state.into().optical_values(frame.angle(), &scaled)?;
    SampledDensity::new(vec![*grid], values.into_iter().map(|w| w / r).collect())
}

/// Joint tomogram of `N ≤ 3` modes together with its frames.
#[derive(Debug, Clone, PartialEq)]
pub struct MultimodeTomogram {
    frames: Vec<SymplecticFrame>,
    density: SampledDensity,
}

impl MultimodeTomogram {
    pub fn frames(&self) -> &[SymplecticFrame] {
        &self.frames
    }

    pub fn density(&self) -> &SampledDensity {
        &self.density
    }

    pub fn into_density(self) -> SampledDensity {
        self.density
    }
}

/// Multimode states with a joint tomogram: separable products and Gaussians.
#[derive(Debug, Clone, Copy)]
pub enum MultimodeSource<'a> {
    Product(&'a MultimodeProductState),
    Gaussian(&'a GaussianStateSpec),
}

impl<'a> MultimodeSource<'a> {
    pub fn n_modes(&self) -> usize {
        match self {
            Self::Product(p) => p.n_modes(),
            Self::Gaussian(g) => g.n_modes(),
        }
    }
}

impl<'a> From<&'a MultimodeProductState> for MultimodeSource<'a> {
    fn from(s: &'a MultimodeProductState) -> Self {
        Self::Product(s)
    }
}

impl<'a> From<&'a GaussianStateSpec> for MultimodeSource<'a> {
    fn from(s: &'a GaussianStateSpec) -> Self {
        Self::Gaussian(s)
    }
}

fn gaussian_tensor_density(g: &ProjectedGaussian, axes: &[ModeGrid]) -> Vec<f64> {
    let n = g.dim();
    let inv = g.covariance().clone().try_inverse().expect("positive definite");
    let norm = ((TAU).powi(n as i32) * g.determinant()).sqrt().recip();
    let grids: Vec<Vec<f64>> = axes.iter().map(ModeGrid::points).collect();
    let total: usize = axes.iter().map(ModeGrid::len).product();
    (0..total)
        .into_par_iter()
        .map(|mut flat| {
            let mut d = [0.0; MAX_MODES];
            for k in (0..n).rev() {
                let len = grids[k].len();
                d[k] = grids[k][flat % len] - g.mean()[k];
                flat /= len;
            }
            let mut quad = 0.0;
            for i in 0..n {
                for j in 0..n {
                    quad += d[i] * inv[(i, j)] * d[j];
                }
            }
            norm * (-0.5 * quad).exp()
        })
        .collect()
}

/// Joint symplectic tomogram `w(X₁…X_N, μ⃗, ν⃗)` on the tensor grid `axes`.
pub fn multimode_tomogram<'a>(
    state: impl Into<MultimodeSource<'a>>,
    frames: &[SymplecticFrame],
    axes: &[ModeGrid],
) -> Result<MultimodeTomogram> {
    let state = state.into();
    let n = state.n_modes();
    if n > MAX_MODES {
        return Err(TomoError::InvalidState(format!("at most {MAX_MODES} modes on tensor grids, got {n}")));
    }
    if frames.len() != n {
        return Err(TomoError::WrongArity { expected: n, got: frames.len() });
    }
    if axes.len() != n {
        return Err(TomoError::WrongArity { expected: n, got: axes.len() });
    }
    let density = match state {
        MultimodeSource::Product(p) => {
            let factors = p
                .factors()
                .iter()
                .zip(frames)
                .zip(axes)
                .map(|((f, fr), ax)| symplectic_tomogram(f, *fr, ax))
                .collect::<Result<Vec<_>>>()?;
            SampledDensity::tensor_product(&factors.iter().collect::<Vec<_>>())?
        }
        MultimodeSource::Gaussian(g) => {
            let proj = projected_covariance(g, frames)?;
            SampledDensity::new(axes.to_vec(), gaussian_tensor_density(&proj, axes))?
        }
    };
    Ok(MultimodeTomogram { frames: frames.to_vec(), density })
}

/// Optical tomograms known only at a fixed set of angles, e.g. measured
/// homodyne histograms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OpticalTomogramTable {
    entries: Vec<(f64, SampledDensity)>,
}

/// Angle matching tolerance for tabulated tomograms.
pub const ANGLE_TOL: f64 = 1e-6;

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

impl OpticalTomogramTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, theta: f64, density: SampledDensity) -> Result<()> {
        if density.dims() != 1 {
            return Err(TomoError::InvalidInput("optical tomogram table holds 1-D densities".into()));
        }
        if self.get(theta).is_some() {
            return Err(TomoError::InvalidInput(format!("duplicate angle {theta}")));
        }
        self.entries.push((theta, density));
        Ok(())
    }

    pub fn get(&self, theta: f64) -> Option<&SampledDensity> {
        self.entries.iter().find(|(t, _)| angle_distance(*t, theta) <= ANGLE_TOL).map(|(_, d)| d)
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(t, _)| *t)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl TomogramProvider for OpticalTomogramTable {
    /// Linear interpolation between tabulated nodes, zero outside the grid.
    fn optical_values(&self, theta: RotationAngle, points: &[f64]) -> Result<Vec<f64>> {
        let d = self.get(theta.radians()).ok_or_else(|| {
            TomoError::UnsupportedSource(format!("no tomogram recorded at θ = {}", theta.radians()))
        })?;
        let grid = d.grid();
        let w = d.weights();
        Ok(points
            .iter()
            .map(|&x| {
                let t = (x - grid.x_min()) / grid.spacing();
                if t < 0.0 || t > (grid.len() - 1) as f64 {
                    return 0.0;
                }
                let i = (t.floor() as usize).min(grid.len() - 2);
                let f = t - i as f64;
                w[i] * (1.0 - f) + w[i + 1] * f
            })
            .collect())
    }
}

/// Truncation parameters of the inverse map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionSettings {
    pub mu_cutoff: f64,
    pub mu_points: usize,
    /// Grid of the optical variable `Y = X/r` used for the `X` integral.
    pub optical_grid: ModeGrid,
}

impl Default for ReconstructionSettings {
    fn default() -> Self {
        Self { mu_cutoff: 10.0, mu_points: 512, optical_grid: ModeGrid::default() }
    }
}

/// Density matrix from symplectic tomograms:
///
/// ```text
/// ρ(x, x′) = (1/2π) ∫dX ∫dμ w(X, μ, x − x′) exp(i[X − μ(x + x′)/2])
/// ```
///
/// The `X` integral is evaluated as `∫ w(Y, θ) e^{irY} dY` over the optical
/// grid; the `μ` integral uses `mu_points` trapezoid nodes on
/// `[−mu_cutoff, mu_cutoff]`. The result is symmetrized and trace-normalized.
pub fn reconstruct_density(
    source: &dyn TomogramProvider,
    grid: &ModeGrid,
    settings: &ReconstructionSettings,
) -> Result<DensityMatrix> {
    if !(settings.mu_cutoff > 0.0) || !settings.mu_cutoff.is_finite() {
        return Err(TomoError::InvalidParameter(format!("mu_cutoff must be positive, got {}", settings.mu_cutoff)));
    }
    let mu_grid = ModeGrid::symmetric(settings.mu_cutoff, settings.mu_points)
        .map_err(|e| TomoError::InvalidParameter(format!("μ grid: {e}")))?;
    let mus = mu_grid.points();
    let mu_w = mu_grid.trapezoid_weights();
    let m = mus.len();
    let n = grid.len();
    let dx = grid.spacing();
    let ys = settings.optical_grid.points();
    let y_w = settings.optical_grid.trapezoid_weights();

    // C(μ_m, ν_k) = ⟨e^{i(μq̂ + νp̂)}⟩ for ν_k = kΔx, k ≥ 0.
    let chars: Vec<Complex64> = (0..n * m)
        .into_par_iter()
        .map(|idx| {
            let (k, j) = (idx / m, idx % m);
            let (mu, nu) = (mus[j], k as f64 * dx);
            let r = mu.hypot(nu);
            if r == 0.0 {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let theta = RotationAngle::new(nu.atan2(mu))?;
            let w = source.optical_values(theta, &ys)?;
            let mass: f64 = w.iter().zip(&y_w).map(|(a, b)| a * b).sum();
            if !(mass > 0.0) {
                return Err(TomoError::UnsupportedSource(format!("empty tomogram at θ = {}", theta.radians())));
            }
            let acc: Complex64 =
                ys.iter().zip(&w).zip(&y_w).map(|((y, w), t)| Complex64::from_polar(w * t, r * y)).sum();
            Ok(acc / mass)
        })
        .collect::<Result<_>>()?;
    let char_at = |k: isize, j: usize| -> Complex64 {
        if k >= 0 {
            chars[k as usize * m + j]
        } else {
            chars[(-k) as usize * m + (m - 1 - j)].conj()
        }
    };

    let xs = grid.points();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|jx| {
                    let k = i as isize - jx as isize;
                    let s = 0.5 * (xs[i] + xs[jx]);
                    let acc: Complex64 = (0..m)
                        .map(|j| char_at(k, j) * Complex64::from_polar(mu_w[j], -mus[j] * s))
                        .sum();
                    acc / (2.0 * PI)
                })
                .collect()
        })
        .collect();
    let raw = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let herm = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let trace = grid.trapezoid(&(0..n).map(|i| herm[(i, i)].re).collect::<Vec<_>>());
    if !(trace > 0.0) {
        return Err(TomoError::NonphysicalMatrix(format!("reconstructed trace {trace}")));
    }
    DensityMatrix::new(*grid, herm / Complex64::new(trace, 0.0))
}
