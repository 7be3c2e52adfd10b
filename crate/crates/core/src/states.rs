//! State descriptions: Fock superpositions, Gaussian states given by mean and
//! covariance, sampled wavefunctions, separable multimode products and
//! grid density matrices. Units are dimensionless with `ħ = 1`, so the vacuum
//! has `Var(q) = Var(p) = 1/2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, TomoError};
use crate::grid::ModeGrid;
use crate::transforms::{hermite_functions, momentum_representation, RotationAngle};

/// Highest Fock level a superposition may carry.
pub const MAX_FOCK_LEVEL: usize = 64;

/// Largest number of modes handled on tensor grids.
pub const MAX_MODES: usize = 3;

const GAUSSIAN_SYMMETRY_TOL: f64 = 1e-12;
const UNCERTAINTY_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-9;

/// Pure state `Σ_n c_n |n⟩` with unit-norm coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSuperposition {
    coefficients: Vec<Complex64>,
}

impl FockSuperposition {
    /// Normalizes `coeffs` by their Euclidean norm.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(TomoError::InvalidState("no Fock coefficients given".into()));
        }
        if coeffs.len() > MAX_FOCK_LEVEL + 1 {
            return Err(TomoError::InvalidState(format!(
                "Fock level {} exceeds the cap {MAX_FOCK_LEVEL}",
                coeffs.len() - 1
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(TomoError::InvalidState("non-finite Fock coefficient".into()));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(TomoError::InvalidState("all Fock coefficients are zero".into()));
        }
        let mut coefficients: Vec<Complex64> = coeffs.into_iter().map(|c| c / norm).collect();
        while coefficients.len() > 1 && coefficients.last() == Some(&Complex64::new(0.0, 0.0)) {
            coefficients.pop();
        }
        Ok(Self { coefficients })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn vacuum() -> Self {
        Self { coefficients: vec![Complex64::new(1.0, 0.0)] }
    }

    /// `|n⟩`.
    pub fn number_state(n: usize) -> Result<Self> {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn nmax(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// True when only one Fock level is populated; such states have
    /// angle-independent tomograms.
    pub fn is_number_state(&self) -> bool {
        self.coefficients.iter().filter(|c| c.norm_sqr() > 0.0).count() == 1
    }

    pub fn amplitude_at(&self, x: f64) -> Complex64 {
        hermite_functions(self.nmax(), x)
            .iter()
            .zip(&self.coefficients)
            .map(|(phi, c)| c * phi)
            .sum()
    }

    /// `Σ_n c_n e^{-inθ} φ_n(x)`: the amplitude of the rotated quadrature.
    pub fn rotated_amplitude_at(&self, theta: RotationAngle, x: f64) -> Complex64 {
        let th = theta.radians();
        hermite_functions(self.nmax(), x)
            .iter()
            .zip(&self.coefficients)
            .enumerate()
            .map(|(n, (phi, c))| c * Complex64::from_polar(*phi, -(n as f64) * th))
            .sum()
    }

    /// Samples `ψ(x_i) = Σ c_n φ_n(x_i)` and renormalizes on the grid.
    pub fn sample(&self, grid: &ModeGrid) -> GridWavefunction {
        let samples = grid.points().iter().map(|&x| self.amplitude_at(x)).collect();
        GridWavefunction::new(*grid, samples).expect("Fock superposition samples a nonzero function")
    }

    /// Projects a sampled wavefunction onto `φ_0 … φ_nmax`. Fails when the
    /// projection captures less than `1 − 1e-6` of the norm.
    pub fn from_wavefunction(psi: &GridWavefunction, nmax: usize) -> Result<Self> {
        let nmax = nmax.min(MAX_FOCK_LEVEL);
        let grid = psi.grid();
        let weights = grid.trapezoid_weights();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); nmax + 1];
        for ((x, z), w) in grid.points().into_iter().zip(psi.samples()).zip(&weights) {
            for (c, phi) in coeffs.iter_mut().zip(hermite_functions(nmax, x)) {
                *c += z * phi * *w;
            }
        }
        let captured: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if captured < 1.0 - 1e-6 {
            return Err(TomoError::UnsupportedSource(format!(
                "Fock levels up to {nmax} capture only {captured:.8} of the wavefunction norm"
            )));
        }
        Self::new(coeffs)
    }
}

/// Complex amplitudes on a [`ModeGrid`], normalized by the trapezoid rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    grid: ModeGrid,
    samples: Vec<Complex64>,
}

impl GridWavefunction {
    /// Renormalizes `samples` to unit trapezoid norm.
    pub fn new(grid: ModeGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(TomoError::InvalidInput(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TomoError::InvalidState("non-finite wavefunction sample".into()));
        }
        let norm = grid.trapezoid(&samples.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>());
        if !(norm > 0.0) {
            return Err(TomoError::InvalidState("wavefunction vanishes on the grid".into()));
        }
        let scale = norm.sqrt().recip();
        Ok(Self { grid, samples: samples.into_iter().map(|z| z * scale).collect() })
    }

    pub fn from_fn(grid: ModeGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.points().into_iter().map(f).collect())
    }

    pub fn grid(&self) -> &ModeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `|ψ(x_i)|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm_squared(&self) -> f64 {
        self.grid.trapezoid(&self.probabilities())
    }

    /// `⟨self|other⟩` by the trapezoid rule; both must share a grid.
    pub fn inner(&self, other: &GridWavefunction) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(TomoError::InvalidInput("inner product across different grids".into()));
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .zip(self.grid.trapezoid_weights())
            .map(|((a, b), w)| a.conj() * b * w)
            .sum())
    }
}

/// Gaussian state of `N` modes: mean `(q₁, p₁, …, q_N, p_N)` and symmetric
/// covariance `V` obeying `V + (i/2)Ω ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianStateSpec {
    n_modes: usize,
    mean: DVector<f64>,
    covariance: DMatrix<f64>,
}

/// Standard symplectic form for `n` modes in `(q₁, p₁, …)` ordering.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

impl GaussianStateSpec {
    pub fn new(mean: Vec<f64>, covariance: DMatrix<f64>) -> Result<Self> {
        if mean.is_empty() || !mean.len().is_multiple_of(2) {
            return Err(TomoError::InvalidInput(format!(
                "mean must have even length 2N, got {}",
                mean.len()
            )));
        }
        let dim = mean.len();
        if covariance.nrows() != dim || covariance.ncols() != dim {
            return Err(TomoError::InvalidInput(format!(
                "covariance is {}x{}, expected {dim}x{dim}",
                covariance.nrows(),
                covariance.ncols()
            )));
        }
        if mean.iter().chain(covariance.iter()).any(|v| !v.is_finite()) {
            return Err(TomoError::InvalidInput("non-finite Gaussian parameter".into()));
        }
        let scale = covariance.amax().max(1.0);
        for i in 0..dim {
            for j in 0..i {
                if (covariance[(i, j)] - covariance[(j, i)]).abs() > GAUSSIAN_SYMMETRY_TOL * scale {
                    return Err(TomoError::InvalidInput(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let n_modes = dim / 2;
        let omega = symplectic_form(n_modes);
        let test = DMatrix::from_fn(dim, dim, |i, j| Complex64::new(covariance[(i, j)], 0.5 * omega[(i, j)]));
        let min_eig = test.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < -UNCERTAINTY_TOL {
            return Err(TomoError::NonphysicalState(format!(
                "covariance violates the uncertainty condition: min eigenvalue of V + iΩ/2 is {min_eig:.3e}"
            )));
        }
        Ok(Self { n_modes, mean: DVector::from_vec(mean), covariance })
    }

    /// `N`-mode vacuum, `V = I/2`.
    pub fn vacuum(n_modes: usize) -> Self {
        Self::new(vec![0.0; 2 * n_modes], DMatrix::identity(2 * n_modes, 2 * n_modes) * 0.5)
            .expect("vacuum is physical")
    }

    /// Single-mode squeezed vacuum, `V = diag(e^{2r}, e^{-2r}) / 2`.
    pub fn squeezed_vacuum(r: f64) -> Result<Self> {
        Self::new(
            vec![0.0, 0.0],
            DMatrix::from_diagonal(&DVector::from_vec(vec![(2.0 * r).exp() / 2.0, (-2.0 * r).exp() / 2.0])),
        )
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn two_mode_squeezed_vacuum(r: f64) -> Result<Self> {
        let c = (2.0 * r).cosh() / 2.0;
        let s = (2.0 * r).sinh() / 2.0;
        #[rustfmt::skip]
        let v = DMatrix::from_row_slice(4, 4, &[
            c, 0.0, s, 0.0,
            0.0, c, 0.0, -s,
            s, 0.0, c, 0.0,
            0.0, -s, 0.0, c,
        ]);
        Self::new(vec![0.0; 4], v)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    /// Pure iff `det V = 4^{-N}`.
    pub fn is_pure(&self) -> bool {
        let target = 0.25f64.powi(self.n_modes as i32);
        (self.covariance.determinant() / target - 1.0).abs() <= PURITY_TOL
    }

    /// Position-representation amplitude of a pure one-mode Gaussian,
    /// `ψ(x) ∝ exp(−(A − iB)(x − q̄)²/2 + i p̄ x)` with `A = 1/(2V_qq)` and
    /// `B = V_qp/V_qq`.
    pub fn wavefunction(&self, grid: &ModeGrid) -> Result<GridWavefunction> {
        if self.n_modes != 1 {
            return Err(TomoError::WrongArity { expected: 1, got: self.n_modes });
        }
        if !self.is_pure() {
            return Err(TomoError::UnsupportedSource("mixed Gaussian state has no wavefunction".into()));
        }
        let vqq = self.covariance[(0, 0)];
        let vqp = self.covariance[(0, 1)];
        let (q0, p0) = (self.mean[0], self.mean[1]);
        let width = Complex64::new(1.0 / (2.0 * vqq), -vqp / vqq);
        let norm = (width.re / PI).powf(0.25);
        GridWavefunction::from_fn(*grid, |x| {
            let d = x - q0;
            norm * (-(width * d * d) / 2.0 + Complex64::new(0.0, p0 * x)).exp()
        })
    }
}

/// A single-mode factor of a product state.
#[derive(Debug, Clone, PartialEq)]
pub enum SingleModeState {
    Fock(FockSuperposition),
    Grid(GridWavefunction),
}

impl From<FockSuperposition> for SingleModeState {
    fn from(s: FockSuperposition) -> Self {
        Self::Fock(s)
    }
}

impl From<GridWavefunction> for SingleModeState {
    fn from(s: GridWavefunction) -> Self {
        Self::Grid(s)
    }
}

/// Separable state `ψ₁ ⊗ … ⊗ ψ_N`, `N ≤ 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultimodeProductState {
    factors: Vec<SingleModeState>,
}

impl MultimodeProductState {
    pub fn new(factors: Vec<SingleModeState>) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_MODES {
            return Err(TomoError::InvalidState(format!(
                "product states take 1..={MAX_MODES} modes, got {}",
                factors.len()
            )));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[SingleModeState] {
        &self.factors
    }

    pub fn n_modes(&self) -> usize {
        self.factors.len()
    }
}

const HERMITIAN_TOL: f64 = 1e-8;
const TRACE_TOL: f64 = 1e-6;
const POSITIVITY_TOL: f64 = 1e-6;

/// Grid density matrix `ρ(x_i, x_j)`.
///
/// Invariants: Hermitian within 1e-8, `Σ_i ρ(x_i, x_i) Δx = 1` within 1e-6,
/// and the spectrum of `ρ·Δx` bounded below by −1e-6.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    grid: ModeGrid,
    elements: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(grid: ModeGrid, elements: DMatrix<Complex64>) -> Result<Self> {
        let rho = Self::checked_shape(grid, elements)?;
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -POSITIVITY_TOL {
            return Err(TomoError::NonphysicalMatrix(format!("density matrix has eigenvalue {min:.3e}")));
        }
        Ok(rho)
    }

    /// Shape, Hermiticity and trace checks; positivity is left to callers
    /// that cannot guarantee it structurally.
    fn checked_shape(grid: ModeGrid, elements: DMatrix<Complex64>) -> Result<Self> {
        let n = grid.len();
        if elements.nrows() != n || elements.ncols() != n {
            return Err(TomoError::InvalidInput(format!(
                "density matrix is {}x{}, grid has {n} points",
                elements.nrows(),
                elements.ncols()
            )));
        }
        for i in 0..n {
            for j in 0..=i {
                let d = (elements[(i, j)] - elements[(j, i)].conj()).norm();
                if !(d <= HERMITIAN_TOL) {
                    return Err(TomoError::NonphysicalMatrix(format!("not Hermitian at ({i}, {j})")));
                }
            }
        }
        let rho = Self { grid, elements };
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(TomoError::NonphysicalMatrix(format!("trace is {tr}, expected 1")));
        }
        Ok(rho)
    }

    /// `ρ(x_i, x_j) = ψ(x_i) ψ*(x_j)`.
    pub fn pure(psi: &GridWavefunction) -> Self {
        let s = psi.samples();
        let elements = DMatrix::from_fn(s.len(), s.len(), |i, j| s[i] * s[j].conj());
        Self::checked_shape(*psi.grid(), elements).expect("outer product of a normalized state")
    }

    /// `Σ_k p_k |ψ_k⟩⟨ψ_k|` with nonnegative weights summing to one.
    pub fn mixture(components: &[(f64, GridWavefunction)]) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(TomoError::InvalidInput("empty mixture".into()));
        };
        let grid = *first.grid();
        let total: f64 = components.iter().map(|(p, _)| p).sum();
        if components.iter().any(|(p, _)| !(*p >= 0.0)) || (total - 1.0).abs() > 1e-10 {
            return Err(TomoError::InvalidInput("mixture weights must be nonnegative and sum to 1".into()));
        }
        let n = grid.len();
        let mut elements = DMatrix::zeros(n, n);
        for (p, psi) in components {
            if *psi.grid() != grid {
                return Err(TomoError::InvalidInput("mixture components on different grids".into()));
            }
            let s = psi.samples();
            for j in 0..n {
                let cj = s[j].conj() * *p;
                for i in 0..n {
                    elements[(i, j)] += s[i] * cj;
                }
            }
        }
        Self::checked_shape(grid, elements)
    }

    pub fn grid(&self) -> &ModeGrid {
        &self.grid
    }

    pub fn elements(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    /// `Σ_i ρ(x_i, x_i) Δx` by the trapezoid rule.
    pub fn trace(&self) -> f64 {
        self.grid.trapezoid(&self.diagonal())
    }

    /// Position density `ρ(x_i, x_i)`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.elements[(i, i)].re).collect()
    }

    /// Momentum density `ρ(p, p) = (2π)^{-1} Σ_ij ρ(x_i, x_j) e^{-ip(x_i − x_j)} Δx²`
    /// on the same grid.
    pub fn momentum_diagonal(&self) -> Vec<f64> {
        let xs = self.grid.points();
        let w = self.grid.trapezoid_weights();
        let n = xs.len();
        xs.iter()
            .map(|&p| {
                let v: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(w[j], p * xs[j])).collect();
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let row: Complex64 = (0..n).map(|j| self.elements[(i, j)] * v[j]).sum();
                    acc += v[i].conj() * row;
                }
                acc.re / (2.0 * PI)
            })
            .collect()
    }

    /// Spectrum of `ρ·Δx`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let scaled = self.elements.map(|z| z * self.grid.spacing());
        let mut ev: Vec<f64> = scaled.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `⟨ψ|ρ|ψ⟩` with trapezoid weights.
    pub fn fidelity(&self, psi: &GridWavefunction) -> Result<f64> {
        if *psi.grid() != self.grid {
            return Err(TomoError::InvalidInput("fidelity across different grids".into()));
        }
        let w = self.grid.trapezoid_weights();
        let v: Vec<Complex64> = psi.samples().iter().zip(&w).map(|(z, w)| z * w).collect();
        let n = v.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let row: Complex64 = (0..n).map(|j| self.elements[(i, j)] * v[j]).sum();
            acc += v[i].conj() * row;
        }
        Ok(acc.re)
    }

    /// True when every eigenvalue of `ρ·Δx` except the largest is within `tol` of 0.
    pub fn is_pure_within(&self, tol: f64) -> bool {
        let ev = self.eigenvalues();
        ev.iter().rev().skip(1).all(|l| l.abs() <= tol)
    }
}

/// Any state accepted by the entropy and inequality front ends.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Fock(FockSuperposition),
    Grid(GridWavefunction),
    Gaussian(GaussianStateSpec),
    Product(MultimodeProductState),
    Density(DensityMatrix),
}

impl State {
    pub fn n_modes(&self) -> usize {
        match self {
            State::Gaussian(g) => g.n_modes(),
            State::Product(p) => p.n_modes(),
            _ => 1,
        }
    }
}

macro_rules! state_from {
    ($($ty:ident => $variant:ident),*) => {
        $(impl From<$ty> for State {
            fn from(s: $ty) -> Self {
                State::$variant(s)
            }
        })*
    };
}

state_from!(
    FockSuperposition => Fock,
    GridWavefunction => Grid,
    GaussianStateSpec => Gaussian,
    MultimodeProductState => Product,
    DensityMatrix => Density
);

/// Position/momentum densities of a one-mode wavefunction on its grid.
pub(crate) fn wavefunction_marginals(psi: &GridWavefunction) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok((psi.probabilities(), momentum_representation(psi)?.probabilities()))
}
