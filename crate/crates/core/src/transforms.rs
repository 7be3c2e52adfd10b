//! Hermite functions and the quadrature rotation.
//!
//! A rotation by `θ` in phase space maps the distribution of `q̂` onto the
//! distribution of `q̂ cos θ + p̂ sin θ`. On the Fock basis it acts as
//! `φ_n ↦ e^{-inθ} φ_n`; on sampled amplitudes it is the fractional Fourier
//! transform with kernel
//!
//! ```text
//! K_θ(X, y) = (2πi sin θ)^{-1/2} exp(i[(X² + y²) cos θ − 2Xy] / (2 sin θ))
//! ```
//!
//! which equals the Fock-basis action up to the global phase `e^{-iθ/2}`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, TomoError};
use crate::grid::ModeGrid;
use crate::states::GridWavefunction;

/// Largest Hermite order accepted by [`hermite_function`].
pub const MAX_HERMITE_ORDER: usize = 200;

/// Below this `|sin θ|` the rotation is treated as identity or parity.
pub const SINGULAR_ANGLE_THRESHOLD: f64 = 1e-6;

/// Below this `|sin θ|` the kernel is applied as two well-conditioned steps
/// through a quarter turn; the direct chirp would alias on the grid.
const DIRECT_KERNEL_MIN_SIN: f64 = 0.5;

/// Allowed drift of the trapezoid norm before renormalization.
pub const NORM_DRIFT_TOLERANCE: f64 = 1e-8;

/// Phase-space rotation angle in radians, reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle(f64);

impl RotationAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(TomoError::InvalidInput(format!("rotation angle must be finite, got {theta}")));
        }
        Ok(Self(theta.rem_euclid(TAU)))
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    pub fn quarter_turn() -> Self {
        Self(FRAC_PI_2)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `θ + π/2`, reduced.
    pub fn plus_quarter(self) -> Self {
        self + Self::quarter_turn()
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    fn is_identity(self) -> bool {
        self.sin().abs() < SINGULAR_ANGLE_THRESHOLD && self.cos() > 0.0
    }

    fn is_parity(self) -> bool {
        self.sin().abs() < SINGULAR_ANGLE_THRESHOLD && self.cos() < 0.0
    }
}

/// `θ + φ`, reduced.
impl std::ops::Add for RotationAngle {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self((self.0 + other.0).rem_euclid(TAU))
    }
}

impl TryFrom<f64> for RotationAngle {
    type Error = TomoError;

    fn try_from(theta: f64) -> Result<Self> {
        Self::new(theta)
    }
}

/// `φ_n(x)`, the L²-normalized Hermite function of order `n ≤ 200`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    assert!(n <= MAX_HERMITE_ORDER, "Hermite order {n} exceeds {MAX_HERMITE_ORDER}");
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `[φ_0(x), …, φ_nmax(x)]` from a single pass of the recurrence.
pub fn hermite_functions(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if nmax == 0 {
        return out;
    }
    out.push(2f64.sqrt() * x * out[0]);
    for k in 1..nmax {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `Σ_j g_j e^{-i·scale·X·y_j}` for every target `X`, with `y_j` the grid
/// nodes. The phase factor is advanced by recurrence and re-seeded every
/// 128 nodes.
fn chirp_sum(grid: &ModeGrid, g: &[Complex64], scale: f64, targets: &[f64]) -> Vec<Complex64> {
    let y0 = grid.x_min();
    let dy = grid.spacing();
    targets
        .par_iter()
        .map(|&x| {
            let k = scale * x;
            let step = Complex64::from_polar(1.0, -k * dy);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut phase = Complex64::new(0.0, 0.0);
            for (j, gj) in g.iter().enumerate() {
                if j % 128 == 0 {
                    phase = Complex64::from_polar(1.0, -k * (y0 + j as f64 * dy));
                } else {
                    phase *= step;
                }
                acc += gj * phase;
            }
            acc
        })
        .collect()
}

/// Fractional-Fourier kernel applied by trapezoid quadrature; requires
/// `|sin θ|` well away from zero.
fn apply_kernel(grid: &ModeGrid, samples: &[Complex64], theta: f64, targets: &[f64]) -> Vec<Complex64> {
    let (s, c) = theta.sin_cos();
    let chirp = c / (2.0 * s);
    let prefactor = Complex64::new(0.0, TAU * s).sqrt().inv();
    let weights = grid.trapezoid_weights();
    let g: Vec<Complex64> = grid
        .points()
        .iter()
        .zip(samples)
        .zip(&weights)
        .map(|((&y, &psi), &w)| psi * Complex64::from_polar(w, chirp * y * y))
        .collect();
    chirp_sum(grid, &g, 1.0 / s, targets)
        .into_iter()
        .zip(targets)
        .map(|(acc, &x)| prefactor * Complex64::from_polar(1.0, chirp * x * x) * acc)
        .collect()
}

/// Rotated amplitude `(U_θ ψ)(X)` at arbitrary points, without
/// renormalization. Exact identity and parity shortcuts are left to
/// [`quadrature_rotate`], which knows the targets are grid nodes.
pub(crate) fn rotated_amplitude_at(psi: &GridWavefunction, theta: RotationAngle, targets: &[f64]) -> Vec<Complex64> {
    let grid = psi.grid();
    let th = theta.radians();
    if th.sin().abs() >= DIRECT_KERNEL_MIN_SIN {
        return apply_kernel(grid, psi.samples(), th, targets);
    }
    let nodes = grid.points();
    let quarter = apply_kernel(grid, psi.samples(), FRAC_PI_2, &nodes);
    apply_kernel(grid, &quarter, th - FRAC_PI_2, targets)
}

fn renormalized(grid: ModeGrid, samples: Vec<Complex64>, what: &str) -> Result<GridWavefunction> {
    let norm: f64 = grid.trapezoid(&samples.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>());
    if (norm - 1.0).abs() > NORM_DRIFT_TOLERANCE {
        return Err(TomoError::TransformAccuracy(format!(
            "{what} changed the norm to {norm:.3e}; widen or refine the grid"
        )));
    }
    GridWavefunction::new(grid, samples)
}

/// Amplitude whose squared modulus is the distribution of
/// `q̂ cos θ + p̂ sin θ`, on the input grid.
pub fn quadrature_rotate(psi: &GridWavefunction, theta: RotationAngle) -> Result<GridWavefunction> {
    let grid = *psi.grid();
    if theta.is_identity() {
        return Ok(psi.clone());
    }
    if theta.is_parity() && grid.is_symmetric() {
        let reflected: Vec<Complex64> = psi.samples().iter().rev().copied().collect();
        return GridWavefunction::new(grid, reflected);
    }
    let out = rotated_amplitude_at(psi, theta, &grid.points());
    renormalized(grid, out, "quadrature rotation")
}

/// `ψ̃(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx`, sampled on the input grid.
pub fn momentum_representation(psi: &GridWavefunction) -> Result<GridWavefunction> {
    let grid = *psi.grid();
    let weights = grid.trapezoid_weights();
    let g: Vec<Complex64> = psi.samples().iter().zip(&weights).map(|(z, w)| z * w).collect();
    let norm = (TAU).sqrt().recip();
    let out: Vec<Complex64> = chirp_sum(&grid, &g, 1.0, &grid.points()).into_iter().map(|z| z * norm).collect();
    renormalized(grid, out, "momentum transform")
}
