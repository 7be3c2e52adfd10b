//! Entropic uncertainty relations evaluated as reports.
//!
//! Every check returns an [`InequalityReport`] with `margin = lhs − rhs`; a
//! physical state has `margin ≥ −tolerance`, and pure Gaussian states sit at
//! `margin = 0` at their principal-axis angles.
//!
//! The Rényi checks use the exponent pair `α = 1/(1−q)`, `β = 1/(1+q)` with
//! `q ∈ (0, 1)`, so `1/α + 1/β = 2`. Their common bound is
//!
//! ```text
//! (N/2) [ ((q−1)/q) ln(π(1−q)) + ((q+1)/q) ln(π(1+q)) ]
//! ```
//!
//! For frames of radius `r ≠ 1` both Rényi integrals pick up `r^{1−α}` and
//! `r^{1−β}` factors; with the `(q∓1)/q` prefactors each contributes `+ln r`,
//! so the symplectic bound carries an extra `2 Σ_k ln r_k`.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{one_mode_marginals, renyi_integral, shannon_entropy, position_momentum_entropies};
use crate::error::{Result, TomoError};
use crate::gaussian_oracle::{self, gaussian_log_renyi_integral, projected_covariance};
use crate::grid::ModeGrid;
use crate::states::{GaussianStateSpec, State};
use crate::tomography::{multimode_tomogram, symplectic_tomogram, ModeSource, MultimodeSource, SampledDensity, SymplecticFrame};
use crate::transforms::RotationAngle;

/// Tolerance for closed-form (Gaussian) evaluations.
pub const ANALYTIC_TOL: f64 = 1e-6;
/// Tolerance for one-mode grid quadrature.
pub const QUADRATURE_TOL: f64 = 1e-4;
/// Tolerance for tensor-grid quadrature.
pub const TENSOR_TOL: f64 = 1e-3;

/// Per-mode axis used for tensor-grid checks at unit radius.
pub fn default_multimode_axis() -> ModeGrid {
    ModeGrid::symmetric(8.0, 128).expect("valid grid")
}

/// `q ∈ (0, 1)`, fixing `α = 1/(1−q)` and `β = 1/(1+q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParameter(f64);

impl QParameter {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(TomoError::InvalidParameter(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(Self(q))
    }

    pub fn q(self) -> f64 {
        self.0
    }

    pub fn alpha(self) -> f64 {
        1.0 / (1.0 - self.0)
    }

    pub fn beta(self) -> f64 {
        1.0 / (1.0 + self.0)
    }

    /// `(q − 1)/q`, the prefactor of the `α` term.
    fn alpha_weight(self) -> f64 {
        (self.0 - 1.0) / self.0
    }

    /// `(q + 1)/q`, the prefactor of the `β` term.
    fn beta_weight(self) -> f64 {
        (self.0 + 1.0) / self.0
    }
}

/// Outcome of one inequality evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub tolerance: f64,
}

impl InequalityReport {
    pub fn new(name: &str, params: BTreeMap<String, f64>, lhs: f64, rhs: f64, tolerance: f64) -> Result<Self> {
        let margin = lhs - rhs;
        if !lhs.is_finite() || !rhs.is_finite() || params.values().any(|v| !v.is_finite()) {
            return Err(TomoError::InvalidInput(format!("{name}: non-finite report (lhs {lhs}, rhs {rhs})")));
        }
        Ok(Self { name: name.to_string(), params, lhs, rhs, margin, satisfied: margin >= -tolerance, tolerance })
    }

    /// Same values judged against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.satisfied = self.margin >= -tolerance;
        self
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `(N/2)[((q−1)/q) ln(π(1−q)) + ((q+1)/q) ln(π(1+q))]`.
pub fn renyi_rhs(q: QParameter, n_modes: usize) -> f64 {
    let q = q.q();
    0.5 * n_modes as f64 * (((q - 1.0) / q) * (PI * (1.0 - q)).ln() + ((q + 1.0) / q) * (PI * (1.0 + q)).ln())
}

/// `ln(πe)`.
pub fn shannon_bound() -> f64 {
    (PI * E).ln()
}

/// `S_x + S_p ≥ N ln(πe)`.
pub fn check_shannon_position_momentum(state: &State) -> Result<InequalityReport> {
    let n = state.n_modes();
    let (sx, sp) = position_momentum_entropies(state)?;
    let tol = match state {
        State::Gaussian(_) => ANALYTIC_TOL,
        _ => QUADRATURE_TOL,
    };
    InequalityReport::new(
        "shannon_position_momentum",
        params(&[("n_modes", n as f64)]),
        sx.value() + sp.value(),
        n as f64 * shannon_bound(),
        tol,
    )
}

/// One-mode state viewed as a tomogram source with its natural grid.
fn one_mode_source(state: &State) -> Result<(ModeSource<'_>, ModeGrid, f64)> {
    match state {
        State::Fock(s) => Ok((ModeSource::Fock(s), ModeGrid::default(), QUADRATURE_TOL)),
        State::Grid(psi) => Ok((ModeSource::Grid(psi), *psi.grid(), QUADRATURE_TOL)),
        State::Gaussian(g) if g.n_modes() == 1 => Ok((ModeSource::Gaussian(g), ModeGrid::default(), ANALYTIC_TOL)),
        State::Density(_) => Err(TomoError::UnsupportedSource(
            "rotated tomograms of grid density matrices are not available".into(),
        )),
        other => Err(TomoError::WrongArity { expected: 1, got: other.n_modes() }),
    }
}

fn one_mode_gaussian(state: &State) -> Option<&GaussianStateSpec> {
    match state {
        State::Gaussian(g) if g.n_modes() == 1 => Some(g),
        _ => None,
    }
}

/// `S(θ) + S(θ + π/2) ≥ ln(πe)` on optical tomograms.
pub fn check_optical_shannon(state: &State, theta: RotationAngle) -> Result<InequalityReport> {
    let (source, grid, tol) = one_mode_source(state)?;
    let other = theta.plus_quarter();
    let lhs = if let Some(g) = one_mode_gaussian(state) {
        let s = |t: RotationAngle| {
            let proj = projected_covariance(g, &[SymplecticFrame::optical(t.radians())])?;
            Ok::<_, TomoError>(gaussian_oracle::gaussian_shannon_entropy(&proj).value())
        };
        s(theta)? + s(other)?
    } else {
        let w = |t: RotationAngle| symplectic_tomogram(source, SymplecticFrame::optical(t.radians()), &grid);
        return optical_shannon_from_densities(theta.radians(), &w(theta)?, &w(other)?, tol);
    };
    InequalityReport::new("optical_shannon", params(&[("theta", theta.radians())]), lhs, shannon_bound(), tol)
}

/// [`check_optical_shannon`] on given tomograms `w(X, θ)` and `w(X, θ + π/2)`.
pub fn optical_shannon_from_densities(
    theta: f64,
    at_theta: &SampledDensity,
    at_quarter: &SampledDensity,
    tolerance: f64,
) -> Result<InequalityReport> {
    let lhs = shannon_entropy(at_theta).value() + shannon_entropy(at_quarter).value();
    InequalityReport::new("optical_shannon", params(&[("theta", theta)]), lhs, shannon_bound(), tolerance)
}

/// [`check_optical_renyi`] on given tomograms `w(X, θ)` and `w(X, θ + π/2)`.
pub fn optical_renyi_from_densities(
    theta: f64,
    q: QParameter,
    at_theta: &SampledDensity,
    at_quarter: &SampledDensity,
    tolerance: f64,
) -> Result<InequalityReport> {
    let lhs = renyi_lhs(q, log_renyi(at_quarter, q.alpha())?, log_renyi(at_theta, q.beta())?);
    InequalityReport::new("optical_renyi", params(&[("theta", theta), ("q", q.q())]), lhs, renyi_rhs(q, 1), tolerance)
}

/// `((q−1)/q) ln ∫w_α^{α} + ((q+1)/q) ln ∫w_β^{β}` from log-integrals.
fn renyi_lhs(q: QParameter, log_alpha_integral: f64, log_beta_integral: f64) -> f64 {
    q.alpha_weight() * log_alpha_integral + q.beta_weight() * log_beta_integral
}

fn log_renyi(d: &SampledDensity, alpha: f64) -> Result<f64> {
    Ok(renyi_integral(d, alpha)?.ln())
}

/// Rényi relation on the position and momentum marginals, with `α` on the
/// momentum density and `β` on the position density:
///
/// ```text
/// (1/(1−α)) ln ∫ρ(p,p)^α dp + (1/(1−β)) ln ∫ρ(x,x)^β dx
///     ≥ −ln(α/π)/(2(1−α)) − ln(β/π)/(2(1−β))
/// ```
pub fn check_renyi_position_momentum(state: &State, q: QParameter) -> Result<InequalityReport> {
    let (alpha, beta) = (q.alpha(), q.beta());
    let (lhs, tol) = match state {
        State::Gaussian(g) if g.n_modes() == 1 => (
            (gaussian_oracle::marginal_log_renyi_integral(g, true, alpha)?) / (1.0 - alpha)
                + (gaussian_oracle::marginal_log_renyi_integral(g, false, beta)?) / (1.0 - beta),
            ANALYTIC_TOL,
        ),
        State::Gaussian(g) => return Err(TomoError::WrongArity { expected: 1, got: g.n_modes() }),
        State::Product(p) => return Err(TomoError::WrongArity { expected: 1, got: p.n_modes() }),
        _ => {
            let (x, p) = one_mode_marginals(state)?;
            (log_renyi(&p, alpha)? / (1.0 - alpha) + log_renyi(&x, beta)? / (1.0 - beta), QUADRATURE_TOL)
        }
    };
    let rhs = -(alpha / PI).ln() / (2.0 * (1.0 - alpha)) - (beta / PI).ln() / (2.0 * (1.0 - beta));
    InequalityReport::new("renyi_position_momentum", params(&[("q", q.q())]), lhs, rhs, tol)
}

/// Rényi relation on optical tomograms: `α` on `w(X, θ + π/2)`, `β` on `w(X, θ)`.
pub fn check_optical_renyi(state: &State, theta: RotationAngle, q: QParameter) -> Result<InequalityReport> {
    let report = symplectic_renyi(state, 1.0, theta, q)?;
    InequalityReport::new(
        "optical_renyi",
        params(&[("theta", theta.radians()), ("q", q.q())]),
        report.lhs,
        report.rhs,
        report.tolerance,
    )
}

/// Rényi relation on symplectic tomograms at frames `(r cos θ, r sin θ)`
/// (exponent `β`) and `(−r sin θ, r cos θ)` (exponent `α`). The bound
/// includes the `2 ln r` homogeneity shift.
pub fn check_symplectic_renyi(state: &State, r: f64, theta: RotationAngle, q: QParameter) -> Result<InequalityReport> {
    symplectic_renyi(state, r, theta, q)
}

fn symplectic_renyi(state: &State, r: f64, theta: RotationAngle, q: QParameter) -> Result<InequalityReport> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(TomoError::DegenerateFrame(format!("frame radius must be positive, got {r}")));
    }
    let (source, grid, tol) = one_mode_source(state)?;
    let frame = SymplecticFrame::polar(r, theta.radians())?;
    let rotated = frame.quarter_turned();
    let (log_a, log_b) = if let Some(g) = one_mode_gaussian(state) {
        (
            gaussian_log_renyi_integral(&projected_covariance(g, &[rotated])?, q.alpha())?,
            gaussian_log_renyi_integral(&projected_covariance(g, &[frame])?, q.beta())?,
        )
    } else {
        let grid = if r == 1.0 { grid } else { grid.scaled(r)? };
        (
            log_renyi(&symplectic_tomogram(source, rotated, &grid)?, q.alpha())?,
            log_renyi(&symplectic_tomogram(source, frame, &grid)?, q.beta())?,
        )
    };
    let shift = 2.0 * r.ln();
    InequalityReport::new(
        "symplectic_renyi",
        params(&[("theta", theta.radians()), ("q", q.q()), ("r", r), ("radius_shift", shift)]),
        renyi_lhs(q, log_a, log_b),
        renyi_rhs(q, 1) + shift,
        tol,
    )
}

/// Optical (unit frames) or symplectic variant of the multimode Rényi check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MultimodeVariant {
    Optical,
    Symplectic,
}

/// Multimode Rényi relation: `α` on the joint tomogram at the frames turned
/// by `π/2` in every mode, `β` at the given frames, bound
/// `renyi_rhs(q, N) + 2 Σ ln r_k`. Product states are integrated on tensor
/// grids (128 nodes per mode on `[−8r_k, 8r_k]`), Gaussian states in closed
/// form.
pub fn check_multimode_renyi(
    state: &State,
    frames: &[SymplecticFrame],
    q: QParameter,
    variant: MultimodeVariant,
) -> Result<InequalityReport> {
    check_multimode_renyi_on(state, frames, q, variant, &default_multimode_axis())
}

/// [`check_multimode_renyi`] with a caller-chosen unit-radius axis.
pub fn check_multimode_renyi_on(
    state: &State,
    frames: &[SymplecticFrame],
    q: QParameter,
    variant: MultimodeVariant,
    unit_axis: &ModeGrid,
) -> Result<InequalityReport> {
    let source = match state {
        State::Product(p) => MultimodeSource::Product(p),
        State::Gaussian(g) => MultimodeSource::Gaussian(g),
        State::Fock(_) | State::Grid(_) => {
            return Err(TomoError::UnsupportedSource("use a one-mode check or wrap the state in a product".into()))
        }
        State::Density(_) => return Err(TomoError::UnsupportedSource("density matrices have no multimode tomogram".into())),
    };
    let n = source.n_modes();
    if frames.len() != n {
        return Err(TomoError::WrongArity { expected: n, got: frames.len() });
    }
    let frames: Vec<SymplecticFrame> = match variant {
        MultimodeVariant::Optical => frames.iter().map(|f| SymplecticFrame::optical(f.theta())).collect(),
        MultimodeVariant::Symplectic => frames.to_vec(),
    };
    let rotated: Vec<SymplecticFrame> = frames.iter().map(SymplecticFrame::quarter_turned).collect();
    let (log_a, log_b, tol) = match source {
        MultimodeSource::Gaussian(g) => (
            gaussian_log_renyi_integral(&projected_covariance(g, &rotated)?, q.alpha())?,
            gaussian_log_renyi_integral(&projected_covariance(g, &frames)?, q.beta())?,
            ANALYTIC_TOL,
        ),
        MultimodeSource::Product(_) => {
            let axes = frames.iter().map(|f| unit_axis.scaled(f.r())).collect::<Result<Vec<_>>>()?;
            let a = multimode_tomogram(source, &rotated, &axes)?;
            let b = multimode_tomogram(source, &frames, &axes)?;
            (log_renyi(a.density(), q.alpha())?, log_renyi(b.density(), q.beta())?, TENSOR_TOL)
        }
    };
    let shift: f64 = frames.iter().map(|f| 2.0 * f.r().ln()).sum();
    let mut p = params(&[("q", q.q()), ("n_modes", n as f64), ("radius_shift", shift)]);
    for (k, f) in frames.iter().enumerate() {
        p.insert(format!("mu_{}", k + 1), f.mu());
        p.insert(format!("nu_{}", k + 1), f.nu());
    }
    let name = match variant {
        MultimodeVariant::Optical => "multimode_optical_renyi",
        MultimodeVariant::Symplectic => "multimode_symplectic_renyi",
    };
    InequalityReport::new(name, p, renyi_lhs(q, log_a, log_b), renyi_rhs(q, n) + shift, tol)
}

/// A check requested in a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckKind {
    ShannonPositionMomentum,
    OpticalShannon,
    RenyiPositionMomentum,
    OpticalRenyi,
    SymplecticRenyi { r: f64 },
    /// Every mode shares the sweep angle and the radius `r`.
    MultimodeRenyi { variant: MultimodeVariant, r: f64 },
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::ShannonPositionMomentum => "shannon_position_momentum",
            CheckKind::OpticalShannon => "optical_shannon",
            CheckKind::RenyiPositionMomentum => "renyi_position_momentum",
            CheckKind::OpticalRenyi => "optical_renyi",
            CheckKind::SymplecticRenyi { .. } => "symplectic_renyi",
            CheckKind::MultimodeRenyi { variant: MultimodeVariant::Optical, .. } => "multimode_optical_renyi",
            CheckKind::MultimodeRenyi { variant: MultimodeVariant::Symplectic, .. } => "multimode_symplectic_renyi",
        }
    }

    /// Parses a check name; `r` is the radius used by symplectic variants.
    pub fn parse(name: &str, r: f64) -> Result<Self> {
        Ok(match name {
            "shannon_position_momentum" => CheckKind::ShannonPositionMomentum,
            "optical_shannon" => CheckKind::OpticalShannon,
            "renyi_position_momentum" => CheckKind::RenyiPositionMomentum,
            "optical_renyi" => CheckKind::OpticalRenyi,
            "symplectic_renyi" => CheckKind::SymplecticRenyi { r },
            "multimode_optical_renyi" => CheckKind::MultimodeRenyi { variant: MultimodeVariant::Optical, r: 1.0 },
            "multimode_symplectic_renyi" => CheckKind::MultimodeRenyi { variant: MultimodeVariant::Symplectic, r },
            other => return Err(TomoError::InvalidInput(format!("unknown check '{other}'"))),
        })
    }

    fn uses_theta(&self) -> bool {
        !matches!(self, CheckKind::ShannonPositionMomentum | CheckKind::RenyiPositionMomentum)
    }

    fn uses_q(&self) -> bool {
        !matches!(self, CheckKind::ShannonPositionMomentum | CheckKind::OpticalShannon)
    }
}

fn run_check(state: &State, kind: CheckKind, theta: f64, q: f64) -> Result<InequalityReport> {
    let angle = || RotationAngle::new(theta);
    let qp = || QParameter::new(q);
    match kind {
        CheckKind::ShannonPositionMomentum => check_shannon_position_momentum(state),
        CheckKind::OpticalShannon => check_optical_shannon(state, angle()?),
        CheckKind::RenyiPositionMomentum => check_renyi_position_momentum(state, qp()?),
        CheckKind::OpticalRenyi => check_optical_renyi(state, angle()?, qp()?),
        CheckKind::SymplecticRenyi { r } => check_symplectic_renyi(state, r, angle()?, qp()?),
        CheckKind::MultimodeRenyi { variant, r } => {
            let frames = vec![SymplecticFrame::polar(r, theta)?; state.n_modes()];
            check_multimode_renyi(state, &frames, qp()?, variant)
        }
    }
}

/// Runs every requested check over the parameter axes it depends on.
///
/// Order is check-major, then `θ`, then `q`; checks that do not depend on an
/// axis are evaluated once along it. Evaluation runs in parallel.
pub fn sweep_reports(state: &State, theta_grid: &[f64], q_grid: &[f64], checks: &[CheckKind]) -> Result<Vec<InequalityReport>> {
    if theta_grid.is_empty() || q_grid.is_empty() || checks.is_empty() {
        return Err(TomoError::InvalidInput("sweep needs non-empty check, θ and q lists".into()));
    }
    for &q in q_grid {
        QParameter::new(q)?;
    }
    for &t in theta_grid {
        RotationAngle::new(t)?;
    }
    let mut jobs = Vec::new();
    for &kind in checks {
        let thetas: &[f64] = if kind.uses_theta() { theta_grid } else { &theta_grid[..1] };
        let qs: &[f64] = if kind.uses_q() { q_grid } else { &q_grid[..1] };
        for &t in thetas {
            for &q in qs {
                jobs.push((kind, t, q));
            }
        }
    }
    jobs.par_iter()
        .map(|&(kind, t, q)| {
            run_check(state, kind, t, q).map_err(|e| e.in_check(format!("{} at theta={t}, q={q}", kind.name())))
        })
        .collect()
}
