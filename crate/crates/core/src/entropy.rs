//! Entropy functionals in nats: Shannon and Rényi entropies of sampled
//! densities, position/momentum marginal entropies and the von Neumann
//! entropy of grid density matrices.

use std::fmt;

use crate::error::{Result, TomoError};
use crate::gaussian_oracle;
use crate::grid::ModeGrid;
use crate::states::{wavefunction_marginals, DensityMatrix, SingleModeState, State};
use crate::tomography::{optical_tomogram, symplectic_tomogram, ModeSource, SampledDensity, SymplecticFrame};
use crate::transforms::RotationAngle;

/// Weights at or below this value contribute nothing to `−w ln w`.
const ZERO_WEIGHT: f64 = 1e-300;

/// Eigenvalues in `[−1e-6, 0)` are clipped to zero; anything lower is an error.
const EIGENVALUE_CLIP: f64 = 1e-6;

/// An entropy in nats; never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub fn new(value: f64) -> Self {
        assert!(!value.is_nan(), "entropy evaluated to NaN");
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nats", self.0)
    }
}

impl std::ops::Add for EntropyValue {
    type Output = EntropyValue;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

/// `−∫ w ln w` by the trapezoid rule with `0·ln 0 = 0`; works on tensor grids.
pub fn shannon_entropy(density: &SampledDensity) -> EntropyValue {
    EntropyValue::new(density.integrate(|w| if w > ZERO_WEIGHT { -w * w.ln() } else { 0.0 }))
}

/// `∫ w^α`.
pub fn renyi_integral(density: &SampledDensity, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(TomoError::InvalidParameter(format!("Rényi order must be positive, got {alpha}")));
    }
    Ok(density.integrate(|w| if w > 0.0 { w.powf(alpha) } else { 0.0 }))
}

/// `ln(∫ w^α) / (1 − α)`.
pub fn renyi_entropy(density: &SampledDensity, alpha: f64) -> Result<EntropyValue> {
    if alpha == 1.0 {
        return Err(TomoError::InvalidParameter("α = 1 is the Shannon entropy".into()));
    }
    Ok(EntropyValue::new(renyi_integral(density, alpha)?.ln() / (1.0 - alpha)))
}

/// Position and momentum marginals of a one-mode, non-Gaussian state.
pub(crate) fn one_mode_marginals(state: &State) -> Result<(SampledDensity, SampledDensity)> {
    match state {
        State::Fock(s) => {
            let grid = ModeGrid::default();
            Ok((
                optical_tomogram(s, RotationAngle::zero(), &grid)?,
                optical_tomogram(s, RotationAngle::quarter_turn(), &grid)?,
            ))
        }
        State::Grid(psi) => {
            let (x, p) = wavefunction_marginals(psi)?;
            Ok((SampledDensity::new(vec![*psi.grid()], x)?, SampledDensity::new(vec![*psi.grid()], p)?))
        }
        State::Density(rho) => {
            let grid = *rho.grid();
            let clip = |v: Vec<f64>| v.into_iter().map(|w| w.max(0.0)).collect::<Vec<_>>();
            Ok((
                SampledDensity::new(vec![grid], clip(rho.diagonal()))?,
                SampledDensity::new(vec![grid], clip(rho.momentum_diagonal()))?,
            ))
        }
        State::Gaussian(g) if g.n_modes() == 1 => {
            let grid = ModeGrid::default();
            Ok((
                optical_tomogram(g, RotationAngle::zero(), &grid)?,
                optical_tomogram(g, RotationAngle::quarter_turn(), &grid)?,
            ))
        }
        other => Err(TomoError::WrongArity { expected: 1, got: other.n_modes() }),
    }
}

/// `(S_x, S_p)`: Shannon entropies of the position and momentum marginals.
///
/// Gaussian states use the closed form; product states add the entropies of
/// their factors; everything else integrates on its grid (Fock states on the
/// default grid).
pub fn position_momentum_entropies(state: &State) -> Result<(EntropyValue, EntropyValue)> {
    match state {
        State::Gaussian(g) => Ok(gaussian_oracle::position_momentum_entropies(g)),
        State::Product(p) => p.factors().iter().try_fold(
            (EntropyValue::new(0.0), EntropyValue::new(0.0)),
            |(sx, sp), f| {
                let single = match f {
                    SingleModeState::Fock(s) => State::Fock(s.clone()),
                    SingleModeState::Grid(g) => State::Grid(g.clone()),
                };
                let (x, p) = position_momentum_entropies(&single)?;
                Ok((sx + x, sp + p))
            },
        ),
        _ => {
            let (x, p) = one_mode_marginals(state)?;
            Ok((shannon_entropy(&x), shannon_entropy(&p)))
        }
    }
}

/// `−Σ λ ln λ` over the spectrum of `ρ·Δx`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<EntropyValue> {
    let ev = rho.eigenvalues();
    if let Some(bad) = ev.iter().find(|&&l| l < -EIGENVALUE_CLIP) {
        return Err(TomoError::NonphysicalMatrix(format!("eigenvalue {bad:.3e} below −{EIGENVALUE_CLIP:e}")));
    }
    let s = ev
        .into_iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum();
    Ok(EntropyValue::new(s))
}

/// `S(r cos θ, r sin θ) − ln r` on the default grid scaled by `r`.
///
/// Homogeneity makes this independent of `r`.
pub fn entropy_scaling_offset<'a>(state: impl Into<ModeSource<'a>>, theta: RotationAngle, r: f64) -> Result<f64> {
    entropy_scaling_offset_on(state, theta, r, &ModeGrid::default())
}

/// [`entropy_scaling_offset`] with the tomogram sampled on `base.scaled(r)`.
pub fn entropy_scaling_offset_on<'a>(
    state: impl Into<ModeSource<'a>>,
    theta: RotationAngle,
    r: f64,
    base: &ModeGrid,
) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(TomoError::DegenerateFrame(format!("frame radius must be positive, got {r}")));
    }
    let frame = SymplecticFrame::polar(r, theta.radians())?;
    let w = symplectic_tomogram(state, frame, &base.scaled(r)?)?;
    Ok(shannon_entropy(&w).value() - r.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{FockSuperposition, GaussianStateSpec, GridWavefunction, MultimodeProductState};
    use crate::tomography::multimode_tomogram;
    use std::f64::consts::{E, PI};

    const HALF_LN_PI_E: f64 = 1.0723649429247;

    /// `−∫ w ln w` for `w = (2/√π) X² e^{−X²}`: with `u = X²` distributed as
    /// Gamma(3/2, 1), `S = −ln(2/√π) − ψ(3/2) + 3/2` and
    /// `ψ(3/2) = 2 − γ − 2 ln 2`.
    fn one_photon_entropy_oracle() -> f64 {
        let euler_gamma = 0.577_215_664_901_532_9;
        let digamma_three_halves = 2.0 - euler_gamma - 2.0 * 2f64.ln();
        -(2.0 / PI.sqrt()).ln() - digamma_three_halves + 1.5
    }

    /// Brute-force midpoint rule on a very fine, very wide grid.
    fn brute_force_entropy(w: impl Fn(f64) -> f64) -> f64 {
        let h = 2e-4;
        (-100_000..100_000)
            .map(|i| {
                let v = w((i as f64 + 0.5) * h);
                if v > 0.0 { -v * v.ln() * h } else { 0.0 }
            })
            .sum()
    }

    fn tomo(s: &FockSuperposition, theta: f64) -> SampledDensity {
        optical_tomogram(s, RotationAngle::new(theta).unwrap(), &ModeGrid::default()).unwrap()
    }

    #[test]
    fn oracle_agrees_with_brute_force() {
        let bf = brute_force_entropy(|x| 2.0 / PI.sqrt() * x * x * (-x * x).exp());
        assert!((bf - one_photon_entropy_oracle()).abs() < 1e-8);
        assert!((one_photon_entropy_oracle() - 1.3427278).abs() < 1e-7);
    }

    #[test]
    fn vacuum_and_one_photon_entropies() {
        let s0 = shannon_entropy(&tomo(&FockSuperposition::vacuum(), 0.3)).value();
        assert!((s0 - 0.5 * (PI * E).ln()).abs() < 1e-6);
        assert!((s0 - 1.072364).abs() < 1e-6);
        let s1 = shannon_entropy(&tomo(&FockSuperposition::number_state(1).unwrap(), 0.0)).value();
        assert!((s1 - one_photon_entropy_oracle()).abs() < 1e-5);
    }

    #[test]
    fn two_mode_additivity() {
        let axis = ModeGrid::symmetric(8.0, 256).unwrap();
        let frames = [SymplecticFrame::optical(0.0); 2];
        let vac2 = MultimodeProductState::new(vec![FockSuperposition::vacuum().into(); 2]).unwrap();
        let t = multimode_tomogram(&vac2, &frames, &[axis, axis]).unwrap();
        let s = shannon_entropy(t.density()).value();
        assert!((s - (PI * E).ln()).abs() < 1e-5);
        let mixed = MultimodeProductState::new(vec![
            FockSuperposition::vacuum().into(),
            FockSuperposition::number_state(1).unwrap().into(),
        ])
        .unwrap();
        let t = multimode_tomogram(&mixed, &frames, &[axis, axis]).unwrap();
        let one = optical_tomogram(&FockSuperposition::number_state(1).unwrap(), RotationAngle::zero(), &axis).unwrap();
        let vac = optical_tomogram(&FockSuperposition::vacuum(), RotationAngle::zero(), &axis).unwrap();
        let sum = shannon_entropy(&one).value() + shannon_entropy(&vac).value();
        assert!((shannon_entropy(t.density()).value() - sum).abs() < 1e-6);
    }

    #[test]
    fn renyi_closed_forms() {
        let w = tomo(&FockSuperposition::vacuum(), 0.0);
        assert!((renyi_integral(&w, 2.0).unwrap() - 0.398942).abs() < 1e-6);
        assert!((renyi_integral(&w, 2.0).unwrap() - (2.0 * PI).powf(-0.5)).abs() < 1e-7);
        assert!((renyi_integral(&w, 1.0).unwrap() - 1.0).abs() < 1e-6);
        assert!((renyi_integral(&w, 2.0 / 3.0).unwrap() - PI.powf(1.0 / 6.0) * 1.5f64.sqrt()).abs() < 1e-6);
        assert!(renyi_integral(&w, 0.0).is_err());
        assert!((renyi_entropy(&w, 2.0).unwrap().value() - 0.5 * (2.0 * PI).ln()).abs() < 1e-6);
        assert!((renyi_entropy(&w, 1.001).unwrap().value() - HALF_LN_PI_E).abs() < 2e-3);
        assert!(renyi_entropy(&w, 1.0).is_err());
    }

    #[test]
    fn flat_density_renyi() {
        let grid = ModeGrid::new(0.0, 2.5, 64).unwrap();
        let d = SampledDensity::new(vec![grid], vec![0.4; 64]).unwrap();
        for alpha in [0.3, 0.7, 2.0, 5.0] {
            assert!((renyi_entropy(&d, alpha).unwrap().value() - 2.5f64.ln()).abs() < 1e-12);
        }
        assert!((shannon_entropy(&d).value() - 2.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn position_momentum_closed_forms() {
        let (sx, sp) = position_momentum_entropies(&State::Fock(FockSuperposition::vacuum())).unwrap();
        assert!((sx.value() - 1.072364).abs() < 1e-6 && (sp.value() - 1.072364).abs() < 1e-6);
        let sq = GaussianStateSpec::squeezed_vacuum(1.0).unwrap();
        let (sx, sp) = position_momentum_entropies(&State::Gaussian(sq.clone())).unwrap();
        assert!((sx.value() - (HALF_LN_PI_E + 1.0)).abs() < 1e-12);
        assert!((sp.value() - (HALF_LN_PI_E - 1.0)).abs() < 1e-12);
        // grid route for the same squeezed state
        let grid = ModeGrid::symmetric(14.0, 1024).unwrap();
        let psi = sq.wavefunction(&grid).unwrap();
        let (gx, gp) = position_momentum_entropies(&State::Grid(psi)).unwrap();
        assert!((gx.value() - sx.value()).abs() < 1e-6);
        assert!((gp.value() - sp.value()).abs() < 1e-6);
    }

    #[test]
    fn density_matrix_marginals() {
        let grid = ModeGrid::symmetric(8.0, 160).unwrap();
        let psi = FockSuperposition::from_real(&[0.8, 0.0, 0.6]).unwrap().sample(&grid);
        let (a, b) = position_momentum_entropies(&State::Grid(psi.clone())).unwrap();
        let (c, d) = position_momentum_entropies(&State::Density(DensityMatrix::pure(&psi))).unwrap();
        assert!((a.value() - c.value()).abs() < 1e-8);
        assert!((b.value() - d.value()).abs() < 1e-8);
    }

    #[test]
    fn von_neumann_values() {
        let grid = ModeGrid::symmetric(8.0, 128).unwrap();
        let vac = FockSuperposition::vacuum().sample(&grid);
        let one = FockSuperposition::number_state(1).unwrap().sample(&grid);
        assert!(von_neumann_entropy(&DensityMatrix::pure(&vac)).unwrap().value() <= 1e-6);
        let mix = DensityMatrix::mixture(&[(0.5, vac), (0.5, one)]).unwrap();
        assert!((von_neumann_entropy(&mix).unwrap().value() - 2f64.ln()).abs() < 1e-4);
    }

    #[test]
    fn thermal_mixture_entropy() {
        let grid = ModeGrid::symmetric(10.0, 256).unwrap();
        let ps: Vec<f64> = (0..=30).map(|n| (1.0 - (-1f64).exp()) * (-(n as f64)).exp()).collect();
        let total: f64 = ps.iter().sum();
        let comps: Vec<(f64, GridWavefunction)> = ps
            .iter()
            .enumerate()
            .map(|(n, &p)| (p / total, FockSuperposition::number_state(n).unwrap().sample(&grid)))
            .collect();
        let rho = DensityMatrix::mixture(&comps).unwrap();
        let expected: f64 = ps.iter().map(|p| -p * p.ln()).sum();
        assert!((von_neumann_entropy(&rho).unwrap().value() - expected).abs() < 1e-4);
    }

    #[test]
    fn scaling_offset_is_radius_independent() {
        let vac = FockSuperposition::vacuum();
        let theta = RotationAngle::zero();
        let base = entropy_scaling_offset(&vac, theta, 1.0).unwrap();
        assert!((base - HALF_LN_PI_E).abs() < 1e-6);
        let w = symplectic_tomogram(&vac, SymplecticFrame::new(2.0, 0.0).unwrap(), &ModeGrid::symmetric(16.0, 1024).unwrap())
            .unwrap();
        assert!((shannon_entropy(&w).value() - 1.765512).abs() < 1e-6);
        let one = FockSuperposition::number_state(1).unwrap();
        let th = RotationAngle::new(PI / 3.0).unwrap();
        let vals: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|&r| entropy_scaling_offset(&one, th, r).unwrap()).collect();
        assert!(vals.iter().all(|v| (v - vals[0]).abs() < 1e-5));
        assert!(entropy_scaling_offset(&vac, theta, 0.0).is_err());
    }
}
