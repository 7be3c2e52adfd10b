//! Multimode Rényi relation for product and Gaussian two-mode states.

use tomolab::inequalities::{check_multimode_renyi, MultimodeVariant, QParameter};
use tomolab::{FockSuperposition, GaussianStateSpec, MultimodeProductState, State, SymplecticFrame};

fn main() -> tomolab::Result<()> {
    let q = QParameter::new(0.5)?;
    let product = State::Product(MultimodeProductState::new(vec![
        FockSuperposition::vacuum().into(),
        FockSuperposition::number_state(1)?.into(),
    ])?);
    let frames = [SymplecticFrame::polar(1.0, 0.3)?, SymplecticFrame::polar(2.0, 1.2)?];
    for variant in [MultimodeVariant::Optical, MultimodeVariant::Symplectic] {
        let r = check_multimode_renyi(&product, &frames, q, variant)?;
        println!("{:28} lhs {:.6} rhs {:.6} margin {:.3e}", r.name, r.lhs, r.rhs, r.margin);
    }

    // Two-mode squeezed vacuum saturates the bound when the two local
    // oscillator phases are opposite.
    let tmsv = State::Gaussian(GaussianStateSpec::two_mode_squeezed_vacuum(0.8)?);
    for phi in [0.0, 0.5, 1.0] {
        let opposite = [SymplecticFrame::optical(phi), SymplecticFrame::optical(-phi)];
        let same = [SymplecticFrame::optical(phi), SymplecticFrame::optical(phi)];
        let a = check_multimode_renyi(&tmsv, &opposite, q, MultimodeVariant::Optical)?;
        let b = check_multimode_renyi(&tmsv, &same, q, MultimodeVariant::Optical)?;
        println!("tmsv phi={phi}: margin (φ,−φ) {:.2e}, (φ,φ) {:.4}", a.margin, b.margin);
    }
    Ok(())
}
