//! The symplectic tomogram obeys w(λX, λμ, λν) = w(X, μ, ν)/|λ|.

use tomolab::tomography::symplectic_tomogram;
use tomolab::{FockSuperposition, ModeGrid, SymplecticFrame};

fn main() -> tomolab::Result<()> {
    let state = FockSuperposition::from_real(&[1.0, 1.0])?;
    let grid = ModeGrid::default();
    let frame = SymplecticFrame::new(0.6, -0.9)?;
    let base = symplectic_tomogram(&state, frame, &grid)?;
    for lambda in [0.5, 2.0, 3.0] {
        let scaled = symplectic_tomogram(&state, frame.scaled(lambda)?, &grid.scaled(lambda)?)?;
        let dev = scaled
            .weights()
            .iter()
            .zip(base.weights())
            .map(|(a, b)| (a - b / lambda).abs())
            .fold(0.0, f64::max);
        println!("lambda = {lambda}: max |w(λX, λμ, λν) − w(X, μ, ν)/λ| = {dev:.2e}");
    }
    Ok(())
}
