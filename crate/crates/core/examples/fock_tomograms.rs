//! Optical tomograms of Fock superpositions, computed along both evaluation
//! paths (Fock phase rule and fractional Fourier kernel on a sampled
//! wavefunction).

use std::f64::consts::PI;

use tomolab::tomography::optical_tomogram;
use tomolab::{FockSuperposition, ModeGrid, RotationAngle};

fn main() -> tomolab::Result<()> {
    let grid = ModeGrid::symmetric(8.0, 1025)?;
    let cat = FockSuperposition::from_real(&[1.0, 0.0, 1.0])?;
    let sampled = cat.sample(&grid);

    println!("{:>8} {:>14} {:>14} {:>10}", "theta", "w(0) fock", "w(0) kernel", "max diff");
    for k in 0..=4 {
        let theta = RotationAngle::new(k as f64 * PI / 8.0)?;
        let a = optical_tomogram(&cat, theta, &grid)?;
        let b = optical_tomogram(&sampled, theta, &grid)?;
        let diff = a.weights().iter().zip(b.weights()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let mid = grid.len() / 2;
        println!("{:8.4} {:14.10} {:14.10} {:10.2e}", theta.radians(), a.weights()[mid], b.weights()[mid], diff);
    }

    // Number states have angle-independent tomograms with nodes at the
    // zeros of their Hermite function.
    let three = FockSuperposition::number_state(3)?;
    let w = optical_tomogram(&three, RotationAngle::new(1.0)?, &grid)?;
    println!("|3>: w(0) = {:.3e}", w.weights()[grid.len() / 2]);
    Ok(())
}
