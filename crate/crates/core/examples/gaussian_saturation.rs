//! Gaussian states saturate the Shannon and Rényi relations; the one-photon
//! state does not.

use std::f64::consts::PI;

use tomolab::inequalities::{check_optical_renyi, check_optical_shannon, QParameter};
use tomolab::{FockSuperposition, GaussianStateSpec, RotationAngle, State};

fn main() -> tomolab::Result<()> {
    let states = [
        ("vacuum", State::Fock(FockSuperposition::vacuum())),
        ("squeezed r=1", State::Gaussian(GaussianStateSpec::squeezed_vacuum(1.0)?)),
        ("one photon", State::Fock(FockSuperposition::number_state(1)?)),
    ];
    let q = QParameter::new(0.5)?;
    println!("{:>14} {:>8} {:>14} {:>14}", "state", "theta", "shannon", "renyi q=0.5");
    for (name, state) in &states {
        for k in [0, 1, 2, 4] {
            let theta = RotationAngle::new(k as f64 * PI / 8.0)?;
            let s = check_optical_shannon(state, theta)?;
            let r = check_optical_renyi(state, theta, q)?;
            println!("{name:>14} {:8.4} {:14.3e} {:14.3e}", theta.radians(), s.margin, r.margin);
        }
    }
    Ok(())
}
