//! Tomographic entropy along a ray of frames: S(r cos θ, r sin θ) − ln r
//! does not depend on r.

use tomolab::entropy::entropy_scaling_offset;
use tomolab::{FockSuperposition, RotationAngle};

fn main() -> tomolab::Result<()> {
    let theta = RotationAngle::new(0.7)?;
    for (name, state) in [
        ("vacuum", FockSuperposition::vacuum()),
        ("|1>", FockSuperposition::number_state(1)?),
        ("(|0>+|1>)/√2", FockSuperposition::from_real(&[1.0, 1.0])?),
    ] {
        let offsets: Vec<String> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&r| entropy_scaling_offset(&state, theta, r).map(|v| format!("{v:.9}")))
            .collect::<tomolab::Result<_>>()?;
        println!("{name:>14}: {}", offsets.join("  "));
    }
    Ok(())
}
