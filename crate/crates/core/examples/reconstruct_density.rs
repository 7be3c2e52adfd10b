//! Recover a density matrix from symplectic tomograms and compare it with
//! the original state.

use tomolab::entropy::von_neumann_entropy;
use tomolab::tomography::{reconstruct_density, ModeSource, ReconstructionSettings};
use tomolab::{FockSuperposition, ModeGrid};

fn main() -> tomolab::Result<()> {
    let grid = ModeGrid::symmetric(6.0, 65)?;
    let settings = ReconstructionSettings::default();
    for (name, state) in [
        ("vacuum", FockSuperposition::vacuum()),
        ("|1>", FockSuperposition::number_state(1)?),
        ("(|0>+|1>)/√2", FockSuperposition::from_real(&[1.0, 1.0])?),
    ] {
        let rho = reconstruct_density(&ModeSource::Fock(&state), &grid, &settings)?;
        let fidelity = rho.fidelity(&state.sample(&grid))?;
        let min_eig = rho.eigenvalues()[0];
        let s = von_neumann_entropy(&rho)?;
        println!("{name:>14}: fidelity {fidelity:.8}, trace {:.6}, min eigenvalue {min_eig:.1e}, S {:.1e}", rho.trace(), s.value());
    }
    Ok(())
}
