//! Sweep several checks over θ and q and print the reports as CSV.

use tomolab::cli::report::reports_csv;
use tomolab::inequalities::{sweep_reports, CheckKind};
use tomolab::{FockSuperposition, State};

fn main() -> tomolab::Result<()> {
    let state = State::Fock(FockSuperposition::from_real(&[0.8, 0.0, 0.6])?);
    let thetas: Vec<f64> = (0..4).map(|k| k as f64 * 0.4).collect();
    let checks = [
        CheckKind::RenyiPositionMomentum,
        CheckKind::OpticalRenyi,
        CheckKind::SymplecticRenyi { r: 2.0 },
    ];
    let reports = sweep_reports(&state, &thetas, &[0.1, 0.5, 0.9], &checks)?;
    print!("{}", reports_csv(&reports));
    let worst = reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    eprintln!("{} reports, smallest margin {worst:.4}", reports.len());
    Ok(())
}
