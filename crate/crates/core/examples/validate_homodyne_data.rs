//! Screen homodyne histograms for physical consistency: a noisy vacuum
//! passes, two over-narrow histograms violate the entropic bound.

use std::f64::consts::{FRAC_PI_2, PI};

use tomolab::cli::{validate_measured_tomogram, MeasuredTomogramDataset, DEFAULT_DATA_TOL};
use tomolab::inequalities::QUADRATURE_TOL;
use tomolab::ModeGrid;

fn histogram(theta: f64, var: f64, jitter: f64) -> Vec<[f64; 3]> {
    ModeGrid::default()
        .points()
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let noise = 1.0 + jitter * ((i * 7919 % 101) as f64 / 50.0 - 1.0);
            [theta, x, noise * (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()]
        })
        .collect()
}

fn main() -> tomolab::Result<()> {
    for (label, var, jitter) in [("vacuum with 0.1% noise", 0.5, 1e-3), ("narrow histograms", 0.05, 0.0)] {
        let mut records = histogram(0.0, var, jitter);
        records.extend(histogram(FRAC_PI_2, var, jitter));
        let data = MeasuredTomogramDataset::from_records(records, DEFAULT_DATA_TOL)?;
        let reports = validate_measured_tomogram(&data, &data.quarter_pairs(), &[0.3, 0.7], QUADRATURE_TOL)?;
        println!("{label}:");
        for r in &reports {
            let q = r.params.get("q").map_or(String::new(), |q| format!(" q={q}"));
            println!("  {}{q}: margin {:+.3e} {}", r.name, r.margin, if r.satisfied { "ok" } else { "VIOLATED" });
        }
    }
    Ok(())
}
