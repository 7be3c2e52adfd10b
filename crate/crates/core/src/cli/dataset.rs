//! Measured optical tomograms: `theta,X,w` records grouped by angle.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use crate::error::{Result, TomoError};
use crate::grid::ModeGrid;
use crate::inequalities::{optical_renyi_from_densities, optical_shannon_from_densities, InequalityReport, QParameter};
use crate::tomography::{OpticalTomogramTable, SampledDensity, ANGLE_TOL};

/// Records closer than this in θ belong to the same angle.
const ANGLE_GROUP_TOL: f64 = 1e-9;
/// Relative spacing tolerance for uniform X grids.
const SPACING_TOL: f64 = 1e-9;

/// Default normalization and negativity tolerance for measured data.
pub const DEFAULT_DATA_TOL: f64 = 1e-2;

pub(crate) fn parse_row<const N: usize>(line: &str, lineno: usize) -> Result<[f64; N]> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.len() != N {
        return Err(TomoError::InvalidInput(format!("line {lineno}: expected {N} fields, got {}", fields.len())));
    }
    let mut out = [0.0; N];
    for (o, f) in out.iter_mut().zip(&fields) {
        *o = f
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| TomoError::InvalidInput(format!("line {lineno}: '{f}' is not a finite number")))?;
    }
    Ok(out)
}

/// Grid through sorted, uniformly spaced nodes.
pub(crate) fn uniform_grid(xs: &[f64]) -> Result<ModeGrid> {
    if xs.len() < 2 {
        return Err(TomoError::InvalidInput("a grid needs at least two nodes".into()));
    }
    let n = xs.len();
    let step = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    for (i, pair) in xs.windows(2).enumerate() {
        if ((pair[1] - pair[0]) - step).abs() > SPACING_TOL * step.abs() {
            return Err(TomoError::InvalidInput(format!(
                "X grid is not uniform near node {i} (spacing {} vs {step})",
                pair[1] - pair[0]
            )));
        }
    }
    ModeGrid::new(xs[0], xs[n - 1], n)
}

/// One angle of a measured tomogram after validation.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredAngle {
    pub theta: f64,
    pub density: SampledDensity,
    /// `1 / ∫w` applied to the raw histogram.
    pub renormalization: f64,
}

/// Measured optical tomogram grouped by angle, sorted by θ.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredTomogramDataset {
    angles: Vec<MeasuredAngle>,
}

impl MeasuredTomogramDataset {
    /// Groups raw `(θ, X, w)` records. Values within `tol` below zero are
    /// clipped; lower values and normalization errors beyond `tol` are
    /// rejected.
    pub fn from_records(mut records: Vec<[f64; 3]>, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(TomoError::InvalidInput(format!("data tolerance must be positive, got {tol}")));
        }
        if records.is_empty() {
            return Err(TomoError::InvalidInput("dataset has no records".into()));
        }
        records.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        let mut groups: Vec<Vec<[f64; 3]>> = Vec::new();
        for rec in records {
            match groups.last_mut() {
                Some(g) if (rec[0] - g[0][0]).abs() <= ANGLE_GROUP_TOL => g.push(rec),
                _ => groups.push(vec![rec]),
            }
        }
        let mut angles = Vec::with_capacity(groups.len());
        for g in groups {
            let theta = g[0][0];
            let xs: Vec<f64> = g.iter().map(|r| r[1]).collect();
            let grid = uniform_grid(&xs).map_err(|e| e.in_check(format!("theta={theta}")))?;
            if let Some(r) = g.iter().find(|r| r[2] < -tol) {
                return Err(TomoError::InvalidInput(format!(
                    "negative tomogram value w = {} at theta={theta}, X={}",
                    r[2], r[1]
                )));
            }
            let w: Vec<f64> = g.iter().map(|r| r[2].max(0.0)).collect();
            let (density, mass) = SampledDensity::with_tolerance(vec![grid], w, tol)
                .map_err(|e| e.in_check(format!("theta={theta}")))?;
            angles.push(MeasuredAngle { theta, density, renormalization: 1.0 / mass });
        }
        Ok(Self { angles })
    }

    pub fn from_csv(text: &str, tol: f64) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next().map(|(_, l)| l.trim()) {
            Some("theta,X,w") => {}
            other => return Err(TomoError::InvalidInput(format!("dataset header must be theta,X,w, got {other:?}"))),
        }
        let records = lines.map(|(i, l)| parse_row::<3>(l, i + 1)).collect::<Result<Vec<_>>>()?;
        Self::from_records(records, tol)
    }

    pub fn load(path: &Path, tol: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TomoError::InvalidInput(format!("cannot read dataset {}: {e}", path.display())))?;
        Self::from_csv(&text, tol)
    }

    pub fn angles(&self) -> &[MeasuredAngle] {
        &self.angles
    }

    pub fn find(&self, theta: f64) -> Option<&MeasuredAngle> {
        self.angles.iter().find(|a| (a.theta - theta).abs() <= ANGLE_TOL)
    }

    /// Every `(θ, θ + π/2)` present in the dataset.
    pub fn quarter_pairs(&self) -> Vec<(f64, f64)> {
        self.angles
            .iter()
            .filter_map(|a| self.find(a.theta + FRAC_PI_2).map(|b| (a.theta, b.theta)))
            .collect()
    }

    pub fn to_table(&self) -> Result<OpticalTomogramTable> {
        let mut t = OpticalTomogramTable::new();
        for a in &self.angles {
            t.insert(a.theta, a.density.clone())?;
        }
        Ok(t)
    }
}

/// Shannon and Rényi optical checks for each `(θ, θ + π/2)` pair. Reports
/// carry the renormalization factors applied to both histograms.
pub fn validate_measured_tomogram(
    dataset: &MeasuredTomogramDataset,
    pairs: &[(f64, f64)],
    q_grid: &[f64],
    tolerance: f64,
) -> Result<Vec<InequalityReport>> {
    if pairs.is_empty() {
        return Err(TomoError::InvalidInput("no (theta, theta + pi/2) pair available in the dataset".into()));
    }
    let mut reports = Vec::new();
    for &(a, b) in pairs {
        if ((b - a) - FRAC_PI_2).abs() > ANGLE_TOL {
            return Err(TomoError::InvalidInput(format!("pair ({a}, {b}) is not separated by pi/2")));
        }
        let missing = |t: f64| TomoError::InvalidInput(format!("missing partner angle {t} in dataset"));
        let wa = dataset.find(a).ok_or_else(|| missing(a))?;
        let wb = dataset.find(b).ok_or_else(|| missing(b))?;
        let annotate = |mut r: InequalityReport| {
            r.params.insert("renormalization_theta".into(), wa.renormalization);
            r.params.insert("renormalization_partner".into(), wb.renormalization);
            r
        };
        reports.push(annotate(optical_shannon_from_densities(wa.theta, &wa.density, &wb.density, tolerance)?));
        for &q in q_grid {
            let q = QParameter::new(q)?;
            reports.push(annotate(optical_renyi_from_densities(wa.theta, q, &wa.density, &wb.density, tolerance)?));
        }
    }
    Ok(reports)
}
