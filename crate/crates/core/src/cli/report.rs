//! Report and tomogram writers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Result, TomoError};
use crate::inequalities::InequalityReport;
use crate::tomography::{SampledDensity, SymplecticFrame};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    inner: &'a T,
}

fn to_json<T: Serialize>(items: &[T]) -> Result<String> {
    let wrapped: Vec<_> = items.iter().map(|inner| Versioned { schema_version: SCHEMA_VERSION, inner }).collect();
    let mut s = serde_json::to_string_pretty(&wrapped).map_err(|e| TomoError::InvalidInput(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn reports_json(reports: &[InequalityReport]) -> Result<String> {
    to_json(reports)
}

/// `name,params,lhs,rhs,margin,satisfied,tolerance` with `params` as
/// `key=value;key=value`.
pub fn reports_csv(reports: &[InequalityReport]) -> String {
    let mut out = String::from("name,params,lhs,rhs,margin,satisfied,tolerance\n");
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v:.16e}")).collect();
        let _ = writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e},{},{:.16e}",
            r.name,
            params.join(";"),
            r.lhs,
            r.rhs,
            r.margin,
            r.satisfied,
            r.tolerance
        );
    }
    out
}

/// One tomogram slice, labelled either by its optical angle or its frame.
#[derive(Debug, Clone, Serialize)]
pub struct TomogramSlice {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(rename = "X")]
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

impl TomogramSlice {
    pub fn optical(theta: f64, d: &SampledDensity) -> Self {
        Self { theta: Some(theta), mu: None, nu: None, x: d.grid().points(), w: d.weights().to_vec() }
    }

    pub fn framed(frame: SymplecticFrame, d: &SampledDensity) -> Self {
        Self { theta: None, mu: Some(frame.mu()), nu: Some(frame.nu()), x: d.grid().points(), w: d.weights().to_vec() }
    }
}

pub fn tomogram_json(slices: &[TomogramSlice]) -> Result<String> {
    to_json(slices)
}

/// `theta,X,w` for optical slices, `mu,nu,X,w` for framed ones.
pub fn tomogram_csv(slices: &[TomogramSlice]) -> String {
    let framed = slices.first().is_some_and(|s| s.theta.is_none());
    let mut out = String::from(if framed { "mu,nu,X,w\n" } else { "theta,X,w\n" });
    for s in slices {
        for (x, w) in s.x.iter().zip(&s.w) {
            let _ = match (s.theta, s.mu, s.nu) {
                (Some(t), _, _) => writeln!(out, "{t:.16e},{x:.16e},{w:.16e}"),
                (None, Some(mu), Some(nu)) => writeln!(out, "{mu:.16e},{nu:.16e},{x:.16e},{w:.16e}"),
                _ => Ok(()),
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn report() -> InequalityReport {
        let p: BTreeMap<String, f64> = [("q".to_string(), 0.5), ("theta".to_string(), 0.0)].into();
        InequalityReport::new("optical_renyi", p, 2.0, 1.5, 1e-4).unwrap()
    }

    #[test]
    fn csv_layout() {
        let csv = reports_csv(&[report()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("name,params,lhs,rhs,margin,satisfied,tolerance"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "optical_renyi");
        assert_eq!(row[1], "q=5.0000000000000000e-1;theta=0.0000000000000000e0");
        assert_eq!(row[4].parse::<f64>().unwrap(), 0.5);
        assert_eq!(row[5], "true");
    }

    #[test]
    fn json_round_trip() {
        let json = reports_json(&[report()]).unwrap();
        assert!(json.ends_with('\n'));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["schema_version"], 1);
        assert_eq!(v[0]["params"]["q"], 0.5);
        assert_eq!(v[0]["satisfied"], true);
    }
}
