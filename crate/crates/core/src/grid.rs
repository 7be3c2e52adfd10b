//! Uniform one-dimensional grids and the trapezoid rule used for every
//! integral in the crate.

use crate::error::{Result, TomoError};

/// Uniform grid `x_min, x_min + Δx, …, x_max` over one quadrature variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGrid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

pub const MIN_GRID_POINTS: usize = 16;

impl ModeGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(TomoError::InvalidInput("grid bounds must be finite".into()));
        }
        if x_min >= x_max {
            return Err(TomoError::InvalidInput(format!(
                "grid requires x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_GRID_POINTS {
            return Err(TomoError::InvalidInput(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Symmetric grid `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n_points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.n_points).map(|i| self.x_min + i as f64 * dx).collect()
    }

    /// True when the nodes are mirror images of each other about 0.
    pub fn is_symmetric(&self) -> bool {
        (self.x_min + self.x_max).abs() < 1e-12 * self.x_max.abs().max(1.0)
    }

    /// The same number of nodes over `[λ·x_min, λ·x_max]`, `λ > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(TomoError::InvalidParameter(format!(
                "grid scale factor must be positive, got {factor}"
            )));
        }
        Self::new(self.x_min * factor, self.x_max * factor, self.n_points)
    }

    /// Trapezoid weights `Δx·(½, 1, …, 1, ½)`.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let dx = self.spacing();
        let mut w = vec![dx; self.n_points];
        w[0] *= 0.5;
        w[self.n_points - 1] *= 0.5;
        w
    }

    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n_points);
        let n = values.len();
        let inner: f64 = values[1..n - 1].iter().sum();
        (inner + 0.5 * (values[0] + values[n - 1])) * self.spacing()
    }
}

impl Default for ModeGrid {
    /// `[-8, 8]` with 1024 nodes.
    fn default() -> Self {
        Self { x_min: -8.0, x_max: 8.0, n_points: 1024 }
    }
}
