//! Evaluation grids shared by the baseline, order and theorem checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_POINT_COUNT: usize = 1024;
pub const DEFAULT_COVERAGE: (f64, f64) = (1e-4, 1.0 - 1e-4);
pub const DEFAULT_SLACK: f64 = 1e-12;

/// Quantile-spaced grid description.
///
/// Points are placed at evenly spaced probabilities inside `coverage` and
/// mapped through the quantile function of whatever distribution the grid is
/// built for, so they concentrate where the mass lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub point_count: usize,
    pub coverage: (f64, f64),
    pub slack: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            point_count: DEFAULT_POINT_COUNT,
            coverage: DEFAULT_COVERAGE,
            slack: DEFAULT_SLACK,
        }
    }
}

impl GridSpec {
    pub fn new(point_count: usize, coverage: (f64, f64), slack: f64) -> Result<Self> {
        let spec = Self {
            point_count,
            coverage,
            slack,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_points(point_count: usize) -> Result<Self> {
        Self::new(point_count, DEFAULT_COVERAGE, DEFAULT_SLACK)
    }

    pub fn validate(&self) -> Result<()> {
        if self.point_count < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid point_count must be at least 16, got {}",
                self.point_count
            )));
        }
        let (lo, hi) = self.coverage;
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "grid coverage must satisfy 0 < lower < upper < 1, got ({lo}, {hi})"
            )));
        }
        if !(self.slack >= 0.0) || !self.slack.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid slack must be a finite non-negative number, got {}",
                self.slack
            )));
        }
        Ok(())
    }

    /// Evenly spaced probabilities spanning the coverage band, endpoints included.
    pub fn probabilities(&self) -> Vec<f64> {
        let (lo, hi) = self.coverage;
        let last = (self.point_count - 1) as f64;
        (0..self.point_count)
            .map(|k| lo + (hi - lo) * k as f64 / last)
            .collect()
    }
}
