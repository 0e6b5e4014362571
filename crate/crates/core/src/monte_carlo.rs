//! Monte Carlo corroboration of the analytic extreme-claim distributions.

use serde::Serialize;

use crate::claims::ExtremeDistribution;
use crate::error::{Error, Result};

pub const MIN_MC_COUNT: usize = 10_000;

fn check_count(count: usize) -> Result<()> {
    if count < MIN_MC_COUNT {
        return Err(Error::Arity(format!(
            "Monte Carlo runs need at least {MIN_MC_COUNT} draws, got {count}"
        )));
    }
    Ok(())
}

/// Radius `ε` with `P(sup |F_n - F| > ε) <= 1 - confidence` by the
/// Dvoretzky-Kiefer-Wolfowitz inequality (Massart's constant).
pub fn dkw_radius(count: usize, confidence: f64) -> f64 {
    ((2.0 / (1.0 - confidence)).ln() / (2.0 * count as f64)).sqrt()
}

/// Empirical survival step function of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSf {
    sorted: Vec<f64>,
}

impl EmpiricalSf {
    pub fn new(mut samples: Vec<f64>) -> Self {
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self { sorted: samples }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Fraction of draws strictly above `x`.
    pub fn sf(&self, x: f64) -> f64 {
        let at_or_below = self.sorted.partition_point(|&s| s <= x);
        (self.sorted.len() - at_or_below) as f64 / self.sorted.len() as f64
    }

    pub fn dkw_radius(&self, confidence: f64) -> f64 {
        dkw_radius(self.sorted.len(), confidence)
    }

    pub fn atom_frequency(&self) -> f64 {
        1.0 - self.sf(0.0)
    }

    /// Kolmogorov distance to the analytic cdf, counting the atom at zero:
    /// both one-sided limits are compared at every distinct sample value.
    pub fn sup_distance(&self, dist: &ExtremeDistribution) -> f64 {
        let n = self.sorted.len() as f64;
        let mut worst = 0.0f64;
        let mut k = 0;
        while k < self.sorted.len() {
            let v = self.sorted[k];
            let mut j = k + 1;
            while j < self.sorted.len() && self.sorted[j] == v {
                j += 1;
            }
            let g = dist.cdf(v).unwrap();
            let g_left = if v == 0.0 { 0.0 } else { g };
            worst = worst
                .max((j as f64 / n - g).abs())
                .max((k as f64 / n - g_left).abs());
            k = j;
        }
        worst
    }
}

pub fn mc_empirical_sf(dist: &ExtremeDistribution, count: usize, seed: u64) -> Result<EmpiricalSf> {
    check_count(count)?;
    Ok(EmpiricalSf::new(dist.sample(count, seed)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceEstimate {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Large-sample standard error of the variance, `sqrt((m4 - s⁴) / n)`.
    pub standard_error: f64,
}

impl VarianceEstimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (mut m2, mut m4) = (0.0, 0.0);
        for &x in xs {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m4 += d2 * d2;
        }
        let variance = m2 / (n - 1.0);
        let m4 = m4 / n;
        let pop = m2 / n;
        Self {
            count: xs.len(),
            mean,
            variance,
            standard_error: ((m4 - pop * pop).max(0.0) / n).sqrt(),
        }
    }
}

pub fn mc_variance(
    dist: &ExtremeDistribution,
    count: usize,
    seed: u64,
) -> Result<VarianceEstimate> {
    check_count(count)?;
    Ok(VarianceEstimate::from_samples(&dist.sample(count, seed)?))
}

/// Observed versus expected frequency of a binary event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyCheck {
    pub observed: f64,
    pub expected: f64,
    pub standard_error: f64,
    pub z: f64,
}

impl FrequencyCheck {
    pub fn new(observed: f64, expected: f64, count: usize) -> Self {
        let standard_error = (expected * (1.0 - expected) / count as f64).sqrt();
        let z = if standard_error > 0.0 {
            (observed - expected) / standard_error
        } else if observed == expected {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            observed,
            expected,
            standard_error,
            z,
        }
    }

    pub fn within(&self, standard_errors: f64) -> bool {
        self.z.abs() <= standard_errors
    }
}
