//! Quadratic rank transmutation of a baseline: `F_λ(x) = F(x) (1 + λ F̄(x))`.

use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::error::{check_non_negative, check_probability_open, Error, Result};

/// Transmutation parameter, always within `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TransmutedParams(f64);

impl TransmutedParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if (-1.0..=1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(Error::Domain {
                what: "lambda",
                value: lambda,
                domain: "[-1, 1]",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for TransmutedParams {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TransmutedParams> for f64 {
    fn from(p: TransmutedParams) -> f64 {
        p.0
    }
}

/// Baseline quantities at a single `x`, computed once and shared by every
/// transmuted risk evaluated at that point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasePoint {
    pub x: f64,
    pub cdf: f64,
    pub sf: f64,
    pub log_sf: f64,
    pub pdf: f64,
}

impl BasePoint {
    pub fn new(base: &Baseline, x: f64) -> Result<Self> {
        check_non_negative("x", x)?;
        Ok(Self::at(base, x))
    }

    pub(crate) fn at(base: &Baseline, x: f64) -> Self {
        Self {
            x,
            cdf: base.cdf_unchecked(x),
            sf: base.sf_unchecked(x),
            log_sf: base.log_sf_unchecked(x),
            pdf: base.pdf_unchecked(x),
        }
    }

    pub fn tg_cdf(&self, lambda: f64) -> f64 {
        self.cdf * (1.0 + lambda * self.sf)
    }

    pub fn tg_sf(&self, lambda: f64) -> f64 {
        self.sf * (1.0 - lambda * self.cdf)
    }

    pub fn tg_log_sf(&self, lambda: f64) -> f64 {
        self.log_sf + (-lambda * self.cdf).ln_1p()
    }

    /// Density multiplier `1 + λ(1 - 2F)`, never negative for `λ ∈ [-1, 1]`.
    pub fn tilt(&self, lambda: f64) -> f64 {
        1.0 + lambda * (1.0 - 2.0 * self.cdf)
    }

    pub fn tg_pdf(&self, lambda: f64) -> f64 {
        if self.pdf.is_infinite() {
            return f64::INFINITY;
        }
        self.pdf * self.tilt(lambda)
    }

    /// Hazard via `r(x) (1 + λ(1-2F)) / (1 - λF)`.
    pub fn tg_hazard(&self, lambda: f64) -> Option<f64> {
        if self.sf <= 0.0 {
            return None;
        }
        let r = self.pdf / self.sf;
        Some(self.tilt(lambda) / (1.0 - lambda * self.cdf) * r)
    }
}

pub fn tg_cdf(base: &Baseline, lambda: TransmutedParams, x: f64) -> Result<f64> {
    Ok(BasePoint::new(base, x)?.tg_cdf(lambda.0))
}

pub fn tg_sf(base: &Baseline, lambda: TransmutedParams, x: f64) -> Result<f64> {
    Ok(BasePoint::new(base, x)?.tg_sf(lambda.0))
}

pub fn tg_pdf(base: &Baseline, lambda: TransmutedParams, x: f64) -> Result<f64> {
    Ok(BasePoint::new(base, x)?.tg_pdf(lambda.0))
}

pub fn tg_hazard(base: &Baseline, lambda: TransmutedParams, x: f64) -> Result<f64> {
    BasePoint::new(base, x)?
        .tg_hazard(lambda.0)
        .ok_or(Error::UndefinedHazard { x })
}

pub fn tg_reversed_hazard(base: &Baseline, lambda: TransmutedParams, x: f64) -> Result<f64> {
    let p = BasePoint::new(base, x)?;
    let cdf = p.tg_cdf(lambda.0);
    if cdf <= 0.0 {
        return Err(Error::UndefinedReversedHazard { x });
    }
    Ok(p.tg_pdf(lambda.0) / cdf)
}

pub fn tg_quantile(base: &Baseline, lambda: TransmutedParams, u: f64) -> Result<f64> {
    check_probability_open("u", u)?;
    Ok(base.quantile_unchecked(transmuted_to_base_probability(lambda.0, u)))
}

/// Root in `[0, 1]` of `λv² - (1+λ)v + u = 0`, i.e. the baseline probability
/// `v = F(x)` at which `F_λ(x) = u`.
///
/// Written as `2u / ((1+λ) + sqrt((1+λ)² - 4λu))`, the rationalized form of
/// `((1+λ) - sqrt(..)) / (2λ)`, which stays accurate as `λ → 0`.
pub fn transmuted_to_base_probability(lambda: f64, u: f64) -> f64 {
    let b = 1.0 + lambda;
    let disc = (b * b - 4.0 * lambda * u).max(0.0);
    let denom = b + disc.sqrt();
    if denom == 0.0 {
        // λ = -1 and u = 0
        return 0.0;
    }
    (2.0 * u / denom).min(1.0)
}
