//! Baseline severity distributions on `[0, inf)`.
//!
//! Exponential is parameterized by its mean, Weibull by shape and scale with
//! `F(x) = 1 - exp(-(x / scale)^shape)`. Tabulated baselines interpolate a
//! monotone table of `(x, F(x))` pairs linearly and continue past the last
//! knot with an exponential tail whose rate keeps the density continuous.
//! Tabulated values are approximations of whatever produced the table.

use serde::{Deserialize, Serialize};

use crate::error::{check_non_negative, check_probability_open, Error, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BaselineRepr", into = "BaselineRepr")]
pub enum Baseline {
    Exponential { mean: f64 },
    Weibull { shape: f64, scale: f64 },
    Tabulated(Table),
}

/// Monotone `(x, F(x))` table starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    xs: Vec<f64>,
    cdf: Vec<f64>,
    tail_rate: f64,
}

/// Density at the origin, which is unbounded for Weibull shapes below one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Density {
    Finite(f64),
    Infinite,
}

impl Density {
    pub fn as_f64(self) -> f64 {
        match self {
            Density::Finite(v) => v,
            Density::Infinite => f64::INFINITY,
        }
    }
}

/// Outcome of a decreasing-failure-rate scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DfrReport {
    pub dfr: bool,
    /// First pair of consecutive grid points `(x_prev, x)` where the hazard rose.
    pub witness: Option<(f64, f64)>,
    pub hazard_increase: f64,
}

impl Baseline {
    pub fn exponential(mean: f64) -> Result<Self> {
        let b = Baseline::Exponential { mean };
        b.validate()?;
        Ok(b)
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        let b = Baseline::Weibull { shape, scale };
        b.validate()?;
        Ok(b)
    }

    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        Ok(Baseline::Tabulated(Table::new(points)?))
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be finite and > 0, got {v}"
                )))
            }
        };
        match *self {
            Baseline::Exponential { mean } => positive("exponential mean", mean),
            Baseline::Weibull { shape, scale } => {
                positive("weibull shape", shape)?;
                positive("weibull scale", scale)
            }
            Baseline::Tabulated(_) => Ok(()),
        }
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.cdf_unchecked(x))
    }

    pub fn sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.sf_unchecked(x))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.pdf_unchecked(x))
    }

    /// Natural log of the survival function, exact for the closed forms.
    pub fn log_sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.log_sf_unchecked(x))
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        check_probability_open("u", u)?;
        Ok(self.quantile_unchecked(u))
    }

    pub fn hazard(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        match *self {
            Baseline::Exponential { mean } => Ok(1.0 / mean),
            Baseline::Weibull { shape, scale } => Ok(weibull_hazard(shape, scale, x)),
            Baseline::Tabulated(ref t) => {
                let sf = t.sf(x);
                if sf <= 0.0 {
                    return Err(Error::UndefinedHazard { x });
                }
                Ok(t.pdf(x) / sf)
            }
        }
    }

    pub fn density_at_zero(&self) -> Density {
        match *self {
            Baseline::Weibull { shape, .. } if shape < 1.0 => Density::Infinite,
            _ => Density::Finite(self.pdf_unchecked(0.0)),
        }
    }

    /// Checks that the hazard is nonincreasing over the quantile grid of `grid`.
    pub fn is_dfr(&self, grid: &GridSpec) -> DfrReport {
        let mut report = DfrReport {
            dfr: true,
            witness: None,
            hazard_increase: 0.0,
        };
        let mut prev: Option<(f64, f64)> = None;
        for u in grid.probabilities() {
            let x = self.quantile_unchecked(u);
            let Ok(h) = self.hazard(x) else { continue };
            if let Some((px, ph)) = prev {
                let rise = h - ph;
                if rise > grid.slack * ph.abs().max(1.0) {
                    if report.dfr {
                        report.dfr = false;
                        report.witness = Some((px, x));
                    }
                    report.hazard_increase = report.hazard_increase.max(rise);
                }
            }
            prev = Some((x, h));
        }
        report
    }

    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        match *self {
            Baseline::Exponential { mean } => -(-x / mean).exp_m1(),
            Baseline::Weibull { shape, scale } => -(-(x / scale).powf(shape)).exp_m1(),
            Baseline::Tabulated(ref t) => t.cdf(x),
        }
    }

    pub(crate) fn sf_unchecked(&self, x: f64) -> f64 {
        match *self {
            Baseline::Exponential { mean } => (-x / mean).exp(),
            Baseline::Weibull { shape, scale } => (-(x / scale).powf(shape)).exp(),
            Baseline::Tabulated(ref t) => t.sf(x),
        }
    }

    pub(crate) fn log_sf_unchecked(&self, x: f64) -> f64 {
        match *self {
            Baseline::Exponential { mean } => -x / mean,
            Baseline::Weibull { shape, scale } => -(x / scale).powf(shape),
            Baseline::Tabulated(ref t) => t.sf(x).ln(),
        }
    }

    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        match *self {
            Baseline::Exponential { mean } => (-x / mean).exp() / mean,
            Baseline::Weibull { shape, scale } => {
                if x == 0.0 {
                    return match shape.partial_cmp(&1.0) {
                        Some(std::cmp::Ordering::Less) => f64::INFINITY,
                        Some(std::cmp::Ordering::Equal) => 1.0 / scale,
                        _ => 0.0,
                    };
                }
                weibull_hazard(shape, scale, x) * (-(x / scale).powf(shape)).exp()
            }
            Baseline::Tabulated(ref t) => t.pdf(x),
        }
    }

    pub(crate) fn quantile_unchecked(&self, u: f64) -> f64 {
        match *self {
            Baseline::Exponential { mean } => -mean * (-u).ln_1p(),
            Baseline::Weibull { shape, scale } => scale * (-(-u).ln_1p()).powf(1.0 / shape),
            Baseline::Tabulated(ref t) => t.quantile(u),
        }
    }
}

fn weibull_hazard(shape: f64, scale: f64, x: f64) -> f64 {
    if x == 0.0 {
        return match shape.partial_cmp(&1.0) {
            Some(std::cmp::Ordering::Less) => f64::INFINITY,
            Some(std::cmp::Ordering::Equal) => 1.0 / scale,
            _ => 0.0,
        };
    }
    shape / scale * (x / scale).powf(shape - 1.0)
}

impl Table {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if points.len() < 2 {
            return bad(format!(
                "tabulated baseline needs at least 2 points, got {}",
                points.len()
            ));
        }
        if points[0] != (0.0, 0.0) {
            return bad(format!(
                "tabulated baseline must start at (0, 0), got {:?}",
                points[0]
            ));
        }
        for w in points.windows(2) {
            let ((x0, f0), (x1, f1)) = (w[0], w[1]);
            if !(x1 > x0) || !x1.is_finite() {
                return bad(format!(
                    "tabulated x values must be strictly increasing at x = {x1}"
                ));
            }
            if !(f1 >= f0) || f1 > 1.0 {
                return bad(format!(
                    "tabulated F values must be nondecreasing within [0, 1] at x = {x1}"
                ));
            }
        }
        let n = points.len();
        let (xa, fa) = points[n - 2];
        let (xb, fb) = points[n - 1];
        if fb <= 0.0 {
            return bad("tabulated baseline carries no probability mass".into());
        }
        let tail_rate = if fb < 1.0 {
            let slope = (fb - fa) / (xb - xa);
            if slope <= 0.0 {
                return bad(
                    "tabulated baseline with F < 1 at the last knot needs a rising last segment"
                        .into(),
                );
            }
            slope / (1.0 - fb)
        } else {
            0.0
        };
        Ok(Self {
            xs: points.iter().map(|p| p.0).collect(),
            cdf: points.iter().map(|p| p.1).collect(),
            tail_rate,
        })
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.xs
            .iter()
            .copied()
            .zip(self.cdf.iter().copied())
            .collect()
    }

    fn last(&self) -> (f64, f64) {
        (*self.xs.last().unwrap(), *self.cdf.last().unwrap())
    }

    /// Index `k` of the segment `[x_k, x_{k+1})` containing `x`.
    fn segment(&self, x: f64) -> usize {
        self.xs.partition_point(|&k| k <= x).saturating_sub(1)
    }

    fn sf(&self, x: f64) -> f64 {
        let (xl, fl) = self.last();
        if x >= xl {
            if fl >= 1.0 {
                return 0.0;
            }
            return (1.0 - fl) * (-(x - xl) * self.tail_rate).exp();
        }
        1.0 - self.cdf(x)
    }

    fn cdf(&self, x: f64) -> f64 {
        let (xl, _) = self.last();
        if x >= xl {
            return 1.0 - self.sf(x);
        }
        let k = self.segment(x);
        let t = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.cdf[k] + t * (self.cdf[k + 1] - self.cdf[k])
    }

    fn pdf(&self, x: f64) -> f64 {
        let (xl, _) = self.last();
        if x >= xl {
            return self.tail_rate * self.sf(x);
        }
        let k = self.segment(x);
        (self.cdf[k + 1] - self.cdf[k]) / (self.xs[k + 1] - self.xs[k])
    }

    fn quantile(&self, u: f64) -> f64 {
        let (xl, fl) = self.last();
        if u >= fl {
            if fl >= 1.0 {
                return xl;
            }
            return xl + ((1.0 - fl) / (1.0 - u)).ln() / self.tail_rate;
        }
        // first knot with F > u; the segment before it brackets u
        let k = self.cdf.partition_point(|&f| f <= u) - 1;
        let (f0, f1) = (self.cdf[k], self.cdf[k + 1]);
        self.xs[k] + (u - f0) / (f1 - f0) * (self.xs[k + 1] - self.xs[k])
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum BaselineRepr {
    Exponential { mean: f64 },
    Weibull { shape: f64, scale: f64 },
    Tabulated { points: Vec<(f64, f64)> },
}

impl TryFrom<BaselineRepr> for Baseline {
    type Error = Error;

    fn try_from(r: BaselineRepr) -> Result<Self> {
        match r {
            BaselineRepr::Exponential { mean } => Baseline::exponential(mean),
            BaselineRepr::Weibull { shape, scale } => Baseline::weibull(shape, scale),
            BaselineRepr::Tabulated { points } => Baseline::tabulated(&points),
        }
    }
}

impl From<Baseline> for BaselineRepr {
    fn from(b: Baseline) -> Self {
        match b {
            Baseline::Exponential { mean } => BaselineRepr::Exponential { mean },
            Baseline::Weibull { shape, scale } => BaselineRepr::Weibull { shape, scale },
            Baseline::Tabulated(t) => BaselineRepr::Tabulated { points: t.points() },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn exp(mean: f64) -> Baseline {
        Baseline::exponential(mean).unwrap()
    }

    fn weib(shape: f64, scale: f64) -> Baseline {
        Baseline::weibull(shape, scale).unwrap()
    }

    fn exp_table(step: f64, upto: f64) -> Baseline {
        let n = (upto / step).round() as usize;
        let pts: Vec<_> = (0..=n)
            .map(|k| {
                let x = k as f64 * step;
                (x, -(-x).exp_m1())
            })
            .collect();
        Baseline::tabulated(&pts).unwrap()
    }

    #[test]
    fn test_cdf_examples() {
        assert!((exp(1.0).cdf(LN_2).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(weib(1.0, 1.0).cdf(0.0).unwrap(), 0.0);
        let v = weib(2.0, 0.6).cdf(0.6).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((v - 0.63212).abs() < 1e-5);
    }

    #[test]
    fn test_pdf_examples() {
        assert_eq!(exp(2.0).pdf(0.0).unwrap(), 0.5);
        assert_eq!(weib(2.0, 1.0).pdf(0.0).unwrap(), 0.0);
        assert!((exp(1.0).pdf(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        assert_eq!(weib(0.3, 1.5).pdf(0.0).unwrap(), f64::INFINITY);
        assert_eq!(weib(0.3, 1.5).density_at_zero(), Density::Infinite);
        assert_eq!(exp(20.0).density_at_zero(), Density::Finite(0.05));
    }

    #[test]
    fn test_quantile_examples() {
        assert!((exp(1.0).quantile(0.5).unwrap() - LN_2).abs() < 1e-15);
        let u = 1.0 - (-1.0f64).exp();
        assert!((weib(2.0, 1.0).quantile(u).unwrap() - 1.0).abs() < 1e-14);
        let tab = exp_table(0.01, 20.0);
        assert!((tab.quantile(0.5).unwrap() - LN_2).abs() < 1e-4);
    }

    #[test]
    fn test_hazard_examples() {
        assert_eq!(exp(2.0).hazard(3.7).unwrap(), 0.5);
        assert!((weib(1.0, 3.0).hazard(2.2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let w = weib(0.3, 1.5);
        assert!(w.hazard(1.0).unwrap() > w.hazard(2.0).unwrap());
    }

    #[test]
    fn test_domain_errors() {
        let b = exp(1.0);
        assert!(matches!(b.cdf(-0.1), Err(Error::Domain { .. })));
        assert!(matches!(b.pdf(-0.1), Err(Error::Domain { .. })));
        assert!(matches!(b.quantile(1.0), Err(Error::Domain { .. })));
        assert!(matches!(b.quantile(-0.1), Err(Error::Domain { .. })));
        assert!(Baseline::exponential(0.0).is_err());
        assert!(Baseline::weibull(1.0, -1.0).is_err());
    }

    #[test]
    fn test_tabulated_hazard_undefined_past_full_support() {
        let b = Baseline::tabulated(&[(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)]).unwrap();
        assert!(matches!(b.hazard(2.5), Err(Error::UndefinedHazard { .. })));
        assert!((b.hazard(0.5).unwrap() - 0.5 / 0.75).abs() < 1e-15);
        assert_eq!(b.quantile(0.75).unwrap(), 1.5);
    }

    #[test]
    fn test_tabulated_rejects_bad_tables() {
        assert!(Baseline::tabulated(&[(0.0, 0.0)]).is_err());
        assert!(Baseline::tabulated(&[(0.1, 0.0), (1.0, 0.5)]).is_err());
        assert!(Baseline::tabulated(&[(0.0, 0.0), (1.0, 0.5), (1.0, 0.6)]).is_err());
        assert!(Baseline::tabulated(&[(0.0, 0.0), (1.0, 0.5), (2.0, 0.4)]).is_err());
        assert!(Baseline::tabulated(&[(0.0, 0.0), (1.0, 0.5), (2.0, 0.5)]).is_err());
    }

    #[test]
    fn test_is_dfr() {
        let g = GridSpec::default();
        assert!(exp(1.0).is_dfr(&g).dfr);
        assert!(weib(0.3, 1.5).is_dfr(&g).dfr);
        let r = weib(2.0, 0.6).is_dfr(&g);
        assert!(!r.dfr);
        let (a, b) = r.witness.unwrap();
        assert!(a < b);
    }

    #[test]
    fn test_cdf_sf_complement_and_fd_density() {
        for b in [
            exp(0.5),
            weib(0.3, 1.5),
            weib(2.0, 0.6),
            exp_table(0.01, 20.0),
        ] {
            for k in 1..200 {
                let u = k as f64 / 200.0;
                let x = b.quantile(u).unwrap() + 1.234e-3;
                let (f, s) = (b.cdf(x).unwrap(), b.sf(x).unwrap());
                assert!((f + s - 1.0).abs() < 1e-15);
                let h = 1e-6 * x.max(1e-3);
                let fd = (b.cdf(x + h).unwrap() - b.cdf(x - h).unwrap()) / (2.0 * h);
                let pdf = b.pdf(x).unwrap();
                assert!(
                    (fd - pdf).abs() <= 1e-6 * pdf.max(1e-12),
                    "{b:?} x={x} {fd} {pdf}"
                );
            }
        }
    }

    #[test]
    fn test_serde_shape() {
        let b: Baseline = serde_json::from_str(r#"{"kind":"exponential","mean":0.5}"#).unwrap();
        assert_eq!(b, exp(0.5));
        let w: Baseline =
            serde_json::from_str(r#"{"kind":"weibull","shape":0.3,"scale":1.5}"#).unwrap();
        assert_eq!(w, weib(0.3, 1.5));
        assert!(serde_json::from_str::<Baseline>(r#"{"kind":"exponential","mean":-1}"#).is_err());
        let back = serde_json::to_string(&w).unwrap();
        assert_eq!(back, r#"{"kind":"weibull","shape":0.3,"scale":1.5}"#);
    }
}
