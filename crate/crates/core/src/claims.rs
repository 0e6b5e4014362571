//! Smallest and largest claim amounts of a portfolio of thinned risks
//! `Y_i = I_{p_i} X_{λ_i}`, where `X_{λ_i}` is transmuted-G over a common
//! baseline and `I_{p_i}` is an independent Bernoulli claim indicator.
//!
//! Both extremes carry a point mass at zero: the smallest claim is zero as
//! soon as one policy has no claim, the largest only when none has.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baseline::Baseline;
use crate::error::{check_non_negative, check_probability_open, Error, Result};
use crate::majorization::HFunction;
use crate::transmuted::{transmuted_to_base_probability, BasePoint, TransmutedParams};

const QUANTILE_BISECTION_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    base: Baseline,
    lambdas: Vec<f64>,
    probs: Vec<f64>,
    /// `(λ, p)` pairs in a canonical order so that evaluation is exactly
    /// invariant under relabelling of the risks.
    canonical: Vec<(f64, f64)>,
}

impl Portfolio {
    pub fn new(base: Baseline, lambdas: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        base.validate()?;
        if lambdas.is_empty() {
            return Err(Error::Arity("a portfolio needs at least one risk".into()));
        }
        if lambdas.len() != probs.len() {
            return Err(Error::LengthMismatch {
                expected: lambdas.len(),
                actual: probs.len(),
            });
        }
        for &l in &lambdas {
            TransmutedParams::new(l)?;
        }
        for &p in &probs {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::Domain {
                    what: "claim probability",
                    value: p,
                    domain: "(0, 1]",
                });
            }
        }
        let mut canonical: Vec<(f64, f64)> =
            lambdas.iter().copied().zip(probs.iter().copied()).collect();
        canonical.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self {
            base,
            lambdas,
            probs,
            canonical,
        })
    }

    pub fn base(&self) -> &Baseline {
        &self.base
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn prob_product(&self) -> f64 {
        self.canonical.iter().map(|&(_, p)| p).product()
    }

    pub fn no_claim_product(&self) -> f64 {
        self.canonical.iter().map(|&(_, p)| 1.0 - p).product()
    }

    pub fn smallest(&self) -> ExtremeDistribution {
        ExtremeDistribution::new(self.clone(), ExtremeKind::Smallest)
    }

    pub fn largest(&self) -> ExtremeDistribution {
        ExtremeDistribution::new(self.clone(), ExtremeKind::Largest)
    }

    pub fn extreme(&self, kind: ExtremeKind) -> ExtremeDistribution {
        ExtremeDistribution::new(self.clone(), kind)
    }

    /// `∏ (1 - p_i F̄(x)(1 - λ_i F(x)))`.
    pub fn largest_cdf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.largest_log_cdf_at(&BasePoint::at(&self.base, x)).exp())
    }

    /// Reversed hazard rate of the largest claim; `1` at `x = 0` by convention.
    pub fn largest_reversed_hazard(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        if x == 0.0 {
            return Ok(1.0);
        }
        let bp = BasePoint::at(&self.base, x);
        Ok(self
            .canonical
            .iter()
            .map(|&(l, p)| bp.pdf * bp.tilt(l) * p / (1.0 - p * bp.tg_sf(l)))
            .sum())
    }

    /// `(∏ p_i) ∏ F̄(x)(1 - λ_i F(x))`.
    pub fn smallest_sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.smallest_log_sf_at(&BasePoint::at(&self.base, x)).exp())
    }

    /// Hazard rate of the smallest claim.
    ///
    /// For `x > 0` only the continuous part is returned. At `x = 0` the rate is
    /// the right limit `r(0) Σ(1 + λ_i)` and the point mass `1 - ∏ p_i` is
    /// reported separately in `atom`.
    pub fn smallest_hazard(&self, x: f64) -> Result<SmallestHazard> {
        check_non_negative("x", x)?;
        let bp = BasePoint::at(&self.base, x);
        let atom = (x == 0.0).then(|| 1.0 - self.prob_product());
        if bp.sf <= 0.0 {
            return Err(Error::UndefinedHazard { x });
        }
        let r = bp.pdf / bp.sf;
        let rate = self
            .canonical
            .iter()
            .map(|&(l, _)| bp.tilt(l) / (1.0 - l * bp.cdf))
            .sum::<f64>()
            * r;
        Ok(SmallestHazard { rate, atom })
    }

    /// Homogeneous two-risk portfolio `(λ̄, h⁻¹(mean h(p)))` whose largest claim
    /// is stochastically below this portfolio's largest claim.
    pub fn largest_bound_portfolio(&self, h: &HFunction) -> Result<Portfolio> {
        if self.len() != 2 {
            return Err(Error::Arity(format!(
                "the largest-claim bound is defined for two risks, got {}",
                self.len()
            )));
        }
        let lambda_bar = 0.5 * (self.lambdas[0] + self.lambdas[1]);
        let h_bar = 0.5 * (h.eval(self.probs[0])? + h.eval(self.probs[1])?);
        let p_bar = h.inverse(h_bar)?;
        Portfolio::new(self.base.clone(), vec![lambda_bar; 2], vec![p_bar; 2])
    }

    /// `1 - (1 - h⁻¹(h̄) F̄(x)(1 - λ̄ F(x)))²`.
    pub fn largest_bound_sf(&self, h: &HFunction, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        let bound = self.largest_bound_portfolio(h)?;
        let (l, p) = (bound.lambdas[0], bound.probs[0]);
        let bp = BasePoint::at(&self.base, x);
        let q = 1.0 - p * bp.tg_sf(l);
        Ok(1.0 - q * q)
    }

    /// Homogeneous portfolio `(λ̃, p̃)` with `p̃ⁿ = ∏ p_i` and
    /// `λ̃ = max (1 + λ_i) / 2`.
    pub fn smallest_bound_portfolio(&self) -> Portfolio {
        let n = self.len();
        let p_tilde = self.prob_product().powf(1.0 / n as f64);
        let l_tilde = self
            .lambdas
            .iter()
            .map(|&l| 0.5 * (1.0 + l))
            .fold(f64::NEG_INFINITY, f64::max);
        Portfolio::new(
            self.base.clone(),
            vec![l_tilde; n],
            vec![p_tilde.min(1.0); n],
        )
        .expect("bound parameters stay in range")
    }

    /// `(p̃ F̄(x)(1 - λ̃ F(x)))ⁿ`.
    pub fn smallest_bound_sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        let n = self.len() as i32;
        let p_tilde = self.prob_product().powf(1.0 / n as f64);
        let l_tilde = self
            .lambdas
            .iter()
            .map(|&l| 0.5 * (1.0 + l))
            .fold(f64::NEG_INFINITY, f64::max);
        let bp = BasePoint::at(&self.base, x);
        Ok((p_tilde * bp.tg_sf(l_tilde)).powi(n))
    }

    pub(crate) fn largest_log_cdf_at(&self, bp: &BasePoint) -> f64 {
        self.canonical
            .iter()
            .map(|&(l, p)| (-p * bp.tg_sf(l)).ln_1p())
            .sum()
    }

    pub(crate) fn smallest_log_sf_at(&self, bp: &BasePoint) -> f64 {
        self.prob_product().ln()
            + self
                .canonical
                .iter()
                .map(|&(l, _)| bp.tg_log_sf(l))
                .sum::<f64>()
    }

    /// Extreme cdf as a function of the baseline probability `v = F(x)`.
    fn extreme_cdf_of_base_probability(&self, kind: ExtremeKind, v: f64) -> f64 {
        let w = 1.0 - v;
        match kind {
            ExtremeKind::Largest => self
                .canonical
                .iter()
                .map(|&(l, p)| 1.0 - p * w * (1.0 - l * v))
                .product(),
            ExtremeKind::Smallest => {
                1.0 - self.prob_product()
                    * self
                        .canonical
                        .iter()
                        .map(|&(l, _)| w * (1.0 - l * v))
                        .product::<f64>()
            }
        }
    }
}

/// Continuous hazard part plus, at the origin, the atom mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallestHazard {
    pub rate: f64,
    pub atom: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeKind {
    Smallest,
    Largest,
}

impl std::fmt::Display for ExtremeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExtremeKind::Smallest => "smallest",
            ExtremeKind::Largest => "largest",
        })
    }
}

/// Distribution of `Y_{1:n}` or `Y_{n:n}`: an atom at zero plus a continuous
/// part on `(0, inf)`. The cdf is right-continuous with the atom at `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeDistribution {
    portfolio: Portfolio,
    kind: ExtremeKind,
    atom_at_zero: f64,
}

impl ExtremeDistribution {
    pub fn new(portfolio: Portfolio, kind: ExtremeKind) -> Self {
        let atom_at_zero = match kind {
            ExtremeKind::Smallest => 1.0 - portfolio.prob_product(),
            ExtremeKind::Largest => portfolio.no_claim_product(),
        };
        Self {
            portfolio,
            kind,
            atom_at_zero,
        }
    }

    pub fn portfolio(&self) -> &Portfolio {
        &self.portfolio
    }

    pub fn kind(&self) -> ExtremeKind {
        self.kind
    }

    pub fn atom_at_zero(&self) -> f64 {
        self.atom_at_zero
    }

    pub fn base(&self) -> &Baseline {
        &self.portfolio.base
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.cdf_at(&BasePoint::at(self.base(), x)))
    }

    pub fn sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.sf_at(&BasePoint::at(self.base(), x)))
    }

    pub fn log_sf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.log_sf_at(&BasePoint::at(self.base(), x)))
    }

    pub fn log_cdf(&self, x: f64) -> Result<f64> {
        check_non_negative("x", x)?;
        Ok(self.log_cdf_at(&BasePoint::at(self.base(), x)))
    }

    /// Hazard rate for the smallest claim, reversed hazard for the largest.
    /// At the origin the conventional values are used (`1 - ∏p` and `1`).
    pub fn hazard_or_reversed_hazard(&self, x: f64) -> Result<f64> {
        match self.kind {
            ExtremeKind::Largest => self.portfolio.largest_reversed_hazard(x),
            ExtremeKind::Smallest => {
                let h = self.portfolio.smallest_hazard(x)?;
                Ok(h.atom.unwrap_or(h.rate))
            }
        }
    }

    /// Cdf of the continuous part, rescaled to `[0, 1]`.
    pub fn continuous_cdf(&self, x: f64) -> Result<f64> {
        let c = self.cdf(x)?;
        Ok(((c - self.atom_at_zero) / (1.0 - self.atom_at_zero)).clamp(0.0, 1.0))
    }

    /// Right-continuous inverse `inf {x : G(x) >= u}`; zero inside the atom.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        check_probability_open("u", u)?;
        if u <= self.atom_at_zero {
            return Ok(0.0);
        }
        // every risk shares the baseline, so G depends on x only through F(x);
        // bisect in v = F(x), then map back with the baseline quantile
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..QUANTILE_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if self
                .portfolio
                .extreme_cdf_of_base_probability(self.kind, mid)
                >= u
            {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi >= 1.0 {
            hi = lo;
        }
        Ok(self.base().quantile_unchecked(hi))
    }

    /// Quantile of the continuous part: `quantile(atom + u (1 - atom))`.
    pub fn continuous_quantile(&self, u: f64) -> Result<f64> {
        check_probability_open("u", u)?;
        let a = self.atom_at_zero;
        self.quantile((a + u * (1.0 - a)).min(1.0 - f64::EPSILON))
    }

    /// Independent draws: per risk a Bernoulli indicator and a transmuted
    /// severity by inversion, then the minimum or maximum across risks.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::Arity("sample count must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pf = &self.portfolio;
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut acc = match self.kind {
                ExtremeKind::Smallest => f64::INFINITY,
                ExtremeKind::Largest => 0.0,
            };
            for (&l, &p) in pf.lambdas.iter().zip(&pf.probs) {
                let occurs = rng.random::<f64>() < p;
                let u: f64 = rng.random();
                let claim = if occurs {
                    pf.base
                        .quantile_unchecked(transmuted_to_base_probability(l, u))
                } else {
                    0.0
                };
                acc = match self.kind {
                    ExtremeKind::Smallest => acc.min(claim),
                    ExtremeKind::Largest => acc.max(claim),
                };
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub(crate) fn cdf_at(&self, bp: &BasePoint) -> f64 {
        match self.kind {
            ExtremeKind::Largest => self.portfolio.largest_log_cdf_at(bp).exp(),
            ExtremeKind::Smallest => -self.portfolio.smallest_log_sf_at(bp).exp_m1(),
        }
    }

    pub(crate) fn sf_at(&self, bp: &BasePoint) -> f64 {
        match self.kind {
            ExtremeKind::Largest => -self.portfolio.largest_log_cdf_at(bp).exp_m1(),
            ExtremeKind::Smallest => self.portfolio.smallest_log_sf_at(bp).exp(),
        }
    }

    pub(crate) fn log_sf_at(&self, bp: &BasePoint) -> f64 {
        match self.kind {
            ExtremeKind::Largest => (-self.portfolio.largest_log_cdf_at(bp).exp_m1()).ln(),
            ExtremeKind::Smallest => self.portfolio.smallest_log_sf_at(bp),
        }
    }

    pub(crate) fn log_cdf_at(&self, bp: &BasePoint) -> f64 {
        match self.kind {
            ExtremeKind::Largest => self.portfolio.largest_log_cdf_at(bp),
            ExtremeKind::Smallest => (-self.portfolio.smallest_log_sf_at(bp).exp_m1()).ln(),
        }
    }
}
