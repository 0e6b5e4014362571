//! Finite-grid verification of the usual stochastic, hazard rate, reversed
//! hazard rate and dispersive orders between two extreme-claim distributions.
//!
//! Every check answers "is `d1` smaller than `d2` in this order?". A passing
//! verdict is evidence on the grid it carries, not a proof.

use serde::Serialize;

use crate::claims::ExtremeDistribution;
use crate::grid::GridSpec;
use crate::transmuted::BasePoint;

pub const DEFAULT_DISP_LATTICE: usize = 64;
const GRID_BISECTION_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    St,
    Hr,
    Rh,
    Disp,
}

impl OrderKind {
    pub fn symbol(self) -> &'static str {
        match self {
            OrderKind::St => "<=_st",
            OrderKind::Hr => "<=_hr",
            OrderKind::Rh => "<=_rh",
            OrderKind::Disp => "<=_disp",
        }
    }
}

impl std::fmt::Display for OrderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrderKind::St => "st",
            OrderKind::Hr => "hr",
            OrderKind::Rh => "rh",
            OrderKind::Disp => "disp",
        })
    }
}

impl std::str::FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "st" => Ok(OrderKind::St),
            "hr" => Ok(OrderKind::Hr),
            "rh" => Ok(OrderKind::Rh),
            "disp" => Ok(OrderKind::Disp),
            other => Err(format!(
                "unknown order '{other}', expected st, hr, rh or disp"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Point { x: f64 },
    Pair { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMeta {
    pub point_count: usize,
    pub coverage: (f64, f64),
    pub slack: f64,
    /// Points actually compared, after deduplication and truncation.
    pub evaluated_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub order_kind: OrderKind,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Worst signed slack: negative exactly when the order is violated
    /// beyond the tolerance.
    pub margin: f64,
    pub grid: GridMeta,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl OrderVerdict {
    fn new(order_kind: OrderKind, grid: &GridSpec) -> Self {
        Self {
            order_kind,
            holds: true,
            witness: None,
            margin: f64::INFINITY,
            grid: GridMeta {
                point_count: grid.point_count,
                coverage: grid.coverage,
                slack: grid.slack,
                evaluated_points: 0,
                lattice_size: None,
            },
            diagnostics: Vec::new(),
        }
    }

    /// Records one comparison; `gap` is the signed slack, `tol` the allowance.
    /// The witness is the first comparison that breaks the tolerance.
    fn record(&mut self, gap: f64, tol: f64, witness: Witness) {
        self.margin = self.margin.min(gap);
        if gap < -tol && self.holds {
            self.holds = false;
            self.witness = Some(witness);
        }
    }

    fn finish(mut self) -> Self {
        if !self.margin.is_finite() && self.margin > 0.0 {
            self.margin = 0.0;
        }
        self
    }
}

/// Evaluation abscissae: `x = 0` followed by quantiles of the pooled
/// continuous parts of `dists` at the grid's probabilities.
pub fn pooled_grid(dists: &[&ExtremeDistribution], spec: &GridSpec) -> Vec<f64> {
    let weight: f64 = dists.iter().map(|d| 1.0 - d.atom_at_zero()).sum();
    let pooled = |x: f64| {
        dists
            .iter()
            .map(|d| d.cdf(x).unwrap() - d.atom_at_zero())
            .sum::<f64>()
            / weight
    };
    let mut xs = vec![0.0];
    let mut hi = 1.0;
    for u in spec.probabilities() {
        let mut guard = 0;
        while pooled(hi) < u && guard < 2048 {
            hi *= 2.0;
            guard += 1;
        }
        let (mut a, mut b) = (0.0, hi);
        for _ in 0..GRID_BISECTION_STEPS {
            let mid = 0.5 * (a + b);
            if pooled(mid) >= u {
                b = mid;
            } else {
                a = mid;
            }
        }
        if b > *xs.last().unwrap() {
            xs.push(b);
        }
    }
    xs
}

/// `d1 <=_st d2`: `sf1(x) <= sf2(x)` at `x = 0` and on the grid.
pub fn check_st(
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    let xs = pooled_grid(&[d1, d2], grid);
    let mut v = OrderVerdict::new(OrderKind::St, grid);
    for &x in &xs {
        let gap = d2.sf(x).unwrap() - d1.sf(x).unwrap();
        v.record(gap, grid.slack, Witness::Point { x });
    }
    v.grid.evaluated_points = xs.len();
    v.finish()
}

/// Pointwise `lower(x) <= d.sf(x)` over `d`'s own grid, reported as an st
/// verdict. Used for closed-form survival bounds.
pub fn check_sf_lower_bound(
    lower: impl Fn(f64) -> f64,
    d: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    let xs = pooled_grid(&[d], grid);
    let mut v = OrderVerdict::new(OrderKind::St, grid);
    for &x in &xs {
        v.record(
            d.sf(x).unwrap() - lower(x),
            grid.slack,
            Witness::Point { x },
        );
    }
    v.grid.evaluated_points = xs.len();
    v.finish()
}

/// `d1 <=_hr d2`: `sf2 / sf1` nondecreasing, starting from the ratio 1 just
/// left of the origin so the atom step at `x = 0` is checked first.
pub fn check_hr(
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    let xs = pooled_grid(&[d1, d2], grid);
    let logs = xs.iter().map(|&x| {
        let bp = BasePoint::at(d1.base(), x);
        let bq = BasePoint::at(d2.base(), x);
        (x, d2.log_sf_at(&bq), d1.log_sf_at(&bp))
    });
    ratio_monotone(OrderKind::Hr, Some(0.0), logs, grid)
}

/// `d1 <=_rh d2`: `cdf2 / cdf1` nondecreasing on the grid, origin included,
/// and closed by its exact limit 1 as `x -> inf`. Without that final step a
/// ratio that overshoots 1 and returns only beyond the grid's upper quantile
/// would pass unnoticed.
pub fn check_rh(
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    let xs = pooled_grid(&[d1, d2], grid);
    let logs = xs
        .iter()
        .map(|&x| {
            let bp = BasePoint::at(d1.base(), x);
            let bq = BasePoint::at(d2.base(), x);
            (x, d2.log_cdf_at(&bq), d1.log_cdf_at(&bp))
        })
        .chain(std::iter::once((f64::INFINITY, 0.0, 0.0)));
    let mut v = ratio_monotone(OrderKind::Rh, None, logs, grid);
    if matches!(v.witness, Some(Witness::Point { x }) if x.is_infinite()) {
        v.diagnostics.push(
            "cdf ratio exceeds its limit 1 on the grid; violation located at x -> inf".into(),
        );
    }
    v
}

/// Checks that `exp(num - den)` is nondecreasing, working with log ratios.
/// Points where both sides vanish are dropped and reported.
fn ratio_monotone(
    kind: OrderKind,
    start: Option<f64>,
    logs: impl Iterator<Item = (f64, f64, f64)>,
    grid: &GridSpec,
) -> OrderVerdict {
    let mut v = OrderVerdict::new(kind, grid);
    let mut prev = start;
    let mut dropped = 0usize;
    let mut used = 0usize;
    for (x, num, den) in logs {
        if num == f64::NEG_INFINITY && den == f64::NEG_INFINITY {
            dropped += 1;
            continue;
        }
        let r = num - den;
        if let Some(p) = prev {
            let step = if r == p { 0.0 } else { r - p };
            v.record(step, grid.slack, Witness::Point { x });
        }
        prev = Some(r);
        used += 1;
    }
    if dropped > 0 {
        v.diagnostics.push(format!(
            "{dropped} grid point(s) dropped where both {} vanish",
            if kind == OrderKind::Hr {
                "survival functions"
            } else {
                "distribution functions"
            }
        ));
    }
    v.grid.evaluated_points = used;
    v.finish()
}

/// `d1 <=_disp d2` on the default 64 x 64 probability lattice.
pub fn check_disp(
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    check_disp_lattice(d1, d2, grid, DEFAULT_DISP_LATTICE)
}

/// `Q1(β) - Q1(α) <= Q2(β) - Q2(α)` for all lattice pairs `α < β` in
/// `(a0, upper]`, where `a0` is the larger atom mass and `upper` the grid's
/// upper coverage bound.
pub fn check_disp_lattice(
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
    lattice: usize,
) -> OrderVerdict {
    let mut v = OrderVerdict::new(OrderKind::Disp, grid);
    v.grid.lattice_size = Some(lattice);
    let a0 = d1.atom_at_zero().max(d2.atom_at_zero());
    let upper = grid.coverage.1;
    if a0 >= upper {
        v.diagnostics
            .push(format!("atom mass {a0} leaves no lattice below {upper}"));
        return v.finish();
    }
    let probs: Vec<f64> = (1..=lattice)
        .map(|k| a0 + (upper - a0) * k as f64 / lattice as f64)
        .collect();
    let q1: Vec<f64> = probs.iter().map(|&u| d1.quantile(u).unwrap()).collect();
    let q2: Vec<f64> = probs.iter().map(|&u| d2.quantile(u).unwrap()).collect();
    for a in 0..lattice {
        for b in a + 1..lattice {
            let s1 = q1[b] - q1[a];
            let s2 = q2[b] - q2[a];
            let tol = grid.slack * q1[b].max(q2[b]).max(1.0);
            v.record(
                s2 - s1,
                tol,
                Witness::Pair {
                    alpha: probs[a],
                    beta: probs[b],
                },
            );
        }
    }
    v.grid.evaluated_points = lattice;
    v.finish()
}

pub fn check_order(
    kind: OrderKind,
    d1: &ExtremeDistribution,
    d2: &ExtremeDistribution,
    grid: &GridSpec,
) -> OrderVerdict {
    match kind {
        OrderKind::St => check_st(d1, d2, grid),
        OrderKind::Hr => check_hr(d1, d2, grid),
        OrderKind::Rh => check_rh(d1, d2, grid),
        OrderKind::Disp => check_disp(d1, d2, grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::Baseline;
    use crate::claims::Portfolio;

    fn pf(base: Baseline, l: &[f64], p: &[f64]) -> Portfolio {
        Portfolio::new(base, l.to_vec(), p.to_vec()).unwrap()
    }

    fn exp(mean: f64) -> Baseline {
        Baseline::exponential(mean).unwrap()
    }

    fn grid() -> GridSpec {
        GridSpec::default()
    }

    #[test]
    fn test_pooled_grid_strictly_increasing() {
        let a = pf(exp(2.0), &[0.1, 0.3, -0.6], &[0.5, 0.3, 0.7]).smallest();
        let b = pf(exp(2.0), &[0.5, -0.3, 0.1], &[0.3, 0.9, 0.1]).smallest();
        let xs = pooled_grid(&[&a, &b], &grid());
        assert_eq!(xs[0], 0.0);
        assert!(xs.len() > 1000);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn test_reflexive_orders_hold_with_zero_margin() {
        let d = pf(
            Baseline::weibull(0.3, 1.5).unwrap(),
            &[0.7, 0.3, -0.9],
            &[0.1, 0.4, 0.8],
        )
        .largest();
        for kind in [OrderKind::St, OrderKind::Hr, OrderKind::Rh, OrderKind::Disp] {
            let v = check_order(kind, &d, &d, &grid());
            assert!(v.holds, "{kind}");
            assert_eq!(v.margin, 0.0, "{kind}");
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn test_st_example_smallest() {
        let a = pf(exp(2.0), &[0.1, 0.3, -0.6], &[0.5, 0.3, 0.7]).smallest();
        let b = pf(exp(2.0), &[0.5, -0.3, 0.1], &[0.3, 0.9, 0.1]).smallest();
        let v = check_st(&b, &a, &grid());
        assert!(v.holds);
        let back = check_st(&a, &b, &grid());
        assert!(!back.holds);
        assert!(matches!(back.witness, Some(Witness::Point { .. })));
        assert!(back.margin < 0.0);
    }

    #[test]
    fn test_hr_larger_lambda_holds_with_positive_margin() {
        let a = pf(exp(1.0), &[0.2, 0.5], &[0.6, 0.6]).smallest();
        let b = pf(exp(1.0), &[0.8, 0.5], &[0.6, 0.6]).smallest();
        let v = check_hr(&b, &a, &grid());
        assert!(v.holds);
        // atom step is a ratio of 1 and the tail ratio strictly increases
        let w = check_hr(&a, &b, &grid());
        assert!(!w.holds);
    }

    #[test]
    fn test_hr_atom_step_is_checked() {
        // identical severities, only claim probabilities differ
        let a = pf(exp(1.0), &[0.0], &[0.5]).smallest();
        let b = pf(exp(1.0), &[0.0], &[0.9]).smallest();
        assert!(check_hr(&a, &b, &grid()).holds);
        let v = check_hr(&b, &a, &grid());
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Point { x: 0.0 }));
    }

    #[test]
    fn test_rh_equal_lambda_example() {
        let h = crate::majorization::HFunction::LogShift;
        let a = pf(exp(1.0), &[0.5, 0.5], &[0.9, 0.8]).largest();
        let b = pf(exp(1.0), &[0.5, 0.5], &[0.7, 0.7]).largest();
        let hu = |p: &[f64]| p.iter().map(|&p| h.eval(p).unwrap()).collect::<Vec<_>>();
        assert!(crate::majorization::weak_submajorize(&hu(&[0.7, 0.7]), &hu(&[0.9, 0.8])).unwrap());
        assert!(check_rh(&b, &a, &grid()).holds);
        let back = check_rh(&a, &b, &grid());
        assert!(!back.holds);
        assert!(back.witness.is_some());
    }

    #[test]
    fn test_rh_zero_cdf_at_origin_fails() {
        // p = 1 leaves no atom for the largest claim, so cdf2/cdf1 starts at +inf
        let a = pf(exp(1.0), &[0.0], &[1.0]).largest();
        let b = pf(exp(1.0), &[0.0], &[0.5]).largest();
        let v = check_rh(&a, &b, &grid());
        assert!(!v.holds);
    }

    #[test]
    fn test_rh_overshoot_beyond_grid_fails() {
        // cdf2/cdf1 peaks about 7e-7 above 1 near the top of the grid and only
        // falls back to its limit in the far tail
        let w = Baseline::weibull(1.285745071020938, 1.1176832458680601).unwrap();
        let d1 = pf(
            w.clone(),
            &[0.19485850046355724, -0.6405940232077802],
            &[0.06377572577061452, 0.7318746109683973],
        )
        .smallest();
        let d2 = pf(
            w,
            &[0.1947557209137476, 0.404127180015287],
            &[0.23086233924699429, 0.5326773028022471],
        )
        .smallest();
        assert!(!check_st(&d1, &d2, &grid()).holds);
        let v = check_rh(&d1, &d2, &grid());
        assert!(!v.holds);
        assert!(!v.diagnostics.is_empty());
    }

    #[test]
    fn test_disp_flips_with_lambda_scale() {
        // λ = 1 halves the exponential mean of each risk, so the smallest claim
        // of d1 is a rescaled copy of that of d2
        let d1 = pf(exp(1.0), &[1.0, 1.0], &[1.0, 1.0]).smallest();
        let d2 = pf(exp(1.0), &[0.0, 0.0], &[1.0, 1.0]).smallest();
        let v = check_disp(&d1, &d2, &grid());
        assert!(v.holds);
        assert!(v.margin >= 0.0);
        let w = check_disp(&d2, &d1, &grid());
        assert!(!w.holds);
        assert!(matches!(w.witness, Some(Witness::Pair { .. })));
        assert_eq!(w.grid.lattice_size, Some(64));
    }

    #[test]
    fn test_order_kind_parse() {
        assert_eq!("hr".parse::<OrderKind>().unwrap(), OrderKind::Hr);
        assert!("lr".parse::<OrderKind>().is_err());
    }

    #[test]
    fn test_verdict_serializes_report_fields() {
        let d = pf(exp(1.0), &[0.0], &[0.5]).smallest();
        let v = check_st(&d, &d, &grid());
        let json = serde_json::to_value(&v).unwrap();
        for key in ["order_kind", "holds", "witness", "margin", "grid"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["order_kind"], "st");
    }
}
