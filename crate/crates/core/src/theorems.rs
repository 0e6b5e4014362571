//! Hypothesis checkers for the extreme-claim comparison results.
//!
//! Throughout, portfolio `a` holds the unstarred parameters `(λ, p)` and
//! portfolio `b` the starred ones `(λ*, p*)`; every implied ordering reads
//! "the extreme claim of `b` is smaller than that of `a`". Each checker lists
//! every hypothesis of its result once, attaches the implied ordering only when
//! all of them hold, and always runs the numeric order check, labelled
//! exploratory when the hypotheses fail.

use serde::Serialize;

use crate::baseline::Density;
use crate::claims::{ExtremeKind, Portfolio};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::majorization::{
    chain_apply, collapse_same_structure, in_s_n, weak_submajorization, HFunction, ParamMatrix,
    TTransform,
};
use crate::orders::{check_order, check_sf_lower_bound, OrderKind, OrderVerdict};

/// Per-entry tolerance when matching a chain's output against the target
/// parameters, which are often rounded to four decimals.
pub const CHAIN_TOLERANCE: f64 = 5e-4;
const EQUAL_LAMBDA_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// Two risks, one T-transform, usual stochastic order of the largest claims.
    T3_1,
    /// `n` risks, one T-transform.
    T3_2,
    /// Chain of T-transforms sharing one structure.
    C3_1,
    /// Chain of T-transforms with different structures.
    C3_2,
    /// Common `λ`, weak submajorization of `h(p)`, reversed hazard order.
    #[serde(rename = "T3_rh")]
    T3Rh,
    /// Smallest claims, usual stochastic order.
    T4_1,
    /// Smallest claims, hazard rate order.
    T4_2,
    /// Smallest claims, dispersive order.
    T4_3,
    /// Homogeneous lower bound for the largest claim's survival function.
    B3,
    /// Homogeneous lower bound for the smallest claim's survival function.
    B4,
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoremId::T3Rh => f.write_str("T3_rh"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl Condition {
    fn new(name: &'static str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImpliedOrder {
    pub order_kind: OrderKind,
    pub extreme: ExtremeKind,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: TheoremId,
    pub conditions: Vec<Condition>,
    pub implied_order: Option<ImpliedOrder>,
    pub numeric_confirmation: Option<OrderVerdict>,
    /// True when the numeric check ran without the hypotheses holding.
    pub exploratory: bool,
}

impl TheoremVerdict {
    fn build(
        theorem_id: TheoremId,
        conditions: Vec<Condition>,
        implied: ImpliedOrder,
        numeric: Option<OrderVerdict>,
    ) -> Self {
        let all = conditions.iter().all(|c| c.holds);
        Self {
            theorem_id,
            conditions,
            implied_order: all.then_some(implied),
            exploratory: !all && numeric.is_some(),
            numeric_confirmation: numeric,
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// Implied ordering present and numerically confirmed.
    pub fn confirmed(&self) -> bool {
        self.implied_order.is_some() && self.numeric_confirmation.as_ref().is_some_and(|v| v.holds)
    }

    /// Implied ordering present but refuted by the numeric check.
    pub fn counterexample(&self) -> bool {
        self.implied_order.is_some() && self.numeric_confirmation.as_ref().is_some_and(|v| !v.holds)
    }

    pub fn failed_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}

fn shared_setup(a: &Portfolio, b: &Portfolio) -> Result<()> {
    if a.base() != b.base() {
        return Err(Error::BaselineMismatch);
    }
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "portfolios have {} and {} risks",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

fn implied(kind: OrderKind, extreme: ExtremeKind, n: usize) -> ImpliedOrder {
    let idx = match extreme {
        ExtremeKind::Smallest => format!("1:{n}"),
        ExtremeKind::Largest => format!("{n}:{n}"),
    };
    ImpliedOrder {
        order_kind: kind,
        extreme,
        statement: format!("Y*_{idx} {} Y_{idx}", kind.symbol()),
    }
}

fn confirm(
    kind: OrderKind,
    extreme: ExtremeKind,
    a: &Portfolio,
    b: &Portfolio,
    grid: &GridSpec,
) -> OrderVerdict {
    check_order(kind, &b.extreme(extreme), &a.extreme(extreme), grid)
}

fn fmt_vec(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", items.join(", "))
}

fn h_condition(h: &HFunction) -> Condition {
    let v = h.validate();
    let detail = if v.valid {
        format!(
            "{} is positive, strictly increasing and concave on [0, 1]",
            h.name()
        )
    } else {
        v.diagnostics.join("; ")
    };
    Condition::new("h_increasing_concave", v.valid, detail)
}

fn sn_condition(name: &'static str, m: &ParamMatrix) -> Condition {
    let r = in_s_n(m);
    let detail = r
        .reason
        .unwrap_or_else(|| format!("λ = {}, h(p) = {}", fmt_vec(&m.lambda), fmt_vec(&m.u)));
    Condition::new(name, r.holds, detail)
}

/// Largest claims under chain majorization of `(λ, h(p))`.
///
/// The result used depends on the chain: a single transform (or any chain on
/// two risks, which always shares one structure) uses the single-transform
/// result, a longer same-structure chain collapses to one transform, and a
/// mixed chain additionally needs every intermediate product in `S_n`.
pub fn check_thm_largest_chain(
    a: &Portfolio,
    b: &Portfolio,
    h: &HFunction,
    chain: &[TTransform],
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    shared_setup(a, b)?;
    let n = a.len();
    let mut conditions = vec![h_condition(h)];
    let start = ParamMatrix::from_portfolio(a, h)?;
    conditions.push(sn_condition("dominating_matrix_in_S_n", &start));
    let target = ParamMatrix::from_portfolio(b, h)?;

    let collapsed = collapse_same_structure(chain);
    let id = match (chain.len(), collapsed.is_some()) {
        (_, true) if n == 2 => TheoremId::T3_1,
        (0 | 1, _) => TheoremId::T3_2,
        (_, true) => TheoremId::C3_1,
        (_, false) => TheoremId::C3_2,
    };

    if chain.is_empty() {
        conditions.push(Condition::new(
            "chain_supplied",
            false,
            "no chain supplied; a chain relating the two matrices is not searched for",
        ));
        conditions.push(Condition::new(
            "chain_reproduces_target",
            false,
            "no chain supplied",
        ));
    } else {
        let applied = chain_apply(&start, chain)?;
        let dev = applied
            .result
            .lambda
            .iter()
            .zip(&target.lambda)
            .chain(applied.result.u.iter().zip(&target.u))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        conditions.push(Condition::new(
            "chain_reproduces_target",
            dev <= CHAIN_TOLERANCE,
            format!(
                "chain gives λ = {}, h(p) = {}; max deviation from (λ*, h(p*)) is {dev:.2e} (tolerance {CHAIN_TOLERANCE:e})",
                fmt_vec(&applied.result.lambda),
                fmt_vec(&applied.result.u)
            ),
        ));
        match (id, collapsed) {
            (TheoremId::C3_1, Some(t)) | (TheoremId::T3_1, Some(t)) if chain.len() > 1 => {
                let (i, j) = t.indices();
                conditions.push(Condition::new(
                    "same_structure",
                    true,
                    format!(
                        "all transforms mix columns ({}, {}); their product is T with ω = {:.6}",
                        i + 1,
                        j + 1,
                        t.omega()
                    ),
                ));
            }
            (TheoremId::C3_2, _) => {
                let bad = applied.intermediates.iter().position(|m| !in_s_n(m).holds);
                let detail = match bad {
                    None => format!(
                        "all {} intermediate product(s) lie in S_n",
                        applied.intermediates.len()
                    ),
                    Some(k) => format!(
                        "intermediate product after transform {} leaves S_n: {}",
                        k + 1,
                        in_s_n(&applied.intermediates[k]).reason.unwrap_or_default()
                    ),
                };
                conditions.push(Condition::new(
                    "intermediates_in_S_n",
                    bad.is_none(),
                    detail,
                ));
            }
            _ => {}
        }
    }

    let numeric = confirm(OrderKind::St, ExtremeKind::Largest, a, b, grid);
    Ok(TheoremVerdict::build(
        id,
        conditions,
        implied(OrderKind::St, ExtremeKind::Largest, n),
        Some(numeric),
    ))
}

/// Largest claims with a common `λ`: `h(p*) ⪯_w h(p)` gives the reversed
/// hazard rate order.
pub fn check_thm_largest_rh(
    a: &Portfolio,
    b: &Portfolio,
    h: &HFunction,
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    shared_setup(a, b)?;
    let n = a.len();
    let common = a.lambdas()[0];
    let off = a
        .lambdas()
        .iter()
        .chain(b.lambdas())
        .find(|l| (**l - common).abs() > EQUAL_LAMBDA_TOLERANCE);
    let lambda_cond = match off {
        None => Condition::new("common_lambda", true, format!("λ_i = λ*_i = {common}")),
        Some(l) => Condition::new(
            "common_lambda",
            false,
            format!("precondition violated: λ values {l} and {common} differ"),
        ),
    };
    let hu =
        |pf: &Portfolio| -> Result<Vec<f64>> { pf.probs().iter().map(|&p| h.eval(p)).collect() };
    let (ua, ub) = (hu(a)?, hu(b)?);
    let wm = weak_submajorization(&ub, &ua)?;
    let detail = match wm.failed_at {
        None => format!("h(p*) = {} ⪯_w h(p) = {}", fmt_vec(&ub), fmt_vec(&ua)),
        Some(k) => format!(
            "sum of the {k} largest entries of h(p*) = {} exceeds that of h(p) = {}",
            fmt_vec(&ub),
            fmt_vec(&ua)
        ),
    };
    let conditions = vec![
        lambda_cond,
        h_condition(h),
        Condition::new("h_weak_submajorization", wm.holds, detail),
    ];
    let numeric = confirm(OrderKind::Rh, ExtremeKind::Largest, a, b, grid);
    Ok(TheoremVerdict::build(
        TheoremId::T3Rh,
        conditions,
        implied(OrderKind::Rh, ExtremeKind::Largest, n),
        Some(numeric),
    ))
}

fn smallest_conditions(a: &Portfolio, b: &Portfolio) -> Result<Vec<Condition>> {
    let (pa, pb) = (a.prob_product(), b.prob_product());
    let prod = Condition::new(
        "prob_product_inequality",
        pb <= pa * (1.0 + 1e-15),
        format!(
            "∏p* = {pb:.6} vs ∏p = {pa:.6}; atom step ratio ∏p/∏p* = {:.6}",
            pa / pb
        ),
    );
    let wm = weak_submajorization(a.lambdas(), b.lambdas())?;
    let detail = match wm.failed_at {
        None => format!(
            "λ = {} ⪯_w λ* = {}",
            fmt_vec(a.lambdas()),
            fmt_vec(b.lambdas())
        ),
        Some(k) => format!(
            "sum of the {k} largest entries of λ = {} exceeds that of λ* = {}",
            fmt_vec(a.lambdas()),
            fmt_vec(b.lambdas())
        ),
    };
    Ok(vec![
        prod,
        Condition::new("lambda_weak_submajorization", wm.holds, detail),
    ])
}

/// Smallest claims, usual stochastic order.
pub fn check_thm_smallest_st(
    a: &Portfolio,
    b: &Portfolio,
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    shared_setup(a, b)?;
    let conditions = smallest_conditions(a, b)?;
    let numeric = confirm(OrderKind::St, ExtremeKind::Smallest, a, b, grid);
    Ok(TheoremVerdict::build(
        TheoremId::T4_1,
        conditions,
        implied(OrderKind::St, ExtremeKind::Smallest, a.len()),
        Some(numeric),
    ))
}

/// Smallest claims, hazard rate order under the same hypotheses. The numeric
/// check starts with the atom step `1 <= ∏p / ∏p*` at the origin.
pub fn check_thm_smallest_hr(
    a: &Portfolio,
    b: &Portfolio,
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    shared_setup(a, b)?;
    let conditions = smallest_conditions(a, b)?;
    let numeric = confirm(OrderKind::Hr, ExtremeKind::Smallest, a, b, grid);
    Ok(TheoremVerdict::build(
        TheoremId::T4_2,
        conditions,
        implied(OrderKind::Hr, ExtremeKind::Smallest, a.len()),
        Some(numeric),
    ))
}

/// Smallest claims, dispersive order: adds a DFR baseline, `λ* ∈ [0, 1]ⁿ`
/// and `f(0) <= (1 - ∏p*) / Σ(1 + λ*_i)`.
pub fn check_thm_smallest_disp(
    a: &Portfolio,
    b: &Portfolio,
    grid: &GridSpec,
) -> Result<TheoremVerdict> {
    shared_setup(a, b)?;
    let mut conditions = smallest_conditions(a, b)?;

    let dfr = a.base().is_dfr(grid);
    let detail = match dfr.witness {
        None => "baseline hazard is nonincreasing on the grid".to_string(),
        Some((x0, x1)) => format!(
            "baseline hazard increases between x = {x0:.6} and x = {x1:.6} (rise {:.3e})",
            dfr.hazard_increase
        ),
    };
    conditions.push(Condition::new("baseline_dfr", dfr.dfr, detail));

    let outside = b.lambdas().iter().position(|l| !(0.0..=1.0).contains(l));
    conditions.push(match outside {
        None => Condition::new(
            "lambda_star_in_unit_interval",
            true,
            "0 <= λ*_i <= 1 for all i",
        ),
        Some(k) => Condition::new(
            "lambda_star_in_unit_interval",
            false,
            format!("λ*_{} = {} is outside [0, 1]", k + 1, b.lambdas()[k]),
        ),
    });

    let bound = (1.0 - b.prob_product()) / b.lambdas().iter().map(|l| 1.0 + l).sum::<f64>();
    conditions.push(match a.base().density_at_zero() {
        Density::Finite(f0) => Condition::new(
            "density_at_zero_bound",
            f0 <= bound,
            format!("f(0) = {f0:.6} vs (1 - ∏p*) / Σ(1 + λ*_i) = {bound:.6}"),
        ),
        Density::Infinite => Condition::new(
            "density_at_zero_bound",
            false,
            format!("f(0) is infinite; bound is {bound:.6}"),
        ),
    });

    let numeric = confirm(OrderKind::Disp, ExtremeKind::Smallest, a, b, grid);
    Ok(TheoremVerdict::build(
        TheoremId::T4_3,
        conditions,
        implied(OrderKind::Disp, ExtremeKind::Smallest, a.len()),
        Some(numeric),
    ))
}

/// Homogeneous-portfolio lower bounds for the survival functions of both
/// extremes. The largest-claim bound is only produced when `h` is given.
pub fn check_bounds(
    pf: &Portfolio,
    h: Option<&HFunction>,
    grid: &GridSpec,
) -> Result<Vec<TheoremVerdict>> {
    let mut out = Vec::new();
    let n = pf.len();

    let sb = pf.smallest_bound_portfolio();
    let smallest = pf.smallest();
    let numeric = check_sf_lower_bound(|x| pf.smallest_bound_sf(x).unwrap(), &smallest, grid);
    out.push(TheoremVerdict::build(
        TheoremId::B4,
        vec![Condition::new(
            "homogeneous_parameters",
            true,
            format!(
                "p̃ = (∏p)^(1/n) = {:.6}, λ̃ = max (1 + λ_i)/2 = {:.6}",
                sb.probs()[0],
                sb.lambdas()[0]
            ),
        )],
        ImpliedOrder {
            order_kind: OrderKind::St,
            extreme: ExtremeKind::Smallest,
            statement: format!("(p̃ F̄(x)(1 - λ̃ F(x)))^{n} <= sf of Y_1:{n}"),
        },
        Some(numeric),
    ));

    if let Some(h) = h {
        let mut conditions = vec![Condition::new(
            "two_risks",
            n == 2,
            format!("portfolio has {n} risk(s)"),
        )];
        conditions.push(h_condition(h));
        let numeric = if n == 2 {
            conditions.push(sn_condition(
                "matrix_in_S_2",
                &ParamMatrix::from_portfolio(pf, h)?,
            ));
            let largest = pf.largest();
            Some(check_sf_lower_bound(
                |x| pf.largest_bound_sf(h, x).unwrap(),
                &largest,
                grid,
            ))
        } else {
            conditions.push(Condition::new(
                "matrix_in_S_2",
                false,
                "the bound is defined for two risks only",
            ));
            None
        };
        out.push(TheoremVerdict::build(
            TheoremId::B3,
            conditions,
            ImpliedOrder {
                order_kind: OrderKind::St,
                extreme: ExtremeKind::Largest,
                statement: "1 - (1 - h⁻¹(h̄) F̄(x)(1 - λ̄ F(x)))² <= sf of Y_2:2".into(),
            },
            numeric,
        ));
    }
    Ok(out)
}
