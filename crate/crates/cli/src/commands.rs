//! Subcommand implementations. Each returns whether everything checked held;
//! input problems surface as errors.

use std::path::Path;

use anyhow::{bail, Result};
use serde::Serialize;
use tgclaims::monte_carlo::{
    dkw_radius, EmpiricalSf, FrequencyCheck, VarianceEstimate, MIN_MC_COUNT,
};
use tgclaims::orders::pooled_grid;
use tgclaims::theorems::{
    check_bounds, check_thm_largest_chain, check_thm_largest_rh, check_thm_smallest_disp,
    check_thm_smallest_hr, check_thm_smallest_st,
};
use tgclaims::{
    check_order, ExtremeKind, GridSpec, OrderKind, OrderVerdict, Portfolio, TheoremVerdict,
};

use crate::output::{checklist, order_line, write_csv, write_json};
use crate::scenario::{Loaded, Scenario};

pub const CURVE_POINTS: usize = 512;
pub const MC_CONFIDENCE: f64 = 0.999;
pub const ATOM_STANDARD_ERRORS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TheoremSelector {
    LargestChain,
    LargestRh,
    SmallestSt,
    SmallestHr,
    SmallestDisp,
    Bounds,
}

impl TheoremSelector {
    /// Selection used when none is given on the command line.
    pub fn default_for(s: &Scenario) -> Self {
        match (s.extreme, s.chain.is_some()) {
            (ExtremeKind::Largest, true) => Self::LargestChain,
            (ExtremeKind::Largest, false) => Self::LargestRh,
            (ExtremeKind::Smallest, _) => Self::SmallestSt,
        }
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    scenario: &'a Scenario,
    verdicts: Vec<TheoremVerdict>,
}

pub fn check(sc: &Loaded, selectors: &[TheoremSelector], out: &Path) -> Result<bool> {
    let selectors = if selectors.is_empty() {
        vec![TheoremSelector::default_for(&sc.scenario)]
    } else {
        selectors.to_vec()
    };
    let grid = &sc.scenario.grid;
    let (a, b) = (&sc.a, &sc.b);
    let mut verdicts = Vec::new();
    for sel in selectors {
        match sel {
            TheoremSelector::LargestChain => {
                let h = sc.require_h("largest-chain")?;
                verdicts.push(check_thm_largest_chain(a, b, h, sc.chain(), grid)?);
            }
            TheoremSelector::LargestRh => {
                let h = sc.require_h("largest-rh")?;
                verdicts.push(check_thm_largest_rh(a, b, h, grid)?);
            }
            TheoremSelector::SmallestSt => verdicts.push(check_thm_smallest_st(a, b, grid)?),
            TheoremSelector::SmallestHr => verdicts.push(check_thm_smallest_hr(a, b, grid)?),
            TheoremSelector::SmallestDisp => verdicts.push(check_thm_smallest_disp(a, b, grid)?),
            TheoremSelector::Bounds => {
                for pf in [a, b] {
                    verdicts.extend(check_bounds(pf, sc.scenario.h.as_ref(), grid)?);
                }
            }
        }
    }
    let ok = verdicts
        .iter()
        .all(|v| v.hypotheses_hold() && !v.counterexample());
    let text: String = verdicts
        .iter()
        .map(checklist)
        .collect::<Vec<_>>()
        .join("\n");
    let stem = sc.stem();
    write_json(
        &out.join(format!("{stem}_check.json")),
        &CheckReport {
            scenario: &sc.scenario,
            verdicts,
        },
    )?;
    crate::output::write_atomic(&out.join(format!("{stem}_check.txt")), text.as_bytes())?;
    print!("{}:\n{text}", sc.path.display());
    Ok(ok)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    scenario: &'a Scenario,
    comparison: String,
    verdict: OrderVerdict,
}

pub fn verify(sc: &Loaded, order: OrderKind, out: &Path) -> Result<bool> {
    let ext = sc.scenario.extreme;
    let verdict = check_order(
        order,
        &sc.b.extreme(ext),
        &sc.a.extreme(ext),
        &sc.scenario.grid,
    );
    let holds = verdict.holds;
    println!(
        "{}: {ext} claim of portfolio_b {} portfolio_a: {}",
        sc.path.display(),
        order.symbol(),
        order_line(&verdict)
    );
    write_json(
        &out.join(format!("{}_verify_{order}.json", sc.stem())),
        &VerifyReport {
            scenario: &sc.scenario,
            comparison: format!("{ext} claim of portfolio_b {} portfolio_a", order.symbol()),
            verdict,
        },
    )?;
    Ok(holds)
}

/// Survival curves of the scenario's extreme for both portfolios on a shared,
/// quantile-spaced abscissa.
pub fn curves(sc: &Loaded, points: Option<usize>, out: &Path) -> Result<bool> {
    let spec = GridSpec {
        point_count: points.unwrap_or(CURVE_POINTS),
        ..sc.scenario.grid
    };
    let stem = sc.stem();
    let ext = sc.scenario.extreme;
    let da = sc.a.extreme(ext);
    let db = sc.b.extreme(ext);
    // The leading x = 0 is the atom location, not part of the quantile band.
    let xs: Vec<f64> = pooled_grid(&[&da, &db], &spec)
        .into_iter()
        .skip(1)
        .collect();
    let mut max_gap = f64::NEG_INFINITY;
    for (label, d) in [("a", &da), ("b", &db)] {
        let mut sf_rows = Vec::with_capacity(xs.len());
        let mut detail = Vec::with_capacity(xs.len());
        for &x in &xs {
            let sf = d.sf(x)?;
            sf_rows.push(vec![x, sf]);
            detail.push(vec![x, d.cdf(x)?, sf, d.hazard_or_reversed_hazard(x)?]);
        }
        write_csv(
            &out.join(format!("{stem}_{ext}_{label}.csv")),
            &["x", "sf"],
            &sf_rows,
        )?;
        write_csv(
            &out.join(format!("{stem}_{ext}_{label}_detail.csv")),
            &["x", "cdf", "sf", "hazard_or_rh"],
            &detail,
        )?;
    }
    for &x in &xs {
        max_gap = max_gap.max(db.sf(x)? - da.sf(x)?);
    }
    println!(
        "{}: {ext}: {} points, max(sf_b - sf_a) = {max_gap:.3e}",
        sc.path.display(),
        xs.len()
    );
    Ok(true)
}

#[derive(Serialize)]
struct SampleSummary {
    portfolio: &'static str,
    extreme: ExtremeKind,
    seed: u64,
    ks_distance: f64,
    dkw_radius: f64,
    within_dkw: bool,
    atom: FrequencyCheck,
    atom_within_3se: bool,
    variance: VarianceEstimate,
}

#[derive(Serialize)]
struct VarianceComparison {
    extreme: ExtremeKind,
    variance_a: f64,
    variance_b: f64,
    combined_standard_error: f64,
    b_not_above_a: bool,
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    scenario: &'a Scenario,
    count: usize,
    confidence: f64,
    samples: Vec<SampleSummary>,
    variance_comparison: VarianceComparison,
}

fn summarize(
    portfolio: &'static str,
    pf: &Portfolio,
    extreme: ExtremeKind,
    count: usize,
    seed: u64,
) -> Result<SampleSummary> {
    let d = pf.extreme(extreme);
    let draws = d.sample(count, seed)?;
    let variance = VarianceEstimate::from_samples(&draws);
    let emp = EmpiricalSf::new(draws);
    let ks_distance = emp.sup_distance(&d);
    let radius = dkw_radius(count, MC_CONFIDENCE);
    let atom = FrequencyCheck::new(emp.atom_frequency(), d.atom_at_zero(), count);
    Ok(SampleSummary {
        portfolio,
        extreme,
        seed,
        ks_distance,
        dkw_radius: radius,
        within_dkw: ks_distance <= radius,
        atom_within_3se: atom.within(ATOM_STANDARD_ERRORS),
        atom,
        variance,
    })
}

pub fn simulate(sc: &Loaded, count: usize, seed: Option<u64>, out: &Path) -> Result<bool> {
    if count < MIN_MC_COUNT {
        bail!("--count must be at least {MIN_MC_COUNT}, got {count}");
    }
    let seed = seed.unwrap_or(sc.scenario.seed);
    let mut samples = Vec::new();
    let mut k = 0u64;
    for ext in [ExtremeKind::Smallest, ExtremeKind::Largest] {
        for (label, pf) in [("a", &sc.a), ("b", &sc.b)] {
            samples.push(summarize(label, pf, ext, count, seed.wrapping_add(k))?);
            k += 1;
        }
    }
    let ext = sc.scenario.extreme;
    let pick = |label: &str| {
        samples
            .iter()
            .find(|s| s.extreme == ext && s.portfolio == label)
            .map(|s| s.variance)
            .unwrap()
    };
    let (va, vb) = (pick("a"), pick("b"));
    let se = va.standard_error.hypot(vb.standard_error);
    let comparison = VarianceComparison {
        extreme: ext,
        variance_a: va.variance,
        variance_b: vb.variance,
        combined_standard_error: se,
        b_not_above_a: vb.variance <= va.variance + 3.0 * se,
    };
    for s in &samples {
        println!(
            "{}: {} {}: KS {:.5} (DKW {:.5}), atom {:.5} vs {:.5} (z = {:.2}), var {:.5} ± {:.5}",
            sc.path.display(),
            s.extreme,
            s.portfolio,
            s.ks_distance,
            s.dkw_radius,
            s.atom.observed,
            s.atom.expected,
            s.atom.z,
            s.variance.variance,
            s.variance.standard_error
        );
    }
    let ok = samples.iter().all(|s| s.within_dkw && s.atom_within_3se);
    write_json(
        &out.join(format!("{}_simulate.json", sc.stem())),
        &SimulateReport {
            scenario: &sc.scenario,
            count,
            confidence: MC_CONFIDENCE,
            samples,
            variance_comparison: comparison,
        },
    )?;
    Ok(ok)
}
