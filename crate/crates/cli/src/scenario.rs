//! Scenario files: JSON descriptions of two portfolios over a shared baseline.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tgclaims::{Baseline, ExtremeKind, GridSpec, HFunction, Portfolio, TTransform};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioSpec {
    pub lambdas: Vec<f64>,
    pub probs: Vec<f64>,
}

/// `portfolio_a` carries the unstarred parameters, `portfolio_b` the starred
/// ones. Chain indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub baseline: Baseline,
    pub portfolio_a: PortfolioSpec,
    pub portfolio_b: PortfolioSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<TTransform>>,
    pub extreme: ExtremeKind,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub scenario: Scenario,
    pub a: Portfolio,
    pub b: Portfolio,
}

impl Loaded {
    /// File stem used to name outputs.
    pub fn stem(&self) -> String {
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".into())
    }

    pub fn chain(&self) -> &[TTransform] {
        self.scenario.chain.as_deref().unwrap_or(&[])
    }

    pub fn require_h(&self, why: &str) -> Result<&HFunction> {
        match &self.scenario.h {
            Some(h) => Ok(h),
            None => bail!("{}: {why} needs an `h` function", self.path.display()),
        }
    }
}

pub fn parse(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize(de) {
        Ok(s) => Ok(s),
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            bail!(
                "line {}, column {}, field `{path}`: {inner}",
                inner.line(),
                inner.column()
            )
        }
    }
}

/// Reads, parses and validates a scenario. `grid_points` overrides the
/// file's grid resolution.
pub fn load(path: &Path, grid_points: Option<usize>) -> Result<Loaded> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut scenario = parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(n) = grid_points {
        scenario.grid.point_count = n;
    }
    validate(path, scenario)
}

fn validate(path: &Path, scenario: Scenario) -> Result<Loaded> {
    let ctx = |what: &str| format!("{}: {what}", path.display());
    scenario.grid.validate().with_context(|| ctx("grid"))?;
    let build = |p: &PortfolioSpec| {
        Portfolio::new(
            scenario.baseline.clone(),
            p.lambdas.clone(),
            p.probs.clone(),
        )
    };
    let a = build(&scenario.portfolio_a).with_context(|| ctx("portfolio_a"))?;
    let b = build(&scenario.portfolio_b).with_context(|| ctx("portfolio_b"))?;
    if a.len() != b.len() {
        bail!(
            "{}: portfolio_a has {} risks but portfolio_b has {}",
            path.display(),
            a.len(),
            b.len()
        );
    }
    if let Some(chain) = &scenario.chain {
        if scenario.h.is_none() {
            bail!("{}: a chain is given but `h` is missing", path.display());
        }
        for (k, t) in chain.iter().enumerate() {
            let (i, j) = t.indices();
            if i.max(j) >= a.len() {
                bail!(
                    "{}: chain[{k}] mixes columns ({}, {}) but portfolios have {} risks",
                    path.display(),
                    i + 1,
                    j + 1,
                    a.len()
                );
            }
        }
    }
    if let Some(h) = &scenario.h {
        let v = h.validate();
        if !v.valid {
            bail!(
                "{}: invalid h: {}",
                path.display(),
                v.diagnostics.join("; ")
            );
        }
    }
    Ok(Loaded {
        path: path.to_path_buf(),
        scenario,
        a,
        b,
    })
}
