//! Vector majorization preorders, T-transforms acting on the columns of a
//! `2 x n` parameter matrix `(λ; h(p))`, the anti-monotone set `S_n`, and the
//! increasing concave transforms `h` used to put claim probabilities on the
//! matrix's second row.

use serde::{Deserialize, Serialize};

use crate::claims::Portfolio;
use crate::error::{Error, Result};

/// Slack on partial-sum inequalities.
pub const PARTIAL_SUM_SLACK: f64 = 1e-12;
/// Tolerance on total-sum equality for ordinary majorization.
pub const TOTAL_SUM_TOLERANCE: f64 = 1e-9;
/// Tolerance on the anti-monotonicity products defining `S_n`.
pub const SN_SLACK: f64 = 1e-12;

const H_GRID_POINTS: usize = 1001;
const H_MIN_FIRST_DIFFERENCE: f64 = 1e-9;
const H_CONCAVITY_SLACK: f64 = 1e-12;

fn same_len(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::Arity("majorization needs non-empty vectors".into()));
    }
    Ok(())
}

fn sorted(v: &[f64], descending: bool) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if descending {
        s.reverse();
    }
    s
}

/// Outcome of a partial-sum comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationReport {
    pub holds: bool,
    /// Number of summed components `k` at the first failing partial sum.
    pub failed_at: Option<usize>,
    /// Worst signed slack over all partial sums (negative when failing).
    pub margin: f64,
}

/// `x ⪯_w y`: every sum of the `k` largest entries of `x` is at most that of `y`.
pub fn weak_submajorization(x: &[f64], y: &[f64]) -> Result<MajorizationReport> {
    same_len(x, y)?;
    Ok(partial_sums(
        &sorted(x, true),
        &sorted(y, true),
        |sx, sy| sy - sx,
    ))
}

/// `x ⪯^w y`: every sum of the `k` smallest entries of `x` is at least that of `y`.
pub fn weak_supermajorization(x: &[f64], y: &[f64]) -> Result<MajorizationReport> {
    same_len(x, y)?;
    Ok(partial_sums(
        &sorted(x, false),
        &sorted(y, false),
        |sx, sy| sx - sy,
    ))
}

fn partial_sums(xs: &[f64], ys: &[f64], gap: impl Fn(f64, f64) -> f64) -> MajorizationReport {
    let (mut sx, mut sy) = (0.0, 0.0);
    let mut report = MajorizationReport {
        holds: true,
        failed_at: None,
        margin: f64::INFINITY,
    };
    for (k, (a, b)) in xs.iter().zip(ys).enumerate() {
        sx += a;
        sy += b;
        let g = gap(sx, sy);
        report.margin = report.margin.min(g);
        if g < -PARTIAL_SUM_SLACK && report.holds {
            report.holds = false;
            report.failed_at = Some(k + 1);
        }
    }
    report
}

pub fn weak_submajorize(x: &[f64], y: &[f64]) -> Result<bool> {
    Ok(weak_submajorization(x, y)?.holds)
}

pub fn weak_supermajorize(x: &[f64], y: &[f64]) -> Result<bool> {
    Ok(weak_supermajorization(x, y)?.holds)
}

/// `x ⪯^m y`: equal totals and `x`'s increasing prefix sums dominate `y`'s.
pub fn majorize(x: &[f64], y: &[f64]) -> Result<bool> {
    same_len(x, y)?;
    let (tx, ty): (f64, f64) = (x.iter().sum(), y.iter().sum());
    if (tx - ty).abs() > TOTAL_SUM_TOLERANCE {
        return Ok(false);
    }
    weak_supermajorize(x, y)
}

/// `T = ω I + (1 - ω) Π`, where `Π` swaps coordinates `i` and `j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OneBasedTTransform", into = "OneBasedTTransform")]
pub struct TTransform {
    omega: f64,
    i: usize,
    j: usize,
}

impl TTransform {
    pub fn new(omega: f64, i: usize, j: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&omega) {
            return Err(Error::Domain {
                what: "omega",
                value: omega,
                domain: "[0, 1]",
            });
        }
        if i == j {
            return Err(Error::InvalidParameter(format!(
                "T-transform indices must differ, got i = j = {}",
                i + 1
            )));
        }
        Ok(Self { omega, i, j })
    }

    /// Indices as written in matrix notation, starting at 1.
    pub fn one_based(omega: f64, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidParameter(
                "1-based T-transform indices must be >= 1".into(),
            ));
        }
        Self::new(omega, i - 1, j - 1)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Two transforms share structure when they mix the same unordered pair.
    pub fn same_structure(&self, other: &TTransform) -> bool {
        let a = (self.i.min(self.j), self.i.max(self.j));
        let b = (other.i.min(other.j), other.i.max(other.j));
        a == b
    }

    /// Mixes entries `i` and `j` of `row` in place.
    pub fn apply_row(&self, row: &mut [f64]) -> Result<()> {
        if self.i >= row.len() || self.j >= row.len() {
            return Err(Error::Dimension(format!(
                "T-transform on coordinates ({}, {}) does not fit dimension {}",
                self.i + 1,
                self.j + 1,
                row.len()
            )));
        }
        let (a, b) = (row[self.i], row[self.j]);
        row[self.i] = self.omega * a + (1.0 - self.omega) * b;
        row[self.j] = (1.0 - self.omega) * a + self.omega * b;
        Ok(())
    }
}

/// Product of a chain of same-structure transforms, itself a T-transform.
pub fn collapse_same_structure(chain: &[TTransform]) -> Option<TTransform> {
    let (first, rest) = chain.split_first()?;
    if !rest.iter().all(|t| t.same_structure(first)) {
        return None;
    }
    let omega = rest.iter().fold(first.omega, |w, t| {
        w * t.omega + (1.0 - w) * (1.0 - t.omega)
    });
    Some(TTransform {
        omega: omega.clamp(0.0, 1.0),
        ..*first
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OneBasedTTransform {
    omega: f64,
    i: usize,
    j: usize,
}

impl TryFrom<OneBasedTTransform> for TTransform {
    type Error = Error;
    fn try_from(r: OneBasedTTransform) -> Result<Self> {
        TTransform::one_based(r.omega, r.i, r.j)
    }
}

impl From<TTransform> for OneBasedTTransform {
    fn from(t: TTransform) -> Self {
        Self {
            omega: t.omega,
            i: t.i + 1,
            j: t.j + 1,
        }
    }
}

/// The `2 x n` matrix with rows `λ` and `u = h(p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamMatrix {
    pub lambda: Vec<f64>,
    pub u: Vec<f64>,
}

impl ParamMatrix {
    pub fn new(lambda: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        same_len(&lambda, &u)?;
        if let Some(&l) = lambda.iter().find(|l| !(-1.0..=1.0).contains(*l)) {
            return Err(Error::Domain {
                what: "lambda",
                value: l,
                domain: "[-1, 1]",
            });
        }
        if let Some(&v) = u.iter().find(|v| !(**v > 0.0)) {
            return Err(Error::Domain {
                what: "u",
                value: v,
                domain: "(0, inf)",
            });
        }
        Ok(Self { lambda, u })
    }

    pub fn from_portfolio(pf: &Portfolio, h: &HFunction) -> Result<Self> {
        let u = pf
            .probs()
            .iter()
            .map(|&p| h.eval(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pf.lambdas().to_vec(), u)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// Second row mapped back to probabilities through `h⁻¹`.
    pub fn probs(&self, h: &HFunction) -> Result<Vec<f64>> {
        self.u.iter().map(|&u| h.inverse(u)).collect()
    }
}

pub fn apply_t_transform(m: &ParamMatrix, t: &TTransform) -> Result<ParamMatrix> {
    let mut out = m.clone();
    t.apply_row(&mut out.lambda)?;
    t.apply_row(&mut out.u)?;
    Ok(out)
}

/// Result of right-multiplying a matrix by a chain of T-transforms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainResult {
    pub result: ParamMatrix,
    /// Partial products `m T_1`, `m T_1 T_2`, ..., excluding the final one.
    pub intermediates: Vec<ParamMatrix>,
}

pub fn chain_apply(m: &ParamMatrix, chain: &[TTransform]) -> Result<ChainResult> {
    let mut current = m.clone();
    let mut intermediates = Vec::with_capacity(chain.len().saturating_sub(1));
    for (k, t) in chain.iter().enumerate() {
        current = apply_t_transform(&current, t)?;
        if k + 1 < chain.len() {
            intermediates.push(current.clone());
        }
    }
    Ok(ChainResult {
        result: current,
        intermediates,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnReport {
    pub holds: bool,
    /// 0-based column pair whose rows move in the same direction.
    pub violation: Option<(usize, usize)>,
    pub reason: Option<String>,
}

/// Membership in `S_n`: `λ ∈ [-1,1]ⁿ`, `u > 0`, and `(λ_i - λ_j)(u_i - u_j) <= 0`.
pub fn in_s_n(m: &ParamMatrix) -> SnReport {
    let fail = |violation, reason: String| SnReport {
        holds: false,
        violation,
        reason: Some(reason),
    };
    if m.lambda.len() != m.u.len() {
        return fail(None, "rows have different lengths".into());
    }
    if let Some(k) = m.lambda.iter().position(|l| !(-1.0..=1.0).contains(l)) {
        return fail(
            None,
            format!("lambda_{} = {} outside [-1, 1]", k + 1, m.lambda[k]),
        );
    }
    if let Some(k) = m.u.iter().position(|v| !(*v > 0.0)) {
        return fail(None, format!("u_{} = {} is not positive", k + 1, m.u[k]));
    }
    let n = m.n();
    for i in 0..n {
        for j in i + 1..n {
            let prod = (m.lambda[i] - m.lambda[j]) * (m.u[i] - m.u[j]);
            if prod > SN_SLACK {
                return fail(
                    Some((i, j)),
                    format!(
                        "columns {} and {} are co-monotone: (λ_i - λ_j)(u_i - u_j) = {prod:e}",
                        i + 1,
                        j + 1
                    ),
                );
            }
        }
    }
    SnReport {
        holds: true,
        violation: None,
        reason: None,
    }
}

/// Increasing concave map from claim probabilities to the matrix's second row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HFunctionRepr", into = "HFunctionRepr")]
pub enum HFunction {
    /// `h(p) = log(2 + p)`.
    LogShift,
    /// `h(p) = (5p + 2) / (p + 1)`.
    Rational,
    /// Piecewise-linear interpolation of a monotone `(p, h(p))` table on `[0, 1]`.
    Custom(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HValidation {
    pub valid: bool,
    pub positive: bool,
    pub strictly_increasing: bool,
    pub concave: bool,
    pub derivative_bounded: bool,
    pub diagnostics: Vec<String>,
}

impl HFunction {
    pub fn custom(table: Vec<(f64, f64)>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if table.len() < 2 {
            return bad("custom h table needs at least 2 points".into());
        }
        if table[0].0 != 0.0 || table[table.len() - 1].0 != 1.0 {
            return bad("custom h table must span p = 0 to p = 1".into());
        }
        for w in table.windows(2) {
            if !(w[1].0 > w[0].0) {
                return bad(format!(
                    "custom h table p values must increase at p = {}",
                    w[1].0
                ));
            }
            if !(w[1].1 >= w[0].1) {
                return bad(format!(
                    "custom h table must be nondecreasing at p = {}",
                    w[1].0
                ));
            }
        }
        Ok(HFunction::Custom(table))
    }

    pub fn eval(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain {
                what: "p",
                value: p,
                domain: "[0, 1]",
            });
        }
        Ok(match self {
            HFunction::LogShift => (2.0 + p).ln(),
            HFunction::Rational => (5.0 * p + 2.0) / (p + 1.0),
            HFunction::Custom(t) => {
                let k = t.partition_point(|q| q.0 <= p).clamp(1, t.len() - 1) - 1;
                let ((p0, h0), (p1, h1)) = (t[k], t[k + 1]);
                h0 + (p - p0) / (p1 - p0) * (h1 - h0)
            }
        })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.eval(0.0).unwrap(), self.eval(1.0).unwrap())
    }

    pub fn inverse(&self, u: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        let tol = 1e-12 * hi.abs().max(1.0);
        if !(u >= lo - tol && u <= hi + tol) {
            return Err(Error::Domain {
                what: "u",
                value: u,
                domain: "h([0, 1])",
            });
        }
        let u = u.clamp(lo, hi);
        let p = match self {
            HFunction::LogShift => u.exp() - 2.0,
            HFunction::Rational => (u - 2.0) / (5.0 - u),
            HFunction::Custom(t) => {
                let k = t.partition_point(|q| q.1 < u).clamp(1, t.len() - 1) - 1;
                let ((p0, h0), (p1, h1)) = (t[k], t[k + 1]);
                if h1 == h0 {
                    p0
                } else {
                    p0 + (u - h0) / (h1 - h0) * (p1 - p0)
                }
            }
        };
        Ok(p.clamp(0.0, 1.0))
    }

    /// Checks positivity, strict increase, concavity and a non-vanishing slope
    /// on a 1001-point grid of `[0, 1]`.
    pub fn validate(&self) -> HValidation {
        let last = (H_GRID_POINTS - 1) as f64;
        let values: Vec<f64> = (0..H_GRID_POINTS)
            .map(|k| self.eval(k as f64 / last).unwrap())
            .collect();
        let mut v = HValidation {
            valid: true,
            positive: true,
            strictly_increasing: true,
            concave: true,
            derivative_bounded: true,
            diagnostics: Vec::new(),
        };
        if let Some(k) = values.iter().position(|h| !(*h > 0.0)) {
            v.positive = false;
            v.diagnostics.push(format!(
                "h({}) = {} is not positive",
                k as f64 / last,
                values[k]
            ));
        }
        let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        if let Some(k) = diffs.iter().position(|d| !(*d > 0.0)) {
            v.strictly_increasing = false;
            v.diagnostics.push(format!(
                "h is not strictly increasing near p = {}",
                k as f64 / last
            ));
        }
        if let Some(k) = diffs.iter().position(|d| *d < H_MIN_FIRST_DIFFERENCE) {
            v.derivative_bounded = false;
            v.diagnostics.push(format!(
                "first difference {:e} below {H_MIN_FIRST_DIFFERENCE:e} near p = {}",
                diffs[k],
                k as f64 / last
            ));
        }
        if let Some(k) = diffs
            .windows(2)
            .position(|w| w[1] - w[0] > H_CONCAVITY_SLACK)
        {
            v.concave = false;
            v.diagnostics.push(format!(
                "positive second difference near p = {}",
                (k + 1) as f64 / last
            ));
        }
        v.valid = v.positive && v.strictly_increasing && v.concave && v.derivative_bounded;
        v
    }

    pub fn name(&self) -> &'static str {
        match self {
            HFunction::LogShift => "log(2 + p)",
            HFunction::Rational => "(5p + 2) / (p + 1)",
            HFunction::Custom(_) => "custom table",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum HFunctionRepr {
    LogShift,
    Rational,
    Custom { table: Vec<(f64, f64)> },
}

impl TryFrom<HFunctionRepr> for HFunction {
    type Error = Error;
    fn try_from(r: HFunctionRepr) -> Result<Self> {
        match r {
            HFunctionRepr::LogShift => Ok(HFunction::LogShift),
            HFunctionRepr::Rational => Ok(HFunction::Rational),
            HFunctionRepr::Custom { table } => HFunction::custom(table),
        }
    }
}

impl From<HFunction> for HFunctionRepr {
    fn from(h: HFunction) -> Self {
        match h {
            HFunction::LogShift => HFunctionRepr::LogShift,
            HFunction::Rational => HFunctionRepr::Rational,
            HFunction::Custom(table) => HFunctionRepr::Custom { table },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1(omega: f64, i: usize, j: usize) -> TTransform {
        TTransform::one_based(omega, i, j).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn test_weak_submajorize_examples() {
        let y = [0.4, -0.1, 0.9];
        assert!(weak_submajorize(&y, &y).unwrap());
        assert!(weak_submajorize(&[0.1, 0.3, -0.6], &[0.5, -0.3, 0.1]).unwrap());
        let r = weak_submajorization(&[2.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failed_at, Some(1));
        assert!(matches!(
            weak_submajorize(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn test_weak_supermajorize_examples() {
        let y = [0.4, -0.1, 0.9];
        assert!(weak_supermajorize(&y, &y).unwrap());
        assert!(weak_supermajorize(&[1.0, 2.0, 3.0], &[0.0, 2.0, 4.0]).unwrap());
        assert!(!weak_supermajorize(&[0.0, 2.0, 4.0], &[1.0, 2.0, 3.0]).unwrap());
    }

    #[test]
    fn test_majorize_examples() {
        assert!(majorize(&[2.0, 2.0, 2.0], &[0.0, 2.0, 4.0]).unwrap());
        assert!(!majorize(&[1.0, 1.0], &[0.0, 3.0]).unwrap());
        assert!(majorize(&[4.0, 0.0, 2.0], &[0.0, 2.0, 4.0]).unwrap());
        assert!(!majorize(&[0.0, 2.0, 4.0], &[2.0, 2.0, 2.0]).unwrap());
    }

    #[test]
    fn test_t_transform_identity_and_swap() {
        let m = ParamMatrix::new(vec![-0.7, 0.8, -0.9], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(apply_t_transform(&m, &t1(1.0, 1, 3)).unwrap(), m);
        let s = apply_t_transform(&m, &t1(0.0, 1, 3)).unwrap();
        assert_eq!(s.lambda, vec![-0.9, 0.8, -0.7]);
        assert_eq!(s.u, vec![3.0, 2.0, 1.0]);
        assert!(matches!(
            apply_t_transform(&m, &t1(0.5, 1, 4)),
            Err(Error::Dimension(_))
        ));
        assert!(TTransform::new(1.5, 0, 1).is_err());
        assert!(TTransform::new(0.5, 1, 1).is_err());
    }

    #[test]
    fn test_exponential_example_chain() {
        let h = HFunction::LogShift;
        let p = [0.4, 0.2, 0.7];
        let u = p.iter().map(|&p| h.eval(p).unwrap()).collect();
        let m = ParamMatrix::new(vec![-0.7, 0.8, -0.9], u).unwrap();
        let chain = [t1(0.9, 2, 3), t1(0.3, 1, 3), t1(0.6, 1, 2)];
        let out = chain_apply(&m, &chain).unwrap();
        assert!(close(&out.result.lambda, &[-0.1806, 0.0896, -0.7090], 5e-4));
        let ps = out.result.probs(&h).unwrap();
        assert!(close(&ps, &[0.4345, 0.3698, 0.4711], 5e-4));
        assert_eq!(out.intermediates.len(), 2);
        assert!(in_s_n(&m).holds);
        assert!(out.intermediates.iter().all(|m| in_s_n(m).holds));
    }

    #[test]
    fn test_weibull_example_chain() {
        let h = HFunction::Rational;
        let p = [0.1, 0.4, 0.8];
        let u = p.iter().map(|&p| h.eval(p).unwrap()).collect();
        let m = ParamMatrix::new(vec![0.7, 0.3, -0.9], u).unwrap();
        let chain = [t1(0.1, 2, 3), t1(0.4, 1, 3), t1(0.8, 1, 2)];
        let out = chain_apply(&m, &chain).unwrap();
        assert!(close(&out.result.lambda, &[0.1544, -0.5464, 0.4920], 5e-4));
        let ps = out.result.probs(&h).unwrap();
        assert!(close(&ps, &[0.3506, 0.6295, 0.2124], 5e-4));
    }

    #[test]
    fn test_chain_edge_cases() {
        let m = ParamMatrix::new(vec![0.1, 0.2], vec![1.0, 0.5]).unwrap();
        let empty = chain_apply(&m, &[]).unwrap();
        assert_eq!(empty.result, m);
        assert!(empty.intermediates.is_empty());
        let t = t1(0.3, 1, 2);
        assert_eq!(
            chain_apply(&m, &[t]).unwrap().result,
            apply_t_transform(&m, &t).unwrap()
        );
    }

    #[test]
    fn test_collapse_same_structure() {
        let m = ParamMatrix::new(vec![0.1, 0.5, -0.4], vec![1.0, 0.5, 2.0]).unwrap();
        let chain = [t1(0.3, 1, 3), t1(0.8, 3, 1), t1(0.45, 1, 3)];
        let single = collapse_same_structure(&chain).unwrap();
        let a = chain_apply(&m, &chain).unwrap().result;
        let b = apply_t_transform(&m, &single).unwrap();
        assert!(close(&a.lambda, &b.lambda, 1e-15));
        assert!(close(&a.u, &b.u, 1e-15));
        assert!(collapse_same_structure(&[t1(0.3, 1, 3), t1(0.3, 1, 2)]).is_none());
        assert!(collapse_same_structure(&[]).is_none());
    }

    #[test]
    fn test_in_s_n_examples() {
        let c = ParamMatrix::new(vec![0.3, 0.3, 0.3], vec![1.0, 5.0, 2.0]).unwrap();
        assert!(in_s_n(&c).holds);
        let h = HFunction::LogShift;
        let u = [0.4, 0.2, 0.7]
            .iter()
            .map(|&p| h.eval(p).unwrap())
            .collect();
        let m = ParamMatrix::new(vec![-0.7, 0.8, -0.9], u).unwrap();
        assert!(in_s_n(&m).holds);
        let bad = ParamMatrix::new(vec![0.0, 1.0], vec![1.0, 2.0]).unwrap();
        let r = in_s_n(&bad);
        assert!(!r.holds);
        assert_eq!(r.violation, Some((0, 1)));
        let out_of_range = ParamMatrix {
            lambda: vec![1.5, 0.0],
            u: vec![1.0, 2.0],
        };
        assert!(!in_s_n(&out_of_range).holds);
    }

    #[test]
    fn test_h_examples() {
        let l = HFunction::LogShift;
        assert_eq!(l.eval(0.0).unwrap(), 2f64.ln());
        assert_eq!(l.eval(1.0).unwrap(), 3f64.ln());
        assert!((l.inverse(2.4f64.ln()).unwrap() - 0.4).abs() < 1e-15);
        let r = HFunction::Rational;
        assert_eq!(r.eval(0.0).unwrap(), 2.0);
        assert_eq!(r.eval(1.0).unwrap(), 3.5);
        assert!(l.eval(1.2).is_err());
        assert!(r.inverse(3.6).is_err());
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            for h in [&l, &r] {
                assert!((h.inverse(h.eval(p).unwrap()).unwrap() - p).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn test_validate_h() {
        assert!(HFunction::LogShift.validate().valid);
        assert!(HFunction::Rational.validate().valid);
        let square: Vec<_> = (0..=20)
            .map(|k| {
                let p = k as f64 / 20.0;
                (p, 0.1 + p * p)
            })
            .collect();
        let v = HFunction::custom(square).unwrap().validate();
        assert!(!v.valid);
        assert!(!v.concave);
        let flat = HFunction::custom(vec![(0.0, 1.0), (0.5, 1.0), (1.0, 2.0)]).unwrap();
        let v = flat.validate();
        assert!(!v.strictly_increasing && !v.derivative_bounded);
        let sqrt: Vec<_> = (0..=50)
            .map(|k| {
                let p = k as f64 / 50.0;
                (p, 1.0 + p.sqrt())
            })
            .collect();
        let h = HFunction::custom(sqrt).unwrap();
        assert!(h.validate().valid);
        assert!((h.inverse(h.eval(0.37).unwrap()).unwrap() - 0.37).abs() < 1e-12);
    }

    #[test]
    fn test_serde_one_based_chain() {
        let t: TTransform = serde_json::from_str(r#"{"omega":0.9,"i":2,"j":3}"#).unwrap();
        assert_eq!(t.indices(), (1, 2));
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"omega":0.9,"i":2,"j":3}"#
        );
        assert!(serde_json::from_str::<TTransform>(r#"{"omega":0.9,"i":0,"j":3}"#).is_err());
        let h: HFunction = serde_json::from_str(r#"{"kind":"log_shift"}"#).unwrap();
        assert_eq!(h, HFunction::LogShift);
    }
}
